// SPDX-License-Identifier: Apache-2.0

#include "analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

namespace crsp {

namespace {

// Compensated (Kahan) accumulator; used so that sums are reproducible to
// ~1e-12 regardless of how samples were scheduled across threads.
struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

McEstimate reduce_estimate(const std::vector<double>& values) {
  McEstimate est;
  est.samples = values.size();
  Kahan mean_acc;
  for (double v : values) mean_acc.add(v);
  est.mean = mean_acc.sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    Kahan var_acc;
    for (double v : values) {
      const double dlt = v - est.mean;
      var_acc.add(dlt * dlt);
    }
    const double n = static_cast<double>(values.size());
    est.std_error = std::sqrt(var_acc.sum / (n * (n - 1.0)));
  }
  return est;
}

void run_chunked(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const unsigned t = std::min<unsigned>(threads, 64);
  std::vector<std::thread> pool;
  pool.reserve(t);
  const std::size_t chunk = (n + t - 1) / t;
  for (unsigned w = 0; w < t; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

double classical_limit(std::size_t dimension) {
  if (dimension < 2) throw std::invalid_argument("classical_limit: dimension must be >= 2");
  return 2.0 / (1.0 + static_cast<double>(dimension));
}

double power_bound(std::size_t dimension) { return 1.0 - classical_limit(dimension); }

double control_power(double average_ncf) {
  if (average_ncf < -1e-10 || average_ncf > 1.0 + 1e-9)
    throw std::invalid_argument("control_power: average NCF outside [0, 1]");
  return 1.0 - average_ncf;
}

const char* verdict_name(Verdict v) {
  return v == Verdict::Acceptable ? "acceptable" : "insufficient";
}

Verdict verdict(double power, std::size_t dimension, double tolerance) {
  if (tolerance < 0.0) throw std::invalid_argument("verdict: negative tolerance");
  return power >= power_bound(dimension) - tolerance ? Verdict::Acceptable
                                                     : Verdict::Insufficient;
}

// ---------------------------------------------------------------------------
// ensembles
// ---------------------------------------------------------------------------

TargetEnsemble TargetEnsemble::haar(std::size_t dimension, std::size_t samples,
                                    std::uint64_t seed) {
  if (dimension < 2) throw std::invalid_argument("ensemble: Haar dimension must be >= 2");
  if (samples < 1) throw std::invalid_argument("ensemble: need at least one sample");
  TargetEnsemble e;
  e.kind = Kind::Haar;
  e.dimension = dimension;
  e.samples = samples;
  e.seed = seed;
  return e;
}

TargetEnsemble TargetEnsemble::equatorial(std::size_t qubits, std::size_t samples,
                                          std::uint64_t seed) {
  if (qubits < 1) throw std::invalid_argument("ensemble: need at least one qubit");
  if (samples < 1) throw std::invalid_argument("ensemble: need at least one sample");
  TargetEnsemble e;
  e.kind = Kind::Equatorial;
  e.qubits = qubits;
  e.samples = samples;
  e.seed = seed;
  return e;
}

TargetEnsemble TargetEnsemble::fixed_state(PureState state, std::size_t samples,
                                           std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("ensemble: need at least one sample");
  TargetEnsemble e;
  e.kind = Kind::Fixed;
  e.fixed = std::move(state);
  e.dimension = e.fixed->dim();
  e.samples = samples;
  e.seed = seed;
  return e;
}

std::size_t TargetEnsemble::dim() const {
  switch (kind) {
    case Kind::Haar: return dimension;
    case Kind::Equatorial: return std::size_t(1) << qubits;
    case Kind::Fixed: return fixed->dim();
  }
  return 0;
}

const char* TargetEnsemble::kind_name() const {
  switch (kind) {
    case Kind::Haar: return "haar";
    case Kind::Equatorial: return "equatorial";
    case Kind::Fixed: return "fixed";
  }
  return "?";
}

PureState TargetEnsemble::draw(std::size_t index) const {
  switch (kind) {
    case Kind::Haar: return haar_random_pure(dimension, derive_seed(seed, index));
    case Kind::Equatorial: return equatorial_random(qubits, derive_seed(seed, index));
    case Kind::Fixed: return *fixed;
  }
  throw std::logic_error("ensemble: unknown kind");
}

// ---------------------------------------------------------------------------
// Monte Carlo and analytic averages
// ---------------------------------------------------------------------------

McResult average_ncf_mc(const ProtocolBundle& bundle, const TargetEnsemble& ensemble,
                        unsigned threads) {
  if (ensemble.dim() != bundle.target_dim)
    throw std::invalid_argument("average_ncf_mc: ensemble dimension does not match protocol");
  const std::size_t n = ensemble.samples;
  std::vector<double> fid(n);
  std::vector<double> success(bundle.success_probability ? n : 0);

  run_chunked(n, threads, [&](std::size_t i) {
    const PureState target = ensemble.draw(i);
    fid[i] = fidelity(target, mixer_rho(bundle.mixer, target));
    if (bundle.success_probability) success[i] = bundle.success_probability(target);
  });

  McResult result;
  result.ncf = reduce_estimate(fid);
  if (bundle.success_probability) result.mean_success = reduce_estimate(success).mean;
  return result;
}

double average_ncf_analytic(const MixerModel& mixer) {
  const double d = static_cast<double>(mixer.dimension());
  Kahan acc;
  for (const auto& term : mixer.terms) {
    const double tr2 = std::norm(term.correction.matrix().trace());
    acc.add(term.weight * (d + tr2) / (d * (d + 1.0)));
  }
  return acc.sum;
}

// ---------------------------------------------------------------------------
// entropy audit
// ---------------------------------------------------------------------------

EntropyAudit controller_entropy_audit(const ChannelSpec& channel,
                                      const std::vector<Party>& controllers,
                                      std::size_t target_dimension) {
  if (controllers.empty())
    throw std::invalid_argument("entropy audit: no controllers given");
  EntropyAudit audit;
  audit.required_bits = std::log2(static_cast<double>(target_dimension));
  audit.pass = true;
  for (const auto& controller : controllers) {
    const auto owned = channel.layout().indices_owned_by(controller);
    if (owned.empty())
      throw std::invalid_argument("entropy audit: controller owns no subsystem");
    const double s = von_neumann_entropy(partial_trace(channel.state, owned));
    audit.entropies.push_back(s);
    if (s < audit.required_bits - 1e-9) audit.pass = false;
  }
  return audit;
}

EntropyAudit controller_entropy_audit(const ChannelSpec& channel, const Party& controller,
                                      std::size_t target_dimension) {
  return controller_entropy_audit(channel, std::vector<Party>{controller}, target_dimension);
}

std::vector<EntropyRow> entropy_table(double ms_d, double pghz_a2) {
  if (ms_d < 0.0 || ms_d >= 1.0)
    throw std::invalid_argument("entropy_table: ms d parameter must lie in [0, 1)");
  if (pghz_a2 <= 0.0 || pghz_a2 >= 1.0)
    throw std::invalid_argument("entropy_table: pghz a2 parameter must lie in (0, 1)");

  auto classify = [](double s) { return std::abs(s - 1.0) <= 1e-9 ? "=1" : "<1"; };
  auto row = [&classify](std::string name, const ChannelSpec& channel) {
    EntropyRow r;
    r.channel = std::move(name);
    for (std::size_t i = 0; i < channel.layout().size(); ++i) {
      const double s = von_neumann_entropy(partial_trace(channel.state, {i}));
      r.entropies.push_back(s);
      r.classified.push_back(classify(s));
    }
    return r;
  };

  const double ms_c = std::sqrt(1.0 - ms_d * ms_d);
  const double a = std::sqrt(pghz_a2), b = std::sqrt(1.0 - pghz_a2);
  std::vector<EntropyRow> rows;
  rows.push_back(row("ghz", make_ghz(3)));
  rows.push_back(row("ms3", make_ms3(ms_c, ms_d)));
  rows.push_back(row("pghz", make_pghz(a, b, 0)));
  return rows;
}

// ---------------------------------------------------------------------------
// analysis
// ---------------------------------------------------------------------------

namespace {

TargetEnsemble instantiate_ensemble(const ProtocolBundle& bundle, const EnsembleSpec& spec) {
  switch (spec.kind) {
    case TargetEnsemble::Kind::Haar:
      return TargetEnsemble::haar(bundle.target_dim, spec.samples, spec.seed);
    case TargetEnsemble::Kind::Equatorial: {
      for (std::size_t r : bundle.target_radices)
        if (r != 2)
          throw std::invalid_argument(
              "analyze: the equatorial ensemble is defined for qubit targets only");
      return TargetEnsemble::equatorial(bundle.target_radices.size(), spec.samples, spec.seed);
    }
    case TargetEnsemble::Kind::Fixed:
      throw std::invalid_argument("analyze: fixed ensembles need an explicit state");
  }
  throw std::logic_error("analyze: unknown ensemble kind");
}

}  // namespace

PowerReport analyze(const ProtocolBundle& bundle, const EnsembleSpec& spec,
                    double analytic_tolerance, unsigned threads) {
  const TargetEnsemble ensemble = instantiate_ensemble(bundle, spec);
  const McResult mc = average_ncf_mc(bundle, ensemble, threads);

  PowerReport report;
  report.protocol = bundle.id;
  report.summary = bundle.summary;
  report.params = bundle.params;
  report.dimension = bundle.target_dim;
  report.ensemble = ensemble.kind_name();
  report.samples = ensemble.samples;
  report.seed = ensemble.seed;
  report.ncf_mc = mc.ncf.mean;
  report.ncf_mc_stderr = mc.ncf.std_error;
  if (spec.kind == TargetEnsemble::Kind::Haar)
    report.ncf_analytic = average_ncf_analytic(bundle.mixer);
  report.average_ncf = report.ncf_analytic.value_or(report.ncf_mc);
  report.power = control_power(report.average_ncf);
  report.limit_classical = classical_limit(bundle.target_dim);
  report.bound = power_bound(bundle.target_dim);
  report.verdict_tolerance =
      report.ncf_analytic ? analytic_tolerance : 3.0 * report.ncf_mc_stderr;
  report.verdict_value = verdict(report.power, bundle.target_dim, report.verdict_tolerance);

  const EntropyAudit audit =
      controller_entropy_audit(bundle.channel, bundle.controllers, bundle.target_dim);
  report.controller_entropies = audit.entropies;
  report.entropy_required = audit.required_bits;
  report.entropy_pass = audit.pass;
  report.success_probability = mc.mean_success;
  return report;
}

std::vector<std::string> sweep_parameter_names(const std::string& protocol_id) {
  if (protocol_id == "P1" || protocol_id == "P2") return {"b2"};
  if (protocol_id == "P3") return {"N"};
  if (protocol_id == "P4") return {};
  if (protocol_id == "P5") return {"N", "M", "a2"};
  if (protocol_id == "P6") return {"d", "M", "N"};
  if (protocol_id == "P7") return {"d"};
  throw std::invalid_argument("unknown protocol id '" + protocol_id + "' (expected P1..P7)");
}

std::vector<PowerReport> sweep(const std::string& protocol_id,
                               const std::map<std::string, double>& base_params,
                               const std::string& parameter, const std::vector<double>& grid,
                               const EnsembleSpec& ensemble, double analytic_tolerance,
                               unsigned threads) {
  const auto names = sweep_parameter_names(protocol_id);
  if (std::find(names.begin(), names.end(), parameter) == names.end())
    throw std::invalid_argument("sweep: protocol " + protocol_id +
                                " has no sweepable parameter '" + parameter + "'");
  if (grid.empty()) throw std::invalid_argument("sweep: empty grid");

  std::vector<PowerReport> reports;
  reports.reserve(grid.size());
  for (double value : grid) {
    std::map<std::string, double> params = base_params;
    params[parameter] = value;
    reports.push_back(analyze(builtin(protocol_id, params), ensemble, analytic_tolerance,
                              threads));
  }
  return reports;
}

}  // namespace crsp
