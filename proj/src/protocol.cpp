// SPDX-License-Identifier: Apache-2.0

#include "protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace crsp {

namespace {

constexpr double kWeightSumTol = 1e-10;

// ---------------------------------------------------------------------------
// engine internals
// ---------------------------------------------------------------------------

struct EngineBranch {
  double weight = 1.0;  // pre-renormalization probability
  PureState state;
  std::vector<std::size_t> original;  // original subsystem index per position
};

std::size_t current_index(const EngineBranch& b, std::size_t original) {
  for (std::size_t i = 0; i < b.original.size(); ++i)
    if (b.original[i] == original) return i;
  throw std::logic_error("protocol: subsystem already measured out");
}

std::vector<std::size_t> current_indices(const EngineBranch& b,
                                         const std::vector<std::size_t>& originals) {
  std::vector<std::size_t> out;
  out.reserve(originals.size());
  for (std::size_t o : originals) out.push_back(current_index(b, o));
  return out;
}

void drop_measured(EngineBranch& b, const std::vector<std::size_t>& measured_originals) {
  std::vector<std::size_t> rest;
  for (std::size_t o : b.original)
    if (std::find(measured_originals.begin(), measured_originals.end(), o) ==
        measured_originals.end())
      rest.push_back(o);
  b.original = std::move(rest);
}

// Decomposes a target index into digits over the given radices
// (radices[0] most significant).
std::vector<std::size_t> target_digits(std::size_t x, const std::vector<std::size_t>& radices) {
  std::vector<std::size_t> digits(radices.size());
  for (std::size_t k = radices.size(); k-- > 0;) {
    digits[k] = x % radices[k];
    x /= radices[k];
  }
  return digits;
}

// Direction in the product space of the flattened group subsystems that
// embeds the conjugated target: every subsystem of group k carries target
// digit k. `signs`, when given, multiplies component x by signs[x].
std::vector<cplx> steering_direction(const PureState& target,
                                     const std::vector<std::size_t>& radices,
                                     const std::vector<std::vector<std::size_t>>& groups,
                                     const SystemLayout& layout,
                                     const std::vector<double>* signs) {
  std::vector<std::size_t> flat_dims;
  std::vector<std::size_t> group_of;  // group index per flattened position
  for (std::size_t k = 0; k < groups.size(); ++k)
    for (std::size_t s : groups[k]) {
      if (layout.at(s).dim != radices[k])
        throw std::invalid_argument("protocol: group subsystem dimension mismatch");
      flat_dims.push_back(layout.at(s).dim);
      group_of.push_back(k);
    }
  std::size_t total = 1;
  for (std::size_t d : flat_dims) total *= d;

  std::vector<cplx> dir(total);
  for (std::size_t x = 0; x < target.dim(); ++x) {
    if (target[x] == cplx{} && signs == nullptr) continue;
    const auto digits = target_digits(x, radices);
    std::size_t t = 0;
    for (std::size_t p = 0; p < flat_dims.size(); ++p)
      t = t * flat_dims[p] + digits[group_of[p]];
    cplx v = std::conj(target[x]);
    if (signs) v *= (*signs)[x];
    dir[t] = v;
  }
  return dir;
}

void check_equatorial(const PureState& target) {
  const double want = 1.0 / static_cast<double>(target.dim());
  for (std::size_t i = 0; i < target.dim(); ++i)
    if (std::abs(std::norm(target[i]) - want) > 1e-9)
      throw std::invalid_argument(
          "protocol: this step requires an equatorial target (uniform amplitude magnitudes)");
}

std::vector<EngineBranch> apply_target_measurement(const TargetBasisMeasurement& step,
                                                   const std::vector<EngineBranch>& in,
                                                   const PureState& target,
                                                   const std::vector<std::size_t>& radices) {
  std::vector<std::size_t> measured;
  for (const auto& g : step.groups) measured.insert(measured.end(), g.begin(), g.end());

  std::vector<EngineBranch> out;
  for (const auto& branch : in) {
    const SystemLayout& layout = branch.state.layout();
    std::vector<std::vector<std::size_t>> groups_now;
    for (const auto& g : step.groups) groups_now.push_back(current_indices(branch, g));
    std::vector<std::size_t> flat_now;
    for (const auto& g : groups_now) flat_now.insert(flat_now.end(), g.begin(), g.end());

    if (step.mode == TargetBasisMeasurement::Mode::EquatorialAll) {
      check_equatorial(target);
      for (std::size_t k = 0; k < radices.size(); ++k)
        if (radices[k] != 2)
          throw std::invalid_argument("protocol: equatorial steering is defined for qubits");
      const std::size_t n_outcomes = target.dim();
      for (std::size_t y = 0; y < n_outcomes; ++y) {
        std::vector<double> signs(target.dim());
        const auto ybits = target_digits(y, radices);
        for (std::size_t x = 0; x < target.dim(); ++x) {
          const auto xbits = target_digits(x, radices);
          std::size_t parity = 0;
          for (std::size_t k = 0; k < radices.size(); ++k) parity += xbits[k] * ybits[k];
          signs[x] = (parity % 2 == 0) ? 1.0 : -1.0;
        }
        auto dir = steering_direction(target, radices, groups_now, layout, &signs);
        auto res = project(branch.state, dir, flat_now);
        if (!res.post) continue;
        EngineBranch next{branch.weight * res.probability, *res.post, branch.original};
        drop_measured(next, measured);
        // Undo the sign string on the receiver copies.
        for (std::size_t k = 0; k < step.feedforward.size(); ++k) {
          if (ybits[k] == 0) continue;
          const std::size_t ff = current_index(next, step.feedforward[k]);
          next.state = apply_unitary(next.state, generalized_pauli(2, PauliKind::Z, 1), {ff});
        }
        out.push_back(std::move(next));
      }
      continue;
    }

    auto dir = steering_direction(target, radices, groups_now, layout, nullptr);
    auto res = project(branch.state, dir, flat_now);
    if (step.mode == TargetBasisMeasurement::Mode::SteerOnly) {
      if (!res.post) continue;  // rejected branch
      EngineBranch next{branch.weight * res.probability, *res.post, branch.original};
      drop_measured(next, measured);
      out.push_back(std::move(next));
    } else {  // Deterministic
      if (!res.post)
        throw DegenerateProtocolError("protocol: steering projection has zero support");
      const double expected = 1.0 / static_cast<double>(target.dim());
      if (std::abs(res.probability - expected) > 1e-9)
        throw std::invalid_argument(
            "protocol: deterministic steering requires a copy-structured channel");
      EngineBranch next{branch.weight, *res.post, branch.original};
      drop_measured(next, measured);
      out.push_back(std::move(next));
    }
  }
  return out;
}

std::vector<EngineBranch> apply_filter(const FilterStep& step,
                                       const std::vector<EngineBranch>& in,
                                       const PureState& target) {
  std::vector<EngineBranch> out;
  for (const auto& branch : in) {
    const auto subs = current_indices(branch, step.subsystems);
    std::size_t dim = 1;
    for (std::size_t s : subs) dim *= branch.state.layout().at(s).dim;

    std::vector<cplx> entries;
    if (step.kind == FilterStep::Kind::FixedDiagonal) {
      entries = step.kraus_diag;
    } else {
      // kappa * t_x / w_x with the largest kappa keeping every entry inside
      // the unit disk.
      if (step.channel_weights.size() != dim || target.dim() != dim)
        throw std::invalid_argument("protocol: filter weight table dimension mismatch");
      double kappa = std::numeric_limits<double>::infinity();
      for (std::size_t x = 0; x < dim; ++x) {
        const double mag = std::abs(target[x]);
        if (mag > 1e-15) kappa = std::min(kappa, step.channel_weights[x] / mag);
      }
      if (!std::isfinite(kappa))
        throw DegenerateProtocolError("protocol: target has no support to encode");
      entries.resize(dim);
      for (std::size_t x = 0; x < dim; ++x)
        entries[x] = kappa * target[x] / step.channel_weights[x];
    }
    if (entries.size() != dim)
      throw std::invalid_argument("protocol: filter diagonal dimension mismatch");
    for (const auto& e : entries)
      if (std::abs(e) > 1.0 + 1e-9)
        throw std::invalid_argument("protocol: filter entries must lie in the unit disk");

    // Accept branch: amplitudes scaled by the diagonal entry of their
    // filtered digits; acceptance probability is the squared norm.
    const SystemLayout& layout = branch.state.layout();
    std::vector<cplx> amp = branch.state.amplitudes();
    for (std::size_t i = 0; i < amp.size(); ++i) {
      if (amp[i] == cplx{}) continue;
      std::size_t idx = 0;
      for (std::size_t s : subs) idx = idx * layout.at(s).dim + layout.digit(i, s);
      amp[i] *= entries[idx];
    }
    double q = 0.0;
    for (const auto& z : amp) q += std::norm(z);
    if (q <= kZeroBranchTol) continue;  // rejected with certainty
    const double inv = 1.0 / std::sqrt(q);
    for (auto& z : amp) z *= inv;
    out.push_back(EngineBranch{branch.weight * q, PureState(std::move(amp), layout),
                               branch.original});
  }
  return out;
}

std::vector<EngineBranch> apply_x_measurement(const XBasisMeasurement& step,
                                              const std::vector<EngineBranch>& in) {
  std::vector<EngineBranch> out;
  for (const auto& branch : in) {
    const std::size_t s = current_index(branch, step.subsystem);
    const std::size_t d = branch.state.layout().at(s).dim;
    for (std::size_t k = 0; k < d; ++k) {
      const auto dir = generalized_x_basis(d, k).amplitudes();
      auto res = project(branch.state, dir, {s});
      if (!res.post) continue;
      EngineBranch next{branch.weight * res.probability, *res.post, branch.original};
      drop_measured(next, {step.subsystem});
      if (step.feedforward_subsystem && k != 0) {
        const std::size_t ff = current_index(next, *step.feedforward_subsystem);
        const std::size_t fd = next.state.layout().at(ff).dim;
        next.state = apply_unitary(
            next.state, generalized_pauli(fd, PauliKind::Z, static_cast<long>(k)), {ff});
      }
      out.push_back(std::move(next));
    }
  }
  return out;
}

void validate_step_ownership(const StepScript& script, const SystemLayout& layout,
                             const Party& audited) {
  auto check_measured = [&](std::size_t s) {
    const Party& owner = layout.at(s).owner;
    if (owner == Party::receiver())
      throw std::invalid_argument("protocol: steps may not measure receiver subsystems");
    if (owner == audited)
      throw std::invalid_argument(
          "protocol: steps may not act on the audited controller's subsystems");
  };
  auto check_feedforward = [&](std::size_t s) {
    if (!(layout.at(s).owner == Party::receiver()))
      throw std::invalid_argument("protocol: feed-forward must act on receiver subsystems");
  };
  for (const auto& step : script.steps) {
    if (const auto* m = std::get_if<TargetBasisMeasurement>(&step)) {
      for (const auto& g : m->groups)
        for (std::size_t s : g) check_measured(s);
      for (std::size_t s : m->feedforward) check_feedforward(s);
    } else if (const auto* f = std::get_if<FilterStep>(&step)) {
      for (std::size_t s : f->subsystems) check_measured(s);
    } else if (const auto* x = std::get_if<XBasisMeasurement>(&step)) {
      check_measured(x->subsystem);
      if (x->feedforward_subsystem) check_feedforward(*x->feedforward_subsystem);
    }
  }
}

std::map<std::string, double>::const_iterator find_param(
    const std::map<std::string, double>& params, const std::string& key) {
  return params.find(key);
}

double get_param(const std::map<std::string, double>& params, const std::string& key,
                 std::optional<double> fallback = std::nullopt) {
  auto it = find_param(params, key);
  if (it != params.end()) return it->second;
  if (fallback) return *fallback;
  throw std::invalid_argument("protocol: missing required parameter '" + key + "'");
}

std::size_t get_int_param(const std::map<std::string, double>& params, const std::string& key,
                          std::optional<std::size_t> fallback = std::nullopt) {
  auto it = find_param(params, key);
  if (it == params.end()) {
    if (fallback) return *fallback;
    throw std::invalid_argument("protocol: missing required parameter '" + key + "'");
  }
  const double v = it->second;
  if (v < 0 || std::abs(v - std::round(v)) > 1e-9)
    throw std::invalid_argument("protocol: parameter '" + key + "' must be a non-negative integer");
  return static_cast<std::size_t>(std::llround(v));
}

// Mixer over all strings of Z powers on subsystems with the given radices
// (uniform weights). Term 0 is the identity string.
MixerModel uniform_z_string_mixer(const std::vector<std::size_t>& radices) {
  std::size_t total = 1;
  for (std::size_t d : radices) total *= d;
  std::vector<MixerTerm> terms;
  terms.reserve(total);
  for (std::size_t j = 0; j < total; ++j) {
    const auto powers = target_digits(j, radices);
    CMat u = CMat::identity(1);
    for (std::size_t k = 0; k < radices.size(); ++k)
      u = kron(u, generalized_pauli(radices[k], PauliKind::Z,
                                    static_cast<long>(powers[k])).matrix());
    terms.push_back(MixerTerm{1.0 / static_cast<double>(total), UnitaryOperator(std::move(u))});
  }
  return MixerModel(std::move(terms));
}

double resolve_b2(const std::map<std::string, double>& params, const std::string& id) {
  const bool has_b2 = params.count("b2") != 0;
  const bool has_cd = params.count("c") != 0 || params.count("d") != 0;
  if (has_b2 && has_cd)
    throw std::invalid_argument(id + ": give either b2 or the (c, d) pair, not both");
  double b2;
  if (has_b2) {
    b2 = get_param(params, "b2");
  } else if (has_cd) {
    const ControllerForm f = ms_controller_form(get_param(params, "c"), get_param(params, "d"));
    b2 = f.b * f.b;
  } else {
    throw std::invalid_argument(id + ": requires b2 (or the c, d channel coefficients)");
  }
  if (b2 < -1e-12 || b2 > 0.5 + 1e-12)
    throw std::invalid_argument(id + ": b2 must lie in [0, 0.5]");
  return std::clamp(b2, 0.0, 0.5);
}

}  // namespace

// ---------------------------------------------------------------------------
// mixer model
// ---------------------------------------------------------------------------

MixerModel::MixerModel(std::vector<MixerTerm> t) : terms(std::move(t)) {
  if (terms.empty()) throw std::invalid_argument("mixer: no terms");
  double sum = 0.0;
  const std::size_t dim = terms.front().correction.dim();
  for (const auto& term : terms) {
    if (term.weight < -1e-12) throw std::invalid_argument("mixer: negative weight");
    if (term.correction.dim() != dim) throw std::invalid_argument("mixer: dimension mismatch");
    sum += term.weight;
  }
  if (std::abs(sum - 1.0) > kWeightSumTol)
    throw std::invalid_argument("mixer: weights must sum to 1");
  if (!terms.front().correction.matrix().is_identity(kNormTol))
    throw std::invalid_argument("mixer: term 0 must be the identity");
}

DensityOperator mixer_rho(const MixerModel& mixer, const PureState& target) {
  if (mixer.dimension() != target.dim())
    throw std::invalid_argument("mixer_rho: dimension mismatch");
  CMat rho(target.dim(), target.dim());
  for (const auto& term : mixer.terms) {
    if (term.weight == 0.0) continue;
    // w * (U t)(U t)^dag
    std::vector<cplx> ut(target.dim());
    const CMat& u = term.correction.matrix();
    for (std::size_t i = 0; i < target.dim(); ++i) {
      cplx acc;
      for (std::size_t j = 0; j < target.dim(); ++j) {
        if (u(i, j) == cplx{}) continue;
        acc += u(i, j) * target[j];
      }
      ut[i] = acc;
    }
    for (std::size_t i = 0; i < target.dim(); ++i) {
      if (ut[i] == cplx{}) continue;
      for (std::size_t j = 0; j < target.dim(); ++j)
        rho(i, j) += term.weight * ut[i] * std::conj(ut[j]);
    }
  }
  return DensityOperator(std::move(rho), target.layout());
}

// ---------------------------------------------------------------------------
// rsp basis
// ---------------------------------------------------------------------------

std::vector<PureState> rsp_basis(const PureState& target) {
  const std::size_t dim = target.dim();
  std::vector<std::vector<cplx>> basis;
  std::vector<cplx> first(dim);
  for (std::size_t i = 0; i < dim; ++i) first[i] = std::conj(target[i]);
  basis.push_back(std::move(first));

  auto orthogonalize = [&basis, dim](std::vector<cplx> v) {
    for (const auto& b : basis) {
      cplx proj;
      for (std::size_t i = 0; i < dim; ++i) proj += std::conj(b[i]) * v[i];
      for (std::size_t i = 0; i < dim; ++i) v[i] -= proj * b[i];
    }
    return v;
  };

  while (basis.size() < dim) {
    // Candidate with the largest remaining orthogonal component; ties go to
    // the lowest canonical index.
    std::size_t best = dim;
    double best_norm2 = -1.0;
    std::vector<cplx> best_vec;
    for (std::size_t c = 0; c < dim; ++c) {
      std::vector<cplx> e(dim);
      e[c] = 1.0;
      auto r = orthogonalize(std::move(e));
      double n2 = 0.0;
      for (const auto& z : r) n2 += std::norm(z);
      if (n2 > best_norm2 + 1e-12) {
        best = c;
        best_norm2 = n2;
        best_vec = std::move(r);
      }
    }
    if (best == dim || best_norm2 < 1e-12)
      throw std::runtime_error("rsp_basis: failed to complete the basis");
    best_vec = orthogonalize(std::move(best_vec));  // second pass for stability
    double n2 = 0.0;
    for (const auto& z : best_vec) n2 += std::norm(z);
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& z : best_vec) z *= inv;
    basis.push_back(std::move(best_vec));
  }

  std::vector<PureState> out;
  out.reserve(dim);
  for (auto& v : basis) out.push_back(PureState(std::move(v), target.layout()));
  return out;
}

// ---------------------------------------------------------------------------
// conditioned execution
// ---------------------------------------------------------------------------

ConditionedJointState run_conditioned(const ChannelSpec& channel, const StepScript& script,
                                      const PureState& target, const Party& audited_controller) {
  const SystemLayout& layout = channel.layout();
  const auto receiver_subs = layout.indices_owned_by(Party::receiver());
  if (receiver_subs.empty())
    throw std::invalid_argument("protocol: channel has no receiver subsystem");
  std::vector<std::size_t> radices;
  std::size_t dim = 1;
  for (std::size_t s : receiver_subs) {
    radices.push_back(layout.at(s).dim);
    dim *= layout.at(s).dim;
  }
  if (dim != target.dim())
    throw std::invalid_argument("protocol: target dimension does not match the receiver space");
  validate_step_ownership(script, layout, audited_controller);

  std::vector<std::size_t> identity_map(layout.size());
  for (std::size_t i = 0; i < identity_map.size(); ++i) identity_map[i] = i;
  std::vector<EngineBranch> branches{EngineBranch{1.0, channel.state, identity_map}};

  for (const auto& step : script.steps) {
    if (const auto* m = std::get_if<TargetBasisMeasurement>(&step))
      branches = apply_target_measurement(*m, branches, target, radices);
    else if (const auto* f = std::get_if<FilterStep>(&step))
      branches = apply_filter(*f, branches, target);
    else if (const auto* x = std::get_if<XBasisMeasurement>(&step))
      branches = apply_x_measurement(*x, branches);
  }

  double success = 0.0;
  for (const auto& b : branches) success += b.weight;
  if (branches.empty() || success <= kZeroBranchTol)
    throw DegenerateProtocolError("protocol: every branch was rejected");

  ConditionedJointState joint;
  joint.success_probability = success;
  joint.layout = branches.front().state.layout();
  joint.ensemble.reserve(branches.size());
  for (auto& b : branches)
    joint.ensemble.push_back(ConditionedBranch{b.weight / success, std::move(b.state)});
  return joint;
}

DensityOperator reduce_receiver(const ConditionedJointState& joint, const Party& controller) {
  if (joint.layout.indices_owned_by(controller).empty())
    throw std::invalid_argument("reduce_receiver: controller owns no remaining subsystem");
  const auto keep = joint.layout.indices_owned_by(Party::receiver());
  if (keep.empty()) throw std::invalid_argument("reduce_receiver: no receiver subsystems");

  DensityOperator rho;
  for (const auto& branch : joint.ensemble)
    rho.accumulate(branch.probability, partial_trace(branch.state, keep));
  return rho;
}

// ---------------------------------------------------------------------------
// built-ins
// ---------------------------------------------------------------------------

namespace {

ProtocolBundle make_p1(const std::map<std::string, double>& params) {
  const double b2 = resolve_b2(params, "P1");
  const double a = std::sqrt(1.0 - b2), b = std::sqrt(b2);
  ProtocolBundle bundle;
  bundle.id = "P1";
  bundle.summary = "single-qubit preparation over the rotated 3-qubit maximal-slice channel";
  bundle.params = {{"b2", b2}};
  bundle.channel = make_ms3_rotated(a, b);
  StepScript script;
  script.steps.push_back(TargetBasisMeasurement{{{0}}, TargetBasisMeasurement::Mode::SteerOnly, {}});
  bundle.script = std::move(script);
  bundle.mixer = MixerModel({{1.0 - b2, UnitaryOperator(CMat::identity(2))},
                             {b2, generalized_pauli(2, PauliKind::Z)}});
  bundle.target_dim = 2;
  bundle.target_radices = {2};
  bundle.controllers = {Party::controller()};
  bundle.audited_controller = Party::controller();
  bundle.success_probability = [](const PureState&) { return 0.5; };
  return bundle;
}

ProtocolBundle make_p2(const std::map<std::string, double>& params) {
  const double b2 = resolve_b2(params, "P2");
  const double a = std::sqrt(1.0 - b2), b = std::sqrt(b2);
  ProtocolBundle bundle;
  bundle.id = "P2";
  bundle.summary = "two-sender single-qubit preparation over the rotated 4-qubit maximal slice";
  bundle.params = {{"b2", b2}};
  bundle.channel = make_ms4_rotated(a, b);
  StepScript script;
  script.steps.push_back(
      TargetBasisMeasurement{{{0, 1}}, TargetBasisMeasurement::Mode::SteerOnly, {}});
  bundle.script = std::move(script);
  bundle.mixer = MixerModel({{1.0 - b2, UnitaryOperator(CMat::identity(2))},
                             {b2, generalized_pauli(2, PauliKind::Z)}});
  bundle.target_dim = 2;
  bundle.target_radices = {2};
  bundle.controllers = {Party::controller()};
  bundle.audited_controller = Party::controller();
  bundle.success_probability = [](const PureState&) { return 0.5; };
  return bundle;
}

ProtocolBundle make_p3(const std::map<std::string, double>& params) {
  const std::size_t n = get_int_param(params, "N", 1);
  if (n < 1 || 2 * n + 1 > 13) throw std::invalid_argument("P3: N must lie in [1, 6]");
  ProtocolBundle bundle;
  bundle.id = "P3";
  bundle.summary = "N-qubit equatorial preparation over N-1 Bell pairs and one GHZ";
  bundle.params = {{"N", static_cast<double>(n)}};

  // GHZ first so the controller-linked receiver qubit carries target digit 0.
  std::vector<ChannelSpec> parts{make_ghz(3)};
  for (std::size_t k = 1; k < n; ++k) parts.push_back(make_bell(BellVariant::PhiPlus));
  std::ostringstream name;
  name << "ghz3 x bell^" << (n - 1);
  bundle.channel = tensor_channels(parts, name.str());

  TargetBasisMeasurement m;
  m.mode = TargetBasisMeasurement::Mode::EquatorialAll;
  m.groups.push_back({0});       // GHZ sender qubit
  m.feedforward.push_back(1);    // GHZ receiver qubit
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t off = 3 + 2 * (k - 1);
    m.groups.push_back({off});
    m.feedforward.push_back(off + 1);
  }
  StepScript script;
  script.steps.push_back(std::move(m));
  bundle.script = std::move(script);

  const std::size_t dim = std::size_t(1) << n;
  CMat z0 = kron(generalized_pauli(2, PauliKind::Z).matrix(), CMat::identity(dim / 2));
  bundle.mixer = MixerModel({{0.5, UnitaryOperator(CMat::identity(dim))},
                             {0.5, UnitaryOperator(std::move(z0))}});
  bundle.target_dim = dim;
  bundle.target_radices.assign(n, 2);
  bundle.controllers = {Party::controller()};
  bundle.audited_controller = Party::controller();
  bundle.success_probability = [](const PureState&) { return 1.0; };
  return bundle;
}

ProtocolBundle make_p4(const std::map<std::string, double>&) {
  ProtocolBundle bundle;
  bundle.id = "P4";
  bundle.summary = "two-qubit preparation over the five-qubit Brown state";
  bundle.channel = make_brown();
  CMat z0 = kron(generalized_pauli(2, PauliKind::Z).matrix(), CMat::identity(2));
  bundle.mixer = MixerModel({{0.5, UnitaryOperator(CMat::identity(4))},
                             {0.5, UnitaryOperator(std::move(z0))}});
  bundle.target_dim = 4;
  bundle.target_radices = {2, 2};
  bundle.controllers = {Party::controller()};
  bundle.audited_controller = Party::controller();
  return bundle;
}

ProtocolBundle make_p5(const std::map<std::string, double>& params) {
  const std::size_t n = get_int_param(params, "N", 1);
  const std::size_t m = get_int_param(params, "M", 1);
  const double a2 = get_param(params, "a2", 0.8);
  if (n < 1) throw std::invalid_argument("P5: N must be >= 1");
  if (m < 1) throw std::invalid_argument("P5: M must be >= 1");
  if (n * (m + 3) > 13)
    throw std::invalid_argument("P5: N*(M+3) qubits exceed the supported dimension");
  if (a2 < 0.5 || a2 >= 1.0)
    throw std::invalid_argument("P5: a2 must lie in [0.5, 1)");
  const double a = std::sqrt(a2), b = std::sqrt(1.0 - a2);

  ProtocolBundle bundle;
  bundle.id = "P5";
  bundle.summary = "joint N-qubit preparation over filtered partially entangled GHZ states";
  bundle.params = {{"N", static_cast<double>(n)}, {"M", static_cast<double>(m)}, {"a2", a2}};

  std::vector<ChannelSpec> parts;
  for (std::size_t k = 0; k < n; ++k) parts.push_back(make_pghz(a, b, m));
  std::ostringstream name;
  name << "pghz(M=" << m << ")^" << n;
  bundle.channel = tensor_channels(parts, name.str());

  const std::size_t copy = m + 3;  // subsystems per copy: A1 A2 C1..CM B
  StepScript script;
  for (std::size_t k = 0; k < n; ++k) {
    FilterStep f;
    f.kind = FilterStep::Kind::FixedDiagonal;
    f.subsystems = {k * copy};  // first sender qubit of the copy
    f.kraus_diag = {cplx{b / a, 0.0}, cplx{1.0, 0.0}};
    script.steps.push_back(std::move(f));
  }
  TargetBasisMeasurement steer;
  steer.mode = TargetBasisMeasurement::Mode::Deterministic;
  for (std::size_t k = 0; k < n; ++k) steer.groups.push_back({k * copy, k * copy + 1});
  script.steps.push_back(std::move(steer));
  // Non-audited controllers measure in the X basis; the receiver undoes the
  // resulting sign on the matching copy.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t c = 0; c + 1 < m; ++c)
      script.steps.push_back(XBasisMeasurement{k * copy + 2 + c, k * copy + copy - 1});
  bundle.script = std::move(script);

  bundle.target_radices.assign(n, 2);
  bundle.mixer = uniform_z_string_mixer(bundle.target_radices);
  bundle.target_dim = std::size_t(1) << n;
  for (std::size_t c = 0; c < m; ++c) bundle.controllers.push_back(Party::controller(static_cast<int>(c)));
  bundle.audited_controller = Party::controller(static_cast<int>(m - 1));
  const double per_copy = 2.0 * (1.0 - a2);
  const std::size_t copies = n;
  bundle.success_probability = [per_copy, copies](const PureState&) {
    return std::pow(per_copy, static_cast<double>(copies));
  };
  return bundle;
}

ProtocolBundle make_p6(const std::map<std::string, double>& params) {
  const std::size_t d = get_int_param(params, "d", 2);
  const std::size_t m = get_int_param(params, "M", 1);
  const std::size_t n = get_int_param(params, "N", 1);
  if (d < 2) throw std::invalid_argument("P6: d must be >= 2");
  if (m < 1) throw std::invalid_argument("P6: M must be >= 1");
  if (n < 1) throw std::invalid_argument("P6: N must be >= 1");
  double total = std::pow(static_cast<double>(d), static_cast<double>(n * (m + 2)));
  if (total > 8192.0)
    throw std::invalid_argument("P6: d^(N*(M+2)) exceeds the supported dimension");

  ProtocolBundle bundle;
  bundle.id = "P6";
  bundle.summary = "N-qudit preparation over generalized GHZ-class states with M controllers";
  bundle.params = {{"d", static_cast<double>(d)}, {"M", static_cast<double>(m)},
                   {"N", static_cast<double>(n)}};

  const std::vector<cplx> uniform(d, cplx{1.0 / std::sqrt(static_cast<double>(d)), 0.0});
  std::vector<ChannelSpec> parts;
  for (std::size_t k = 0; k < n; ++k) parts.push_back(make_ggc(uniform, m));
  std::ostringstream name;
  name << "ggc(d=" << d << ",M=" << m << ")^" << n;
  bundle.channel = tensor_channels(parts, name.str());

  const std::size_t copy = m + 2;  // subsystems per copy: A0 C1..CM B
  const std::size_t dim = static_cast<std::size_t>(std::llround(
      std::pow(static_cast<double>(d), static_cast<double>(n))));

  StepScript script;
  FilterStep f;
  f.kind = FilterStep::Kind::TargetEncoding;
  for (std::size_t k = 0; k < n; ++k) f.subsystems.push_back(k * copy);
  f.channel_weights.assign(dim, std::pow(static_cast<double>(d), -0.5 * static_cast<double>(n)));
  script.steps.push_back(std::move(f));
  for (std::size_t k = 0; k < n; ++k)
    script.steps.push_back(XBasisMeasurement{k * copy, k * copy + copy - 1});
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t c = 0; c + 1 < m; ++c)
      script.steps.push_back(XBasisMeasurement{k * copy + 1 + c, k * copy + copy - 1});
  bundle.script = std::move(script);

  bundle.target_radices.assign(n, d);
  bundle.mixer = uniform_z_string_mixer(bundle.target_radices);
  bundle.target_dim = dim;
  for (std::size_t c = 0; c < m; ++c) bundle.controllers.push_back(Party::controller(static_cast<int>(c)));
  bundle.audited_controller = Party::controller(static_cast<int>(m - 1));
  bundle.success_probability = [dim](const PureState& target) {
    // Acceptance of the optimal amplitude-encoding filter on a balanced
    // channel: (1/D) / max_x |t_x|^2.
    double max2 = 0.0;
    for (std::size_t x = 0; x < target.dim(); ++x) max2 = std::max(max2, std::norm(target[x]));
    return 1.0 / (static_cast<double>(dim) * max2);
  };
  return bundle;
}

ProtocolBundle make_p7(const std::map<std::string, double>& params) {
  const std::size_t d = get_int_param(params, "d", 2);
  if (d < 2 || d > 4)
    throw std::invalid_argument("P7: d must lie in [2, 4] (channel has six qudits)");
  ProtocolBundle bundle;
  bundle.id = "P7";
  bundle.summary = "two-qudit preparation over three generalized Bell states";
  bundle.params = {{"d", static_cast<double>(d)}};
  std::vector<ChannelSpec> parts{
      make_generalized_bell(d, 0, 0, Party::sender(), Party::receiver()),
      make_generalized_bell(d, 0, 0, Party::sender(), Party::controller()),
      make_generalized_bell(d, 0, 0, Party::receiver(), Party::controller())};
  std::ostringstream name;
  name << "gbell00(d=" << d << ")^3";
  bundle.channel = tensor_channels(parts, name.str());
  bundle.target_radices = {d, d};
  bundle.mixer = uniform_z_string_mixer(bundle.target_radices);
  bundle.target_dim = d * d;
  bundle.controllers = {Party::controller()};
  bundle.audited_controller = Party::controller();
  return bundle;
}

}  // namespace

ProtocolBundle builtin(const std::string& id, const std::map<std::string, double>& params) {
  if (id == "P1") return make_p1(params);
  if (id == "P2") return make_p2(params);
  if (id == "P3") return make_p3(params);
  if (id == "P4") return make_p4(params);
  if (id == "P5") return make_p5(params);
  if (id == "P6") return make_p6(params);
  if (id == "P7") return make_p7(params);
  throw std::invalid_argument("unknown protocol id '" + id + "' (expected P1..P7)");
}

std::vector<ProtocolSchema> protocol_schemas() {
  return {
      {"P1", "single-qubit preparation over the rotated 3-qubit maximal-slice channel",
       "b2 in (0, 0.5] (or c, d with c^2 + d^2 = 1)", "D = 2"},
      {"P2", "two-sender single-qubit preparation over the rotated 4-qubit maximal slice",
       "b2 in (0, 0.5] (or c, d with c^2 + d^2 = 1)", "D = 2"},
      {"P3", "N-qubit equatorial preparation over N-1 Bell pairs and one GHZ",
       "N in [1, 6] (default 1)", "D = 2^N"},
      {"P4", "two-qubit preparation over the five-qubit Brown state", "none", "D = 4"},
      {"P5", "joint N-qubit preparation over filtered partially entangled GHZ states",
       "N >= 1 (default 1), M >= 1 (default 1), a2 in [0.5, 1) (default 0.8)", "D = 2^N"},
      {"P6", "N-qudit preparation over generalized GHZ-class states with M controllers",
       "d >= 2 (default 2), M >= 1 (default 1), N >= 1 (default 1)", "D = d^N"},
      {"P7", "two-qudit preparation over three generalized Bell states",
       "d in [2, 4] (default 2)", "D = d^2"},
  };
}

}  // namespace crsp
