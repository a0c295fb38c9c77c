// SPDX-License-Identifier: Apache-2.0
//
// Control-power analysis: averaged non-conditioned fidelity (Monte Carlo
// and analytic), classical limits, the acceptability verdict and the
// controller entropy audit.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "protocol.hpp"
#include "rng.hpp"
#include "spectra.hpp"

namespace crsp {

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

/// Best fidelity achievable with classical correlations only: 2 / (1 + D).
double classical_limit(std::size_t dimension);

/// Minimum control power for acceptability: (D - 1) / (D + 1). Computed as
/// 1 - classical_limit(D) so the two always sum to exactly 1.
double power_bound(std::size_t dimension);

/// P = 1 - average NCF.
double control_power(double average_ncf);

enum class Verdict { Acceptable, Insufficient };
const char* verdict_name(Verdict v);

/// Acceptable iff power >= power_bound(D) - tolerance.
Verdict verdict(double power, std::size_t dimension, double tolerance);

// ---------------------------------------------------------------------------
// target ensembles and Monte Carlo
// ---------------------------------------------------------------------------

struct TargetEnsemble {
  enum class Kind { Haar, Equatorial, Fixed };
  Kind kind = Kind::Haar;
  std::size_t dimension = 2;  // Haar
  std::size_t qubits = 1;     // Equatorial
  std::optional<PureState> fixed;
  std::size_t samples = 1;
  std::uint64_t seed = 0;

  static TargetEnsemble haar(std::size_t dimension, std::size_t samples, std::uint64_t seed);
  static TargetEnsemble equatorial(std::size_t qubits, std::size_t samples, std::uint64_t seed);
  static TargetEnsemble fixed_state(PureState state, std::size_t samples, std::uint64_t seed);

  std::size_t dim() const;
  const char* kind_name() const;
  PureState draw(std::size_t index) const;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

struct McResult {
  McEstimate ncf;
  // Mean success probability of the modeled protocol steps; empty when the
  // protocol is mixer-only.
  std::optional<double> mean_success;
};

/// Monte Carlo average of fidelity(target, rho_B) with rho_B from the mixer
/// model. Per-sample seeds derive from (seed, index); accumulation uses
/// compensated summation in index order, so results are independent of the
/// thread count.
McResult average_ncf_mc(const ProtocolBundle& bundle, const TargetEnsemble& ensemble,
                        unsigned threads = 1);

/// Haar-ensemble average of the mixer NCF:
/// sum_j p_j (D + |tr U_j|^2) / (D (D + 1)).
double average_ncf_analytic(const MixerModel& mixer);

// ---------------------------------------------------------------------------
// entropy audit
// ---------------------------------------------------------------------------

struct EntropyAudit {
  std::vector<double> entropies;  // bits, one per controller
  double required_bits = 0.0;     // log2 D
  bool pass = false;              // every controller reaches the requirement
};

/// Entropy of each controller's reduction of the raw channel state, checked
/// against log2 D.
EntropyAudit controller_entropy_audit(const ChannelSpec& channel,
                                      const std::vector<Party>& controllers,
                                      std::size_t target_dimension);
EntropyAudit controller_entropy_audit(const ChannelSpec& channel, const Party& controller,
                                      std::size_t target_dimension);

struct EntropyRow {
  std::string channel;
  std::vector<double> entropies;          // one per subsystem (3-qubit channels)
  std::vector<std::string> classified;    // "=1" or "<1" at tolerance 1e-9
};

/// Subsystem entropies of the three-qubit catalog channels: GHZ, the
/// maximal slice with parameter d, and the partially entangled GHZ with
/// weight a2.
std::vector<EntropyRow> entropy_table(double ms_d, double pghz_a2);

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

struct PowerReport {
  std::string protocol;
  std::string summary;
  std::map<std::string, double> params;
  std::size_t dimension = 0;
  std::string ensemble;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::optional<double> ncf_analytic;
  double ncf_mc = 0.0;
  double ncf_mc_stderr = 0.0;
  double average_ncf = 0.0;  // analytic when available, else the MC estimate
  double power = 0.0;        // 1 - average_ncf
  double limit_classical = 0.0;
  double bound = 0.0;
  Verdict verdict_value = Verdict::Insufficient;
  double verdict_tolerance = 0.0;  // tolerance actually applied
  std::vector<double> controller_entropies;
  double entropy_required = 0.0;
  bool entropy_pass = false;
  std::optional<double> success_probability;
};

struct EnsembleSpec {
  TargetEnsemble::Kind kind = TargetEnsemble::Kind::Haar;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
};

/// Full analysis of one protocol instance. The analytic NCF is reported for
/// Haar ensembles; the verdict uses the analytic value at
/// `analytic_tolerance` when available and the MC estimate at three standard
/// errors otherwise.
PowerReport analyze(const ProtocolBundle& bundle, const EnsembleSpec& ensemble,
                    double analytic_tolerance = 1e-6, unsigned threads = 1);

/// Parameter names accepted by `sweep` for each protocol.
std::vector<std::string> sweep_parameter_names(const std::string& protocol_id);

/// One report per grid value of the named parameter. Every point reuses the
/// same ensemble seed (common random numbers), so a single-point sweep
/// matches the corresponding analyze call.
std::vector<PowerReport> sweep(const std::string& protocol_id,
                               const std::map<std::string, double>& base_params,
                               const std::string& parameter, const std::vector<double>& grid,
                               const EnsembleSpec& ensemble, double analytic_tolerance = 1e-6,
                               unsigned threads = 1);

}  // namespace crsp
