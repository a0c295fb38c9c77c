// SPDX-License-Identifier: Apache-2.0
//
// Protocol execution conditioned on success. A StepScript describes the
// non-controller parties' measurements, filters and feed-forward
// corrections; running it against a channel and a target state enumerates
// every outcome branch, drops rejected ones and renormalizes, leaving the
// joint state of the receiver and the audited controller. Each built-in
// protocol also carries a mixer model: the receiver's controller-traced
// state as a probability mixture of unitary corrections of the target.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "channels.hpp"
#include "tensor.hpp"

namespace crsp {

/// Raised when every branch of a protocol run is rejected.
class DegenerateProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// mixer model
// ---------------------------------------------------------------------------

struct MixerTerm {
  double weight = 0.0;
  UnitaryOperator correction;
};

/// rho_B = sum_j p_j U_j |t><t| U_j^dag. Term 0 is always the identity.
struct MixerModel {
  std::vector<MixerTerm> terms;

  explicit MixerModel(std::vector<MixerTerm> t);
  MixerModel() = default;

  std::size_t dimension() const { return terms.empty() ? 0 : terms.front().correction.dim(); }
};

DensityOperator mixer_rho(const MixerModel& mixer, const PureState& target);

// ---------------------------------------------------------------------------
// step script
// ---------------------------------------------------------------------------

/// Measurement of sender subsystems in a basis steering the receiver toward
/// the target. `groups[k]` lists the channel subsystems that jointly carry
/// target digit k (replicated across each subsystem of the group).
struct TargetBasisMeasurement {
  std::vector<std::vector<std::size_t>> groups;
  enum class Mode {
    // Keep only the steering outcome; the remaining outcomes are
    // uncorrectable for arbitrary targets (no universal NOT).
    SteerOnly,
    // Jointly known target split across senders measuring adaptively: every
    // outcome is correctable, so the run contributes a single branch of
    // unit conditional probability. Requires a copy-structured channel.
    Deterministic,
    // Equatorial targets only: all outcomes are kept and corrected by a
    // sign-flip string on the receiver subsystems listed in `feedforward`.
    EquatorialAll,
  };
  Mode mode = Mode::SteerOnly;
  std::vector<std::size_t> feedforward;
};

/// Local filtering with a diagonal Kraus operator and an explicit
/// accept/reject outcome; rejected branches are dropped.
struct FilterStep {
  std::vector<std::size_t> subsystems;
  enum class Kind {
    // Entries given explicitly (e.g. diag(b/a, 1) balancing a partially
    // entangled pair; acceptance probability 2 b^2).
    FixedDiagonal,
    // Entries kappa * t_x / w_x encode the target amplitudes over the
    // channel weights w_x, with kappa maximal subject to |entry| <= 1.
    TargetEncoding,
  };
  Kind kind = Kind::FixedDiagonal;
  std::vector<cplx> kraus_diag;        // FixedDiagonal
  std::vector<double> channel_weights;  // TargetEncoding
};

/// Fourier-basis measurement of one subsystem; outcome k feeds forward the
/// phase correction Z^k on a receiver subsystem. All outcomes are kept.
struct XBasisMeasurement {
  std::size_t subsystem = 0;
  std::optional<std::size_t> feedforward_subsystem;
};

using ProtocolStep = std::variant<TargetBasisMeasurement, FilterStep, XBasisMeasurement>;

struct StepScript {
  std::vector<ProtocolStep> steps;
};

// ---------------------------------------------------------------------------
// conditioned execution
// ---------------------------------------------------------------------------

struct ConditionedBranch {
  double probability = 0.0;  // renormalized over accepted branches
  PureState state;           // over the remaining (receiver + controller) subsystems
};

struct ConditionedJointState {
  std::vector<ConditionedBranch> ensemble;
  double success_probability = 0.0;
  SystemLayout layout;  // of the remaining subsystems
};

/// Orthonormal basis whose first element is the conjugate of the target
/// (projecting the sender half of a maximally entangled pair onto it steers
/// the receiver to the target). Completion is a deterministic Gram-Schmidt
/// over canonical vectors, picking the largest remaining component first.
std::vector<PureState> rsp_basis(const PureState& target);

/// Runs the script against the channel, conditioning on success. Steps may
/// not measure receiver subsystems or subsystems of `audited_controller`;
/// feed-forward corrections act on receiver subsystems only.
ConditionedJointState run_conditioned(const ChannelSpec& channel, const StepScript& script,
                                      const PureState& target, const Party& audited_controller);

/// Receiver's state: branch-weighted partial trace over everything except
/// the receiver subsystems. `controller` must own at least one remaining
/// subsystem.
DensityOperator reduce_receiver(const ConditionedJointState& joint, const Party& controller);

// ---------------------------------------------------------------------------
// built-in protocols
// ---------------------------------------------------------------------------

struct ProtocolBundle {
  std::string id;
  std::string summary;
  std::map<std::string, double> params;
  ChannelSpec channel;
  std::optional<StepScript> script;  // absent when only the mixer is modeled
  MixerModel mixer;
  std::size_t target_dim = 0;               // D
  std::vector<std::size_t> target_radices;  // per-digit dimensions (receiver order)
  std::vector<Party> controllers;
  Party audited_controller;
  // Success probability of the modeled non-controller steps for a target;
  // null when the measurement circuit is not modeled (mixer only).
  std::function<double(const PureState&)> success_probability;
};

/// Instantiates one of the built-in protocols P1..P7.
///   P1 single-qubit preparation over the rotated 3-qubit maximal slice
///   P2 two-sender variant over the rotated 4-qubit maximal slice
///   P3 N-qubit equatorial preparation over N-1 Bell pairs and a GHZ
///   P4 two-qubit preparation over the Brown state (mixer only)
///   P5 joint preparation of N qubits over filtered partial GHZ states
///   P6 qudit preparation over generalized GHZ-class states, M controllers
///   P7 two-qudit preparation over three generalized Bell states (mixer only)
ProtocolBundle builtin(const std::string& id, const std::map<std::string, double>& params);

/// Parameter schema line for one protocol (used by the catalog listing).
struct ProtocolSchema {
  std::string id;
  std::string summary;
  std::string params;
  std::string dimension;
};
std::vector<ProtocolSchema> protocol_schemas();

}  // namespace crsp
