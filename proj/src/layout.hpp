// SPDX-License-Identifier: Apache-2.0
//
// Party tags and multi-qudit system layouts. A layout assigns every
// subsystem a dimension and an owning party; state indices are read as
// mixed-radix numbers with subsystem 0 as the most significant digit.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace crsp {

enum class PartyKind { Sender, Receiver, Controller, Ancilla };

/// Identifies who holds a subsystem. Senders and controllers are numbered;
/// an ancilla records the party it assists.
struct Party {
  PartyKind kind = PartyKind::Sender;
  int index = 0;
  // For ancillas only: the assisted party.
  PartyKind host_kind = PartyKind::Sender;
  int host_index = 0;

  static Party sender(int i = 0) { return Party{PartyKind::Sender, i, PartyKind::Sender, 0}; }
  static Party receiver() { return Party{PartyKind::Receiver, 0, PartyKind::Sender, 0}; }
  static Party controller(int i = 0) { return Party{PartyKind::Controller, i, PartyKind::Sender, 0}; }
  static Party ancilla(const Party& host) {
    return Party{PartyKind::Ancilla, 0, host.kind, host.index};
  }

  bool operator==(const Party& o) const;
  bool operator!=(const Party& o) const { return !(*this == o); }

  /// Short label such as "S0", "R", "C1", "anc(S0)".
  std::string label() const;
};

struct Subsystem {
  std::size_t dim = 2;
  Party owner;
};

/// Ordered list of subsystems over which states and operators are defined.
class SystemLayout {
 public:
  SystemLayout() = default;
  explicit SystemLayout(std::vector<Subsystem> subsystems);

  /// Uniform helper: n subsystems of dimension d, all owned by `owner`.
  static SystemLayout uniform(std::size_t n, std::size_t d, const Party& owner);

  std::size_t size() const { return subsystems_.size(); }
  const Subsystem& at(std::size_t i) const { return subsystems_.at(i); }
  std::size_t total_dim() const { return total_dim_; }

  /// Index weight of subsystem i (product of dimensions to its right).
  std::size_t stride(std::size_t i) const { return strides_.at(i); }

  /// Digit of `index` at subsystem i.
  std::size_t digit(std::size_t index, std::size_t i) const {
    return (index / strides_.at(i)) % subsystems_.at(i).dim;
  }

  std::vector<std::size_t> indices_owned_by(const Party& p) const;

  /// Distinct parties in first-appearance order.
  std::vector<Party> parties() const;

  /// Sub-layout of the listed subsystems, in the order given.
  SystemLayout select(const std::vector<std::size_t>& keep) const;

  /// Concatenation: subsystems of `other` appended after ours.
  SystemLayout concat(const SystemLayout& other) const;

  std::string describe() const;

 private:
  std::vector<Subsystem> subsystems_;
  std::vector<std::size_t> strides_;
  std::size_t total_dim_ = 1;
};

}  // namespace crsp
