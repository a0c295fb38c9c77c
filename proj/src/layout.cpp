// SPDX-License-Identifier: Apache-2.0

#include "layout.hpp"

#include <sstream>
#include <stdexcept>

namespace crsp {

namespace {
// Hard cap on the total Hilbert-space dimension; dense operations above
// this are out of scope for this library.
constexpr std::size_t kMaxTotalDim = std::size_t(1) << 13;

const char* kind_tag(PartyKind k) {
  switch (k) {
    case PartyKind::Sender: return "S";
    case PartyKind::Receiver: return "R";
    case PartyKind::Controller: return "C";
    case PartyKind::Ancilla: return "anc";
  }
  return "?";
}
}  // namespace

bool Party::operator==(const Party& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case PartyKind::Receiver: return true;
    case PartyKind::Sender:
    case PartyKind::Controller: return index == o.index;
    case PartyKind::Ancilla: return host_kind == o.host_kind && host_index == o.host_index;
  }
  return false;
}

std::string Party::label() const {
  std::ostringstream os;
  switch (kind) {
    case PartyKind::Receiver: os << "R"; break;
    case PartyKind::Sender:
    case PartyKind::Controller: os << kind_tag(kind) << index; break;
    case PartyKind::Ancilla:
      os << "anc(" << kind_tag(host_kind);
      if (host_kind != PartyKind::Receiver) os << host_index;
      os << ")";
      break;
  }
  return os.str();
}

SystemLayout::SystemLayout(std::vector<Subsystem> subsystems)
    : subsystems_(std::move(subsystems)) {
  if (subsystems_.empty()) throw std::invalid_argument("layout: no subsystems");
  total_dim_ = 1;
  for (const auto& s : subsystems_) {
    if (s.dim < 2) throw std::invalid_argument("layout: subsystem dimension must be >= 2");
    if (total_dim_ > kMaxTotalDim / s.dim)
      throw std::invalid_argument("layout: total dimension exceeds supported range");
    total_dim_ *= s.dim;
  }
  strides_.resize(subsystems_.size());
  std::size_t acc = 1;
  for (std::size_t i = subsystems_.size(); i-- > 0;) {
    strides_[i] = acc;
    acc *= subsystems_[i].dim;
  }
}

SystemLayout SystemLayout::uniform(std::size_t n, std::size_t d, const Party& owner) {
  std::vector<Subsystem> subs(n, Subsystem{d, owner});
  return SystemLayout(std::move(subs));
}

std::vector<std::size_t> SystemLayout::indices_owned_by(const Party& p) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < subsystems_.size(); ++i)
    if (subsystems_[i].owner == p) out.push_back(i);
  return out;
}

std::vector<Party> SystemLayout::parties() const {
  std::vector<Party> out;
  for (const auto& s : subsystems_) {
    bool seen = false;
    for (const auto& p : out)
      if (p == s.owner) { seen = true; break; }
    if (!seen) out.push_back(s.owner);
  }
  return out;
}

SystemLayout SystemLayout::select(const std::vector<std::size_t>& keep) const {
  std::vector<Subsystem> subs;
  subs.reserve(keep.size());
  for (std::size_t i : keep) subs.push_back(subsystems_.at(i));
  return SystemLayout(std::move(subs));
}

SystemLayout SystemLayout::concat(const SystemLayout& other) const {
  std::vector<Subsystem> subs = subsystems_;
  subs.insert(subs.end(), other.subsystems_.begin(), other.subsystems_.end());
  return SystemLayout(std::move(subs));
}

std::string SystemLayout::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    if (i) os << " ";
    os << subsystems_[i].owner.label() << ":" << subsystems_[i].dim;
  }
  return os.str();
}

}  // namespace crsp
