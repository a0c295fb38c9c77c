// SPDX-License-Identifier: Apache-2.0
//
// Seeded sampling: Haar-random pure states, equatorial states and
// Haar-random unitaries. Every draw is a pure function of an explicit
// 64-bit seed; per-sample seeds are derived from (master seed, index) so
// results do not depend on evaluation order or thread count.
//
// Uniform and normal variates are generated from raw mt19937_64 output
// (53-bit mantissa scaling and an explicit Box-Muller transform) rather
// than std distributions, whose streams vary across standard libraries.

#pragma once

#include <cstdint>
#include <random>

#include "tensor.hpp"

namespace crsp {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for sample `index` of a run keyed by `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on (0, 1].
  double uniform_pos();
  /// Standard normal (Box-Muller).
  double normal();
  /// Standard complex Gaussian (independent N(0,1) parts).
  cplx gaussian();

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-random pure state over the given subsystem dimensions: i.i.d.
/// complex Gaussian amplitudes, normalized.
PureState haar_random_pure(const std::vector<std::size_t>& dims, std::uint64_t seed,
                           const Party& owner = Party::receiver());
PureState haar_random_pure(std::size_t dim, std::uint64_t seed,
                           const Party& owner = Party::receiver());

/// n-qubit equatorial state: all 2^n amplitudes of magnitude 2^{-n/2},
/// phases i.i.d. uniform.
PureState equatorial_random(std::size_t n_qubits, std::uint64_t seed,
                            const Party& owner = Party::receiver());

/// Haar-random unitary (QR of a complex Ginibre matrix with the phase
/// convention fixed so the result is seed-deterministic).
UnitaryOperator haar_random_unitary(std::size_t dim, std::uint64_t seed);

}  // namespace crsp
