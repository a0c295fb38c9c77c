// SPDX-License-Identifier: Apache-2.0

#include "rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crsp {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 1));
}

double SampleRng::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double SampleRng::uniform_pos() {
  return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
}

double SampleRng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_pos();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

cplx SampleRng::gaussian() {
  const double re = normal();
  const double im = normal();
  return cplx{re, im};
}

PureState haar_random_pure(const std::vector<std::size_t>& dims, std::uint64_t seed,
                           const Party& owner) {
  std::vector<Subsystem> subs;
  subs.reserve(dims.size());
  for (std::size_t d : dims) subs.push_back(Subsystem{d, owner});
  SystemLayout layout(std::move(subs));

  SampleRng rng(seed);
  std::vector<cplx> amp(layout.total_dim());
  double norm2 = 0.0;
  for (auto& z : amp) {
    z = rng.gaussian();
    norm2 += std::norm(z);
  }
  if (norm2 <= 0.0) throw std::runtime_error("haar_random_pure: degenerate draw");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& z : amp) z *= inv;
  return PureState(std::move(amp), std::move(layout));
}

PureState haar_random_pure(std::size_t dim, std::uint64_t seed, const Party& owner) {
  if (dim < 2) throw std::invalid_argument("haar_random_pure: dimension must be >= 2");
  return haar_random_pure(std::vector<std::size_t>{dim}, seed, owner);
}

PureState equatorial_random(std::size_t n_qubits, std::uint64_t seed, const Party& owner) {
  if (n_qubits < 1) throw std::invalid_argument("equatorial_random: need at least one qubit");
  SystemLayout layout = SystemLayout::uniform(n_qubits, 2, owner);
  SampleRng rng(seed);
  const double mag = std::pow(2.0, -0.5 * static_cast<double>(n_qubits));
  std::vector<cplx> amp(layout.total_dim());
  for (auto& z : amp) {
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    z = cplx{mag * std::cos(theta), mag * std::sin(theta)};
  }
  return PureState(std::move(amp), std::move(layout));
}

UnitaryOperator haar_random_unitary(std::size_t dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("haar_random_unitary: bad dimension");
  SampleRng rng(seed);
  // Ginibre columns orthonormalized in order (modified Gram-Schmidt with a
  // re-orthogonalization pass). Normalization against a positive real norm
  // keeps the R diagonal positive, which makes the result Haar distributed.
  std::vector<std::vector<cplx>> cols(dim, std::vector<cplx>(dim));
  for (auto& col : cols)
    for (auto& z : col) z = rng.gaussian();

  for (std::size_t j = 0; j < dim; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        cplx proj;
        for (std::size_t i = 0; i < dim; ++i) proj += std::conj(cols[k][i]) * cols[j][i];
        for (std::size_t i = 0; i < dim; ++i) cols[j][i] -= proj * cols[k][i];
      }
    }
    double n2 = 0.0;
    for (const auto& z : cols[j]) n2 += std::norm(z);
    if (n2 < 1e-24) throw std::runtime_error("haar_random_unitary: rank-deficient draw");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& z : cols[j]) z *= inv;
  }

  CMat m(dim, dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = cols[j][i];
  return UnitaryOperator(std::move(m));
}

}  // namespace crsp
