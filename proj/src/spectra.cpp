// SPDX-License-Identifier: Apache-2.0

#include "spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crsp {

namespace {
constexpr double kOffDiagThreshold = 1e-12;
constexpr int kMaxSweeps = 100;
constexpr double kEigenFloor = 1e-12;

double off_diagonal_norm(const CMat& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}
}  // namespace

std::vector<double> hermitian_eigenvalues(const CMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues: matrix not square");
  if (!m.is_hermitian(kHermitianTol))
    throw std::invalid_argument("eigenvalues: matrix not Hermitian");
  const std::size_t n = m.rows();

  // Work on the exactly Hermitian part; rounding asymmetry is averaged away.
  CMat a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > kOffDiagThreshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= kOffDiagThreshold / (double)(n * n)) continue;

        // Zero a(p,q) with the unitary V = diag(1, e^{-i phi}) * G(theta),
        // where phi is the phase of a(p,q) and G is a real Jacobi rotation.
        const cplx phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        double t;
        if (tau >= 0)
          t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
        else
          t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Column update: A <- A V with V[p][p]=c, V[p][q]=s,
        // V[q][p]=-s e^{-i phi}, V[q][q]=c e^{-i phi}.
        const cplx e_m = std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * e_m * akq;
          a(k, q) = s * akp + c * e_m * akq;
        }
        // Row update: A <- V^dag A.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cplx{a(p, p).real(), 0.0};
        a(q, q) = cplx{a(q, q).real(), 0.0};
      }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
  std::sort(eig.begin(), eig.end(), std::greater<double>());
  return eig;
}

std::vector<double> hermitian_eigenvalues(const DensityOperator& rho) {
  return hermitian_eigenvalues(rho.matrix());
}

double von_neumann_entropy(const DensityOperator& rho) {
  double s = 0.0;
  for (double p : hermitian_eigenvalues(rho.matrix())) {
    if (p < -kPsdTol) throw std::runtime_error("entropy: operator not positive semidefinite");
    if (p < kEigenFloor) continue;
    s -= p * std::log2(p);
  }
  return s;
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("binary_entropy: p outside [0, 1]");
  double s = 0.0;
  if (p > kEigenFloor) s -= p * std::log2(p);
  if (1.0 - p > kEigenFloor) s -= (1.0 - p) * std::log2(1.0 - p);
  return s;
}

}  // namespace crsp
