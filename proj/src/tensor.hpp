// SPDX-License-Identifier: Apache-2.0
//
// Dense complex linear algebra over multi-qudit product spaces: state and
// operator types, Kronecker products, unitary application on arbitrary
// subsystems, measurement projection, partial trace and fidelity.

#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "layout.hpp"

namespace crsp {

using cplx = std::complex<double>;

constexpr double kNormTol = 1e-10;
constexpr double kHermitianTol = 1e-10;
constexpr double kPsdTol = 1e-9;
constexpr double kZeroBranchTol = 1e-12;

/// Minimal dense complex matrix, row major.
class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static CMat identity(std::size_t n);
  static CMat diagonal(const std::vector<cplx>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  CMat adjoint() const;
  CMat operator*(const CMat& rhs) const;
  CMat operator+(const CMat& rhs) const;
  CMat& operator*=(double s);

  cplx trace() const;
  double max_abs() const;
  double max_abs_diff(const CMat& other) const;
  bool is_identity(double tol) const;
  bool is_hermitian(double tol) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

CMat kron(const CMat& a, const CMat& b);

/// Unit-norm state vector over a layout. Amplitude index i encodes the
/// subsystem digits in mixed radix, subsystem 0 most significant.
class PureState {
 public:
  PureState() = default;
  PureState(std::vector<cplx> amplitudes, SystemLayout layout);

  /// Single-subsystem layout of dimension amplitudes.size().
  static PureState flat(std::vector<cplx> amplitudes,
                        const Party& owner = Party::receiver());

  /// Computational basis state |index> over the layout.
  static PureState basis(const SystemLayout& layout, std::size_t index);

  const std::vector<cplx>& amplitudes() const { return amp_; }
  const SystemLayout& layout() const { return layout_; }
  std::size_t dim() const { return amp_.size(); }
  const cplx& operator[](std::size_t i) const { return amp_[i]; }

  /// Inner product <this|other>.
  cplx inner(const PureState& other) const;

 private:
  std::vector<cplx> amp_;
  SystemLayout layout_;
};

PureState kron(const PureState& a, const PureState& b);

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityOperator {
 public:
  DensityOperator() = default;
  DensityOperator(CMat matrix, SystemLayout layout);

  /// |psi><psi| over psi's layout.
  static DensityOperator pure(const PureState& psi);

  const CMat& matrix() const { return mat_; }
  const SystemLayout& layout() const { return layout_; }
  std::size_t dim() const { return mat_.rows(); }

  /// Convex combination accumulator; weights must sum to 1 when done.
  void accumulate(double weight, const DensityOperator& other);

 private:
  CMat mat_;
  SystemLayout layout_;
};

class UnitaryOperator {
 public:
  UnitaryOperator() = default;
  explicit UnitaryOperator(CMat matrix);

  const CMat& matrix() const { return mat_; }
  std::size_t dim() const { return mat_.rows(); }

 private:
  CMat mat_;
};

UnitaryOperator kron(const UnitaryOperator& a, const UnitaryOperator& b);

/// Applies u to the listed subsystems (targets[0] is the most significant
/// digit of u's index space). Norm is preserved.
PureState apply_unitary(const PureState& state, const UnitaryOperator& u,
                        const std::vector<std::size_t>& targets);

struct ProjectionResult {
  double probability = 0.0;
  // Post-measurement state over the remaining subsystems, renormalized.
  // Empty when the outcome probability is below kZeroBranchTol.
  std::optional<PureState> post;
};

/// Projects the listed subsystems onto `direction` (a normalized vector of
/// dimension = product of the target dimensions) and removes them.
ProjectionResult project(const PureState& state, const std::vector<cplx>& direction,
                         const std::vector<std::size_t>& targets);

/// Reduced density operator over the subsystems in `keep` (original order
/// is preserved regardless of the order given).
DensityOperator partial_trace(const PureState& psi, const std::vector<std::size_t>& keep);
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::size_t>& keep);

/// <target| rho |target>, clamped to [0, 1 + 1e-10].
double fidelity(const PureState& target, const DensityOperator& rho);

/// |<a|b>|^2, a global-phase-insensitive pure-state comparison.
double overlap2(const PureState& a, const PureState& b);

enum class PauliKind { X, Z };

/// exp(2 pi i numerator / d), exact at quarter turns (+-1, +-i).
cplx root_of_unity(std::size_t numerator, std::size_t d);

/// Generalized Pauli on a d-level system: Z|j> = w^j |j>, X|j> = |j+1 mod d>
/// with w = exp(2 pi i / d), raised to `power`.
UnitaryOperator generalized_pauli(std::size_t d, PauliKind kind, long power = 1);

/// Fourier basis vector |k>_x = d^{-1/2} sum_j exp(2 pi i jk / d) |j>.
PureState generalized_x_basis(std::size_t d, std::size_t k);

}  // namespace crsp
