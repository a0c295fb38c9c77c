// SPDX-License-Identifier: Apache-2.0

#include "tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crsp {

namespace {

double vec_norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

// Enumerates global indices by splitting them into (target digits, rest).
// For each combination of non-target digits, `base` is the global index with
// all target digits zero; target combination t adds sum(t_k * stride_k).
struct TargetSplit {
  std::vector<std::size_t> target_strides;
  std::vector<std::size_t> target_dims;
  std::size_t target_dim_total = 1;
  std::vector<std::size_t> rest_bases;  // global base index per rest combination

  TargetSplit(const SystemLayout& layout, const std::vector<std::size_t>& targets) {
    std::vector<bool> is_target(layout.size(), false);
    for (std::size_t t : targets) {
      if (t >= layout.size()) throw std::invalid_argument("subsystem index out of range");
      if (is_target[t]) throw std::invalid_argument("duplicate subsystem index");
      is_target[t] = true;
      target_strides.push_back(layout.stride(t));
      target_dims.push_back(layout.at(t).dim);
      target_dim_total *= layout.at(t).dim;
    }
    std::vector<std::size_t> rest;
    std::size_t rest_total = 1;
    for (std::size_t i = 0; i < layout.size(); ++i)
      if (!is_target[i]) {
        rest.push_back(i);
        rest_total *= layout.at(i).dim;
      }
    rest_bases.resize(rest_total);
    for (std::size_t r = 0; r < rest_total; ++r) {
      std::size_t idx = 0, acc = r;
      for (std::size_t k = rest.size(); k-- > 0;) {
        std::size_t d = layout.at(rest[k]).dim;
        idx += (acc % d) * layout.stride(rest[k]);
        acc /= d;
      }
      rest_bases[r] = idx;
    }
  }

  std::size_t target_offset(std::size_t t) const {
    std::size_t off = 0, acc = t;
    for (std::size_t k = target_strides.size(); k-- > 0;) {
      off += (acc % target_dims[k]) * target_strides[k];
      acc /= target_dims[k];
    }
    return off;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// CMat
// ---------------------------------------------------------------------------

CMat CMat::identity(std::size_t n) {
  CMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::diagonal(const std::vector<cplx>& entries) {
  CMat m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

CMat CMat::adjoint() const {
  CMat m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

CMat CMat::operator*(const CMat& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  CMat m(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const cplx aik = (*this)(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) m(i, j) += aik * rhs(k, j);
    }
  return m;
}

CMat CMat::operator+(const CMat& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix sum: shape mismatch");
  CMat m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += rhs.a_[i];
  return m;
}

CMat& CMat::operator*=(double s) {
  for (auto& z : a_) z *= s;
  return *this;
}

cplx CMat::trace() const {
  cplx t;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double CMat::max_abs() const {
  double m = 0.0;
  for (const auto& z : a_) m = std::max(m, std::abs(z));
  return m;
}

double CMat::max_abs_diff(const CMat& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - other.a_[i]));
  return m;
}

bool CMat::is_identity(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      cplx want = (i == j) ? cplx{1.0, 0.0} : cplx{};
      if (std::abs((*this)(i, j) - want) > tol) return false;
    }
  return true;
}

bool CMat::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return m;
}

// ---------------------------------------------------------------------------
// PureState
// ---------------------------------------------------------------------------

PureState::PureState(std::vector<cplx> amplitudes, SystemLayout layout)
    : amp_(std::move(amplitudes)), layout_(std::move(layout)) {
  if (amp_.size() != layout_.total_dim())
    throw std::invalid_argument("state: amplitude count does not match layout dimension");
  if (std::abs(vec_norm(amp_) - 1.0) > kNormTol)
    throw std::invalid_argument("state: not normalized");
}

PureState PureState::flat(std::vector<cplx> amplitudes, const Party& owner) {
  SystemLayout layout({Subsystem{amplitudes.size(), owner}});
  return PureState(std::move(amplitudes), std::move(layout));
}

PureState PureState::basis(const SystemLayout& layout, std::size_t index) {
  std::vector<cplx> amp(layout.total_dim());
  amp.at(index) = 1.0;
  return PureState(std::move(amp), layout);
}

cplx PureState::inner(const PureState& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("inner product: dimension mismatch");
  cplx s;
  for (std::size_t i = 0; i < amp_.size(); ++i) s += std::conj(amp_[i]) * other.amp_[i];
  return s;
}

PureState kron(const PureState& a, const PureState& b) {
  std::vector<cplx> amp(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i] == cplx{}) continue;
    for (std::size_t j = 0; j < b.dim(); ++j) amp[i * b.dim() + j] = a[i] * b[j];
  }
  return PureState(std::move(amp), a.layout().concat(b.layout()));
}

// ---------------------------------------------------------------------------
// DensityOperator / UnitaryOperator
// ---------------------------------------------------------------------------

DensityOperator::DensityOperator(CMat matrix, SystemLayout layout)
    : mat_(std::move(matrix)), layout_(std::move(layout)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() != layout_.total_dim())
    throw std::invalid_argument("density operator: shape does not match layout");
  if (!mat_.is_hermitian(kHermitianTol))
    throw std::invalid_argument("density operator: not Hermitian");
  if (std::abs(mat_.trace() - cplx{1.0, 0.0}) > kNormTol)
    throw std::invalid_argument("density operator: trace != 1");
}

DensityOperator DensityOperator::pure(const PureState& psi) {
  CMat m(psi.dim(), psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i)
    for (std::size_t j = 0; j < psi.dim(); ++j) m(i, j) = psi[i] * std::conj(psi[j]);
  return DensityOperator(std::move(m), psi.layout());
}

void DensityOperator::accumulate(double weight, const DensityOperator& other) {
  if (mat_.rows() == 0) {
    mat_ = other.mat_;
    mat_ *= weight;
    layout_ = other.layout_;
    return;
  }
  if (dim() != other.dim()) throw std::invalid_argument("mixture: dimension mismatch");
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) mat_(i, j) += weight * other.mat_(i, j);
}

UnitaryOperator::UnitaryOperator(CMat matrix) : mat_(std::move(matrix)) {
  if (mat_.rows() != mat_.cols()) throw std::invalid_argument("unitary: not square");
  if (!(mat_.adjoint() * mat_).is_identity(kNormTol))
    throw std::invalid_argument("unitary: U^dag U != I");
}

UnitaryOperator kron(const UnitaryOperator& a, const UnitaryOperator& b) {
  return UnitaryOperator(kron(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------
// apply / project / trace / fidelity
// ---------------------------------------------------------------------------

PureState apply_unitary(const PureState& state, const UnitaryOperator& u,
                        const std::vector<std::size_t>& targets) {
  TargetSplit split(state.layout(), targets);
  if (u.dim() != split.target_dim_total)
    throw std::invalid_argument("apply_unitary: operator does not match target dimensions");

  std::vector<cplx> out(state.dim());
  std::vector<std::size_t> offsets(split.target_dim_total);
  for (std::size_t t = 0; t < split.target_dim_total; ++t) offsets[t] = split.target_offset(t);

  const auto& in = state.amplitudes();
  const CMat& m = u.matrix();
  for (std::size_t base : split.rest_bases)
    for (std::size_t r = 0; r < split.target_dim_total; ++r) {
      cplx acc;
      for (std::size_t c = 0; c < split.target_dim_total; ++c) {
        const cplx& mrc = m(r, c);
        if (mrc == cplx{}) continue;
        acc += mrc * in[base + offsets[c]];
      }
      out[base + offsets[r]] = acc;
    }
  return PureState(std::move(out), state.layout());
}

ProjectionResult project(const PureState& state, const std::vector<cplx>& direction,
                         const std::vector<std::size_t>& targets) {
  TargetSplit split(state.layout(), targets);
  if (direction.size() != split.target_dim_total)
    throw std::invalid_argument("project: direction does not match target dimensions");
  if (std::abs(vec_norm(direction) - 1.0) > kNormTol)
    throw std::invalid_argument("project: direction not normalized");
  if (targets.size() == state.layout().size())
    throw std::invalid_argument("project: cannot measure every subsystem");

  std::vector<std::size_t> offsets(split.target_dim_total);
  for (std::size_t t = 0; t < split.target_dim_total; ++t) offsets[t] = split.target_offset(t);

  // Remaining subsystems keep their original order.
  std::vector<bool> is_target(state.layout().size(), false);
  for (std::size_t t : targets) is_target[t] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < state.layout().size(); ++i)
    if (!is_target[i]) rest.push_back(i);

  const auto& in = state.amplitudes();
  std::vector<cplx> out(split.rest_bases.size());
  // rest_bases enumerates rest digit combinations in mixed-radix order of the
  // remaining subsystems, which matches the selected sub-layout indexing.
  for (std::size_t r = 0; r < split.rest_bases.size(); ++r) {
    cplx acc;
    for (std::size_t t = 0; t < split.target_dim_total; ++t)
      acc += std::conj(direction[t]) * in[split.rest_bases[r] + offsets[t]];
    out[r] = acc;
  }

  ProjectionResult result;
  double nrm = vec_norm(out);
  result.probability = nrm * nrm;
  if (result.probability > kZeroBranchTol) {
    for (auto& z : out) z /= nrm;
    result.post = PureState(std::move(out), state.layout().select(rest));
  }
  return result;
}

DensityOperator partial_trace(const PureState& psi, const std::vector<std::size_t>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  std::vector<std::size_t> kept = keep;
  std::sort(kept.begin(), kept.end());

  // Trace out everything not kept: rho[i][j] = sum_e psi[i,e] conj(psi[j,e]).
  std::vector<bool> is_kept(psi.layout().size(), false);
  for (std::size_t k : kept) {
    if (k >= psi.layout().size()) throw std::invalid_argument("partial_trace: index out of range");
    if (is_kept[k]) throw std::invalid_argument("partial_trace: duplicate index");
    is_kept[k] = true;
  }
  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < psi.layout().size(); ++i)
    if (!is_kept[i]) traced.push_back(i);

  TargetSplit split(psi.layout(), kept);  // kept digits vary, rest = traced
  std::vector<std::size_t> offsets(split.target_dim_total);
  for (std::size_t t = 0; t < split.target_dim_total; ++t) offsets[t] = split.target_offset(t);

  const auto& a = psi.amplitudes();
  CMat rho(split.target_dim_total, split.target_dim_total);
  for (std::size_t base : split.rest_bases)
    for (std::size_t i = 0; i < split.target_dim_total; ++i) {
      const cplx ai = a[base + offsets[i]];
      if (ai == cplx{}) continue;
      for (std::size_t j = 0; j < split.target_dim_total; ++j)
        rho(i, j) += ai * std::conj(a[base + offsets[j]]);
    }
  return DensityOperator(std::move(rho), psi.layout().select(kept));
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::size_t>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  std::vector<std::size_t> kept = keep;
  std::sort(kept.begin(), kept.end());

  const SystemLayout& layout = rho.layout();
  TargetSplit split(layout, kept);
  std::vector<std::size_t> offsets(split.target_dim_total);
  for (std::size_t t = 0; t < split.target_dim_total; ++t) offsets[t] = split.target_offset(t);

  CMat out(split.target_dim_total, split.target_dim_total);
  const CMat& m = rho.matrix();
  for (std::size_t base : split.rest_bases)
    for (std::size_t i = 0; i < split.target_dim_total; ++i)
      for (std::size_t j = 0; j < split.target_dim_total; ++j)
        out(i, j) += m(base + offsets[i], base + offsets[j]);
  return DensityOperator(std::move(out), layout.select(kept));
}

double fidelity(const PureState& target, const DensityOperator& rho) {
  if (target.dim() != rho.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  cplx acc;
  const CMat& m = rho.matrix();
  for (std::size_t i = 0; i < target.dim(); ++i) {
    if (target[i] == cplx{}) continue;
    cplx row;
    for (std::size_t j = 0; j < target.dim(); ++j) row += m(i, j) * target[j];
    acc += std::conj(target[i]) * row;
  }
  double f = acc.real();
  if (f < -1e-10 || f > 1.0 + 1e-9)
    throw std::runtime_error("fidelity: value outside [0, 1] beyond tolerance");
  return std::clamp(f, 0.0, 1.0 + 1e-10);
}

double overlap2(const PureState& a, const PureState& b) { return std::norm(a.inner(b)); }

// ---------------------------------------------------------------------------
// generalized Paulis and Fourier basis
// ---------------------------------------------------------------------------

cplx root_of_unity(std::size_t numerator, std::size_t d) {
  const std::size_t r = numerator % d;
  if (4 * r % d == 0) {
    switch (4 * r / d) {
      case 0: return cplx{1.0, 0.0};
      case 1: return cplx{0.0, 1.0};
      case 2: return cplx{-1.0, 0.0};
      case 3: return cplx{0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(d);
  return cplx{std::cos(angle), std::sin(angle)};
}

UnitaryOperator generalized_pauli(std::size_t d, PauliKind kind, long power) {
  if (d < 2) throw std::invalid_argument("generalized_pauli: d must be >= 2");
  const std::size_t p = static_cast<std::size_t>(
      ((power % static_cast<long>(d)) + static_cast<long>(d)) % static_cast<long>(d));
  CMat m(d, d);
  if (kind == PauliKind::Z) {
    for (std::size_t j = 0; j < d; ++j) m(j, j) = root_of_unity(p * j, d);
  } else {
    for (std::size_t j = 0; j < d; ++j) m((j + p) % d, j) = 1.0;
  }
  return UnitaryOperator(std::move(m));
}

PureState generalized_x_basis(std::size_t d, std::size_t k) {
  if (d < 2) throw std::invalid_argument("generalized_x_basis: d must be >= 2");
  if (k >= d) throw std::invalid_argument("generalized_x_basis: k out of range");
  std::vector<cplx> amp(d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) amp[j] = scale * root_of_unity(j * k, d);
  return PureState::flat(std::move(amp), Party::sender());
}

}  // namespace crsp
