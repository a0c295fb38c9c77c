// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rng.hpp"
#include "tensor.hpp"

using namespace crsp;

namespace {

const Party kS = Party::sender();
const Party kR = Party::receiver();
const Party kC = Party::controller();

SystemLayout qubits(std::size_t n) { return SystemLayout::uniform(n, 2, kR); }

PureState plus_state() {
  const double s = std::sqrt(0.5);
  return PureState::flat({cplx{s, 0}, cplx{s, 0}});
}

oracle::Mat to_oracle(const CMat& m) {
  oracle::Mat out(m.rows(), std::vector<cplx>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

}  // namespace

TEST_CASE("layout: strides, digits and parties") {
  SystemLayout layout({Subsystem{2, kS}, Subsystem{3, kR}, Subsystem{2, kC}});
  CHECK(layout.total_dim() == 12);
  CHECK(layout.stride(0) == 6);
  CHECK(layout.stride(1) == 2);
  CHECK(layout.stride(2) == 1);
  // index = 1*6 + 2*2 + 1 = 11
  CHECK(layout.digit(11, 0) == 1);
  CHECK(layout.digit(11, 1) == 2);
  CHECK(layout.digit(11, 2) == 1);
  CHECK(layout.indices_owned_by(kR) == std::vector<std::size_t>{1});
  CHECK(layout.parties().size() == 3);
  CHECK(layout.select({2, 0}).at(0).owner == kC);

  CHECK_THROWS_AS(SystemLayout({Subsystem{1, kS}}), std::invalid_argument);
  // 14 qubits exceed the supported total dimension
  CHECK_THROWS_AS(SystemLayout::uniform(14, 2, kR), std::invalid_argument);
}

TEST_CASE("kron: identities, basis products and sign patterns") {
  CHECK(kron(CMat::identity(2), CMat::identity(2)).is_identity(0.0));

  PureState zero = PureState::basis(qubits(1), 0);
  PureState one = PureState::basis(qubits(1), 1);
  PureState zo = kron(zero, one);
  CHECK(zo.dim() == 4);
  CHECK(zo[1] == cplx{1.0, 0.0});

  const CMat sz = generalized_pauli(2, PauliKind::Z).matrix();
  const CMat zz = kron(sz, sz);
  CHECK(zz(0, 0) == cplx{1.0, 0.0});
  CHECK(zz(1, 1) == cplx{-1.0, 0.0});
  CHECK(zz(2, 2) == cplx{-1.0, 0.0});
  CHECK(zz(3, 3) == cplx{1.0, 0.0});
}

TEST_CASE("state and operator validation") {
  CHECK_THROWS_AS(PureState::flat({cplx{1, 0}, cplx{1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(UnitaryOperator(CMat::diagonal({cplx{2, 0}, cplx{1, 0}})),
                  std::invalid_argument);

  CMat not_trace_one = CMat::diagonal({cplx{0.5, 0}, cplx{0.4, 0}});
  CHECK_THROWS_AS(DensityOperator(not_trace_one, qubits(1)), std::invalid_argument);

  CMat not_hermitian(2, 2);
  not_hermitian(0, 0) = 0.5;
  not_hermitian(1, 1) = 0.5;
  not_hermitian(0, 1) = cplx{0.3, 0.0};
  not_hermitian(1, 0) = cplx{0.1, 0.0};
  CHECK_THROWS_AS(DensityOperator(not_hermitian, qubits(1)), std::invalid_argument);
}

TEST_CASE("apply_unitary: phase flips and qutrit clock") {
  // identity leaves any state unchanged
  PureState psi = haar_random_pure(std::vector<std::size_t>{2, 2}, 11);
  PureState same = apply_unitary(psi, UnitaryOperator(CMat::identity(4)), {0, 1});
  CHECK(overlap2(psi, same) == doctest::Approx(1.0).epsilon(1e-12));

  // sigma_z on qubit 0 of |+>|0> gives |->|0>
  PureState pz = kron(plus_state(), PureState::basis(qubits(1), 0));
  PureState flipped = apply_unitary(pz, generalized_pauli(2, PauliKind::Z), {0});
  const double s = std::sqrt(0.5);
  PureState minus_zero =
      kron(PureState::flat({cplx{s, 0}, cplx{-s, 0}}), PureState::basis(qubits(1), 0));
  CHECK(overlap2(flipped, minus_zero) == doctest::Approx(1.0).epsilon(1e-12));

  // Z_3 |1> = exp(2 pi i / 3) |1>
  SystemLayout qutrit({Subsystem{3, kR}});
  PureState one3 = PureState::basis(qutrit, 1);
  PureState rotated = apply_unitary(one3, generalized_pauli(3, PauliKind::Z), {0});
  const cplx omega{std::cos(2.0 * std::numbers::pi / 3.0), std::sin(2.0 * std::numbers::pi / 3.0)};
  CHECK(std::abs(rotated[1] - omega) < 1e-12);

  CHECK_THROWS_AS(apply_unitary(psi, UnitaryOperator(CMat::identity(4)), {0}),
                  std::invalid_argument);
}

TEST_CASE("apply_unitary: non-adjacent targets against a dense oracle") {
  // U on subsystems (2, 0) of a 3-qubit state, compared with the full
  // operator built by explicit digit bookkeeping.
  PureState psi = haar_random_pure(std::vector<std::size_t>{2, 2, 2}, 42);
  UnitaryOperator u = haar_random_unitary(4, 43);

  PureState fast = apply_unitary(psi, u, {2, 0});

  oracle::Mat full = oracle::zeros(8);
  const auto um = to_oracle(u.matrix());
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      const std::size_t i2 = (i >> 0) & 1, i1 = (i >> 1) & 1, i0 = (i >> 2) & 1;
      const std::size_t j2 = (j >> 0) & 1, j1 = (j >> 1) & 1, j0 = (j >> 2) & 1;
      if (i1 != j1) continue;  // untouched subsystem
      // target digit order: subsystem 2 is the most significant digit of u
      full[i][j] = um[i2 * 2 + i0][j2 * 2 + j0];
    }
  const auto want = oracle::matvec(full, psi.amplitudes());
  double diff = 0.0;
  for (std::size_t i = 0; i < 8; ++i) diff = std::max(diff, std::abs(want[i] - fast[i]));
  CHECK(diff < 1e-12);
}

TEST_CASE("project: Bell correlation and product factors") {
  // |Phi+> projected onto |0> at qubit 0: probability 1/2, post |0>
  const double s = std::sqrt(0.5);
  PureState bell(std::vector<cplx>{cplx{s, 0}, 0, 0, cplx{s, 0}}, qubits(2));
  auto res = project(bell, {cplx{1, 0}, cplx{0, 0}}, {0});
  CHECK(res.probability == doctest::Approx(0.5).epsilon(1e-12));
  REQUIRE(res.post.has_value());
  CHECK(overlap2(*res.post, PureState::basis(qubits(1), 0)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // projecting a product state onto its second factor leaves the first
  PureState phi = haar_random_pure(2, 7);
  PureState chi = haar_random_pure(2, 8);
  auto res2 = project(kron(phi, chi), chi.amplitudes(), {1});
  CHECK(res2.probability == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(overlap2(*res2.post, phi) == doctest::Approx(1.0).epsilon(1e-12));

  // impossible outcome: probability ~ 0 and no post state
  PureState zz = kron(PureState::basis(qubits(1), 0), chi);
  auto res3 = project(zz, {cplx{0, 0}, cplx{1, 0}}, {0});
  CHECK(res3.probability < 1e-15);
  CHECK(!res3.post.has_value());
}

TEST_CASE("project: rotated maximal-slice channel steers the receiver") {
  // a(|000> + |110>)/sqrt2 + b(|001> - |111>)/sqrt2 over A,B,C; projecting A
  // onto conj(target) must leave a|t>_B|0>_C + b sz|t>_B|1>_C at prob 1/2.
  const double a = std::sqrt(0.8), b = std::sqrt(0.2);
  const double s = std::sqrt(0.5);
  std::vector<cplx> amp(8);
  amp[0b000] = a * s;
  amp[0b110] = a * s;
  amp[0b001] = b * s;
  amp[0b111] = -b * s;
  SystemLayout abc({Subsystem{2, kS}, Subsystem{2, kR}, Subsystem{2, kC}});
  PureState channel(amp, abc);

  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    PureState target = haar_random_pure(2, seed);
    std::vector<cplx> dir{std::conj(target[0]), std::conj(target[1])};
    auto res = project(channel, dir, {0});
    CHECK(res.probability == doctest::Approx(0.5).epsilon(1e-12));

    std::vector<cplx> want{a * target[0], b * target[0], a * target[1], -b * target[1]};
    SystemLayout bc({Subsystem{2, kR}, Subsystem{2, kC}});
    PureState expected(want, bc);
    CHECK(overlap2(*res.post, expected) == doctest::Approx(1.0).epsilon(1e-10));

    // brute-force check: the same projection done with dense matrices
    oracle::Mat proj = oracle::kron(oracle::outer({dir[0], dir[1]}), oracle::eye(4));
    auto v = oracle::matvec(proj, channel.amplitudes());
    double p = 0.0;
    for (const auto& z : v) p += std::norm(z);
    CHECK(p == doctest::Approx(res.probability).epsilon(1e-12));
  }
}

TEST_CASE("partial_trace: product states, Bell pairs and the controller mix") {
  PureState phi = haar_random_pure(2, 21);
  PureState chi = haar_random_pure(2, 22);

  // product state: tracing the second factor leaves |phi><phi|
  DensityOperator left = partial_trace(kron(phi, chi), {0});
  CHECK(left.matrix().max_abs_diff(DensityOperator::pure(phi).matrix()) < 1e-12);

  // maximally entangled: single-qubit reduction is I/2
  const double s = std::sqrt(0.5);
  PureState bell(std::vector<cplx>{cplx{s, 0}, 0, 0, cplx{s, 0}}, qubits(2));
  DensityOperator half = partial_trace(bell, {0});
  CMat want = CMat::identity(2);
  want *= 0.5;
  CHECK(half.matrix().max_abs_diff(want) < 1e-12);

  // tracing the controller of a|0>_C|t> + b|1>_C sz|t> leaves
  // a^2 |t><t| + b^2 sz|t><t|sz
  const double a = std::sqrt(0.7), b = std::sqrt(0.3);
  PureState target = haar_random_pure(2, 23);
  PureState szt = apply_unitary(target, generalized_pauli(2, PauliKind::Z), {0});
  std::vector<cplx> joint(4);
  joint[0b00] = a * target[0];
  joint[0b01] = a * target[1];
  joint[0b10] = b * szt[0];
  joint[0b11] = b * szt[1];
  SystemLayout cb({Subsystem{2, kC}, Subsystem{2, kR}});
  DensityOperator rho = partial_trace(PureState(joint, cb), {1});

  oracle::Mat expect = oracle::outer({target[0], target[1]});
  oracle::Mat flip = oracle::outer({szt[0], szt[1]});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) expect[i][j] = a * a * expect[i][j] + b * b * flip[i][j];
  CHECK(oracle::max_abs_diff(to_oracle(rho.matrix()), expect) < 1e-12);

  CHECK_THROWS_AS(partial_trace(bell, {}), std::invalid_argument);
}

TEST_CASE("partial_trace: operator overload agrees with the pure-state path") {
  PureState psi = haar_random_pure(std::vector<std::size_t>{2, 3, 2}, 31);
  DensityOperator rho = DensityOperator::pure(psi);
  for (const auto& keep : std::vector<std::vector<std::size_t>>{{0}, {1}, {0, 2}, {1, 2}}) {
    DensityOperator a = partial_trace(psi, keep);
    DensityOperator b = partial_trace(rho, keep);
    CHECK(a.matrix().max_abs_diff(b.matrix()) < 1e-12);

    // cross-check against the oracle implementation
    const auto want =
        oracle::partial_trace(to_oracle(rho.matrix()), {2, 3, 2}, keep);
    CHECK(oracle::max_abs_diff(to_oracle(a.matrix()), want) < 1e-12);
  }
}

TEST_CASE("fidelity: pure targets and mixed states") {
  PureState phi = haar_random_pure(2, 51);
  CHECK(fidelity(phi, DensityOperator::pure(phi)) == doctest::Approx(1.0).epsilon(1e-12));

  CMat half = CMat::identity(2);
  half *= 0.5;
  DensityOperator maximally_mixed(half, qubits(1));
  CHECK(fidelity(PureState::basis(qubits(1), 0), maximally_mixed) ==
        doctest::Approx(0.5).epsilon(1e-12));

  // a^2 = b^2 = 1/2 mix of |+> and sz|+> = |->: fidelity to |+> is 1/2
  PureState plus = plus_state();
  PureState minus = apply_unitary(plus, generalized_pauli(2, PauliKind::Z), {0});
  DensityOperator mix;
  mix.accumulate(0.5, DensityOperator::pure(plus));
  mix.accumulate(0.5, DensityOperator::pure(minus));
  CHECK(fidelity(plus, mix) == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(fidelity(haar_random_pure(4, 1), maximally_mixed), std::invalid_argument);
}

TEST_CASE("partial_trace of a product operator recovers the first factor") {
  // mixed factors: rho1 (x) rho2 traced over the second gives rho1
  PureState a1 = haar_random_pure(2, 101), a2 = haar_random_pure(2, 102);
  PureState b1 = haar_random_pure(3, 103), b2 = haar_random_pure(3, 104);
  DensityOperator rho1;
  rho1.accumulate(0.3, DensityOperator::pure(a1));
  rho1.accumulate(0.7, DensityOperator::pure(a2));
  DensityOperator rho2;
  rho2.accumulate(0.5, DensityOperator::pure(b1));
  rho2.accumulate(0.5, DensityOperator::pure(b2));

  SystemLayout joint({Subsystem{2, kS}, Subsystem{3, kR}});
  DensityOperator product(kron(rho1.matrix(), rho2.matrix()), joint);
  CHECK(partial_trace(product, {0}).matrix().max_abs_diff(rho1.matrix()) < 1e-10);
  CHECK(partial_trace(product, {1}).matrix().max_abs_diff(rho2.matrix()) < 1e-10);
}

TEST_CASE("fidelity is invariant under simultaneous rotation") {
  PureState phi = haar_random_pure(3, 61);
  PureState other = haar_random_pure(3, 62);
  DensityOperator rho;
  rho.accumulate(0.4, DensityOperator::pure(phi));
  rho.accumulate(0.6, DensityOperator::pure(other));

  UnitaryOperator u = haar_random_unitary(3, 63);
  PureState uphi = apply_unitary(phi, u, {0});
  CMat urho = u.matrix() * rho.matrix() * u.matrix().adjoint();
  DensityOperator rotated(urho, rho.layout());
  CHECK(fidelity(uphi, rotated) == doctest::Approx(fidelity(phi, rho)).epsilon(1e-10));
}

TEST_CASE("generalized Pauli operators") {
  // d = 2 Z is sigma_z
  const CMat sz = generalized_pauli(2, PauliKind::Z).matrix();
  CHECK(sz(0, 0) == cplx{1, 0});
  CHECK(std::abs(sz(1, 1) - cplx{-1, 0}) < 1e-15);

  // cyclicity: Z_d^d = I, X_d^d = I
  for (std::size_t d : {2u, 3u, 5u}) {
    CHECK(generalized_pauli(d, PauliKind::Z, static_cast<long>(d)).matrix().is_identity(1e-12));
    CHECK(generalized_pauli(d, PauliKind::X, static_cast<long>(d)).matrix().is_identity(1e-12));
  }

  // X_3 shifts |1> to |2>
  SystemLayout qutrit({Subsystem{3, kR}});
  PureState shifted = apply_unitary(PureState::basis(qutrit, 1),
                                    generalized_pauli(3, PauliKind::X), {0});
  CHECK(std::abs(shifted[2] - cplx{1, 0}) < 1e-12);

  // geometric sum of roots of unity: tr Z_d^k = 0 for k != 0 mod d
  for (std::size_t d : {2u, 3u, 4u, 7u})
    for (std::size_t k = 1; k < d; ++k)
      CHECK(std::abs(generalized_pauli(d, PauliKind::Z, static_cast<long>(k)).matrix().trace()) <
            1e-12);
}

TEST_CASE("generalized X basis") {
  // d = 2, k = 0 is |+>
  PureState x0 = generalized_x_basis(2, 0);
  CHECK(overlap2(x0, plus_state()) == doctest::Approx(1.0).epsilon(1e-12));

  // orthonormality for several d
  for (std::size_t d : {2u, 3u, 5u})
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l) {
        const double want = (k == l) ? 1.0 : 0.0;
        CHECK(std::abs(generalized_x_basis(d, k).inner(generalized_x_basis(d, l)) -
                       cplx{want, 0}) < 1e-12);
      }

  // explicit d = 3, k = 1 amplitudes
  PureState x31 = generalized_x_basis(3, 1);
  const double r3 = 1.0 / std::sqrt(3.0);
  const cplx omega{std::cos(2.0 * std::numbers::pi / 3.0), std::sin(2.0 * std::numbers::pi / 3.0)};
  CHECK(std::abs(x31[0] - cplx{r3, 0}) < 1e-12);
  CHECK(std::abs(x31[1] - r3 * omega) < 1e-12);
  CHECK(std::abs(x31[2] - r3 * omega * omega) < 1e-12);

  CHECK_THROWS_AS(generalized_x_basis(3, 3), std::invalid_argument);
}
