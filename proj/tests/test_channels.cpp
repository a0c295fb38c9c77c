// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "channels.hpp"
#include "oracles.hpp"
#include "rng.hpp"
#include "spectra.hpp"

using namespace crsp;

namespace {

double subsystem_entropy(const ChannelSpec& channel, std::size_t index) {
  return von_neumann_entropy(partial_trace(channel.state, {index}));
}

}  // namespace

TEST_CASE("bell states") {
  ChannelSpec phi_plus = make_bell(BellVariant::PhiPlus);
  const double s = std::sqrt(0.5);
  CHECK(std::abs(phi_plus.state[0] - cplx{s, 0}) < 1e-15);
  CHECK(std::abs(phi_plus.state[3] - cplx{s, 0}) < 1e-15);

  ChannelSpec phi_minus = make_bell(BellVariant::PhiMinus);
  CHECK(std::abs(phi_plus.state.inner(phi_minus.state)) < 1e-15);

  // psi+- use the (|01> +- |10>)/sqrt2 convention
  ChannelSpec psi_minus = make_bell(BellVariant::PsiMinus);
  CHECK(std::abs(psi_minus.state[1] - cplx{s, 0}) < 1e-15);
  CHECK(std::abs(psi_minus.state[2] - cplx{-s, 0}) < 1e-15);

  for (BellVariant v : {BellVariant::PhiPlus, BellVariant::PhiMinus, BellVariant::PsiPlus,
                        BellVariant::PsiMinus}) {
    ChannelSpec bell = make_bell(v);
    CHECK(subsystem_entropy(bell, 0) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("ghz states") {
  ChannelSpec ghz3 = make_ghz(3);
  const double s = std::sqrt(0.5);
  CHECK(std::abs(ghz3.state[0] - cplx{s, 0}) < 1e-15);
  CHECK(std::abs(ghz3.state[7] - cplx{s, 0}) < 1e-15);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(subsystem_entropy(ghz3, i) == doctest::Approx(1.0).epsilon(1e-10));

  // n = 2 degenerates to Phi+
  ChannelSpec ghz2 = make_ghz(2);
  CHECK(overlap2(ghz2.state, make_bell(BellVariant::PhiPlus).state) ==
        doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(make_ghz(1), std::invalid_argument);
}

TEST_CASE("maximal-slice channels") {
  // d = 0 limit is the GHZ state
  CHECK(overlap2(make_ms3(1.0, 0.0).state, make_ghz(3).state) ==
        doctest::Approx(1.0).epsilon(1e-12));

  ChannelSpec ms = make_ms3(0.8, 0.6);
  CHECK(ms.layout().size() == 3);

  // controller entropy h((1+d)/2) = h(0.8)
  CHECK(subsystem_entropy(ms, 2) ==
        doctest::Approx(oracle::binary_entropy_bits(0.8)).epsilon(1e-10));

  CHECK_THROWS_AS(make_ms3(0.9, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(make_ms4(-0.8, 0.6), std::invalid_argument);
}

TEST_CASE("controller form of the maximal slice") {
  // d = 0 forces a = b = 1/sqrt2
  ControllerForm f0 = ms_controller_form(1.0, 0.0);
  CHECK(f0.a == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(f0.b == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

  ControllerForm f = ms_controller_form(0.8, 0.6);
  CHECK(f.a * f.a == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(f.b * f.b == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(f.a * f.a - f.b * f.b == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("rotation to controller form is the exhibited local unitary") {
  for (double d : {0.0, 0.28, 0.6, 0.96}) {
    const double c = std::sqrt(1.0 - d * d);
    const ControllerForm f = ms_controller_form(c, d);

    // ms3: unitary on the controller qubit (index 2)
    ChannelSpec raw3 = make_ms3(c, d);
    PureState rotated3 =
        apply_unitary(raw3.state, ms_rotation_unitary(c, d, MsVariant::Ms3), {2});
    CHECK(overlap2(rotated3, make_ms3_rotated(f.a, f.b).state) >=
          doctest::Approx(1.0 - 1e-10));

    // ms4: unitary on the controller qubit (index 3)
    ChannelSpec raw4 = make_ms4(c, d);
    PureState rotated4 =
        apply_unitary(raw4.state, ms_rotation_unitary(c, d, MsVariant::Ms4), {3});
    CHECK(overlap2(rotated4, make_ms4_rotated(f.a, f.b).state) >=
          doctest::Approx(1.0 - 1e-10));

    // local unitaries leave the controller entropy unchanged
    CHECK(von_neumann_entropy(partial_trace(rotated3, {2})) ==
          doctest::Approx(subsystem_entropy(raw3, 2)).epsilon(1e-9));
  }
}

TEST_CASE("partially entangled ghz") {
  const double s = std::sqrt(0.5);
  ChannelSpec balanced = make_pghz(s, s, 1);
  CHECK(balanced.layout().size() == 4);
  CHECK(overlap2(balanced.state, make_ghz(4).state) == doctest::Approx(1.0).epsilon(1e-12));

  const double a = std::sqrt(0.8), b = std::sqrt(0.2);
  ChannelSpec tilted = make_pghz(a, b, 2);
  for (std::size_t i = 0; i < tilted.layout().size(); ++i) {
    const double want = oracle::binary_entropy_bits(0.8);
    CHECK(subsystem_entropy(tilted, i) == doctest::Approx(want).epsilon(1e-10));
    CHECK(subsystem_entropy(tilted, i) < 1.0);
  }

  // product limit: all entropies vanish
  ChannelSpec product = make_pghz(1.0, 0.0, 1);
  for (std::size_t i = 0; i < product.layout().size(); ++i)
    CHECK(subsystem_entropy(product, i) == doctest::Approx(0.0).epsilon(1e-10));

  CHECK_THROWS_AS(make_pghz(0.9, 0.6, 1), std::invalid_argument);
}

TEST_CASE("brown state") {
  ChannelSpec brown = make_brown();
  CHECK(brown.layout().size() == 5);

  // controller qubit is maximally mixed
  DensityOperator rho_c = partial_trace(brown.state, {2});
  CHECK(von_neumann_entropy(rho_c) == doctest::Approx(1.0).epsilon(1e-10));

  // the four A1 A2 C prefixes are orthogonal: their reduction is diagonal
  // with weight 1/4 on 001, 010, 100, 111
  DensityOperator prefix = partial_trace(brown.state, {0, 1, 2});
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      const bool hit = (i == j) && (i == 0b001 || i == 0b010 || i == 0b100 || i == 0b111);
      CHECK(std::abs(prefix.matrix()(i, j) - (hit ? cplx{0.25, 0} : cplx{})) < 1e-12);
    }
}

TEST_CASE("generalized ghz-class states") {
  const double s = std::sqrt(0.5);
  ChannelSpec ghz_like = make_ggc({cplx{s, 0}, cplx{s, 0}}, 1);
  CHECK(overlap2(ghz_like.state, make_ghz(3).state) == doctest::Approx(1.0).epsilon(1e-12));

  // single-qudit reduction is diag(|a_j|^2)
  std::vector<cplx> coeffs{cplx{0.6, 0}, cplx{0.0, 0.48}, cplx{0.64, 0}};
  ChannelSpec ggc = make_ggc(coeffs, 2);
  for (std::size_t sub = 0; sub < 4; ++sub) {
    DensityOperator rho = partial_trace(ggc.state, {sub});
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        const cplx want = (i == j) ? cplx{std::norm(coeffs[i]), 0} : cplx{};
        CHECK(std::abs(rho.matrix()(i, j) - want) < 1e-12);
      }
  }

  // uniform coefficients: single-qudit entropy log2 d
  const double r3 = 1.0 / std::sqrt(3.0);
  ChannelSpec uniform = make_ggc({cplx{r3, 0}, cplx{r3, 0}, cplx{r3, 0}}, 1);
  CHECK(subsystem_entropy(uniform, 1) == doctest::Approx(std::log2(3.0)).epsilon(1e-10));

  CHECK_THROWS_AS(make_ggc({cplx{1, 0}, cplx{1, 0}}, 1), std::invalid_argument);
}

TEST_CASE("generalized bell states") {
  CHECK(overlap2(make_generalized_bell(2, 0, 0).state, make_bell(BellVariant::PhiPlus).state) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // all d^2 states are mutually orthonormal (d = 2, 3)
  for (std::size_t d : {2u, 3u}) {
    for (std::size_t k1 = 0; k1 < d; ++k1)
      for (std::size_t l1 = 0; l1 < d; ++l1)
        for (std::size_t k2 = 0; k2 < d; ++k2)
          for (std::size_t l2 = 0; l2 < d; ++l2) {
            const cplx g = make_generalized_bell(d, k1, l1)
                               .state.inner(make_generalized_bell(d, k2, l2).state);
            const double want = (k1 == k2 && l1 == l2) ? 1.0 : 0.0;
            CHECK(std::abs(g - cplx{want, 0}) < 1e-12);
          }
  }

  // single-qudit reduction of Phi_00 is I/d
  DensityOperator rho = partial_trace(make_generalized_bell(3, 0, 0).state, {0});
  CMat want = CMat::identity(3);
  want *= 1.0 / 3.0;
  CHECK(rho.matrix().max_abs_diff(want) < 1e-12);

  CHECK_THROWS_AS(make_generalized_bell(3, 3, 0), std::invalid_argument);
}

TEST_CASE("tensor products of channels") {
  ChannelSpec two_bells =
      tensor_channels({make_bell(BellVariant::PhiPlus), make_bell(BellVariant::PhiPlus)}, "bell^2");
  CHECK(two_bells.state.dim() == 16);

  // one Bell plus one GHZ gives the 5-qubit resource
  ChannelSpec p3 = tensor_channels({make_ghz(3), make_bell(BellVariant::PhiPlus)}, "p3(N=2)");
  CHECK(p3.layout().size() == 5);

  // three generalized Bell pairs across sender/receiver/controller
  ChannelSpec theta = tensor_channels(
      {make_generalized_bell(2, 0, 0, Party::sender(), Party::receiver()),
       make_generalized_bell(2, 0, 0, Party::sender(), Party::controller()),
       make_generalized_bell(2, 0, 0, Party::receiver(), Party::controller())},
      "gbell^3");
  CHECK(theta.layout().indices_owned_by(Party::receiver()) == std::vector<std::size_t>{1, 4});
  CHECK(theta.layout().indices_owned_by(Party::controller()) == std::vector<std::size_t>{3, 5});
}

TEST_CASE("table signature of the three-qubit channels") {
  ChannelSpec ghz = make_ghz(3);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(subsystem_entropy(ghz, i) == doctest::Approx(1.0).epsilon(1e-9));

  ChannelSpec ms = make_ms3(0.8, 0.6);
  CHECK(subsystem_entropy(ms, 0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(subsystem_entropy(ms, 1) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(subsystem_entropy(ms, 2) < 1.0 - 1e-6);

  const double a = std::sqrt(0.8), b = std::sqrt(0.2);
  ChannelSpec pghz = make_pghz(a, b, 0);
  for (std::size_t i = 0; i < 3; ++i) CHECK(subsystem_entropy(pghz, i) < 1.0 - 1e-6);
}

TEST_CASE("subsystem entropies are invariant under local unitaries") {
  ChannelSpec ms = make_ms3(0.6, 0.8);
  std::vector<double> before;
  for (std::size_t i = 0; i < 3; ++i) before.push_back(subsystem_entropy(ms, i));

  PureState state = ms.state;
  for (std::size_t i = 0; i < 3; ++i)
    state = apply_unitary(state, haar_random_unitary(2, 100 + i), {i});
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(von_neumann_entropy(partial_trace(state, {i})) ==
          doctest::Approx(before[i]).epsilon(1e-9));
}
