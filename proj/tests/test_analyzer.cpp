// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "analyzer.hpp"
#include "oracles.hpp"

using namespace crsp;

TEST_CASE("classical limits and power bounds") {
  CHECK(classical_limit(2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(classical_limit(4) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(classical_limit(3) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(power_bound(2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  for (std::size_t n = 1; n <= 6; ++n) {
    const double dim = std::pow(2.0, static_cast<double>(n));
    CHECK(power_bound(std::size_t(1) << n) ==
          doctest::Approx((dim - 1.0) / (dim + 1.0)).epsilon(1e-14));
  }
  // the two always sum to exactly 1
  for (std::size_t dim = 2; dim <= 64; ++dim)
    CHECK(power_bound(dim) + classical_limit(dim) == 1.0);

  CHECK_THROWS_AS(classical_limit(1), std::invalid_argument);
  CHECK_THROWS_AS(power_bound(0), std::invalid_argument);
}

TEST_CASE("control power and verdicts") {
  CHECK(control_power(1.0) == doctest::Approx(0.0));
  CHECK(control_power(2.0 / 3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(control_power(1.5), std::invalid_argument);

  // b^2 = 1/2 saturates the bound; anything lower is insufficient
  CHECK(verdict(1.0 / 3.0, 2, 1e-6) == Verdict::Acceptable);
  CHECK(verdict(2.0 * 0.2 / 3.0, 2, 1e-6) == Verdict::Insufficient);
  CHECK(verdict(0.5, 4, 1e-6) == Verdict::Insufficient);  // below 3/5
  CHECK(std::string(verdict_name(Verdict::Acceptable)) == "acceptable");
}

TEST_CASE("analytic averages over the Haar ensemble") {
  MixerModel trivial({{1.0, UnitaryOperator(CMat::identity(2))}});
  CHECK(average_ncf_analytic(trivial) == doctest::Approx(1.0).epsilon(1e-15));

  // maximal slice: a^2 + b^2 / 3, exact to double precision
  for (double b2 : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    auto bundle = builtin("P1", {{"b2", b2}});
    CHECK(std::abs(average_ncf_analytic(bundle.mixer) - ((1.0 - b2) + b2 / 3.0)) < 1e-12);
  }

  // uniform clock powers: 2 / (d + 1)
  for (double d : {2.0, 3.0, 4.0, 5.0}) {
    auto bundle = builtin("P6", {{"d", d}});
    CHECK(std::abs(average_ncf_analytic(bundle.mixer) - 2.0 / (d + 1.0)) < 1e-12);
  }

  // clock strings: 2 / (d^N + 1)
  auto p6n = builtin("P6", {{"d", 3}, {"N", 2}});
  CHECK(std::abs(average_ncf_analytic(p6n.mixer) - 0.2) < 1e-12);

  // uniform groups of traceless corrections sit exactly on the classical
  // limit, so the power saturates the bound
  for (const auto& [id, params] : std::vector<std::pair<std::string,
                                                        std::map<std::string, double>>>{
           {"P5", {{"N", 2}}}, {"P6", {{"d", 4}}}, {"P7", {{"d", 3}}}}) {
    auto bundle = builtin(id, params);
    CHECK(std::abs(average_ncf_analytic(bundle.mixer) - classical_limit(bundle.target_dim)) <
          1e-12);
  }
}

TEST_CASE("Monte Carlo averages agree with the analytic values") {
  struct Case {
    const char* id;
    std::map<std::string, double> params;
  };
  for (const auto& c : std::vector<Case>{{"P1", {{"b2", 0.2}}},
                                         {"P4", {}},
                                         {"P5", {{"N", 1}}},
                                         {"P6", {{"d", 3}}},
                                         {"P7", {{"d", 2}}}}) {
    CAPTURE(c.id);
    auto bundle = builtin(c.id, c.params);
    auto ensemble = TargetEnsemble::haar(bundle.target_dim, 10000, 424242);
    const auto mc = average_ncf_mc(bundle, ensemble);
    const double analytic = average_ncf_analytic(bundle.mixer);
    CHECK(std::abs(mc.ncf.mean - analytic) < 3.0 * mc.ncf.std_error);
  }
}

TEST_CASE("Haar second-moment law validates the analytic shortcut") {
  // MC mean of |<phi|U|phi>|^2 vs (D + |tr U|^2) / (D (D + 1))
  for (std::size_t dim : {2u, 3u, 4u}) {
    for (std::uint64_t u_seed = 0; u_seed < 4; ++u_seed) {
      UnitaryOperator u = haar_random_unitary(dim, derive_seed(777 + dim, u_seed));
      double sum = 0.0, sum2 = 0.0;
      const std::size_t samples = 10000;
      for (std::size_t i = 0; i < samples; ++i) {
        PureState phi = haar_random_pure(dim, derive_seed(u_seed * 1000 + dim, i));
        PureState uphi = apply_unitary(phi, u, {0});
        const double v = std::norm(phi.inner(uphi));
        sum += v;
        sum2 += v * v;
      }
      const double mean = sum / samples;
      const double var = (sum2 / samples - mean * mean) / (samples - 1.0);
      const double want = (static_cast<double>(dim) + std::norm(u.matrix().trace())) /
                          (static_cast<double>(dim) * (dim + 1.0));
      CHECK(std::abs(mean - want) < 3.0 * std::sqrt(std::max(var, 1e-30)));
    }
  }
}

TEST_CASE("equatorial ensembles have exactly half fidelity for P3") {
  auto bundle = builtin("P3", {{"N", 1}});
  auto ensemble = TargetEnsemble::equatorial(1, 2000, 99);
  const auto mc = average_ncf_mc(bundle, ensemble);
  CHECK(std::abs(mc.ncf.mean - 0.5) < 1e-12);
  CHECK(mc.ncf.std_error < 1e-12);
}

TEST_CASE("Monte Carlo is deterministic and thread-count invariant") {
  auto bundle = builtin("P5", {{"N", 2}});
  auto ensemble = TargetEnsemble::haar(4, 4000, 31337);
  const auto once = average_ncf_mc(bundle, ensemble, 1);
  const auto again = average_ncf_mc(bundle, ensemble, 1);
  const auto threaded = average_ncf_mc(bundle, ensemble, 4);
  CHECK(once.ncf.mean == again.ncf.mean);
  CHECK(once.ncf.std_error == again.ncf.std_error);
  CHECK(once.ncf.mean == threaded.ncf.mean);
  CHECK(once.ncf.std_error == threaded.ncf.std_error);
  CHECK(*once.mean_success == *threaded.mean_success);
}

TEST_CASE("controller entropy audit") {
  // GHZ passes for single-qubit targets
  auto ghz_audit = controller_entropy_audit(make_ghz(3), Party::controller(), 2);
  CHECK(ghz_audit.pass);
  CHECK(ghz_audit.entropies[0] == doctest::Approx(1.0).epsilon(1e-9));

  // maximal slice with d > 0 fails
  auto ms_audit = controller_entropy_audit(make_ms3(0.8, 0.6), Party::controller(), 2);
  CHECK(!ms_audit.pass);
  CHECK(ms_audit.entropies[0] == doctest::Approx(0.721928094887).epsilon(1e-9));

  // Brown state: one controller qubit cannot cover a two-qubit target
  auto brown_audit = controller_entropy_audit(make_brown(), Party::controller(), 4);
  CHECK(!brown_audit.pass);
  CHECK(brown_audit.entropies[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(brown_audit.required_bits == doctest::Approx(2.0).epsilon(1e-12));

  // uniform GGC passes for D = d
  const double r3 = 1.0 / std::sqrt(3.0);
  auto ggc_audit = controller_entropy_audit(make_ggc({cplx{r3, 0}, cplx{r3, 0}, cplx{r3, 0}}, 1),
                                            Party::controller(0), 3);
  CHECK(ggc_audit.pass);

  CHECK_THROWS_AS(controller_entropy_audit(make_ghz(3), Party::controller(5), 2),
                  std::invalid_argument);
}

TEST_CASE("entropy table rows") {
  const auto rows = entropy_table(0.6, 0.8);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].channel == "ghz");
  for (double s : rows[0].entropies) CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
  for (const auto& c : rows[0].classified) CHECK(c == "=1");

  CHECK(rows[1].channel == "ms3");
  CHECK(rows[1].entropies[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rows[1].entropies[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rows[1].entropies[2] == doctest::Approx(0.721928094887).epsilon(1e-6));
  CHECK(rows[1].classified == std::vector<std::string>{"=1", "=1", "<1"});

  CHECK(rows[2].channel == "pghz");
  for (double s : rows[2].entropies)
    CHECK(s == doctest::Approx(0.721928094887).epsilon(1e-6));
  CHECK(rows[2].classified == std::vector<std::string>{"<1", "<1", "<1"});
}

TEST_CASE("full analysis reports") {
  auto bundle = builtin("P1", {{"b2", 0.2}});
  EnsembleSpec spec{TargetEnsemble::Kind::Haar, 20000, 7};
  const PowerReport report = analyze(bundle, spec);

  CHECK(report.dimension == 2);
  REQUIRE(report.ncf_analytic.has_value());
  CHECK(*report.ncf_analytic == doctest::Approx(0.8 + 0.2 / 3.0).epsilon(1e-12));
  CHECK(std::abs(report.ncf_mc - *report.ncf_analytic) < 3.0 * report.ncf_mc_stderr);
  CHECK(report.power == doctest::Approx(1.0 - report.average_ncf).epsilon(1e-12));
  CHECK(report.verdict_value == Verdict::Insufficient);
  CHECK(!report.entropy_pass);
  REQUIRE(report.success_probability.has_value());
  CHECK(*report.success_probability == doctest::Approx(0.5).epsilon(1e-12));

  // saturating channel is acceptable and passes the audit
  const PowerReport best = analyze(builtin("P1", {{"b2", 0.5}}), spec);
  CHECK(best.verdict_value == Verdict::Acceptable);
  CHECK(best.entropy_pass);

  // mixer-only protocols report no success probability
  const PowerReport brown = analyze(builtin("P4", {}), spec);
  CHECK(!brown.success_probability.has_value());
  CHECK(brown.verdict_value == Verdict::Insufficient);

  // equatorial ensembles are only defined for qubit targets
  EnsembleSpec equatorial{TargetEnsemble::Kind::Equatorial, 100, 7};
  CHECK_THROWS_AS(analyze(builtin("P6", {{"d", 3}}), equatorial), std::invalid_argument);
}

TEST_CASE("P3 verdicts: acceptable for one qubit, insufficient beyond") {
  EnsembleSpec equatorial{TargetEnsemble::Kind::Equatorial, 2000, 11};
  const PowerReport one = analyze(builtin("P3", {{"N", 1}}), equatorial);
  CHECK(one.power == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(one.verdict_value == Verdict::Acceptable);

  const PowerReport two = analyze(builtin("P3", {{"N", 2}}), equatorial);
  CHECK(two.verdict_value == Verdict::Insufficient);

  // under the Haar ensemble N = 1 sits exactly at the bound
  EnsembleSpec haar{TargetEnsemble::Kind::Haar, 2000, 11};
  const PowerReport haar_one = analyze(builtin("P3", {{"N", 1}}), haar);
  CHECK(*haar_one.ncf_analytic == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(haar_one.verdict_value == Verdict::Acceptable);
  const PowerReport haar_two = analyze(builtin("P3", {{"N", 2}}), haar);
  CHECK(haar_two.verdict_value == Verdict::Insufficient);
}

TEST_CASE("sweeps") {
  EnsembleSpec spec{TargetEnsemble::Kind::Haar, 500, 5};

  // P = 2 b^2 / 3 along the maximal-slice sweep
  const std::vector<double> grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  const auto rows = sweep("P1", {}, "b2", grid, spec);
  REQUIRE(rows.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(rows[i].power - 2.0 * grid[i] / 3.0) < 1e-12);
    CHECK(rows[i].verdict_value ==
          (grid[i] >= 0.5 ? Verdict::Acceptable : Verdict::Insufficient));
  }

  // P5 over N: bound saturation at every point
  const auto p5_rows = sweep("P5", {{"a2", 0.8}}, "N", {1, 2, 3}, spec);
  const std::vector<double> want{1.0 / 3.0, 3.0 / 5.0, 7.0 / 9.0};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(p5_rows[i].power - want[i]) < 1e-12);
    CHECK(p5_rows[i].verdict_value == Verdict::Acceptable);
  }

  // single-point sweeps match analyze exactly (same seed per point)
  const auto single = sweep("P1", {}, "b2", {0.2}, spec);
  const PowerReport direct = analyze(builtin("P1", {{"b2", 0.2}}), spec);
  CHECK(single[0].ncf_mc == direct.ncf_mc);
  CHECK(single[0].ncf_mc_stderr == direct.ncf_mc_stderr);
  CHECK(single[0].power == direct.power);

  CHECK_THROWS_AS(sweep("P1", {}, "a2", {0.1}, spec), std::invalid_argument);
  CHECK_THROWS_AS(sweep("P1", {}, "b2", {}, spec), std::invalid_argument);
}
