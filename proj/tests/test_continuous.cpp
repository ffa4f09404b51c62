#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"

#include "autobid/continuous.hpp"

using namespace autobid;

TEST_CASE("uniform density moments") {
  auto f = cont::uniform01_density();
  CHECK(f.mass == doctest::Approx(1.0).epsilon(1e-10));
  double r = 0.4;
  CHECK(cont::moment(f, cont::Weight::One, cont::Side::Below, r) ==
        doctest::Approx(0.4).epsilon(1e-9));
  CHECK(cont::moment(f, cont::Weight::Z, cont::Side::Below, r) ==
        doctest::Approx(0.08).epsilon(1e-9));
  CHECK(cont::moment(f, cont::Weight::One, cont::Side::Above, r) ==
        doctest::Approx(0.6).epsilon(1e-9));
  CHECK(cont::moment(f, cont::Weight::Z, cont::Side::Above, r) ==
        doctest::Approx(0.42).epsilon(1e-9));
}

TEST_CASE("uniform budget curve matches the closed form") {
  auto f = cont::uniform01_density();
  for (double r : {0.2, 0.5, 0.8}) {
    double expected = 2.0 * (1.0 - r) / r;  // r (1-r) / (r^2/2)
    CHECK(cont::ratio_curve(f, cont::Kind::Budget, r) ==
          doctest::Approx(expected).epsilon(1e-9));
  }
  for (double r : {0.2, 0.5, 0.8}) {
    double expected = 4.0 / (1.0 + r);
    CHECK(cont::ratio_curve(f, cont::Kind::Tcpa, r) ==
          doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("uniform budget equilibrium closed form") {
  auto f = cont::uniform01_density();
  ConstraintProfile c1, c2;
  c1.budget = 1.0;
  c2.budget = 1.0;
  auto sols = cont::solve_equilibrium(f, c1, c2);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0].r == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  CHECK(sols[0].mu1 == doctest::Approx(4.5).epsilon(1e-8));
  CHECK(sols[0].mu2 == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(sols[0].spend1 == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(sols[0].spend2 == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_FALSE(sols[0].degraded);
}

TEST_CASE("uniform tcpa equilibrium closed form") {
  auto f = cont::uniform01_density();
  ConstraintProfile c1, c2;
  c1.target = 3.0;
  c2.target = 1.0;
  auto sols = cont::solve_equilibrium(f, c1, c2);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0].r == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  // Spend equals target times value on both sides.
  CHECK(sols[0].spend1 == doctest::Approx(3.0 * sols[0].value1).epsilon(1e-7));
  CHECK(sols[0].spend2 == doctest::Approx(1.0 * sols[0].value2).epsilon(1e-7));
}

TEST_CASE("mixed constraint kinds are rejected") {
  auto f = cont::uniform01_density();
  ConstraintProfile c1, c2;
  c1.budget = 1.0;
  c2.target = 1.0;
  CHECK_THROWS_AS(cont::solve_equilibrium(f, c1, c2), std::invalid_argument);
}

TEST_CASE("valuation pushforward recovers the uniform density") {
  // v1(q) = q, v2 = 1 on [0,1]: h(q) = q, so the pushforward is uniform.
  cont::ValuationPair vp;
  vp.v1 = [](double q) { return q; };
  vp.v2 = [](double) { return 1.0; };
  vp.h = [](double q) { return q; };
  vp.h_prime = [](double) { return 1.0; };
  auto f = cont::density_from_valuations(vp);
  CHECK(f.mass == doctest::Approx(1.0).epsilon(1e-6));
  for (double z : {0.1, 0.5, 0.9})
    CHECK(f(z) == doctest::Approx(1.0).epsilon(1e-6));

  ConstraintProfile c1, c2;
  c1.budget = 1.0;
  c2.budget = 1.0;
  auto sols = cont::solve_equilibrium(f, c1, c2);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0].r == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("non-invertible h is rejected") {
  cont::ValuationPair vp;
  vp.v1 = [](double q) { return (q - 0.5) * (q - 0.5); };
  vp.v2 = [](double) { return 1.0; };
  vp.h = [](double q) { return (q - 0.5) * (q - 0.5); };
  CHECK_THROWS_AS(cont::density_from_valuations(vp), std::invalid_argument);
}

TEST_CASE("exponential density existence for budget pairs") {
  auto f = cont::exponential_density(1.0, 1e-12);
  auto rep = cont::existence_check(f, cont::Kind::Budget, 512);
  CHECK(rep.covered);  // budget curve spans (0, inf)
}

TEST_CASE("uniform tcpa curve attains only (2, 4)") {
  auto f = cont::uniform01_density();
  auto rep = cont::existence_check(f, cont::Kind::Tcpa, 512);
  CHECK(rep.min_attained == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(rep.max_attained == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("fpa and spa paths agree on random piecewise densities") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(0.2, 2.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> z{0.0, 0.7, 1.5, 2.0};
    std::vector<double> fz{U(rng), U(rng), U(rng), U(rng)};
    auto f = cont::piecewise_linear_density(z, fz);
    ConstraintProfile c1, c2;
    c1.budget = U(rng);
    c2.budget = 1.0;
    auto rep = cont::verify_fpa_spa_equivalence(f, c1, c2, 1e-8);
    CHECK(rep.agree);
    CHECK(rep.max_gap <= 1e-8);
  }
}
