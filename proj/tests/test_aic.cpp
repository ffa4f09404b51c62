#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "autobid/aic.hpp"
#include "autobid/roots.hpp"

using namespace autobid;

TEST_CASE("uniform density is certified for both kinds") {
  auto f = cont::uniform01_density();
  auto budget = aic::monotonicity_scan(f, cont::Kind::Budget);
  CHECK(budget.status == aic::AICVerdict::Status::Certified);
  CHECK(budget.witnesses.empty());
  auto tcpa = aic::monotonicity_scan(f, cont::Kind::Tcpa);
  CHECK(tcpa.status == aic::AICVerdict::Status::Certified);
}

TEST_CASE("mhr holds for uniform and exponential densities") {
  CHECK(aic::mhr_check(cont::uniform01_density()).pass);
  CHECK(aic::mhr_check(cont::exponential_density(0.7)).pass);
  CHECK(aic::mhr_check(cont::exponential_density(3.0)).pass);
}

TEST_CASE("cubic construction constants") {
  auto ce = aic::cubic_counterexample();
  CHECK(ce.c == doctest::Approx(1.95105).epsilon(1e-4));
  // Analytic argmin of ((r-1)^3+3)/r: derivative zero means
  // 2r^3 - 3r^2 - 2 = 0.
  double p = 2.0 * std::pow(ce.r_min, 3) - 3.0 * ce.r_min * ce.r_min - 2.0;
  CHECK(std::abs(p) < 1e-6);
  // The analytic curve diverges at 0, the realized one vanishes.
  CHECK(ce.g_analytic.g(1e-3) > 100.0);
  CHECK(ce.g_realized.g(1e-3) < 1e-2);
}

TEST_CASE("cubic construction is a non-AIC witness") {
  auto ce = aic::cubic_counterexample();
  auto verdict = aic::monotonicity_scan(ce.f, cont::Kind::Budget);
  REQUIRE(verdict.status == aic::AICVerdict::Status::NonAIC);
  REQUIRE_FALSE(verdict.witnesses.empty());
  const auto& w = verdict.witnesses.front();
  CHECK(w.lo < 1.1);
  CHECK(w.hi > 1.1);  // the paper-scale dip brackets r = 1.1
  REQUIRE(verdict.demo.has_value());
  CHECK(verdict.demo->value_decreased);
  CHECK(verdict.demo->value_misreport < verdict.demo->value_truth);

  CHECK_FALSE(aic::mhr_check(ce.f).pass);
}

TEST_CASE("cubic construction breaks the tcpa curve too") {
  auto ce = aic::cubic_counterexample();
  auto verdict = aic::monotonicity_scan(ce.f, cont::Kind::Tcpa);
  CHECK(verdict.status == aic::AICVerdict::Status::NonAIC);
  CHECK_FALSE(verdict.witnesses.empty());
}

TEST_CASE("f_from_g inverts g(r) = r") {
  aic::GCurve g;
  g.g = [](double r) { return r; };
  g.g_prime = [](double) { return 1.0; };
  auto f = aic::f_from_g(g, 1e-3, 500.0);
  // The inversion gives f proportional to (1+r)^-3.
  auto shape = [](double r) { return 1.0 / std::pow(1.0 + r, 3); };
  double scale = f(1.0) / shape(1.0);
  for (double r : {0.1, 0.5, 2.0, 5.0})
    CHECK(f(r) == doctest::Approx(scale * shape(r)).epsilon(1e-6));
  // And the induced curve comes back as g itself.
  auto grid = roots::log_grid(0.2, 5.0, 64);
  CHECK(aic::roundtrip_check(f, g, grid) <= 1e-3);
}

TEST_CASE("quadratic g roundtrips") {
  // g(r) = r^2 gives f proportional to r (1+r^2)^(-5/2): light tails, so
  // the truncated construction induces the curve back accurately.
  aic::GCurve g;
  g.g = [](double r) { return r * r; };
  g.g_prime = [](double r) { return 2.0 * r; };
  auto f = aic::f_from_g(g, 1e-3, 500.0);
  auto shape = [](double r) { return r * std::pow(1.0 + r * r, -2.5); };
  double scale = f(1.0) / shape(1.0);
  for (double r : {0.2, 0.7, 2.0, 6.0})
    CHECK(f(r) == doctest::Approx(scale * shape(r)).epsilon(1e-6));
  auto grid = roots::log_grid(0.1, 10.0, 64);
  CHECK(aic::roundtrip_check(f, g, grid) <= 1e-3);
}

TEST_CASE("infeasible curves are rejected") {
  aic::GCurve g;
  g.g = [](double r) { return 1.0 / (r * r); };  // g' r + g = -1/r^2 < 0
  g.g_prime = [](double r) { return -2.0 / (r * r * r); };
  CHECK_THROWS_AS(aic::f_from_g(g, 0.1, 10.0), std::runtime_error);
}

TEST_CASE("valuation sufficient condition") {
  cont::ValuationPair good;
  good.v1 = [](double q) { return std::sqrt(q); };
  good.v2 = [](double) { return 1.0; };
  good.h = [](double q) { return std::sqrt(q); };
  good.h_prime = [](double q) { return 0.5 / std::sqrt(q); };
  auto rep = aic::sufficient_condition_check(good);
  CHECK(rep.h_concave);
  CHECK(rep.v2_nondecreasing);
  CHECK(rep.pass);

  auto ce = aic::cubic_counterexample();
  auto bad = aic::sufficient_condition_check(ce.vp_default);
  CHECK_FALSE(bad.pass);  // tan-based h is convex on the upper range
}

TEST_CASE("realized curve has an analytic derivative") {
  auto f = cont::uniform01_density();
  auto g = aic::realized_g_curve(f);
  for (double r : {0.3, 0.6, 0.9}) {
    double step = 1e-6;
    double numeric = (g.g(r + step) - g.g(r - step)) / (2.0 * step);
    CHECK(g.g_prime(r) == doctest::Approx(numeric).epsilon(1e-4));
  }
}
