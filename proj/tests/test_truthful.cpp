#include <cmath>

#include "doctest.h"

#include "autobid/roots.hpp"
#include "autobid/truthful.hpp"

using namespace autobid;

TEST_CASE("spa step rule pricing") {
  auto rule = truthful::AllocationRule::spa_step();
  CHECK(rule.price(2.0) == doctest::Approx(1.0));
  CHECK(rule.price(0.5) == doctest::Approx(0.0));
  CHECK(rule.alloc(3.0) == doctest::Approx(1.0));
  CHECK(rule.alloc(1.0 / 3.0) == doctest::Approx(0.0));
  CHECK(rule.alloc(1.0) == doctest::Approx(0.5));
  CHECK(truthful::pricing_delta(rule, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("logistic rule pricing matches the closed form") {
  // alloc(z) = z/(1+z): p(b) = ln(1+b) - b/(1+b).
  auto rule = truthful::AllocationRule::logistic_power(1.0);
  auto p = [](double b) { return std::log1p(b) - b / (1.0 + b); };
  for (double b : {0.5, 1.0, 2.0, 7.0})
    CHECK(rule.price(b) == doctest::Approx(p(b)).epsilon(1e-8));
  CHECK(rule.price(1.0) ==
        doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-8));
  // Delta(2) = p(2) - 2 p(1/2) = ln(4/3).
  CHECK(truthful::pricing_delta(rule, 2.0) ==
        doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-7));
}

TEST_CASE("rule validation") {
  auto grid = roots::log_grid(0.05, 20.0, 101);
  CHECK(truthful::validate_rule(truthful::AllocationRule::spa_step(), grid)
            .pass);
  CHECK(truthful::validate_rule(truthful::AllocationRule::logistic_power(2.0),
                                grid)
            .pass);
  auto crooked = truthful::AllocationRule::custom(
      [](double z) { return z / (1.0 + 2.0 * z); }, "crooked");
  auto rep = truthful::validate_rule(crooked, grid);
  CHECK_FALSE(rep.symmetric);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("spa step rule reproduces the uniform closed forms") {
  auto f = cont::uniform01_density();
  auto rule = truthful::AllocationRule::spa_step();
  ConstraintProfile c1, c2;
  c1.budget = 1.0;
  c2.budget = 1.0;
  auto sols = truthful::solve_truthful_equilibrium(f, rule, c1, c2);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0].r == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(sols[0].mu1 == doctest::Approx(4.5).epsilon(1e-6));
  CHECK(sols[0].mu2 == doctest::Approx(3.0).epsilon(1e-6));

  ConstraintProfile t1, t2;
  t1.target = 3.0;
  t2.target = 1.0;
  auto tcpa = truthful::solve_truthful_equilibrium(f, rule, t1, t2);
  REQUIRE(tcpa.size() == 1);
  CHECK(tcpa[0].r == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("aic pricing identity") {
  auto grid = roots::log_grid(0.05, 20.0, 101);
  // p = alpha (b+1) is the unique AIC-compatible pricing shape.
  auto rep = truthful::aic_pricing_test(
      [](double b) { return 0.37 * (b + 1.0); }, grid);
  CHECK(rep.equality_holds);
  CHECK(rep.worst_gap <= 1e-9);

  auto spa = truthful::aic_pricing_test(truthful::AllocationRule::spa_step(),
                                        grid);
  CHECK_FALSE(spa.equality_holds);
  CHECK(spa.worst_gap == doctest::Approx(1.0).epsilon(1e-9));

  auto log1 = truthful::aic_pricing_test(
      truthful::AllocationRule::logistic_power(1.0), grid);
  CHECK_FALSE(log1.equality_holds);
}

TEST_CASE("the aic pricing admits no valid allocation") {
  auto rep = truthful::impossible_alloc_check(0.3);
  CHECK(rep.infeasible);
  CHECK(rep.negative_below ==
        doctest::Approx(std::exp(-0.5 / 0.3)).epsilon(1e-12));
  CHECK(rep.exceeds_one_above ==
        doctest::Approx(std::exp(0.5 / 0.3)).epsilon(1e-12));
}
