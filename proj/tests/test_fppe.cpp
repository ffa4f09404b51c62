#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "autobid/fppe.hpp"

using namespace autobid;

namespace {

DiscreteInstance single(double v1, double v2) {
  DiscreteInstance inst;
  inst.advertisers = {"solo"};
  inst.values = {{v1, v2}};
  inst.constraints.resize(1);
  return inst;
}

DiscreteInstance random_instance(std::mt19937& rng, int n, int q) {
  std::uniform_real_distribution<double> V(0.1, 4.0);
  std::uniform_real_distribution<double> B(0.5, 6.0);
  DiscreteInstance inst;
  inst.constraints.resize(n);
  for (int a = 0; a < n; ++a) {
    inst.advertisers.push_back("a" + std::to_string(a + 1));
    std::vector<double> row;
    for (int j = 0; j < q; ++j) row.push_back(V(rng));
    inst.values.push_back(row);
    if (a % 2 == 0)
      inst.constraints[a].budget = B(rng);
    else
      inst.constraints[a].target = 0.25 * B(rng);
  }
  return inst;
}

bool profile_feasible(const DiscreteInstance& inst,
                      const std::vector<double>& mu) {
  int n = inst.num_advertisers();
  std::vector<double> value(n, 0.0);
  for (int j = 0; j < inst.num_queries(); ++j) {
    double best = 0.0;
    int win = -1;
    for (int a = 0; a < n; ++a) {
      double bid = mu[a] * inst.values[a][j];
      if (bid > best * (1.0 + 1e-7) + 1e-15) {
        best = bid;
        win = a;
      }
    }
    if (win >= 0) value[win] += inst.values[win][j];
  }
  for (int a = 0; a < n; ++a) {
    const ConstraintProfile& c = inst.constraints[a];
    double lhs = (mu[a] - c.target.value_or(0.0)) * value[a];
    double cap_b = c.budget ? *c.budget : 0.0;
    if (!c.budget && lhs > 1e-9) return false;
    if (c.budget && lhs > cap_b + 1e-9) return false;
  }
  return true;
}

bool feasible_solo(const DiscreteInstance& inst, const std::vector<double>& mu,
                   int a, double x) {
  int n = inst.num_advertisers();
  std::vector<double> probe = mu;
  probe[a] = x;
  std::vector<double> value(n, 0.0);
  for (int j = 0; j < inst.num_queries(); ++j) {
    double bb = 0.0;
    int win = -1;
    for (int b = 0; b < n; ++b) {
      double bid = probe[b] * inst.values[b][j];
      if (bid > bb * (1.0 + 1e-7) + 1e-15) {
        bb = bid;
        win = b;
      }
    }
    if (win >= 0) value[win] += inst.values[win][j];
  }
  const ConstraintProfile& c = inst.constraints[a];
  double lhs = (x - c.target.value_or(0.0)) * value[a];
  return c.budget ? lhs <= *c.budget + 1e-9 : lhs <= 1e-9;
}

/// Grid search for the maximal feasible profile: monotone descent over the
/// lattice {0, step, ..., cap}^n followed by raise passes, mirroring the
/// maximal-feasible definition at grid resolution.
std::vector<double> lattice_oracle(const DiscreteInstance& inst, double cap,
                                   double step) {
  int n = inst.num_advertisers();
  std::vector<double> mu(n, cap);
  for (int pass = 0; pass < 400; ++pass) {
    bool changed = false;
    for (int a = 0; a < n; ++a) {
      if (feasible_solo(inst, mu, a, mu[a])) continue;
      double best = 0.0;
      for (double x = 0.0; x <= mu[a] + 1e-12; x += step)
        if (feasible_solo(inst, mu, a, x)) best = x;
      if (std::abs(best - mu[a]) > 1e-12) changed = true;
      mu[a] = best;
    }
    if (!changed) break;
  }
  for (int pass = 0; pass < 400; ++pass) {
    bool changed = false;
    for (int a = 0; a < n; ++a) {
      double best = mu[a];
      for (double x = mu[a]; x <= cap + 1e-12; x += step)
        if (feasible_solo(inst, mu, a, x)) best = x;
      if (best > mu[a] + 1e-12) {
        mu[a] = best;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return mu;
}

}  // namespace

TEST_CASE("single advertiser budget pacing") {
  auto inst = single(1.0, 1.0);
  inst.constraints[0].budget = 1.0;
  auto sol = fppe::solve_fppe(inst, 2.0);
  CHECK(sol.mu[0] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(sol.value[0] == doctest::Approx(2.0));
  CHECK(sol.spend[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(sol.certificate[0] == "blocked-by-constraint");
}

TEST_CASE("single advertiser tcpa pacing") {
  auto inst = single(1.0, 1.0);
  inst.constraints[0].target = 0.8;
  auto sol = fppe::solve_fppe(inst, 2.0);
  CHECK(sol.mu[0] == doctest::Approx(0.8).epsilon(1e-8));
  CHECK(sol.spend[0] == doctest::Approx(1.6).epsilon(1e-7));
}

TEST_CASE("unconstrained advertiser rides the cap") {
  auto inst = single(1.0, 1.0);
  inst.constraints[0].budget = 100.0;
  auto sol = fppe::solve_fppe(inst, 2.0);
  CHECK(sol.mu[0] == doctest::Approx(2.0));
  CHECK(sol.certificate[0] == "at-cap");
}

TEST_CASE("fpa spend identity") {
  std::mt19937 rng(11);
  for (int t = 0; t < 5; ++t) {
    auto inst = random_instance(rng, 3, 5);
    auto sol = fppe::solve_fppe(inst, fppe::default_cap(inst));
    for (int a = 0; a < 3; ++a)
      CHECK(sol.spend[a] == doctest::Approx(sol.mu[a] * sol.value[a]));
  }
}

TEST_CASE("solver matches the lattice oracle") {
  std::mt19937 rng(23);
  for (int t = 0; t < 8; ++t) {
    auto inst = random_instance(rng, 2 + t % 2, 3 + t % 3);
    double cap = fppe::default_cap(inst);
    auto sol = fppe::solve_fppe(inst, cap);
    double step = 0.002 * cap;
    auto oracle = lattice_oracle(inst, cap, step);
    // Grid resolution plus the knock-on shift a rival's grid snap can cause.
    for (size_t a = 0; a < oracle.size(); ++a)
      CHECK(std::abs(sol.mu[a] - oracle[a]) <= 5.0 * step + 1e-9);
  }
}

TEST_CASE("lattice property of feasible profiles") {
  std::mt19937 rng(31);
  auto inst = random_instance(rng, 3, 4);
  std::uniform_real_distribution<double> U(0.0, 1.5);
  auto draw_feasible = [&] {
    std::vector<double> mu{U(rng), U(rng), U(rng)};
    for (int k = 0; k < 60 && !profile_feasible(inst, mu); ++k)
      for (double& m : mu) m *= 0.7;
    return mu;
  };
  int checked = 0;
  for (int t = 0; t < 40 && checked < 20; ++t) {
    auto x = draw_feasible();
    auto y = draw_feasible();
    if (!profile_feasible(inst, x) || !profile_feasible(inst, y)) continue;
    std::vector<double> join(3);
    for (int a = 0; a < 3; ++a) join[a] = std::max(x[a], y[a]);
    CHECK(profile_feasible(inst, join));
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("maximality of the returned profile") {
  std::mt19937 rng(41);
  for (int t = 0; t < 5; ++t) {
    auto inst = random_instance(rng, 2, 4);
    double cap = fppe::default_cap(inst);
    auto sol = fppe::solve_fppe(inst, cap);
    for (int a = 0; a < 2; ++a) {
      if (sol.mu[a] >= cap * (1.0 - 1e-9)) continue;  // at cap
      std::vector<double> bumped = sol.mu;
      bumped[a] *= 1.0 + 1e-4;
      // Raising one multiplier past its resting point breaks feasibility.
      CHECK_FALSE(profile_feasible(inst, bumped));
    }
  }
}

TEST_CASE("budget sweep is monotone on the pathological instance") {
  DiscreteInstance inst;
  inst.advertisers = {"a1", "a2"};
  inst.values = {{2.1, 40.0, 30.0, 20.0}, {1.0, 20.0, 25.0, 100.0}};
  inst.constraints.resize(2);
  inst.constraints[0].budget = 20.0;
  inst.constraints[1].budget = 49.0;
  auto res = fppe::fppe_monotonicity_probe(inst, 0, {5.0, 10.0, 20.0, 40.0});
  CHECK(res.pass);
  for (size_t i = 1; i < res.rows.size(); ++i)
    CHECK(res.rows[i].value >= res.rows[i - 1].value - 1e-9);
}

TEST_CASE("probe rejects unsorted reports") {
  auto inst = single(1.0, 1.0);
  inst.constraints[0].budget = 1.0;
  CHECK_THROWS_AS(fppe::fppe_monotonicity_probe(inst, 0, {2.0, 1.0}),
                  std::invalid_argument);
}
