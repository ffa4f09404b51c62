#include "autobid/fppe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace autobid::fppe {

namespace {

struct Eval {
  std::vector<double> value, spend;
  std::vector<int> winner;
  bool tie = false;
};

Eval evaluate(const DiscreteInstance& inst, const std::vector<double>& mu) {
  int n = inst.num_advertisers(), q = inst.num_queries();
  Eval e;
  e.value.assign(n, 0.0);
  e.spend.assign(n, 0.0);
  e.winner.assign(q, -1);
  for (int j = 0; j < q; ++j) {
    double best = 0.0;
    int win = -1;
    for (int a = 0; a < n; ++a) {
      double bid = mu[a] * inst.values[a][j];
      // Relative tie band: a later bid within the band does not displace the
      // incumbent. The band must be much wider than the binary-search
      // tolerance so the iteration can settle exactly on tie thresholds
      // instead of chasing them forever.
      if (bid > best * (1.0 + 1e-7) + 1e-15) {
        best = bid;
        win = a;
      } else if (win >= 0 && bid > best * (1.0 - 1e-7) - 1e-15) {
        e.tie = true;  // listed order keeps the earlier winner
      }
    }
    if (win >= 0) {
      e.winner[j] = win;
      e.value[win] += inst.values[win][j];
      e.spend[win] += best;  // first price: winner pays own bid
    }
  }
  return e;
}

/// (mu_a - T_a) * value_won_a <= B_a, with absent B as infinity.
bool feasible_for(const DiscreteInstance& inst, const Eval& e, int a,
                  double mu_a) {
  const ConstraintProfile& c = inst.constraints[a];
  double t = c.target.value_or(0.0);
  double lhs = (mu_a - t) * e.value[a];
  if (!c.budget) return lhs <= 1e-12 * std::max(1.0, std::abs(lhs));
  return lhs <= *c.budget + 1e-12 * std::max(1.0, *c.budget);
}

}  // namespace

double default_cap(const DiscreteInstance& inst) {
  double max_t = 0.0;
  for (const auto& c : inst.constraints)
    if (c.target) max_t = std::max(max_t, *c.target);
  return 10.0 * std::max(max_t, 1.0);
}

PacingSolution solve_fppe(const DiscreteInstance& inst, double mu_cap,
                          double tol) {
  inst.validate();
  if (!(mu_cap > 0.0) || !std::isfinite(mu_cap))
    throw std::invalid_argument("solve_fppe: cap must be positive and finite");
  int n = inst.num_advertisers();

  std::vector<double> mu(n, mu_cap);
  PacingSolution sol;
  const int max_iters = 200 * std::max(n, 1);
  const double progress = 1e-9;

  auto feasible_at = [&](int a, double x) {
    std::vector<double> trial = mu;
    trial[a] = x;
    Eval te = evaluate(inst, trial);
    sol.tie_occurred = sol.tie_occurred || te.tie;
    return feasible_for(inst, te, a, x);
  };

  // Phase 1: monotone descent from the cap. Each violator moves to the
  // largest feasible multiplier given the others.
  int it = 0;
  for (; it < max_iters; ++it) {
    bool changed = false;
    for (int a = 0; a < n; ++a) {
      Eval e = evaluate(inst, mu);
      sol.tie_occurred = sol.tie_occurred || e.tie;
      if (feasible_for(inst, e, a, mu[a])) continue;
      double lo = 0.0, hi = mu[a];
      for (int k = 0; k < 80 && hi - lo > tol * std::max(1.0, hi); ++k) {
        double mid = 0.5 * (lo + hi);
        if (feasible_at(a, mid))
          lo = mid;
        else
          hi = mid;
      }
      if (mu[a] - lo > progress * std::max(1.0, mu[a])) {
        mu[a] = lo;
        changed = true;
        continue;
      }
      // Stalled against a tie ridge: the rival's bid tracks ours downward,
      // so the search re-lands a hair below the same threshold every pass.
      // In the ridge limit this advertiser keeps its contested queries, so
      // charge it with its full current winner set and shrink directly.
      double won = 0.0;
      for (int j = 0; j < inst.num_queries(); ++j)
        if (e.winner[j] == a) won += inst.values[a][j];
      const ConstraintProfile& c = inst.constraints[a];
      if (won > 0.0 && c.budget) {
        double x = c.target.value_or(0.0) + *c.budget / won;
        if (x < mu[a]) {
          mu[a] = x;
          changed = true;
          continue;
        }
      }
      mu[a] = lo;
    }
    if (!changed) break;
  }
  if (it >= max_iters)
    throw std::runtime_error("solve_fppe: iteration budget exhausted");

  // Phase 2: raise passes. A ridge stall in phase 1 can leave a multiplier
  // strictly below its largest feasible value, so lift each one back up.
  // Raising a rival only shrinks this advertiser's winner set, hence raises
  // preserve everyone's feasibility.
  for (int it2 = 0; it2 < max_iters; ++it2) {
    bool changed = false;
    for (int a = 0; a < n; ++a) {
      if (mu[a] >= mu_cap) continue;
      double lo = mu[a], hi = mu_cap;
      if (feasible_at(a, mu_cap)) {
        lo = mu_cap;
      } else {
        for (int k = 0; k < 80 && hi - lo > tol * std::max(1.0, hi); ++k) {
          double mid = 0.5 * (lo + hi);
          if (feasible_at(a, mid))
            lo = mid;
          else
            hi = mid;
        }
      }
      if (lo - mu[a] > progress * std::max(1.0, lo)) changed = true;
      mu[a] = std::max(mu[a], lo);
    }
    if (!changed) break;
  }

  Eval e = evaluate(inst, mu);
  sol.mu = mu;
  sol.winner = e.winner;
  sol.value = e.value;
  sol.spend = e.spend;
  sol.iterations = it + 1;
  sol.slack.resize(n);
  sol.certificate.resize(n);
  for (int a = 0; a < n; ++a) {
    double allowance = inst.constraints[a].allowance(e.value[a]);
    sol.slack[a] = allowance - e.spend[a];
    sol.certificate[a] =
        (mu[a] >= mu_cap * (1.0 - 1e-9)) ? "at-cap" : "blocked-by-constraint";
  }
  return sol;
}

ProbeResult fppe_monotonicity_probe(const DiscreteInstance& inst, int a,
                                    const std::vector<double>& reports) {
  if (a < 0 || a >= inst.num_advertisers())
    throw std::invalid_argument("fppe_monotonicity_probe: bad advertiser");
  if (!std::is_sorted(reports.begin(), reports.end()))
    throw std::invalid_argument(
        "fppe_monotonicity_probe: reports must be ascending");

  ProbeResult res;
  res.pass = true;
  double cap = default_cap(inst);
  for (double rep : reports) {
    DiscreteInstance probe = inst;
    if (probe.constraints[a].budget)
      probe.constraints[a].budget = rep;
    else
      probe.constraints[a].target = rep;
    PacingSolution s = solve_fppe(probe, cap);
    ProbeRow row;
    row.report = rep;
    row.value = s.value[a];
    row.spend = s.spend[a];
    row.mu = s.mu;
    if (!res.rows.empty()) {
      const ProbeRow& prev = res.rows.back();
      if (row.value < prev.value - 1e-9) {
        res.pass = false;
        res.detail = "value decreased at report " + std::to_string(rep);
      }
      for (size_t b = 0; b < row.mu.size(); ++b) {
        if (static_cast<int>(b) == a) continue;
        if (row.mu[b] < prev.mu[b] - 1e-7) {
          res.pass = false;
          res.detail = "multiplier decreased at report " + std::to_string(rep);
        }
      }
    }
    res.rows.push_back(std::move(row));
  }
  if (res.pass) res.detail = "value and rival multipliers nondecreasing";
  return res;
}

}  // namespace autobid::fppe
