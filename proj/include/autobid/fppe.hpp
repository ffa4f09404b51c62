#pragma once
#include <string>
#include <vector>

#include "autobid/model.hpp"

namespace autobid::fppe {

/// First-price pacing equilibrium: the component-wise maximal feasible
/// multiplier profile.  Feasibility under first price with uniform bids is
///   (mu_a - T_a) * value_won_a <= B_a
/// (winners pay their own bid, so spend_a = mu_a * value_won_a); missing T
/// counts as 0 and missing B as infinity.
struct PacingSolution {
  std::vector<double> mu;
  std::vector<int> winner;  // per query; -1 when nobody bids
  std::vector<double> value, spend, slack;
  std::vector<std::string> certificate;  // "at-cap" | "blocked-by-constraint"
  bool tie_occurred = false;
  int iterations = 0;
};

/// 10 x the largest target (or 10 when no targets), so tCPA multipliers
/// have headroom without running off to infinity.
double default_cap(const DiscreteInstance& inst);

/// Monotone iteration from the cap: repeatedly lower each violating
/// advertiser's multiplier to its largest feasible value given the others
/// (the constraint is monotone in the advertiser's own multiplier), until a
/// fixed point.  Ties inside the iteration go to the listed order.
PacingSolution solve_fppe(const DiscreteInstance& inst, double mu_cap,
                          double tol = 1e-10);

struct ProbeRow {
  double report = 0.0;
  double value = 0.0;
  double spend = 0.0;
  std::vector<double> mu;
};

struct ProbeResult {
  std::vector<ProbeRow> rows;
  bool pass = false;  // value of a and everyone's mu nondecreasing in report
  std::string detail;
};

/// Sweeps advertiser a's reported budget (or target, whichever the
/// advertiser carries) over ascending reports and checks the monotonicity
/// that makes uniform-bid first price AIC: a's value never decreases, and
/// no other advertiser's multiplier decreases.
ProbeResult fppe_monotonicity_probe(const DiscreteInstance& inst, int a,
                                    const std::vector<double>& reports);

}  // namespace autobid::fppe
