#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "autobid/model.hpp"

namespace autobid::spa {

/// Result of checking the three equilibrium conditions for a two-advertiser
/// SPA uniform-bidding profile: allocation inequalities, constraints, and
/// best response (no advertiser can afford its next query at current prices).
struct EquilibriumReport {
  std::vector<bool> allocation_ok;   // per query
  std::vector<double> slack;         // per advertiser, allowance - spend
  std::vector<double> br_margin;     // per advertiser, blocking margin (money)
  bool allocation_pass = false;
  bool constraint_pass = false;
  bool best_response_pass = false;
  bool pass = false;
  std::string detail;
};

/// Check a uniform-bidding profile for the two-advertiser SPA subgame.
/// If claimed_prefix is set, advertiser 1 (index 0) is claimed to win exactly
/// that many queries in h-order; otherwise the winner set is derived from the
/// bids.  Budget/tCPA feasibility is weak, best-response blocking is strict.
EquilibriumReport check_equilibrium(const DiscreteInstance& inst,
                                    const UniformBidProfile& bids,
                                    std::optional<int> claimed_prefix = {});

struct BestResponse {
  double mu = 0.0;
  std::vector<int> won;  // query indices
  double value = 0.0;
  double spend = 0.0;
};

/// Greedy uniform-bid best response for advertiser a against fixed per-query
/// prices.  Candidate sets are prefixes in decreasing value-to-price order;
/// the maximum-value feasible prefix wins, and mu is placed strictly between
/// the last accepted and first rejected ratio.
BestResponse best_response_multiplier(const DiscreteInstance& inst, int a,
                                      const std::vector<double>& prices,
                                      double mu_cap = 1e9);

struct EquilibriumCandidate {
  int prefix = 0;           // advertiser 1 wins the top-k queries in h-order
  double mu1 = 0.0, mu2 = 0.0;
  double value1 = 0.0, value2 = 0.0;
  bool tie_used = false;    // witness ratio sits on an h boundary
  EquilibriumReport report;
};

/// Enumerate all threshold (prefix) uniform-bidding equilibria of the
/// two-advertiser SPA subgame.  The multiplier strategy space is refined per
/// constraint type: budget-only advertisers bid at most their value (mu <= 1),
/// tCPA-only advertisers at least their value (mu >= 1).
std::vector<EquilibriumCandidate> enumerate_equilibria(
    const DiscreteInstance& inst);

struct ProbeRow {
  double report = 0.0;
  std::vector<double> values;  // advertiser a's value in each equilibrium
  double worst = 0.0, best = 0.0;
};

struct ProbeResult {
  std::vector<ProbeRow> rows;
  bool non_aic_worst = false;  // some misreport's worst beats truth's worst
  bool non_aic_best = false;
  double truth = 0.0;
};

/// Sweep misreported constraint values for advertiser a and record the set of
/// equilibrium values a obtains.  The true constraint is read from inst.
ProbeResult aic_probe_discrete(const DiscreteInstance& inst, int a,
                               const std::vector<double>& reports);

}  // namespace autobid::spa
