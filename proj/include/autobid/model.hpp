#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace autobid {

/// Per-advertiser high-level constraint.  At least one of budget/target must
/// be present; with both, spend <= budget + target * value.
struct ConstraintProfile {
  std::optional<double> budget;  // money
  std::optional<double> target;  // money per unit value (tCPA)

  bool budget_only() const { return budget && !target; }
  bool target_only() const { return target && !budget; }
  /// Spending allowance for a given accrued value.
  double allowance(double value) const {
    double b = budget.value_or(0.0);
    double t = target.value_or(0.0);
    if (!budget) return t * value;  // target-only
    return b + t * value;
  }
  void validate() const;
};

enum class Auction { SPA, FPA };

enum class TieBreak { FavorListedOrder, EndogenousOptimal, Split };

/// Finite query set with per-advertiser values and constraints.
struct DiscreteInstance {
  std::vector<std::string> advertisers;
  std::vector<std::vector<double>> values;  // values[a][q] >= 0
  std::vector<ConstraintProfile> constraints;

  int num_advertisers() const { return static_cast<int>(advertisers.size()); }
  int num_queries() const {
    return values.empty() ? 0 : static_cast<int>(values[0].size());
  }
  void validate() const;
};

/// One bid multiplier per advertiser; bid on q is mu[a] * value[a][q].
struct UniformBidProfile {
  std::vector<double> mu;
  std::optional<double> mu_max;
  void validate() const;
};

struct Outcome {
  // weights[q][a]: share of query q allocated to advertiser a (sums to 1).
  std::vector<std::vector<double>> weights;
  std::vector<double> price;  // full price of query q for its winner(s)
  std::vector<double> total_value;  // per advertiser
  std::vector<double> total_spend;  // per advertiser
};

/// Queries sorted by h(q) = value[a][q] / value[b][q], nonincreasing.
/// Ties keep input order.  Throws if some value[b][q] == 0.
std::vector<int> ratio_order(const DiscreteInstance& inst, int a, int b);

/// Run the per-query auctions for the given bid profile.  SPA price is the
/// highest competing bid; FPA price is the winner's own bid.
Outcome evaluate_outcome(const DiscreteInstance& inst,
                         const UniformBidProfile& bids, Auction auction,
                         TieBreak tiebreak = TieBreak::FavorListedOrder);

/// Midpoint-rule discretization of two valuation densities on [0,1] into N
/// queries: value[a][i] = v_a(midpoint_i) / N.
DiscreteInstance discretize_continuous(const std::function<double(double)>& v1,
                                       const std::function<double(double)>& v2,
                                       int N);

}  // namespace autobid
