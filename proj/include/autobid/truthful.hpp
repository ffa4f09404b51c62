#pragma once
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "autobid/continuous.hpp"

namespace autobid::truthful {

/// A scale-invariant symmetric per-query allocation: alloc(z) is the win
/// probability of the bidder whose bid ratio is z = b1/b2.  Validity needs
/// alloc nondecreasing, alloc(0) = 0 and alloc(z) + alloc(1/z) = 1.
/// Pricing follows the payment formula p(b) = b alloc(b) - ∫_0^b alloc,
/// evaluated in closed form for the step rule and through a cached
/// cumulative integral otherwise.  Rule objects are immutable after
/// construction and safe to share across threads.
class AllocationRule {
 public:
  /// Second-price auction as an allocation rule: winner takes all, ties at
  /// z = 1 split evenly by the symmetry convention.
  static AllocationRule spa_step();
  /// alloc(z) = z^k / (1 + z^k), k > 0.
  static AllocationRule logistic_power(double k);
  static AllocationRule custom(std::function<double(double)> alloc,
                               std::string name);

  double alloc(double z) const;
  double price(double b) const;
  const std::string& family() const { return family_; }
  bool is_step() const { return step_; }

 private:
  AllocationRule() = default;
  std::function<double(double)> alloc_;
  /// Cached R(b) = ∫_0^b (1 - alloc); price(b) = R(b) - b (1 - alloc(b)).
  /// R grows at most logarithmically for valid rules, so one wide cache
  /// covers every bid ratio the solvers produce.
  std::shared_ptr<const class LoserMassCache> loser_mass_;
  std::string family_;
  bool step_ = false;
};

double myerson_price(const AllocationRule& rule, double b);

struct RuleValidation {
  bool monotone = false;
  bool zero_at_zero = false;
  bool symmetric = false;
  bool pass = false;
  double worst_symmetry_gap = 0.0;
  double violation_z = 0.0;  // first violating grid point when failing
};

RuleValidation validate_rule(const AllocationRule& rule,
                             const std::vector<double>& grid);

/// Roots r = mu2/mu1 of the implicit equation
///   budget:  r E[p(z/r)] / E[z p(r/z)] = B1/B2
///   tcpa:    the same times E[alloc(r/z)] / E[z alloc(z/r)] = T1/T2
/// with multipliers recovered from the tight constraints and values
///   V1 = E[z alloc(z/r)],  V2 = E[alloc(r/z)].
std::vector<cont::EquilibriumSolution> solve_truthful_equilibrium(
    const cont::DensityF& f, const AllocationRule& rule,
    const ConstraintProfile& c1, const ConstraintProfile& c2,
    cont::ScanSpec scan = {});

struct PricingTestReport {
  bool equality_holds = false;
  double worst_b = 0.0;
  double worst_gap = 0.0;  // max |Delta(b)| = |p(b) - b p(1/b)|
};

/// An AIC pricing must satisfy p(b) = b p(1/b) everywhere (equivalently
/// p(b) = alpha (b+1)); any violation is a direction in which a
/// concentrated density makes the auction non-AIC.
PricingTestReport aic_pricing_test(const AllocationRule& rule,
                                   const std::vector<double>& grid,
                                   double tol = 1e-9);
PricingTestReport aic_pricing_test(const std::function<double(double)>& price,
                                   const std::vector<double>& grid,
                                   double tol = 1e-9);

double pricing_delta(const AllocationRule& rule, double b);

struct ImpossibleAllocReport {
  double alpha = 0.0;
  double d = 0.5;               // x(1) = 1/2 by symmetry
  double negative_below = 0.0;  // x(b) < 0 for b below this
  double exceeds_one_above = 0.0;
  bool infeasible = true;
};

/// The allocation implied by the only AIC-compatible pricing
/// p(b) = alpha (b+1) is x(b) = alpha ln b + 1/2, which leaves [0,1] on
/// both sides — no valid rule exists.
ImpossibleAllocReport impossible_alloc_check(double alpha);

}  // namespace autobid::truthful
