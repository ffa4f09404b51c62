#include "autobid/truthful.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "autobid/quad.hpp"
#include "autobid/roots.hpp"

namespace autobid::truthful {

/// R(b) = ∫_0^b (1 - alloc): linear cells near 0/1 where rules bend, log
/// cells out to very large ratios.
class LoserMassCache {
 public:
  explicit LoserMassCache(const std::function<double(double)>& alloc) {
    auto loser = [alloc](double z) { return 1.0 - alloc(z); };
    head_ = quad::CumulativeIntegral(loser, 0.0, 10.0, 20000);
    tail_ = quad::CumulativeIntegral(
        [loser](double t) {
          double z = std::exp(t);
          return loser(z) * z;
        },
        std::log(10.0), std::log(kHi), 6000);
  }

  double eval(double b) const {
    if (b <= 0.0) return 0.0;
    if (b <= 10.0) return head_.eval(b);
    double t = std::log(std::min(b, kHi));
    double r = head_.total() + tail_.eval(t);
    // Valid rules have (1 - alloc) -> 0; treat any residue past the cache
    // as its boundary value (affects nothing the solvers evaluate).
    return r;
  }

  static constexpr double kHi = 1e8;

 private:
  quad::CumulativeIntegral head_, tail_;
};

AllocationRule AllocationRule::spa_step() {
  AllocationRule r;
  r.alloc_ = [](double z) {
    if (z > 1.0) return 1.0;
    if (z < 1.0) return 0.0;
    return 0.5;
  };
  r.family_ = "spa-step";
  r.step_ = true;
  return r;
}

AllocationRule AllocationRule::logistic_power(double k) {
  if (!(k > 0.0))
    throw std::invalid_argument("logistic_power: k > 0 required");
  AllocationRule r;
  r.alloc_ = [k](double z) {
    if (z <= 0.0) return 0.0;
    double zk = std::pow(z, k);
    if (!std::isfinite(zk)) return 1.0;
    return zk / (1.0 + zk);
  };
  r.family_ = "logistic-power(" + std::to_string(k) + ")";
  r.loser_mass_ = std::make_shared<const LoserMassCache>(r.alloc_);
  return r;
}

AllocationRule AllocationRule::custom(std::function<double(double)> alloc,
                                      std::string name) {
  AllocationRule r;
  r.alloc_ = std::move(alloc);
  r.family_ = std::move(name);
  r.loser_mass_ = std::make_shared<const LoserMassCache>(r.alloc_);
  return r;
}

double AllocationRule::alloc(double z) const { return alloc_(z); }

double AllocationRule::price(double b) const {
  if (b <= 0.0) return 0.0;
  if (step_) {
    if (b > 1.0) return 1.0;   // pay the opponent's bid
    if (b < 1.0) return 0.0;
    return 0.5;
  }
  // p(b) = b alloc(b) - ∫_0^b alloc = R(b) - b (1 - alloc(b)).
  return loser_mass_->eval(b) - b * (1.0 - alloc_(b));
}

double myerson_price(const AllocationRule& rule, double b) {
  if (b < 0.0) throw std::invalid_argument("myerson_price: b >= 0 required");
  return rule.price(b);
}

RuleValidation validate_rule(const AllocationRule& rule,
                             const std::vector<double>& grid) {
  RuleValidation v;
  v.monotone = true;
  v.symmetric = true;
  v.zero_at_zero = std::abs(rule.alloc(0.0)) <= 1e-12;
  double prev = -1.0;
  for (double z : grid) {
    double a = rule.alloc(z);
    if (a < prev - 1e-12) {
      if (v.monotone && v.symmetric) v.violation_z = z;
      v.monotone = false;
    }
    prev = a;
    if (z > 0.0) {
      double gap = std::abs(a + rule.alloc(1.0 / z) - 1.0);
      if (gap > v.worst_symmetry_gap) {
        v.worst_symmetry_gap = gap;
        if (gap > 1e-9) {
          if (v.symmetric) v.violation_z = z;
          v.symmetric = false;
        }
      }
    }
  }
  v.pass = v.monotone && v.symmetric && v.zero_at_zero;
  return v;
}

namespace {

struct RuleMoments {
  double p_won;     // E[p(z/r)]
  double zp_lost;   // E[z p(r/z)]
  double v1;        // E[z alloc(z/r)]
  double v2;        // E[alloc(r/z)]
};

RuleMoments rule_moments(const cont::DensityF& f, const AllocationRule& rule,
                         double r) {
  std::vector<double> breaks = f.breakpoints;
  if (r > f.lo && r < f.hi) breaks.push_back(r);  // step-rule kink
  double tol = 1e-11 * std::max(f.mass, 1e-300);
  RuleMoments m;
  m.p_won = quad::integrate_segments(
      [&](double z) { return f.f(z) * rule.price(z / r); }, f.lo, f.hi, breaks,
      tol);
  m.zp_lost = quad::integrate_segments(
      [&](double z) { return z * f.f(z) * rule.price(r / z); }, f.lo, f.hi,
      breaks, tol);
  m.v1 = quad::integrate_segments(
      [&](double z) { return z * f.f(z) * rule.alloc(z / r); }, f.lo, f.hi,
      breaks, tol);
  m.v2 = quad::integrate_segments(
      [&](double z) { return f.f(z) * rule.alloc(r / z); }, f.lo, f.hi, breaks,
      tol);
  return m;
}

}  // namespace

std::vector<cont::EquilibriumSolution> solve_truthful_equilibrium(
    const cont::DensityF& f, const AllocationRule& rule,
    const ConstraintProfile& c1, const ConstraintProfile& c2,
    cont::ScanSpec scan) {
  c1.validate();
  c2.validate();
  bool budget_kind = c1.budget_only() && c2.budget_only();
  bool tcpa_kind = c1.target_only() && c2.target_only();
  if (!budget_kind && !tcpa_kind)
    throw std::invalid_argument(
        "solve_truthful_equilibrium: mixed budget/tCPA pairs are not "
        "supported");
  double b1 = c1.budget.value_or(0.0), b2 = c2.budget.value_or(0.0);
  double t1 = c1.target.value_or(0.0), t2 = c2.target.value_or(0.0);
  double target = budget_kind ? b1 / b2 : t1 / t2;
  if (!std::isfinite(target) || target <= 0.0)
    throw std::invalid_argument("solve_truthful_equilibrium: bad ratio");

  auto curve = [&](double r) {
    RuleMoments m = rule_moments(f, rule, r);
    if (m.zp_lost <= 0.0) return std::numeric_limits<double>::infinity();
    double value = r * m.p_won / m.zp_lost;
    if (!budget_kind) {
      if (m.v1 <= 0.0) return std::numeric_limits<double>::infinity();
      value *= m.v2 / m.v1;
    }
    return value;
  };

  double lo = (f.lo > 0.0) ? f.lo * scan.lo_factor : f.hi * 1e-7;
  double hi = f.hi * scan.hi_factor;
  auto rs = roots::scan_roots([&](double r) { return curve(r) - target; },
                              roots::log_grid(lo, hi, scan.points), scan.r_tol);

  std::vector<cont::EquilibriumSolution> out;
  for (double r : rs) {
    RuleMoments m = rule_moments(f, rule, r);
    cont::EquilibriumSolution s;
    s.r = r;
    s.value1 = m.v1;
    s.value2 = m.v2;
    if (budget_kind) {
      s.mu1 = b2 / m.zp_lost;
      s.mu2 = s.mu1 * r;
      s.spend1 = s.mu1 * r * m.p_won;
      s.spend2 = s.mu1 * m.zp_lost;
      s.residual1 = std::abs(s.spend1 - b1) / std::max(b1, 1e-300);
      s.residual2 = std::abs(s.spend2 - b2) / std::max(b2, 1e-300);
    } else {
      s.mu1 = t1 * m.v1 / (r * m.p_won);
      s.mu2 = s.mu1 * r;
      s.spend1 = s.mu1 * r * m.p_won;
      s.spend2 = s.mu1 * m.zp_lost;
      s.residual1 =
          std::abs(s.spend1 - t1 * s.value1) / std::max(t1 * s.value1, 1e-300);
      s.residual2 =
          std::abs(s.spend2 - t2 * s.value2) / std::max(t2 * s.value2, 1e-300);
    }
    s.degraded = s.residual1 > 1e-6 || s.residual2 > 1e-6;
    out.push_back(s);
  }
  return out;
}

double pricing_delta(const AllocationRule& rule, double b) {
  return rule.price(b) - b * rule.price(1.0 / b);
}

PricingTestReport aic_pricing_test(const std::function<double(double)>& price,
                                   const std::vector<double>& grid,
                                   double tol) {
  PricingTestReport rep;
  for (double b : grid) {
    if (!(b > 0.0)) continue;
    double gap = std::abs(price(b) - b * price(1.0 / b));
    if (gap > rep.worst_gap) {
      rep.worst_gap = gap;
      rep.worst_b = b;
    }
  }
  rep.equality_holds = rep.worst_gap <= tol;
  return rep;
}

PricingTestReport aic_pricing_test(const AllocationRule& rule,
                                   const std::vector<double>& grid,
                                   double tol) {
  return aic_pricing_test([&rule](double b) { return rule.price(b); }, grid,
                          tol);
}

ImpossibleAllocReport impossible_alloc_check(double alpha) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("impossible_alloc_check: alpha > 0 required");
  ImpossibleAllocReport rep;
  rep.alpha = alpha;
  rep.negative_below = std::exp(-rep.d / alpha);
  rep.exceeds_one_above = std::exp((1.0 - rep.d) / alpha);
  rep.infeasible = true;
  return rep;
}

}  // namespace autobid::truthful
