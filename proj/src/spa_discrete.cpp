#include "autobid/spa_discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace autobid::spa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct HOrder {
  std::vector<int> order;   // query indices, h nonincreasing
  std::vector<double> h;    // h along the order
  // prefix[k] = sums over the first k queries (advertiser 1's side),
  // suffix[k] = sums over positions k..n-1 (advertiser 2's side).
  std::vector<double> s1_pre, s2_pre, s1_suf, s2_suf;
};

HOrder make_order(const DiscreteInstance& inst) {
  HOrder ho;
  ho.order = ratio_order(inst, 0, 1);
  int n = static_cast<int>(ho.order.size());
  ho.h.resize(n);
  ho.s1_pre.assign(n + 1, 0.0);
  ho.s2_pre.assign(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    int q = ho.order[i];
    ho.h[i] = inst.values[0][q] / inst.values[1][q];
    ho.s1_pre[i + 1] = ho.s1_pre[i] + inst.values[0][q];
    ho.s2_pre[i + 1] = ho.s2_pre[i] + inst.values[1][q];
  }
  ho.s1_suf.assign(n + 1, 0.0);
  ho.s2_suf.assign(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    ho.s1_suf[k] = ho.s1_pre[n] - ho.s1_pre[k];
    ho.s2_suf[k] = ho.s2_pre[n] - ho.s2_pre[k];
  }
  return ho;
}

void require_two(const DiscreteInstance& inst) {
  if (inst.num_advertisers() != 2)
    throw std::invalid_argument("unsupported: exactly 2 advertisers required");
}

// Strategy-space bounds implied by the constraint type: budget-only
// advertisers never bid above value, tCPA-only never below it.
std::pair<double, double> mu_bounds(const ConstraintProfile& c) {
  if (c.budget_only()) return {0.0, 1.0};
  if (c.target_only()) return {1.0, kInf};
  return {0.0, kInf};
}

}  // namespace

EquilibriumReport check_equilibrium(const DiscreteInstance& inst,
                                    const UniformBidProfile& bids,
                                    std::optional<int> claimed_prefix) {
  inst.validate();
  require_two(inst);
  bids.validate();
  HOrder ho = make_order(inst);
  int n = static_cast<int>(ho.order.size());
  double mu1 = bids.mu.at(0), mu2 = bids.mu.at(1);

  int k;
  if (claimed_prefix) {
    k = *claimed_prefix;
    if (k < 0 || k > n)
      throw std::invalid_argument("check_equilibrium: bad claimed prefix");
  } else {
    k = 0;
    while (k < n && mu1 * inst.values[0][ho.order[k]] >=
                        mu2 * inst.values[1][ho.order[k]])
      ++k;
  }

  EquilibriumReport rep;
  rep.allocation_ok.assign(n, false);
  for (int i = 0; i < n; ++i) {
    int q = ho.order[i];
    double b1 = mu1 * inst.values[0][q], b2 = mu2 * inst.values[1][q];
    rep.allocation_ok[i] = (i < k) ? (b1 >= b2) : (b2 >= b1);
  }
  rep.allocation_pass = std::all_of(rep.allocation_ok.begin(),
                                    rep.allocation_ok.end(),
                                    [](bool b) { return b; });

  double value1 = ho.s1_pre[k], value2 = ho.s2_suf[k];
  double spend1 = mu2 * ho.s2_pre[k];  // SPA: pay the competing bid
  double spend2 = mu1 * ho.s1_suf[k];
  rep.slack = {inst.constraints[0].allowance(value1) - spend1,
               inst.constraints[1].allowance(value2) - spend2};
  rep.constraint_pass = rep.slack[0] >= 0.0 && rep.slack[1] >= 0.0;

  // Best response: every prefix extension must be strictly unaffordable.
  double m1 = kInf, m2 = kInf;
  for (int j = k + 1; j <= n; ++j)
    m1 = std::min(m1, mu2 * ho.s2_pre[j] -
                          inst.constraints[0].allowance(ho.s1_pre[j]));
  for (int j = k - 1; j >= 0; --j)
    m2 = std::min(m2, mu1 * ho.s1_suf[j] -
                          inst.constraints[1].allowance(ho.s2_suf[j]));
  rep.br_margin = {m1, m2};
  rep.best_response_pass = m1 > 0.0 && m2 > 0.0;

  rep.pass = rep.allocation_pass && rep.constraint_pass &&
             rep.best_response_pass;
  return rep;
}

BestResponse best_response_multiplier(const DiscreteInstance& inst, int a,
                                      const std::vector<double>& prices,
                                      double mu_cap) {
  inst.validate();
  int n = inst.num_queries();
  if (static_cast<int>(prices.size()) != n)
    throw std::invalid_argument("best_response: price/query mismatch");
  const auto& v = inst.values.at(a);
  const auto& con = inst.constraints.at(a);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto ratio = [&](int q) {
    if (prices[q] <= 0.0) return kInf;
    return v[q] / prices[q];
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return ratio(x) > ratio(y); });

  // Uniform bidding can only realize prefixes of the ratio order; pick the
  // maximum-value feasible one (slack can recover under tCPA, so scan all).
  double spend = 0.0, value = 0.0;
  int best_k = 0;
  double best_value = 0.0;
  std::vector<double> cum_spend(n + 1, 0.0), cum_value(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    spend += prices[order[i]];
    value += v[order[i]];
    cum_spend[i + 1] = spend;
    cum_value[i + 1] = value;
    if (spend <= con.allowance(value) && value > best_value) {
      best_value = value;
      best_k = i + 1;
    }
  }

  BestResponse br;
  if (best_k == 0) {
    br.mu = 0.0;
    return br;
  }
  for (int i = 0; i < best_k; ++i) br.won.push_back(order[i]);
  br.value = cum_value[best_k];
  br.spend = cum_spend[best_k];

  // Threshold strictly between the last accepted and first rejected ratio:
  // win q iff mu * v(q) > price(q), i.e. ratio(q) > 1/mu.
  double r_in = ratio(order[best_k - 1]);
  double r_out = (best_k < n) ? ratio(order[best_k]) : 0.0;
  double lo = (r_in == kInf) ? 0.0 : 1.0 / r_in;   // mu must exceed this
  double hi = (r_out <= 0.0) ? mu_cap : 1.0 / r_out;
  if (hi <= lo) {
    // Boundary tie between accepted and rejected ratios.
    br.mu = std::min(lo, mu_cap);
  } else if (lo == 0.0) {
    br.mu = std::min(0.5 * hi, mu_cap);
  } else {
    br.mu = std::min(std::sqrt(lo * hi), mu_cap);
  }
  return br;
}

std::vector<EquilibriumCandidate> enumerate_equilibria(
    const DiscreteInstance& inst) {
  inst.validate();
  require_two(inst);
  HOrder ho = make_order(inst);
  int n = static_cast<int>(ho.order.size());
  const auto& c1 = inst.constraints[0];
  const auto& c2 = inst.constraints[1];
  auto [lo1, hi1] = mu_bounds(c1);
  auto [lo2, hi2] = mu_bounds(c2);

  std::vector<EquilibriumCandidate> found;
  for (int k = 0; k <= n; ++k) {
    // Bounds on mu2 from advertiser 1's constraint and blocked extensions.
    double u_mu2 = (ho.s2_pre[k] > 0.0)
                       ? c1.allowance(ho.s1_pre[k]) / ho.s2_pre[k]
                       : kInf;
    double l_mu2 = 0.0;
    for (int j = k + 1; j <= n; ++j)
      l_mu2 = std::max(l_mu2, c1.allowance(ho.s1_pre[j]) / ho.s2_pre[j]);
    // Bounds on mu1 from advertiser 2's side.
    double u_mu1 = (ho.s1_suf[k] > 0.0)
                       ? c2.allowance(ho.s2_suf[k]) / ho.s1_suf[k]
                       : kInf;
    double l_mu1 = 0.0;
    for (int j = k - 1; j >= 0; --j)
      l_mu1 = std::max(l_mu1, c2.allowance(ho.s2_suf[j]) / ho.s1_suf[j]);

    double m1lo = std::max(l_mu1, lo1), m1hi = std::min(u_mu1, hi1);
    double m2lo = std::max(l_mu2, lo2), m2hi = std::min(u_mu2, hi2);
    if (m1hi < m1lo || m2hi < m2lo) continue;

    double rho_lo = (k < n) ? ho.h[k] : 0.0;
    double rho_hi = (k > 0) ? ho.h[k - 1] : kInf;
    double a = std::max(rho_lo, (m1hi > 0.0) ? m2lo / m1hi : 0.0);
    double b = std::min(rho_hi, (m1lo > 0.0) ? m2hi / m1lo : kInf);
    if (!(a < b) || !(b > 0.0)) continue;

    // Sample interior ratio points, most central first, and keep the first
    // candidate that actually verifies.
    std::vector<double> rhos;
    if (std::isfinite(b)) {
      if (a > 0.0)
        rhos = {std::sqrt(a * b), 0.5 * (a + b), a + 0.75 * (b - a),
                a + 0.25 * (b - a), a + 0.95 * (b - a), a + 0.05 * (b - a)};
      else
        rhos = {0.5 * b, 0.25 * b, 0.75 * b, 0.05 * b};
    } else {
      rhos = {2.0 * std::max(a, 1e-9), 10.0 * std::max(a, 1e-9)};
    }
    bool accepted = false;
    for (double rho : rhos) {
      if (!(rho > a) || !(rho < b)) continue;
      double lo = std::max(m1lo, (rho > 0.0) ? m2lo / rho : 0.0);
      double hi = std::min(m1hi, std::isfinite(m2hi) ? m2hi / rho : kInf);
      if (hi < lo) continue;
      std::vector<double> mu1s;
      if (std::isfinite(hi)) mu1s = {hi, 0.5 * (lo + hi), lo + 0.9 * (hi - lo)};
      else mu1s = {std::max(2.0 * lo, 1.0)};
      for (double mu1 : mu1s) {
        if (mu1 <= 0.0) continue;
        UniformBidProfile bids{{mu1, rho * mu1}, std::nullopt};
        auto rep = check_equilibrium(inst, bids, k);
        if (!rep.pass) continue;
        EquilibriumCandidate cand;
        cand.prefix = k;
        cand.mu1 = mu1;
        cand.mu2 = rho * mu1;
        cand.value1 = ho.s1_pre[k];
        cand.value2 = ho.s2_suf[k];
        cand.tie_used =
            (k < n && std::abs(rho - ho.h[k]) < 1e-12 * (1.0 + ho.h[k])) ||
            (k > 0 && std::abs(rho - ho.h[k - 1]) < 1e-12 * (1.0 + ho.h[k - 1]));
        cand.report = std::move(rep);
        found.push_back(std::move(cand));
        accepted = true;
        break;
      }
      if (accepted) break;
    }
  }
  return found;
}

ProbeResult aic_probe_discrete(const DiscreteInstance& inst, int a,
                               const std::vector<double>& reports) {
  inst.validate();
  require_two(inst);
  const auto& con = inst.constraints.at(a);
  bool is_budget = con.budget.has_value();
  ProbeResult res;
  res.truth = is_budget ? *con.budget : *con.target;

  auto run = [&](double report) {
    DiscreteInstance mod = inst;
    if (is_budget)
      mod.constraints[a].budget = report;
    else
      mod.constraints[a].target = report;
    ProbeRow row;
    row.report = report;
    for (const auto& eq : enumerate_equilibria(mod))
      row.values.push_back(a == 0 ? eq.value1 : eq.value2);
    if (row.values.empty()) {
      row.worst = row.best = std::numeric_limits<double>::quiet_NaN();
    } else {
      row.worst = *std::min_element(row.values.begin(), row.values.end());
      row.best = *std::max_element(row.values.begin(), row.values.end());
    }
    return row;
  };

  ProbeRow truth_row = run(res.truth);
  for (double rep : reports) res.rows.push_back(run(rep));

  for (const auto& row : res.rows) {
    if (std::isnan(row.worst) || std::isnan(truth_row.worst)) continue;
    if (row.worst > truth_row.worst + 1e-12) res.non_aic_worst = true;
    if (row.best > truth_row.best + 1e-12) res.non_aic_best = true;
  }
  return res;
}

}  // namespace autobid::spa
