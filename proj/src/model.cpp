#include "autobid/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace autobid {

void ConstraintProfile::validate() const {
  if (!budget && !target)
    throw std::invalid_argument("constraint: need budget or target");
  if (budget && (!std::isfinite(*budget) || *budget < 0.0))
    throw std::invalid_argument("constraint: budget must be finite and >= 0");
  if (target && (!std::isfinite(*target) || *target < 0.0))
    throw std::invalid_argument("constraint: target must be finite and >= 0");
}

void DiscreteInstance::validate() const {
  if (advertisers.empty())
    throw std::invalid_argument("instance: need at least 1 advertiser");
  if (values.size() != advertisers.size() ||
      constraints.size() != advertisers.size())
    throw std::invalid_argument("instance: ragged advertiser data");
  size_t nq = values[0].size();
  for (const auto& row : values) {
    if (row.size() != nq)
      throw std::invalid_argument("instance: ragged value matrix");
    for (double v : row)
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("instance: values must be finite and >= 0");
  }
  for (const auto& c : constraints) c.validate();
}

void UniformBidProfile::validate() const {
  double cap = mu_max.value_or(std::numeric_limits<double>::infinity());
  for (double m : mu)
    if (!std::isfinite(m) || m < 0.0 || m > cap)
      throw std::invalid_argument("bids: mu must be in [0, mu_max]");
}

std::vector<int> ratio_order(const DiscreteInstance& inst, int a, int b) {
  const auto& va = inst.values.at(a);
  const auto& vb = inst.values.at(b);
  int nq = inst.num_queries();
  std::vector<double> h(nq);
  for (int q = 0; q < nq; ++q) {
    if (vb[q] <= 0.0)
      throw std::invalid_argument("ratio_order: undefined ratio (zero value)");
    h[q] = va[q] / vb[q];
  }
  std::vector<int> order(nq);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return h[x] > h[y]; });
  return order;
}

Outcome evaluate_outcome(const DiscreteInstance& inst,
                         const UniformBidProfile& bids, Auction auction,
                         TieBreak tiebreak) {
  inst.validate();
  bids.validate();
  int na = inst.num_advertisers();
  int nq = inst.num_queries();
  if (static_cast<int>(bids.mu.size()) != na)
    throw std::invalid_argument("evaluate_outcome: bid/advertiser mismatch");

  Outcome out;
  out.weights.assign(nq, std::vector<double>(na, 0.0));
  out.price.assign(nq, 0.0);
  out.total_value.assign(na, 0.0);
  out.total_spend.assign(na, 0.0);

  for (int q = 0; q < nq; ++q) {
    double best = 0.0;
    for (int a = 0; a < na; ++a)
      best = std::max(best, bids.mu[a] * inst.values[a][q]);
    std::vector<int> winners;
    for (int a = 0; a < na; ++a)
      if (bids.mu[a] * inst.values[a][q] == best) winners.push_back(a);

    // Endogenous splitting only matters inside equilibrium search; for plain
    // evaluation it degenerates to listed order.
    if (tiebreak != TieBreak::Split && winners.size() > 1)
      winners.resize(1);

    double share = 1.0 / static_cast<double>(winners.size());
    for (int w : winners) {
      double second = 0.0;
      for (int a = 0; a < na; ++a)
        if (a != w) second = std::max(second, bids.mu[a] * inst.values[a][q]);
      double price = (auction == Auction::FPA) ? best : second;
      out.weights[q][w] = share;
      out.price[q] = price;
      out.total_value[w] += share * inst.values[w][q];
      out.total_spend[w] += share * price;
    }
  }
  return out;
}

DiscreteInstance discretize_continuous(const std::function<double(double)>& v1,
                                       const std::function<double(double)>& v2,
                                       int N) {
  if (N < 2) throw std::invalid_argument("discretize: N must be >= 2");
  DiscreteInstance inst;
  inst.advertisers = {"a1", "a2"};
  inst.values.assign(2, std::vector<double>(N));
  inst.constraints.assign(2, ConstraintProfile{1.0, std::nullopt});
  double w = 1.0 / N;
  for (int i = 0; i < N; ++i) {
    double q = (i + 0.5) * w;
    double a = v1(q) * w, b = v2(q) * w;
    if (!std::isfinite(a) || !std::isfinite(b))
      throw std::runtime_error("discretize: non-finite valuation");
    inst.values[0][i] = a;
    inst.values[1][i] = b;
  }
  return inst;
}

}  // namespace autobid
