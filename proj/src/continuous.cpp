#include "autobid/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "autobid/quad.hpp"
#include "autobid/roots.hpp"

namespace autobid::cont {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> default_breaks(double lo, double hi) {
  // Wide supports get log-spaced split points so adaptive quadrature does
  // not waste the whole budget on the tail.
  std::vector<double> b;
  double base = std::max(lo, hi * 1e-9);
  if (hi / std::max(base, 1e-300) > 100.0) {
    for (double z : roots::log_grid(std::max(base, 1e-9), hi, 33))
      b.push_back(z);
  }
  return b;
}
}  // namespace

DensityF make_density(std::function<double(double)> f, double lo, double hi,
                      std::vector<double> breakpoints) {
  if (!(hi > lo)) throw std::invalid_argument("density: empty support");
  DensityF d;
  d.f = std::move(f);
  d.lo = lo;
  d.hi = hi;
  d.breakpoints = std::move(breakpoints);
  for (double z : default_breaks(lo, hi)) d.breakpoints.push_back(z);
  std::sort(d.breakpoints.begin(), d.breakpoints.end());
  d.mass = quad::integrate_segments(d.f, lo, hi, d.breakpoints, 1e-13);
  if (!std::isfinite(d.mass) || d.mass <= 0.0)
    throw std::runtime_error("density: mass not finite and positive");
  return d;
}

DensityF uniform01_density() {
  return make_density([](double) { return 1.0; }, 0.0, 1.0);
}

DensityF exponential_density(double rate, double tail_mass) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate > 0");
  double hi = -std::log(tail_mass) / rate;
  return make_density([rate](double z) { return rate * std::exp(-rate * z); },
                      0.0, hi);
}

DensityF piecewise_linear_density(const std::vector<double>& z,
                                  const std::vector<double>& fz) {
  if (z.size() != fz.size() || z.size() < 2)
    throw std::invalid_argument("piecewise density: need matching knots");
  for (size_t i = 1; i < z.size(); ++i)
    if (!(z[i] > z[i - 1]))
      throw std::invalid_argument("piecewise density: knots must increase");
  for (double v : fz)
    if (!(v >= 0.0)) throw std::invalid_argument("piecewise density: f >= 0");
  auto knots_z = z;
  auto knots_f = fz;
  auto eval = [knots_z, knots_f](double x) {
    auto it = std::upper_bound(knots_z.begin(), knots_z.end(), x);
    if (it == knots_z.begin() || it == knots_z.end()) {
      if (x == knots_z.back()) return knots_f.back();
      return 0.0;
    }
    size_t i = static_cast<size_t>(it - knots_z.begin()) - 1;
    double t = (x - knots_z[i]) / (knots_z[i + 1] - knots_z[i]);
    return knots_f[i] + t * (knots_f[i + 1] - knots_f[i]);
  };
  std::vector<double> breaks(z.begin() + 1, z.end() - 1);
  return make_density(eval, z.front(), z.back(), breaks);
}

DensityF density_from_valuations(const ValuationPair& vp, double mass_tol) {
  auto h = vp.h ? vp.h : std::function<double(double)>([vp](double q) {
    double d = vp.v2(q);
    if (d <= 0.0) throw std::runtime_error("valuations: v2 must be positive");
    return vp.v1(q) / d;
  });

  // Monotonicity check on a grid; required for invertibility.
  const int kGrid = 1024;
  double prev = h(0.0);
  for (int i = 1; i <= kGrid; ++i) {
    double q = static_cast<double>(i) / kGrid;
    double cur = h(q);
    if (!std::isfinite(cur)) break;  // infinite top of support is fine
    if (!(cur > prev)) throw std::invalid_argument("h not invertible");
    prev = cur;
  }

  // Truncate the support where h blows up (e.g. tan(pi q/2) at q = 1).
  double q_hi = 1.0;
  double z_hi = h(1.0);
  if (!std::isfinite(z_hi)) {
    double total = quad::adaptive_simpson(vp.v2, 0.0, 1.0, 1e-13);
    double lo = 0.0, hi_q = 1.0;
    for (int i = 0; i < 200; ++i) {
      double m = 0.5 * (lo + hi_q);
      double tail = quad::adaptive_simpson(vp.v2, m, 1.0, 1e-15);
      if (tail > 1e-12 * total)
        lo = m;
      else
        hi_q = m;
    }
    q_hi = lo;
    z_hi = h(q_hi);
  }
  double z_lo = h(0.0);

  auto h_inv = [h, q_hi](double z) {
    return roots::bisect([&](double q) { return h(q) - z; }, 0.0, q_hi,
                         h(0.0) - z, h(q_hi) - z, 1e-15);
  };
  auto h_prime = vp.h_prime
                     ? vp.h_prime
                     : std::function<double(double)>([h, q_hi](double q) {
                         double step = 1e-6;
                         double a = std::max(0.0, q - step);
                         double b = std::min(q_hi, q + step);
                         return (h(b) - h(a)) / (b - a);
                       });

  auto v2 = vp.v2;
  auto f = [h_inv, h_prime, v2](double z) {
    double q = h_inv(z);
    double hp = h_prime(q);
    if (!(hp > 0.0)) return 0.0;
    return v2(q) / hp;
  };

  std::vector<double> breaks;
  for (double q : vp.breakpoints)
    if (q > 0.0 && q < q_hi) breaks.push_back(h(q));

  DensityF d = make_density(f, z_lo, z_hi, breaks);
  double v2_mass = quad::adaptive_simpson(vp.v2, 0.0, 1.0, 1e-13);
  if (std::abs(d.mass - v2_mass) > mass_tol * std::max(1.0, v2_mass))
    throw std::runtime_error("density: mass check failed");
  return d;
}

double moment(const DensityF& f, Weight P, Side side, double r,
              double rel_tol) {
  if (r < 0.0) throw std::invalid_argument("moment: r >= 0 required");
  double a = f.lo, b = f.hi;
  if (side == Side::Below)
    b = std::min(b, r);
  else
    a = std::max(a, r);
  if (!(a < b)) return 0.0;
  auto integrand = (P == Weight::One)
                       ? std::function<double(double)>(f.f)
                       : std::function<double(double)>(
                             [&f](double z) { return z * f.f(z); });
  double tol = rel_tol * std::max(f.mass, 1e-300);
  return quad::integrate_segments(integrand, a, b, f.breakpoints, tol);
}

double ratio_curve(const DensityF& f, Kind kind, double r) {
  if (!(r > 0.0)) return kInf;
  if (r >= f.hi) return 0.0;
  double m0a = moment(f, Weight::One, Side::Above, r);
  double m1b = moment(f, Weight::Z, Side::Below, r);
  if (kind == Kind::Budget) {
    if (m1b <= 0.0) return kInf;
    return r * m0a / m1b;
  }
  double m1a = moment(f, Weight::Z, Side::Above, r);
  double m0b = moment(f, Weight::One, Side::Below, r);
  if (m1a <= 0.0 || m1b <= 0.0) return kInf;
  return (r * m0a / m1a) * (m0b / m1b);
}

namespace {

Kind pair_kind(const ConstraintProfile& c1, const ConstraintProfile& c2) {
  c1.validate();
  c2.validate();
  if (c1.budget_only() && c2.budget_only()) return Kind::Budget;
  if (c1.target_only() && c2.target_only()) return Kind::Tcpa;
  throw std::invalid_argument(
      "solve_equilibrium: mixed budget/tCPA pairs are not supported");
}

std::vector<double> scan_grid(const DensityF& f, const ScanSpec& scan) {
  double lo = (f.lo > 0.0) ? f.lo * scan.lo_factor : f.hi * 1e-7;
  double hi = f.hi * scan.hi_factor;
  return roots::log_grid(lo, hi, scan.points);
}

EquilibriumSolution recover_solution(const DensityF& f, Kind kind, double b1,
                                     double b2, double t1, double t2,
                                     double r) {
  EquilibriumSolution s;
  s.r = r;
  double m0a = moment(f, Weight::One, Side::Above, r);
  double m0b = moment(f, Weight::One, Side::Below, r);
  double m1a = moment(f, Weight::Z, Side::Above, r);
  double m1b = moment(f, Weight::Z, Side::Below, r);
  s.value1 = m1a;
  s.value2 = m0b;
  if (kind == Kind::Budget) {
    // Proof-side recovery: B2 = mu1 ∫_0^r z f, B1 = mu2 ∫_r^inf f.
    s.mu1 = b2 / m1b;
    s.mu2 = s.mu1 * r;
    s.spend1 = s.mu2 * m0a;
    s.spend2 = s.mu1 * m1b;
    s.residual1 = std::abs(s.spend1 - b1) / std::max(b1, 1e-300);
    s.residual2 = std::abs(s.spend2 - b2) / std::max(b2, 1e-300);
  } else {
    // Tight tCPA constraints: spend_a = T_a * value_a.
    s.mu2 = t1 * m1a / m0a;
    s.mu1 = s.mu2 / r;
    s.spend1 = s.mu2 * m0a;
    s.spend2 = s.mu1 * m1b;
    s.residual1 =
        std::abs(s.spend1 - t1 * s.value1) / std::max(t1 * s.value1, 1e-300);
    s.residual2 =
        std::abs(s.spend2 - t2 * s.value2) / std::max(t2 * s.value2, 1e-300);
  }
  s.degraded = s.residual1 > 1e-6 || s.residual2 > 1e-6;
  return s;
}

}  // namespace

std::vector<EquilibriumSolution> solve_equilibrium(const DensityF& f,
                                                   const ConstraintProfile& c1,
                                                   const ConstraintProfile& c2,
                                                   ScanSpec scan) {
  Kind kind = pair_kind(c1, c2);
  double b1 = c1.budget.value_or(0.0), b2 = c2.budget.value_or(0.0);
  double t1 = c1.target.value_or(0.0), t2 = c2.target.value_or(0.0);
  double target = (kind == Kind::Budget) ? b1 / b2 : t1 / t2;
  if (!std::isfinite(target) || target <= 0.0)
    throw std::invalid_argument("solve_equilibrium: bad constraint ratio");

  auto fn = [&](double r) { return ratio_curve(f, kind, r) - target; };
  std::vector<double> rs = roots::scan_roots(fn, scan_grid(f, scan), scan.r_tol);
  std::vector<EquilibriumSolution> out;
  for (double r : rs)
    out.push_back(recover_solution(f, kind, b1, b2, t1, t2, r));
  return out;
}

// ---------------------------------------------------------------------------
// SPA-side solver.  Same implicit equations (uniform-bidding SPA subgame
// characterization), deliberately independent numerics: composite Boole
// quadrature on a fixed subdivision and its own bracketing refinement.

namespace spa_path {

double boole_segment(const std::function<double(double)>& g, double a,
                     double b, int cells) {
  double h = (b - a) / cells;
  double total = 0.0;
  for (int i = 0; i < cells; ++i) {
    double x0 = a + i * h;
    double q = h / 4.0;
    total += (2.0 * q / 45.0) *
             (7.0 * g(x0) + 32.0 * g(x0 + q) + 12.0 * g(x0 + 2.0 * q) +
              32.0 * g(x0 + 3.0 * q) + 7.0 * g(x0 + 4.0 * q));
  }
  return total;
}

double integrate(const DensityF& f, const std::function<double(double)>& g,
                 double a, double b) {
  if (!(a < b)) return 0.0;
  std::vector<double> cuts{a};
  for (double z : f.breakpoints)
    if (z > a && z < b) cuts.push_back(z);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    total += boole_segment(g, cuts[i], cuts[i + 1], 64);
  return total;
}

struct Moments {
  double m0b, m0a, m1b, m1a;
};

Moments moments_at(const DensityF& f, double r) {
  auto fw = [&f](double z) { return f.f(z); };
  auto zfw = [&f](double z) { return z * f.f(z); };
  double rb = std::clamp(r, f.lo, f.hi);
  Moments m;
  m.m0b = integrate(f, fw, f.lo, rb);
  m.m0a = integrate(f, fw, rb, f.hi);
  m.m1b = integrate(f, zfw, f.lo, rb);
  m.m1a = integrate(f, zfw, rb, f.hi);
  return m;
}

double curve(const DensityF& f, Kind kind, double r) {
  if (!(r > 0.0)) return kInf;
  if (r >= f.hi) return 0.0;
  Moments m = moments_at(f, r);
  if (kind == Kind::Budget)
    return (m.m1b > 0.0) ? r * m.m0a / m.m1b : kInf;
  if (m.m1a <= 0.0 || m.m1b <= 0.0) return kInf;
  return (r * m.m0a / m.m1a) * (m.m0b / m.m1b);
}

}  // namespace spa_path

std::vector<EquilibriumSolution> solve_equilibrium_spa(
    const DensityF& f, const ConstraintProfile& c1, const ConstraintProfile& c2,
    ScanSpec scan) {
  Kind kind = pair_kind(c1, c2);
  double b1 = c1.budget.value_or(0.0), b2 = c2.budget.value_or(0.0);
  double t1 = c1.target.value_or(0.0), t2 = c2.target.value_or(0.0);
  double target = (kind == Kind::Budget) ? b1 / b2 : t1 / t2;
  if (!std::isfinite(target) || target <= 0.0)
    throw std::invalid_argument("solve_equilibrium: bad constraint ratio");

  auto fn = [&](double r) { return spa_path::curve(f, kind, r) - target; };
  // Distinct grid density from the FPA path on purpose.
  ScanSpec own = scan;
  own.points = scan.points + 511;
  std::vector<double> rs = roots::scan_roots(fn, scan_grid(f, own), 1e-12);

  std::vector<EquilibriumSolution> out;
  for (double r : rs) {
    spa_path::Moments m = spa_path::moments_at(f, r);
    EquilibriumSolution s;
    s.r = r;
    s.value1 = m.m1a;
    s.value2 = m.m0b;
    if (kind == Kind::Budget) {
      s.mu1 = b2 / m.m1b;
      s.mu2 = s.mu1 * r;
      s.spend1 = s.mu2 * m.m0a;
      s.spend2 = s.mu1 * m.m1b;
      s.residual1 = std::abs(s.spend1 - b1) / std::max(b1, 1e-300);
      s.residual2 = std::abs(s.spend2 - b2) / std::max(b2, 1e-300);
    } else {
      s.mu2 = t1 * m.m1a / m.m0a;
      s.mu1 = s.mu2 / r;
      s.spend1 = s.mu2 * m.m0a;
      s.spend2 = s.mu1 * m.m1b;
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

EquivalenceReport verify_fpa_spa_equivalence(const DensityF& f,
                                             const ConstraintProfile& c1,
                                             const ConstraintProfile& c2,
                                             double tol) {
  EquivalenceReport rep;
  rep.fpa = solve_equilibrium(f, c1, c2);
  rep.spa = solve_equilibrium_spa(f, c1, c2);
  if (rep.fpa.size() != rep.spa.size()) {
    rep.agree = false;
    rep.max_gap = kInf;
    return rep;
  }
  double gap = 0.0;
  for (size_t i = 0; i < rep.fpa.size(); ++i) {
    const auto& a = rep.fpa[i];
    const auto& b = rep.spa[i];
    auto rel = [](double x, double y) {
      return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
    };
    gap = std::max({gap, rel(a.r, b.r), rel(a.mu1, b.mu1), rel(a.mu2, b.mu2),
                    rel(a.value1, b.value1), rel(a.value2, b.value2),
                    rel(a.spend1, b.spend1), rel(a.spend2, b.spend2)});
  }
  rep.max_gap = gap;
  rep.agree = gap <= tol;
  return rep;
}

ExistenceReport existence_check(const DensityF& f, Kind kind,
                                int grid_points) {
  ExistenceReport rep;
  double lo = (f.lo > 0.0) ? f.lo * 1.0000001 : f.hi * 1e-8;
  double hi = f.hi * (1.0 - 1e-8);
  rep.min_attained = kInf;
  rep.max_attained = 0.0;
  for (double r : roots::log_grid(lo, hi, grid_points)) {
    double v = ratio_curve(f, kind, r);
    if (!std::isfinite(v) || v < 0.0) {
      rep.covered = false;
      rep.detail = "curve not finite on grid (possible quadrature breakdown)";
      return rep;
    }
    rep.min_attained = std::min(rep.min_attained, v);
    rep.max_attained = std::max(rep.max_attained, v);
  }
  if (kind == Kind::Budget) {
    rep.covered = rep.min_attained < 1e-3 && rep.max_attained > 1e3;
    rep.detail = rep.covered
                     ? "curve spans (0, inf) up to grid resolution"
                     : "range gap detected";
  } else {
    // The tCPA curve attains a bounded range; boundary (slack-constraint)
    // equilibria cover target ratios outside it.
    rep.covered = true;
    rep.detail = "tCPA curve continuous; attained range reported";
  }
  return rep;
}

}  // namespace autobid::cont
