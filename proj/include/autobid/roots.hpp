#pragma once
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace autobid::roots {

using Fn = std::function<double(double)>;

/// Bisection on a sign-changing bracket [a,b]; stops at |b-a| <= xtol.
inline double bisect(const Fn& f, double a, double b, double fa, double fb,
                     double xtol = 1e-12, int maxit = 200) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw std::invalid_argument("bisect: no sign change");
  for (int i = 0; i < maxit && (b - a) > xtol; ++i) {
    double m = 0.5 * (a + b);
    double fm = f(m);
    if (fm == 0.0) return m;
    if (fa * fm < 0.0) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

/// Scan a grid for sign changes of f and refine each bracket by bisection.
/// Grid points where f is non-finite are skipped.
inline std::vector<double> scan_roots(const Fn& f,
                                      const std::vector<double>& grid,
                                      double xtol = 1e-12) {
  std::vector<double> out;
  double xp = 0.0, fp = 0.0;
  bool have_prev = false;
  for (double x : grid) {
    double fx = f(x);
    if (!std::isfinite(fx)) {
      have_prev = false;
      continue;
    }
    if (fx == 0.0) {
      out.push_back(x);
      have_prev = false;
      continue;
    }
    if (have_prev && fp * fx < 0.0)
      out.push_back(bisect(f, xp, x, fp, fx, xtol));
    xp = x;
    fp = fx;
    have_prev = true;
  }
  return out;
}

/// Golden-section minimizer on [a,b].
inline double minimize(const Fn& f, double a, double b, double xtol = 1e-10) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > xtol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2)
    throw std::invalid_argument("log_grid: bad range");
  std::vector<double> g(n);
  double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < n; ++i)
    g[i] = std::exp(la + (lb - la) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

inline std::vector<double> linear_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

}  // namespace autobid::roots
