#pragma once
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace autobid::quad {

using Fn = std::function<double(double)>;

namespace detail {
inline double simpson(const Fn& f, double a, double fa, double b, double fb,
                      double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive(const Fn& f, double a, double fa, double b, double fb,
                       double m, double fm, double whole, double tol,
                       int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(f, a, fa, m, fm, lm, flm);
  double right = simpson(f, m, fm, b, fb, rm, frm);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

/// Adaptive Simpson quadrature of f over [a,b] with absolute tolerance tol.
inline double adaptive_simpson(const Fn& f, double a, double b,
                               double tol = 1e-12, int max_depth = 48) {
  if (!(a < b)) return 0.0;
  double fa = f(a), fb = f(b);
  double m = 0.5 * (a + b), fm = f(m);
  if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
    throw std::runtime_error("quad: non-finite integrand value");
  double whole = detail::simpson(f, a, fa, b, fb, m, fm);
  return detail::adaptive(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

/// Integrate over [a,b] split at the given interior breakpoints.
inline double integrate_segments(const Fn& f, double a, double b,
                                 const std::vector<double>& breaks,
                                 double tol = 1e-12) {
  if (!(a < b)) return 0.0;
  std::vector<double> cuts;
  cuts.push_back(a);
  for (double z : breaks)
    if (z > a && z < b) cuts.push_back(z);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  double seg_tol = tol / static_cast<double>(cuts.size());
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    total += adaptive_simpson(f, cuts[i], cuts[i + 1], seg_tol);
  return total;
}

/// Prefix integral of a smooth integrand, cached on a fixed grid.
/// eval(x) = ∫_lo^x integrand.  Per-cell Simpson on the grid; partial cells
/// are handled with a single Simpson step, so accuracy is O(h^4).
class CumulativeIntegral {
 public:
  CumulativeIntegral() = default;
  CumulativeIntegral(Fn integrand, double lo, double hi, int cells)
      : f_(std::move(integrand)), lo_(lo), hi_(hi) {
    if (cells < 1 || !(hi > lo))
      throw std::invalid_argument("CumulativeIntegral: bad grid");
    grid_.resize(cells + 1);
    prefix_.resize(cells + 1);
    double h = (hi - lo) / cells;
    for (int i = 0; i <= cells; ++i) grid_[i] = lo + h * i;
    grid_.back() = hi;
    prefix_[0] = 0.0;
    for (int i = 0; i < cells; ++i) {
      double a = grid_[i], b = grid_[i + 1], m = 0.5 * (a + b);
      prefix_[i + 1] =
          prefix_[i] + (b - a) / 6.0 * (f_(a) + 4.0 * f_(m) + f_(b));
    }
  }

  double eval(double x) const {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return prefix_.back();
    size_t i = static_cast<size_t>((x - lo_) / (hi_ - lo_) * (grid_.size() - 1));
    if (i >= grid_.size() - 1) i = grid_.size() - 2;
    while (grid_[i] > x) --i;
    while (grid_[i + 1] < x) ++i;
    double a = grid_[i], m = 0.5 * (a + x);
    return prefix_[i] + (x - a) / 6.0 * (f_(a) + 4.0 * f_(m) + f_(x));
  }

  double total() const { return prefix_.back(); }

 private:
  Fn f_;
  double lo_ = 0.0, hi_ = 1.0;
  std::vector<double> grid_, prefix_;
};

}  // namespace autobid::quad
