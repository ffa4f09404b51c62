#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "autobid/continuous.hpp"

namespace autobid::aic {

/// An equilibrium-level curve r -> B2/B1 (dimensionless).  g_prime is
/// optional; a central difference is used when absent.  c carries the family
/// normalization constant when one applies.
struct GCurve {
  std::function<double(double)> g;
  std::function<double(double)> g_prime;  // may be empty
  double lo = 1e-6, hi = 100.0;           // domain of interest
  std::optional<double> c;

  double dg(double r) const;  // g_prime or central difference
};

/// A maximal interval where the equilibrium ratio curve increases in r.
/// Advertiser 1's value strictly decreases in r, so an increasing stretch
/// means a larger report can buy strictly less value.
struct Witness {
  double lo = 0.0, hi = 0.0;
  double r0 = 0.0;  // interior demo point
};

struct MisreportDemo {
  double r_truth = 0.0, r_misreport = 0.0;
  double value_truth = 0.0, value_misreport = 0.0;
  double residual = 0.0;  // worst relative residual of the re-solved points
  bool value_decreased = false;
};

struct AICVerdict {
  enum class Status { Certified, NonAIC, Inconclusive };
  Status status = Status::Inconclusive;
  std::vector<Witness> witnesses;
  std::optional<MisreportDemo> demo;
  std::string detail;
};

/// Scans ratio_curve(f, kind, r) on a log grid.  Strictly decreasing
/// everywhere -> Certified.  An increasing interval -> NonAIC, with a
/// misreport demonstration: truth set so the curve passes through r0, the
/// constraint inflated by 1%, and the nearest re-solved root shown to carry
/// strictly less value for advertiser 1.  Flat-within-tolerance stretches
/// without any increase -> Inconclusive, never silently certified.
AICVerdict monotonicity_scan(const cont::DensityF& f, cont::Kind kind,
                             int grid_points = 1024);

struct MHRReport {
  bool pass = false;
  double first_violation_r = 0.0;  // meaningful when !pass
  double worst_drop = 0.0;         // largest relative hazard decrease seen
};

/// Monotone hazard rate: f(r) / E[1(z>=r)] nondecreasing (sufficient for
/// the budget curve to be decreasing, hence for AIC).
MHRReport mhr_check(const cont::DensityF& f, int grid_points = 2048);

struct SufficiencyReport {
  bool h_concave = false;
  bool v2_nondecreasing = false;
  bool pass = false;
  double witness_q = 0.0;  // first violating q when failing
};

/// Valuation-side sufficient condition: h = v1/v2 concave and v2
/// nondecreasing imply the pushforward density is nondecreasing, which
/// implies MHR and hence AIC.
SufficiencyReport sufficient_condition_check(const cont::ValuationPair& vp,
                                             int grid_points = 512);

/// Reconstructs a density from a level curve by the exact inversion
///   f(r) = (g'(r) r + g(r)) e^{∫ 1/(x g(x) + x) dx} / (r g(r) + r)^2,
/// with the inner integral accumulated from eps.  The eps cutoff rescales f
/// by a constant, which cancels in every ratio the solver consumes.
/// Throws when g' r + g < 0 somewhere on [lo, hi] (no density exists).
cont::DensityF f_from_g(const GCurve& g, double lo, double hi,
                        double eps = 1e-6);

/// Max_grid | ghat - g | where ghat(r) = E[z 1(z<=r)] / (r E[1(z>=r)]) is
/// the curve the density actually induces.
double roundtrip_check(const cont::DensityF& f, const GCurve& g,
                       const std::vector<double>& grid);

/// The induced curve ghat of a density, backed by cached cumulative
/// integrals, with an analytic derivative.
GCurve realized_g_curve(const cont::DensityF& f);

/// The cubic non-AIC construction: the target curve
///   g(r) = ((r-1)^3 + 3) / (c r) - 1,  c = min_{r>0} ((r-1)^3 + 3)/r,
/// and the density
///   f(r) = 3c (r-1)^2 e^{c ∫_0^r dx/((x-1)^3+3)} / ((r-1)^3 + 3)^2.
/// No density induces g_analytic exactly (every induced curve vanishes at
/// r = 0 while g_analytic diverges there); f's own induced curve g_realized
/// is still non-monotone, which is what the construction needs, and f is
/// the exact f_from_g inversion of g_realized up to the eps rescale.
struct Counterexample {
  double c = 0.0;
  double r_min = 0.0;  // argmin of ((r-1)^3+3)/r
  GCurve g_analytic;
  GCurve g_realized;
  cont::DensityF f;
  cont::ValuationPair vp_default;  // h(q) = tan(pi q / 2): support [0, inf)
  cont::ValuationPair vp_literal;  // h(q) = tan(q): support [0, tan 1]
};

Counterexample cubic_counterexample();

}  // namespace autobid::aic
