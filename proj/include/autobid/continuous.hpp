#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "autobid/model.hpp"

namespace autobid::cont {

/// Valuation densities v1, v2 on [0,1] with h(q) = v1(q)/v2(q) strictly
/// increasing.  Analytic h / h' / h^-1 may be supplied for named families;
/// otherwise they are derived numerically from v1/v2.
struct ValuationPair {
  std::function<double(double)> v1, v2;
  std::function<double(double)> h;        // optional analytic
  std::function<double(double)> h_prime;  // optional analytic
  std::vector<double> breakpoints;        // kinks of v1/v2, in q
};

/// Pushforward density f(z) = v2(h^-1(z)) / h'(h^-1(z)) on [lo, hi].
struct DensityF {
  std::function<double(double)> f;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> breakpoints;  // interior quadrature split points
  double mass = 0.0;                // cached ∫ f

  double operator()(double z) const {
    return (z < lo || z > hi) ? 0.0 : f(z);
  }
};

enum class Weight { One, Z };
enum class Side { Below, Above };  // z <= r  /  z >= r
enum class Kind { Budget, Tcpa };

/// Build a DensityF from an explicit function; computes mass and installs
/// default breakpoints (log-spaced for wide supports).
DensityF make_density(std::function<double(double)> f, double lo, double hi,
                      std::vector<double> breakpoints = {});

DensityF uniform01_density();
DensityF exponential_density(double rate, double tail_mass = 1e-12);
DensityF piecewise_linear_density(const std::vector<double>& z,
                                  const std::vector<double>& fz);

/// f(z) = v2(h^-1(z)) / h'(h^-1(z)); errors out if h is non-monotone on the
/// check grid, and cross-checks mass against ∫ v2.
DensityF density_from_valuations(const ValuationPair& vp,
                                 double mass_tol = 1e-6);

/// E[P(z) 1(side)] = ∫ P(z) f(z) dz over the requested side of r.
double moment(const DensityF& f, Weight P, Side side, double r,
              double rel_tol = 1e-10);

/// Left side of the implicit equilibrium equation:
///   budget: r E[1(z>=r)] / E[z 1(z<=r)]            (= B1/B2 at a root)
///   tcpa:   that times E[1(z<=r)] / E[z 1(z>=r)] * ...  (= T1/T2)
/// Returns +inf when the denominator vanishes.
double ratio_curve(const DensityF& f, Kind kind, double r);

struct EquilibriumSolution {
  double r = 0.0;       // threshold mu2/mu1
  double mu1 = 0.0, mu2 = 0.0;
  double value1 = 0.0, value2 = 0.0;
  double spend1 = 0.0, spend2 = 0.0;
  double residual1 = 0.0, residual2 = 0.0;  // relative residuals
  bool degraded = false;                    // residual above 1e-6
};

struct ScanSpec {
  int points = 2048;
  double lo_factor = 0.5, hi_factor = 2.0;
  double r_tol = 1e-9;
};

/// All roots of ratio_curve(r) = B1/B2 (or T1/T2), ascending in r, with
/// multipliers recovered from the tight constraints.  Both advertisers must
/// carry the same constraint kind; mixed pairs are rejected.
std::vector<EquilibriumSolution> solve_equilibrium(const DensityF& f,
                                                   const ConstraintProfile& c1,
                                                   const ConstraintProfile& c2,
                                                   ScanSpec scan = {});

struct EquivalenceReport {
  bool agree = false;
  double max_gap = 0.0;
  std::vector<EquilibriumSolution> fpa, spa;
};

/// Solves the FPA characterization and the (structurally identical) SPA
/// characterization through independent code paths and compares r, mu,
/// values and spends at tolerance tol.
EquivalenceReport verify_fpa_spa_equivalence(const DensityF& f,
                                             const ConstraintProfile& c1,
                                             const ConstraintProfile& c2,
                                             double tol = 1e-8);

struct ExistenceReport {
  bool covered = false;
  double min_attained = 0.0, max_attained = 0.0;
  std::string detail;
};

/// Confirms the ratio curve is continuous on the scan grid and spans every
/// positive target ratio (decaying to 0 at the support top and growing
/// without bound at the bottom).
ExistenceReport existence_check(const DensityF& f, Kind kind,
                                int grid_points = 2048);

/// Independent SPA-side solver (uniform-bidding characterization); used by
/// the equivalence check.  Exposed for tests.
std::vector<EquilibriumSolution> solve_equilibrium_spa(
    const DensityF& f, const ConstraintProfile& c1, const ConstraintProfile& c2,
    ScanSpec scan = {});

}  // namespace autobid::cont
