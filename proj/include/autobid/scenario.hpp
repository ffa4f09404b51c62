#pragma once
#include <string>
#include <utility>
#include <vector>

#include "autobid/continuous.hpp"
#include "autobid/model.hpp"

namespace autobid::scenario {

/// Named function family for valuations and densities.
///   constant(value)            on [0,1]
///   power(a,k): a * x^k        on [0,1], k > -1
///   piecewise-linear(points)   knots (x, y)
///   exponential(rate)          density only, truncated tail
///   cubic-counterexample       density only (the non-AIC construction)
///   tan-construction(variant)  density only: 0 = remapped h, 1 = literal
struct FunctionSpec {
  std::string family;
  double value = 1.0;  // constant
  double a = 1.0, k = 1.0;
  double rate = 1.0;
  int variant = 0;
  std::vector<std::pair<double, double>> points;
};

struct SolverOptions {
  int scan_points = 2048;
  double r_tol = 1e-9;
  double mu_cap = 0.0;  // 0 = derive from the instance
};

struct Scenario {
  std::string kind;  // "discrete" | "continuous" | "density"
  DiscreteInstance discrete;
  FunctionSpec v1, v2;   // continuous kind
  FunctionSpec density;  // density kind
  std::vector<ConstraintProfile> constraints;  // continuous/density kinds
  SolverOptions options;
};

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);
std::string to_json_string(const Scenario& s);
Scenario from_json_string(const std::string& text);

/// Valuation function on [0,1]; throws for density-only families.
std::function<double(double)> build_function(const FunctionSpec& spec);
cont::DensityF build_density(const FunctionSpec& spec);
cont::ValuationPair build_valuations(const FunctionSpec& v1,
                                     const FunctionSpec& v2);

/// Atomic CSV write: temp file + rename.  rows are preformatted lines.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows);

}  // namespace autobid::scenario
