#include "autobid/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "autobid/aic.hpp"

namespace autobid::scenario {

using nlohmann::json;

namespace {

json function_to_json(const FunctionSpec& f) {
  json j;
  j["family"] = f.family;
  if (f.family == "constant") j["value"] = f.value;
  if (f.family == "power") {
    j["a"] = f.a;
    j["k"] = f.k;
  }
  if (f.family == "exponential") j["rate"] = f.rate;
  if (f.family == "tan-construction") j["variant"] = f.variant;
  if (f.family == "piecewise-linear") {
    json pts = json::array();
    for (const auto& [x, y] : f.points) pts.push_back(json::array({x, y}));
    j["points"] = pts;
  }
  return j;
}

FunctionSpec function_from_json(const json& j) {
  FunctionSpec f;
  f.family = j.at("family").get<std::string>();
  f.value = j.value("value", 1.0);
  f.a = j.value("a", 1.0);
  f.k = j.value("k", 1.0);
  f.rate = j.value("rate", 1.0);
  f.variant = j.value("variant", 0);
  if (j.contains("points"))
    for (const auto& p : j.at("points"))
      f.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  return f;
}

json constraint_to_json(const ConstraintProfile& c, const std::string& id) {
  json j;
  j["id"] = id;
  if (c.budget) j["budget"] = *c.budget;
  if (c.target) j["target"] = *c.target;
  return j;
}

ConstraintProfile constraint_from_json(const json& j) {
  ConstraintProfile c;
  if (j.contains("budget")) c.budget = j.at("budget").get<double>();
  if (j.contains("target")) c.target = j.at("target").get<double>();
  c.validate();
  return c;
}

void validate_spec(const FunctionSpec& f) {
  if (f.family == "power" && !(f.k > -1.0))
    throw std::invalid_argument("power family: k > -1 required");
  if (f.family == "exponential" && !(f.rate > 0.0))
    throw std::invalid_argument("exponential family: rate > 0 required");
  if (f.family == "piecewise-linear" && f.points.size() < 2)
    throw std::invalid_argument("piecewise-linear family: need >= 2 points");
}

}  // namespace

std::string to_json_string(const Scenario& s) {
  json j;
  j["kind"] = s.kind;
  if (s.kind == "discrete") {
    json ads = json::array();
    for (int a = 0; a < s.discrete.num_advertisers(); ++a)
      ads.push_back(constraint_to_json(s.discrete.constraints[a],
                                       s.discrete.advertisers[a]));
    j["advertisers"] = ads;
    j["values"] = s.discrete.values;
  } else {
    json ads = json::array();
    for (size_t a = 0; a < s.constraints.size(); ++a)
      ads.push_back(constraint_to_json(s.constraints[a],
                                       "a" + std::to_string(a + 1)));
    j["advertisers"] = ads;
    if (s.kind == "continuous") {
      j["v1"] = function_to_json(s.v1);
      j["v2"] = function_to_json(s.v2);
    } else if (s.kind == "density") {
      j["f"] = function_to_json(s.density);
    } else {
      throw std::invalid_argument("scenario: unknown kind '" + s.kind + "'");
    }
  }
  json opt;
  opt["scan_points"] = s.options.scan_points;
  opt["r_tol"] = s.options.r_tol;
  if (s.options.mu_cap > 0.0) opt["mu_cap"] = s.options.mu_cap;
  j["options"] = opt;
  return j.dump(2);
}

Scenario from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario: malformed JSON: ") +
                                e.what());
  }
  Scenario s;
  s.kind = j.value("kind", std::string("discrete"));
  if (j.contains("options")) {
    const json& opt = j.at("options");
    s.options.scan_points = opt.value("scan_points", 2048);
    s.options.r_tol = opt.value("r_tol", 1e-9);
    s.options.mu_cap = opt.value("mu_cap", 0.0);
    if (s.options.scan_points < 16 || s.options.scan_points > 1000000)
      throw std::invalid_argument("scenario: scan_points out of range");
    if (!(s.options.r_tol > 0.0) || s.options.r_tol > 1e-2)
      throw std::invalid_argument("scenario: r_tol out of range");
  }
  if (!j.contains("advertisers"))
    throw std::invalid_argument("scenario: missing advertisers");
  if (s.kind == "discrete") {
    for (const auto& ad : j.at("advertisers")) {
      s.discrete.advertisers.push_back(
          ad.value("id", "a" + std::to_string(s.discrete.advertisers.size() + 1)));
      s.discrete.constraints.push_back(constraint_from_json(ad));
    }
    if (!j.contains("values"))
      throw std::invalid_argument("scenario: discrete kind needs values");
    s.discrete.values = j.at("values").get<std::vector<std::vector<double>>>();
    s.discrete.validate();
  } else if (s.kind == "continuous" || s.kind == "density") {
    for (const auto& ad : j.at("advertisers"))
      s.constraints.push_back(constraint_from_json(ad));
    if (s.constraints.size() != 2)
      throw std::invalid_argument(
          "scenario: continuous kinds need exactly two advertisers");
    if (s.kind == "continuous") {
      s.v1 = function_from_json(j.at("v1"));
      s.v2 = function_from_json(j.at("v2"));
      validate_spec(s.v1);
      validate_spec(s.v2);
    } else {
      s.density = function_from_json(j.at("f"));
      validate_spec(s.density);
    }
  } else {
    throw std::invalid_argument("scenario: unknown kind '" + s.kind + "'");
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("scenario: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_string(buf.str());
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("scenario: cannot write " + tmp);
    out << to_json_string(s) << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("scenario: rename failed for " + path);
}

std::function<double(double)> build_function(const FunctionSpec& spec) {
  validate_spec(spec);
  if (spec.family == "constant") {
    double v = spec.value;
    return [v](double) { return v; };
  }
  if (spec.family == "power") {
    double a = spec.a, k = spec.k;
    return [a, k](double q) { return q <= 0.0 && k < 0.0 ? 0.0 : a * std::pow(q, k); };
  }
  if (spec.family == "piecewise-linear") {
    auto pts = spec.points;
    return [pts](double x) {
      if (x <= pts.front().first) return pts.front().second;
      if (x >= pts.back().first) return pts.back().second;
      for (size_t i = 0; i + 1 < pts.size(); ++i) {
        if (x <= pts[i + 1].first) {
          double t = (x - pts[i].first) / (pts[i + 1].first - pts[i].first);
          return pts[i].second + t * (pts[i + 1].second - pts[i].second);
        }
      }
      return pts.back().second;
    };
  }
  throw std::invalid_argument("function family '" + spec.family +
                              "' is not a valuation family");
}

cont::DensityF build_density(const FunctionSpec& spec) {
  validate_spec(spec);
  if (spec.family == "constant")
    return cont::make_density([v = spec.value](double) { return v; }, 0.0, 1.0);
  if (spec.family == "power")
    return cont::make_density(
        [a = spec.a, k = spec.k](double z) {
          return z <= 0.0 && k < 0.0 ? 0.0 : a * std::pow(z, k);
        },
        0.0, 1.0);
  if (spec.family == "exponential") return cont::exponential_density(spec.rate);
  if (spec.family == "piecewise-linear") {
    std::vector<double> xs, ys;
    for (const auto& [x, y] : spec.points) {
      xs.push_back(x);
      ys.push_back(y);
    }
    return cont::piecewise_linear_density(xs, ys);
  }
  if (spec.family == "cubic-counterexample")
    return aic::cubic_counterexample().f;
  if (spec.family == "tan-construction") {
    auto ce = aic::cubic_counterexample();
    return cont::density_from_valuations(spec.variant == 0 ? ce.vp_default
                                                           : ce.vp_literal);
  }
  throw std::invalid_argument("function family '" + spec.family +
                              "' is not a density family");
}

cont::ValuationPair build_valuations(const FunctionSpec& v1,
                                     const FunctionSpec& v2) {
  cont::ValuationPair vp;
  vp.v1 = build_function(v1);
  vp.v2 = build_function(v2);
  auto collect = [&vp](const FunctionSpec& f) {
    if (f.family == "piecewise-linear")
      for (const auto& [x, y] : f.points)
        if (x > 0.0 && x < 1.0) vp.breakpoints.push_back(x);
  };
  collect(v1);
  collect(v2);
  return vp;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("csv: cannot write " + tmp);
    out << header << "\n";
    for (const auto& row : rows) out << row << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("csv: rename failed for " + path);
}

}  // namespace autobid::scenario
