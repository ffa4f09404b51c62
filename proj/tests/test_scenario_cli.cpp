#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"

#include "autobid/scenario.hpp"

using namespace autobid;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("discrete scenario json roundtrip") {
  scenario::Scenario s;
  s.kind = "discrete";
  s.discrete.advertisers = {"a1", "a2"};
  s.discrete.values = {{2.1, 40.0}, {1.0, 20.0}};
  s.discrete.constraints.resize(2);
  s.discrete.constraints[0].budget = 20.0;
  s.discrete.constraints[1].target = 0.7;

  auto text = scenario::to_json_string(s);
  auto back = scenario::from_json_string(text);
  CHECK(back.kind == "discrete");
  CHECK(back.discrete.advertisers == s.discrete.advertisers);
  CHECK(back.discrete.values == s.discrete.values);
  CHECK(back.discrete.constraints[0].budget == 20.0);
  CHECK(back.discrete.constraints[1].target == 0.7);
  // Determinism: identical scenario, byte-identical serialization.
  CHECK(scenario::to_json_string(back) == text);
}

TEST_CASE("density scenario roundtrip with options") {
  scenario::Scenario s;
  s.kind = "density";
  s.density.family = "exponential";
  s.density.rate = 2.5;
  s.constraints.resize(2);
  s.constraints[0].budget = 3.0;
  s.constraints[1].budget = 1.0;
  s.options.scan_points = 512;
  s.options.r_tol = 1e-8;

  auto back = scenario::from_json_string(scenario::to_json_string(s));
  CHECK(back.density.family == "exponential");
  CHECK(back.density.rate == 2.5);
  CHECK(back.options.scan_points == 512);
  CHECK(back.options.r_tol == 1e-8);
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(scenario::from_json_string("not json"),
                  std::invalid_argument);
  CHECK_THROWS_AS(scenario::from_json_string(R"({"kind":"weird"})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(scenario::from_json_string(R"({"kind":"discrete"})"),
                  std::invalid_argument);
  // Out-of-range options.
  CHECK_THROWS_AS(scenario::from_json_string(R"({
    "kind":"density",
    "advertisers":[{"budget":1},{"budget":1}],
    "density":{"family":"constant"},
    "options":{"scan_points":4}})"),
                  std::invalid_argument);
}

TEST_CASE("builders produce usable densities") {
  scenario::FunctionSpec constant;
  constant.family = "constant";
  auto f = scenario::build_density(constant);
  CHECK(f.mass == doctest::Approx(1.0).epsilon(1e-9));

  scenario::FunctionSpec bad;
  bad.family = "no-such-family";
  CHECK_THROWS_AS(scenario::build_density(bad), std::invalid_argument);

  // Valuation families build functions on [0,1].
  scenario::FunctionSpec pw;
  pw.family = "piecewise-linear";
  pw.points = {{0.0, 1.0}, {0.5, 2.0}, {1.0, 1.0}};
  auto v = scenario::build_function(pw);
  CHECK(v(0.25) == doctest::Approx(1.5));
}

TEST_CASE("csv writer is atomic and deterministic") {
  std::string path = "test_scenario_cli_out.csv";
  scenario::write_csv(path, "a,b", {"1,2", "3,4"});
  CHECK(slurp(path) == "a,b\n1,2\n3,4\n");
  // Overwrite through the same temp+rename path.
  scenario::write_csv(path, "a,b", {"5,6"});
  CHECK(slurp(path) == "a,b\n5,6\n");
  std::remove(path.c_str());
}

TEST_CASE("scenario file io") {
  scenario::Scenario s;
  s.kind = "density";
  s.density.family = "constant";
  s.constraints.resize(2);
  s.constraints[0].budget = 1.0;
  s.constraints[1].budget = 1.0;
  std::string path = "test_scenario_roundtrip.json";
  scenario::save_scenario(s, path);
  auto back = scenario::load_scenario(path);
  CHECK(back.kind == "density");
  CHECK(back.density.family == "constant");
  std::remove(path.c_str());
  CHECK_THROWS_AS(scenario::load_scenario("definitely-missing.json"),
                  std::invalid_argument);
}
