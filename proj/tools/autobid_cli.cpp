// Command-line front end for the auto-bidding equilibrium library.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "autobid/aic.hpp"
#include "autobid/continuous.hpp"
#include "autobid/fppe.hpp"
#include "autobid/model.hpp"
#include "autobid/roots.hpp"
#include "autobid/scenario.hpp"
#include "autobid/spa_discrete.hpp"
#include "autobid/truthful.hpp"

namespace {

using namespace autobid;

int thread_budget() {
  if (const char* env = std::getenv("AUTOBID_EQ_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

/// Evaluate fn over [0, n) on up to thread_budget() workers, chunked.
void parallel_for(int n, const std::function<void(int)>& fn) {
  int workers = std::min(thread_budget(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

struct ContinuousArgs {
  std::string scenario_path;
  std::string density_name;
  std::vector<double> budgets, targets;
  int points = 2048;
};

cont::DensityF resolve_density(const ContinuousArgs& args) {
  if (!args.scenario_path.empty()) {
    scenario::Scenario s = scenario::load_scenario(args.scenario_path);
    if (s.kind == "density") return scenario::build_density(s.density);
    if (s.kind == "continuous")
      return cont::density_from_valuations(
          scenario::build_valuations(s.v1, s.v2));
    throw std::invalid_argument("scenario kind '" + s.kind +
                                "' has no density");
  }
  if (args.density_name.empty())
    throw std::invalid_argument("need --scenario or --density");
  scenario::FunctionSpec spec;
  if (args.density_name == "uniform01") {
    spec.family = "constant";
  } else if (args.density_name.rfind("exponential", 0) == 0) {
    spec.family = "exponential";
    auto pos = args.density_name.find(':');
    if (pos != std::string::npos)
      spec.rate = std::stod(args.density_name.substr(pos + 1));
  } else {
    spec.family = args.density_name;
  }
  return scenario::build_density(spec);
}

std::pair<ConstraintProfile, ConstraintProfile> resolve_constraints(
    const ContinuousArgs& args) {
  ConstraintProfile c1, c2;
  if (args.budgets.size() == 2) {
    c1.budget = args.budgets[0];
    c2.budget = args.budgets[1];
  } else if (args.targets.size() == 2) {
    c1.target = args.targets[0];
    c2.target = args.targets[1];
  } else if (!args.scenario_path.empty()) {
    scenario::Scenario s = scenario::load_scenario(args.scenario_path);
    if (s.constraints.size() == 2) return {s.constraints[0], s.constraints[1]};
    throw std::invalid_argument("scenario carries no constraint pair");
  } else {
    throw std::invalid_argument("need --budgets or --targets (two values)");
  }
  return {c1, c2};
}

void add_continuous_flags(CLI::App* cmd, ContinuousArgs& args) {
  cmd->add_option("--scenario", args.scenario_path, "scenario JSON path");
  cmd->add_option("--density", args.density_name,
                  "density family: uniform01, exponential[:rate], "
                  "cubic-counterexample, tan-construction");
  cmd->add_option("--budgets", args.budgets, "B1 B2")->expected(2);
  cmd->add_option("--targets", args.targets, "T1 T2")->expected(2);
  cmd->add_option("--points", args.points, "scan grid points");
}

void print_solutions(const std::vector<cont::EquilibriumSolution>& sols) {
  if (sols.empty()) {
    std::cout << "no equilibrium root found on the scan grid\n";
    return;
  }
  std::cout << "r,mu1,mu2,value1,value2,spend1,spend2,residual1,residual2\n";
  for (const auto& s : sols) {
    std::cout << fmt(s.r) << "," << fmt(s.mu1) << "," << fmt(s.mu2) << ","
              << fmt(s.value1) << "," << fmt(s.value2) << "," << fmt(s.spend1)
              << "," << fmt(s.spend2) << "," << fmt(s.residual1) << ","
              << fmt(s.residual2) << (s.degraded ? ",DEGRADED" : "") << "\n";
  }
}

DiscreteInstance table1_instance(double b1, double b2) {
  DiscreteInstance inst;
  inst.advertisers = {"a1", "a2"};
  inst.values = {{2.1, 40.0, 30.0, 20.0}, {1.0, 20.0, 25.0, 100.0}};
  inst.constraints.resize(2);
  inst.constraints[0].budget = b1;
  inst.constraints[1].budget = b2;
  return inst;
}

DiscreteInstance table2_instance(double t1, double t2) {
  DiscreteInstance inst;
  inst.advertisers = {"a1", "a2"};
  inst.values = {{40.0, 30.0, 20.0}, {10.0, 13.0, 100.0}};
  inst.constraints.resize(2);
  inst.constraints[0].target = t1;
  inst.constraints[1].target = t2;
  return inst;
}

bool near(double x, double y, double tol) { return std::abs(x - y) <= tol; }

int run_reproduce(const std::string& recipe) {
  bool ok = true;
  if (recipe == "table1") {
    DiscreteInstance inst = table1_instance(20.0, 49.0);
    UniformBidProfile bids{{0.7, 0.91}, {}};
    auto rep = spa::check_equilibrium(inst, bids);
    auto out = evaluate_outcome(inst, bids, Auction::SPA);
    std::cout << "verify mu=(0.7,0.91) at B=(20,49): "
              << (rep.pass ? "equilibrium" : "NOT an equilibrium")
              << ", spends " << fmt(out.total_spend[0]) << " / "
              << fmt(out.total_spend[1]) << "\n";
    ok = ok && rep.pass && near(out.total_spend[0], 19.11, 1e-9) &&
         near(out.total_spend[1], 35.0, 1e-9);
    auto eqs = spa::enumerate_equilibria(table1_instance(10.0, 49.0));
    std::cout << "B=(10,49): " << eqs.size() << " equilibrium prefix(es):";
    for (const auto& e : eqs) std::cout << " k=" << e.prefix;
    std::cout << "\n";
    ok = ok && eqs.size() == 1 && eqs[0].prefix == 3;
    auto probe = spa::aic_probe_discrete(inst, 0, {10.0, 20.0});
    double worst_mis = probe.rows[0].worst, worst_truth = probe.rows[1].worst;
    std::cout << "probe adv1: worst value " << fmt(worst_mis)
              << " (report 10) vs " << fmt(worst_truth) << " (truth 20)\n";
    ok = ok && near(worst_mis, 72.1, 1e-9) && near(worst_truth, 42.1, 1e-9) &&
         probe.non_aic_worst;
  } else if (recipe == "table2") {
    DiscreteInstance inst = table2_instance(0.4, 0.7);
    UniformBidProfile bids{{1.6, 1.2}, {}};
    auto rep = spa::check_equilibrium(inst, bids);
    auto out = evaluate_outcome(inst, bids, Auction::SPA);
    std::cout << "verify mu=(1.6,1.2) at T=(0.4,0.7): "
              << (rep.pass ? "equilibrium" : "NOT an equilibrium")
              << ", spends " << fmt(out.total_spend[0]) << " / "
              << fmt(out.total_spend[1]) << "\n";
    ok = ok && rep.pass && near(out.total_spend[0], 27.6, 1e-9) &&
         near(out.total_spend[1], 32.0, 1e-9);
    DiscreteInstance truth = table2_instance(0.6, 0.7);
    UniformBidProfile dev{{1.0, 2.38}, {}};
    auto rep2 = spa::check_equilibrium(truth, dev);
    std::cout << "deviation mu=(1,2.38) at T=(0.6,0.7): "
              << (rep2.pass ? "equilibrium" : "NOT an equilibrium") << "\n";
    ok = ok && rep2.pass;
    auto probe = spa::aic_probe_discrete(truth, 0, {0.4, 0.6});
    double worst_mis = probe.rows[0].worst, worst_truth = probe.rows[1].worst;
    std::cout << "probe adv1: worst value " << fmt(worst_mis)
              << " (report 0.4) vs " << fmt(worst_truth) << " (truth 0.6)\n";
    ok = ok && near(worst_mis, 70.0, 1e-9) && near(worst_truth, 40.0, 1e-9) &&
         probe.non_aic_worst;
  } else if (recipe == "fig2") {
    auto ce = aic::cubic_counterexample();
    // Level just above the realized curve's local minimum -> multiple roots.
    double r_min =
        roots::minimize([&](double r) { return ce.g_realized.g(r); }, 0.8, 2.0,
                        1e-10);
    double level = ce.g_realized.g(r_min) * 1.05;
    ConstraintProfile c1, c2;
    c1.budget = 1.0 / level;
    c2.budget = 1.0;
    cont::ScanSpec scan;
    scan.points = 600;
    auto sols = cont::solve_equilibrium(ce.f, c1, c2, scan);
    std::cout << "B1/B2 = " << fmt(1.0 / level) << " near the curve's "
              << "non-monotone dip: " << sols.size() << " roots:";
    for (const auto& s : sols)
      std::cout << " r=" << fmt(s.r) << " (value1 " << fmt(s.value1) << ")";
    std::cout << "\n";
    ok = sols.size() >= 2;
    for (size_t i = 1; i < sols.size(); ++i)
      ok = ok && sols[i].value1 < sols[i - 1].value1 - 1e-12;
  } else if (recipe == "c-constant") {
    auto ce = aic::cubic_counterexample();
    std::cout << "c = " << fmt(ce.c) << " at r = " << fmt(ce.r_min) << "\n";
    ok = near(ce.c, 1.95105, 1e-4);
  } else {
    throw std::invalid_argument("unknown recipe '" + recipe +
                                "' (table1|table2|fig2|c-constant)");
  }
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 3;
}

int run(int argc, char** argv) {
  CLI::App app{"auto-bidding equilibrium solver and AIC auditor"};
  app.require_subcommand(1);

  // verify-discrete
  auto* verify = app.add_subcommand(
      "verify-discrete", "check a uniform bid profile for equilibrium");
  std::string verify_scenario;
  std::vector<double> verify_mu;
  int verify_prefix = -1;
  verify->add_option("--scenario", verify_scenario)->required();
  verify->add_option("--mu", verify_mu, "mu1 mu2")->required()->expected(2);
  verify->add_option("--prefix", verify_prefix, "claimed winner prefix");

  // solve-discrete
  auto* solved = app.add_subcommand("solve-discrete",
                                    "enumerate threshold equilibria");
  std::string solve_scenario;
  solved->add_option("--scenario", solve_scenario)->required();

  // probe-discrete
  auto* probe = app.add_subcommand("probe-discrete",
                                   "sweep misreports, report value sets");
  std::string probe_scenario, probe_csv;
  int probe_adv = 0;
  std::vector<double> probe_reports;
  probe->add_option("--scenario", probe_scenario)->required();
  probe->add_option("--advertiser", probe_adv);
  probe->add_option("--reports", probe_reports)->required();
  probe->add_option("--csv", probe_csv);

  // solve-continuous
  auto* solvec = app.add_subcommand("solve-continuous",
                                    "solve the continuous equilibrium");
  ContinuousArgs cont_args;
  std::string cont_csv;
  add_continuous_flags(solvec, cont_args);
  solvec->add_option("--csv", cont_csv, "dump the ratio curve");

  // equivalence
  auto* equiv = app.add_subcommand("equivalence",
                                   "compare the FPA and SPA solver paths");
  ContinuousArgs equiv_args;
  double equiv_tol = 1e-8;
  add_continuous_flags(equiv, equiv_args);
  equiv->add_option("--tol", equiv_tol);

  // aic-scan
  auto* scan = app.add_subcommand("aic-scan", "monotonicity scan of a curve");
  ContinuousArgs scan_args;
  std::string scan_kind = "budget", scan_csv;
  int scan_grid = 1024;
  add_continuous_flags(scan, scan_args);
  scan->add_option("--kind", scan_kind, "budget|tcpa");
  scan->add_option("--grid", scan_grid);
  scan->add_option("--csv", scan_csv);

  // counterexample
  auto* cx = app.add_subcommand("counterexample",
                                "build and audit the cubic construction");
  std::string cx_csv;
  cx->add_option("--csv", cx_csv, "dump analytic and realized curves");

  // truthful
  auto* truth = app.add_subcommand("truthful",
                                   "equilibria under a truthful auction rule");
  ContinuousArgs truth_args;
  std::string truth_rule = "spa-step", truth_delta_csv;
  double truth_k = 1.0;
  add_continuous_flags(truth, truth_args);
  truth->add_option("--rule", truth_rule, "spa-step|logistic-power");
  truth->add_option("--k", truth_k, "logistic-power exponent");
  truth->add_option("--delta-csv", truth_delta_csv);

  // fppe
  auto* fp = app.add_subcommand("fppe", "first-price pacing equilibrium");
  std::string fppe_scenario, fppe_csv;
  double fppe_cap = 0.0;
  int fppe_adv = -1;
  std::vector<double> fppe_reports;
  fp->add_option("--scenario", fppe_scenario)->required();
  fp->add_option("--cap", fppe_cap, "multiplier cap (0 = auto)");
  fp->add_option("--advertiser", fppe_adv, "probe this advertiser");
  fp->add_option("--reports", fppe_reports, "probe report sweep");
  fp->add_option("--csv", fppe_csv);

  // reproduce
  auto* repro = app.add_subcommand("reproduce", "canned reproduction recipes");
  std::string recipe;
  repro->add_option("recipe", recipe, "table1|table2|fig2|c-constant")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (verify->parsed()) {
    scenario::Scenario s = scenario::load_scenario(verify_scenario);
    if (s.kind != "discrete")
      throw std::invalid_argument("verify-discrete needs a discrete scenario");
    UniformBidProfile bids{verify_mu, {}};
    std::optional<int> prefix;
    if (verify_prefix >= 0) prefix = verify_prefix;
    auto rep = spa::check_equilibrium(s.discrete, bids, prefix);
    auto out = evaluate_outcome(s.discrete, bids, Auction::SPA);
    std::cout << "allocation " << (rep.allocation_pass ? "ok" : "violated")
              << ", constraints " << (rep.constraint_pass ? "ok" : "violated")
              << ", best-response "
              << (rep.best_response_pass ? "ok" : "violated") << "\n";
    for (int a = 0; a < s.discrete.num_advertisers(); ++a)
      std::cout << "adv" << a + 1 << ": value " << fmt(out.total_value[a])
                << " spend " << fmt(out.total_spend[a]) << " slack "
                << fmt(rep.slack[a]) << "\n";
    std::cout << (rep.pass ? "PASS" : "FAIL") << " " << rep.detail << "\n";
    return 0;
  }

  if (solved->parsed()) {
    scenario::Scenario s = scenario::load_scenario(solve_scenario);
    auto eqs = spa::enumerate_equilibria(s.discrete);
    std::cout << "prefix,mu1,mu2,value1,value2,tie\n";
    for (const auto& e : eqs)
      std::cout << e.prefix << "," << fmt(e.mu1) << "," << fmt(e.mu2) << ","
                << fmt(e.value1) << "," << fmt(e.value2) << ","
                << (e.tie_used ? 1 : 0) << "\n";
    return 0;
  }

  if (probe->parsed()) {
    scenario::Scenario s = scenario::load_scenario(probe_scenario);
    auto res = spa::aic_probe_discrete(s.discrete, probe_adv, probe_reports);
    std::vector<std::string> rows;
    for (const auto& row : res.rows) {
      std::ostringstream line;
      line << fmt(row.report) << "," << fmt(row.worst) << "," << fmt(row.best);
      std::cout << "report " << fmt(row.report) << ": values";
      for (double v : row.values) std::cout << " " << fmt(v);
      std::cout << "\n";
      rows.push_back(line.str());
    }
    if (!probe_csv.empty())
      scenario::write_csv(probe_csv, "report,worst_value,best_value", rows);
    std::cout << "truth " << fmt(res.truth) << "; non-AIC (worst-vs-worst): "
              << (res.non_aic_worst ? "yes" : "no")
              << "; non-AIC (best-vs-best): "
              << (res.non_aic_best ? "yes" : "no") << "\n";
    return 0;
  }

  if (solvec->parsed()) {
    cont::DensityF f = resolve_density(cont_args);
    auto [c1, c2] = resolve_constraints(cont_args);
    cont::ScanSpec spec;
    spec.points = cont_args.points;
    auto sols = cont::solve_equilibrium(f, c1, c2, spec);
    print_solutions(sols);
    if (!cont_csv.empty()) {
      cont::Kind kind = c1.budget_only() ? cont::Kind::Budget : cont::Kind::Tcpa;
      auto grid = roots::log_grid(std::max(f.lo, f.hi * 1e-6), f.hi * 0.999,
                                  512);
      std::vector<std::string> rows(grid.size());
      parallel_for(static_cast<int>(grid.size()), [&](int i) {
        double r = grid[i];
        double curve = cont::ratio_curve(f, kind, r);
        double v1 = cont::moment(f, cont::Weight::Z, cont::Side::Above, r);
        double v2 = cont::moment(f, cont::Weight::One, cont::Side::Below, r);
        std::ostringstream line;
        line << fmt(r) << "," << fmt(curve) << "," << fmt(v1) << ","
             << fmt(v2);
        rows[i] = line.str();
      });
      scenario::write_csv(cont_csv, "r,ratio_curve,value1,value2", rows);
    }
    return sols.empty() ? 3 : 0;
  }

  if (equiv->parsed()) {
    cont::DensityF f = resolve_density(equiv_args);
    auto [c1, c2] = resolve_constraints(equiv_args);
    auto rep = cont::verify_fpa_spa_equivalence(f, c1, c2, equiv_tol);
    std::cout << "fpa roots " << rep.fpa.size() << ", spa roots "
              << rep.spa.size() << ", max gap " << fmt(rep.max_gap) << "\n"
              << (rep.agree ? "AGREE" : "DISAGREE") << "\n";
    return 0;
  }

  if (scan->parsed()) {
    cont::DensityF f = resolve_density(scan_args);
    cont::Kind kind;
    if (scan_kind == "budget")
      kind = cont::Kind::Budget;
    else if (scan_kind == "tcpa")
      kind = cont::Kind::Tcpa;
    else
      throw std::invalid_argument("--kind must be budget or tcpa");
    auto verdict = aic::monotonicity_scan(f, kind, scan_grid);
    const char* status =
        verdict.status == aic::AICVerdict::Status::Certified ? "AIC-certified"
        : verdict.status == aic::AICVerdict::Status::NonAIC  ? "non-AIC"
                                                             : "inconclusive";
    std::cout << status << ": " << verdict.detail << "\n";
    for (const auto& w : verdict.witnesses)
      std::cout << "increasing on [" << fmt(w.lo) << ", " << fmt(w.hi)
                << "]\n";
    if (verdict.demo) {
      const auto& d = *verdict.demo;
      std::cout << "misreport demo: +1% report moves r " << fmt(d.r_truth)
                << " -> " << fmt(d.r_misreport) << ", value1 "
                << fmt(d.value_truth) << " -> " << fmt(d.value_misreport)
                << (d.value_decreased ? " (decreased)" : "") << "\n";
    }
    if (!scan_csv.empty()) {
      auto grid = roots::log_grid(std::max(f.lo, f.hi * 1e-6), f.hi * 0.999,
                                  scan_grid);
      std::vector<std::string> rows(grid.size());
      parallel_for(static_cast<int>(grid.size()), [&](int i) {
        double r = grid[i];
        double c = cont::ratio_curve(f, kind, r);
        double step = r * 1e-4;
        double d = (cont::ratio_curve(f, kind, r + step) -
                    cont::ratio_curve(f, kind, r - step)) /
                   (2.0 * step);
        std::ostringstream line;
        line << fmt(r) << "," << fmt(c) << "," << fmt(d) << ","
             << (d > 0.0 ? 1 : 0);
        rows[i] = line.str();
      });
      scenario::write_csv(scan_csv, "r,curve,dcurve,increasing", rows);
    }
    return 0;
  }

  if (cx->parsed()) {
    auto ce = aic::cubic_counterexample();
    std::cout << "c = " << fmt(ce.c) << " (argmin r = " << fmt(ce.r_min)
              << ")\n";
    auto verdict = aic::monotonicity_scan(ce.f, cont::Kind::Budget, 1024);
    std::cout << "budget curve: "
              << (verdict.status == aic::AICVerdict::Status::NonAIC
                      ? "non-AIC"
                      : "unexpected verdict")
              << "\n";
    for (const auto& w : verdict.witnesses)
      std::cout << "increasing on [" << fmt(w.lo) << ", " << fmt(w.hi)
                << "]\n";
    auto mhr = aic::mhr_check(ce.f);
    std::cout << "hazard rate monotone: " << (mhr.pass ? "yes" : "no")
              << (mhr.pass ? ""
                           : " (first violation near r = " +
                                 fmt(mhr.first_violation_r) + ")")
              << "\n";
    if (!cx_csv.empty()) {
      auto grid = roots::linear_grid(0.05, 5.0, 496);
      std::vector<std::string> rows;
      for (double r : grid) {
        std::ostringstream line;
        line << fmt(r) << "," << fmt(ce.g_analytic.g(r)) << ","
             << fmt(ce.g_realized.g(r)) << "," << fmt(ce.f(r));
        rows.push_back(line.str());
      }
      scenario::write_csv(cx_csv, "r,g_analytic,g_realized,f", rows);
    }
    return 0;
  }

  if (truth->parsed()) {
    cont::DensityF f = resolve_density(truth_args);
    auto [c1, c2] = resolve_constraints(truth_args);
    truthful::AllocationRule rule =
        truth_rule == "spa-step"
            ? truthful::AllocationRule::spa_step()
            : truthful::AllocationRule::logistic_power(truth_k);
    cont::ScanSpec spec;
    spec.points = truth_args.points;
    auto sols = truthful::solve_truthful_equilibrium(f, rule, c1, c2, spec);
    std::cout << "rule " << rule.family() << "\n";
    print_solutions(sols);
    auto delta_grid = roots::log_grid(0.05, 20.0, 101);
    auto rep = truthful::aic_pricing_test(rule, delta_grid);
    std::cout << "pricing identity p(b) = b p(1/b): "
              << (rep.equality_holds ? "holds" : "violated") << " (worst gap "
              << fmt(rep.worst_gap) << " at b = " << fmt(rep.worst_b) << ")\n";
    if (!truth_delta_csv.empty()) {
      std::vector<std::string> rows;
      for (double b : delta_grid) {
        std::ostringstream line;
        line << fmt(b) << "," << fmt(truthful::pricing_delta(rule, b));
        rows.push_back(line.str());
      }
      scenario::write_csv(truth_delta_csv, "b,delta", rows);
    }
    return 0;
  }

  if (fp->parsed()) {
    scenario::Scenario s = scenario::load_scenario(fppe_scenario);
    double cap = fppe_cap > 0.0 ? fppe_cap : fppe::default_cap(s.discrete);
    if (fppe_adv >= 0 && !fppe_reports.empty()) {
      auto res = fppe::fppe_monotonicity_probe(s.discrete, fppe_adv,
                                               fppe_reports);
      std::vector<std::string> rows;
      for (const auto& row : res.rows) {
        std::ostringstream line;
        line << fmt(row.report) << "," << fmt(row.value) << ","
             << fmt(row.spend);
        for (double m : row.mu) line << "," << fmt(m);
        rows.push_back(line.str());
        std::cout << "report " << fmt(row.report) << ": value "
                  << fmt(row.value) << " spend " << fmt(row.spend) << "\n";
      }
      if (!fppe_csv.empty())
        scenario::write_csv(fppe_csv, "report,value,spend,mu...", rows);
      std::cout << (res.pass ? "PASS" : "FAIL") << " " << res.detail << "\n";
      return 0;
    }
    auto sol = fppe::solve_fppe(s.discrete, cap);
    for (int a = 0; a < s.discrete.num_advertisers(); ++a)
      std::cout << "adv" << a + 1 << ": mu " << fmt(sol.mu[a]) << " value "
                << fmt(sol.value[a]) << " spend " << fmt(sol.spend[a]) << " ["
                << sol.certificate[a] << "]\n";
    if (sol.tie_occurred) std::cout << "note: bid ties occurred\n";
    return 0;
  }

  return run_reproduce(recipe);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  }
}
