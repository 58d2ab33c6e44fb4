#include "cli.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "odp/evaluate.hpp"
#include "odp/experiments.hpp"
#include "odp/ingest.hpp"
#include "odp/report.hpp"
#include "odp/scenario.hpp"

namespace odp {
namespace {

struct Options {
  std::string instance;
  std::string solver = "exact";
  std::string profile = "sg-2017";
  double gap = 1e-6;
  long long nodes = 1000000;
  std::optional<double> time_limit;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string branching = "most-fractional";
  bool no_warm_start = false;

  // Solomon input only.
  std::optional<int> customers;
  std::vector<int> fleet{1, 1, 1};
  int carriers = 1;
  std::optional<double> package_weight;
  std::vector<double> window_limits;
  std::optional<double> demand_probability;
  int scenarios = 16;

  int from = 0;
  int to = -1;

  std::vector<double> distances{0, 10, 40, 60};
  int anchor = 0;
  std::string window = "morning";
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--instance", o.instance, "JSON instance or Solomon text file")
      ->required();
  sub->add_option("--profile", o.profile, "pricing profile for Solomon input");
  sub->add_option("--gap", o.gap, "relative gap tolerance")->check(CLI::NonNegativeNumber);
  sub->add_option("--nodes", o.nodes, "branch-and-bound node limit")
      ->check(CLI::PositiveNumber);
  sub->add_option("--time-limit", o.time_limit, "wall-clock limit in seconds")
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "seed for sampled scenarios");
  sub->add_option("--out-dir", o.out_dir, "directory for the report files");
  sub->add_option("--branching", o.branching, "most-fractional or pseudo-cost")
      ->check(CLI::IsMember({"most-fractional", "pseudo-cost"}));
  sub->add_flag("--no-warm-start", o.no_warm_start, "do not seed the search with greedy");
  sub->add_option("--customers", o.customers, "Solomon: use the first N customers")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--fleet", o.fleet, "Solomon: trucks per profile type")->delimiter(',');
  sub->add_option("--carriers", o.carriers, "Solomon: number of carriers")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--package-weight", o.package_weight, "Solomon: kg per package")
      ->check(CLI::PositiveNumber);
  sub->add_option("--window-limits", o.window_limits,
                  "Solomon: km limit per window, one value or morning,afternoon,evening")
      ->delimiter(',');
  sub->add_option("--demand-probability", o.demand_probability,
                  "Solomon: independent demand probability per customer")
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--scenarios", o.scenarios, "Solomon: scenario cap for sampled demand")
      ->check(CLI::PositiveNumber);
}

void add_range(CLI::App* sub, Options& o) {
  sub->add_option("--from", o.from, "smallest customer count")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--to", o.to, "largest customer count (default: all)");
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
    return c == '{';
  }
  return false;
}

std::pair<Instance, ScenarioSet> load(const Options& o) {
  const std::string text = read_text_file(o.instance);
  if (looks_like_json(text)) return parse_instance_file(text);

  SolomonOptions solomon;
  solomon.profile = o.profile;
  solomon.fleet = o.fleet;
  solomon.carriers = o.carriers;
  solomon.package_weight = o.package_weight;
  if (o.window_limits.size() == 1) {
    solomon.window_limits = WindowLimits{o.window_limits[0], o.window_limits[0],
                                         o.window_limits[0]};
  } else if (o.window_limits.size() == 3) {
    solomon.window_limits =
        WindowLimits{o.window_limits[0], o.window_limits[1], o.window_limits[2]};
  } else if (!o.window_limits.empty()) {
    throw ValidationError("--window-limits takes one or three values");
  }
  const int available = static_cast<int>(parse_solomon_records(text).size()) - 1;
  const int n = o.customers.value_or(available);
  Instance instance = parse_solomon(text, n, solomon);
  ScenarioSet scenarios =
      o.demand_probability
          ? bernoulli_scenarios(std::vector<double>(n, *o.demand_probability), o.scenarios,
                                o.seed)
          : deterministic_all_demand(n);
  return {std::move(instance), std::move(scenarios)};
}

RunOptions run_options(const Options& o) {
  RunOptions run;
  run.config.gap_tolerance = o.gap;
  run.config.node_limit = o.nodes;
  run.config.time_limit_seconds = o.time_limit;
  run.config.branching =
      o.branching == "pseudo-cost" ? Branching::kPseudoCost : Branching::kMostFractional;
  run.warm_start = !o.no_warm_start;
  check_config(run.config);
  return run;
}

void write_out(const Options& o, const std::string& name, const std::string& text) {
  std::filesystem::create_directories(o.out_dir);
  write_text_file((std::filesystem::path(o.out_dir) / name).string(), text);
}

int exit_for(const std::vector<const PlanOutcome*>& outcomes) {
  bool limit = false;
  bool infeasible = false;
  for (const PlanOutcome* outcome : outcomes) {
    limit = limit || outcome->limit_hit();
    infeasible = infeasible || outcome->status == "infeasible";
  }
  if (infeasible) return kExitInfeasible;
  if (limit) return kExitLimit;
  return kExitOk;
}

int cmd_plan(const Options& o, std::ostream& out) {
  const auto [instance, scenarios] = load(o);
  const SolverChoice choice = parse_solver(o.solver);
  const RunOptions run = run_options(o);
  const PlanOutcome outcome = run_solver(instance, scenarios, choice, run);
  if (outcome.solution) {
    const std::string text = write_solution(instance, scenarios, *outcome.solution);
    const Solution back = read_solution(instance, scenarios, text);
    const ValidationReport report = validate(instance, scenarios, back);
    if (!report.ok()) {
      throw std::logic_error("emitted solution fails validation: " +
                             report.violations.front().message);
    }
    write_out(o, "solution.json", text);
  }
  write_out(o, "solve_report.json",
            write_solve_report(instance, scenarios, choice, run, outcome));
  const std::string csv = plan_csv(instance, scenarios, choice, outcome);
  write_out(o, "report.csv", csv);
  out << csv;
  return exit_for({&outcome});
}

int resolve_to(const Options& o, const Instance& instance) {
  return o.to < 0 ? instance.num_customers() : o.to;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const auto [instance, scenarios] = load(o);
  const SolverChoice choice = parse_solver(o.solver);
  const std::vector<SweepRow> rows = sweep_customers(
      instance, scenarios, o.from, resolve_to(o, instance), choice, run_options(o));
  const std::string csv = sweep_csv(scenarios, choice, rows);
  write_out(o, "report.csv", csv);
  write_out(o, "solve_report.json", sweep_json(instance, scenarios, choice, rows));
  out << csv;
  // Infeasible rows past capacity are results here, not failures.
  std::vector<const PlanOutcome*> limits;
  for (const SweepRow& row : rows) {
    if (row.outcome.limit_hit()) limits.push_back(&row.outcome);
  }
  return exit_for(limits);
}

int cmd_compare(const Options& o, std::ostream& out) {
  const auto [instance, scenarios] = load(o);
  const std::vector<CompareRow> rows = compare_schemes(
      instance, scenarios, o.from, resolve_to(o, instance), run_options(o));
  const std::string csv = compare_csv(rows);
  write_out(o, "report.csv", csv);
  write_out(o, "solve_report.json", compare_json(instance, scenarios, rows));
  out << csv;
  std::vector<const PlanOutcome*> odp;
  for (const CompareRow& row : rows) odp.push_back(&row.schemes.back().outcome);
  return exit_for(odp);
}

int cmd_far(const Options& o, std::ostream& out) {
  const auto [instance, scenarios] = load(o);
  const SolverChoice choice = parse_solver(o.solver);
  FarCustomerOptions far;
  far.anchor = o.anchor;
  far.window = parse_window(o.window);
  const std::vector<FarRow> rows =
      far_customer(instance, scenarios, o.distances, choice, far, run_options(o));
  const std::string csv = far_csv(rows);
  write_out(o, "report.csv", csv);
  write_out(o, "solve_report.json", far_json(instance, scenarios, far, rows));
  out << csv;
  std::vector<const PlanOutcome*> outcomes;
  for (const FarRow& row : rows) outcomes.push_back(&row.outcome);
  return exit_for(outcomes);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Delivery planning with reserved trucks and on-demand carriers", "odp"};
  app.require_subcommand(1);
  Options o;

  CLI::App* plan = app.add_subcommand("plan", "solve one instance");
  add_common(plan, o);
  plan->add_option("--solver", o.solver, "exact, greedy, carrier-only or truck-only:k");

  CLI::App* sweep = app.add_subcommand("sweep-customers", "solve prefixes of the customer list");
  add_common(sweep, o);
  add_range(sweep, o);
  sweep->add_option("--solver", o.solver, "exact, greedy, carrier-only or truck-only:k");

  CLI::App* compare =
      app.add_subcommand("compare-schemes", "carrier-only and single-type baselines vs exact");
  add_common(compare, o);
  add_range(compare, o);

  CLI::App* far = app.add_subcommand("far-customer", "add one customer at varying distance");
  add_common(far, o);
  far->add_option("--solver", o.solver, "exact, greedy, carrier-only or truck-only:k");
  far->add_option("--distances", o.distances, "spur distances in km")->delimiter(',');
  far->add_option("--anchor", o.anchor, "location the spur starts from")
      ->check(CLI::NonNegativeNumber);
  far->add_option("--window", o.window, "window of the extra customer")
      ->check(CLI::IsMember({"morning", "afternoon", "evening"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*plan) return cmd_plan(o, out);
    if (*sweep) return cmd_sweep(o, out);
    if (*compare) return cmd_compare(o, out);
    return cmd_far(o, out);
  } catch (const ParseError& e) {
    err << "odp: parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "odp: invalid input: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    err << "odp: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace odp
