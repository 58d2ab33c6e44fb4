#include "odp/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "odp/evaluate.hpp"

namespace odp {
namespace {

using nlohmann::json;

json number_or_null(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

std::string fmt(double value) {
  if (!std::isfinite(value)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

json matrix_json(const Matrix<int>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json cost_json(const CostBreakdown& cost) {
  return {{"assignment_term", cost.assignment_term},
          {"truck_initial", cost.truck_initial},
          {"expected_carrier", cost.expected_carrier},
          {"expected_routing", cost.expected_routing},
          {"total", cost.total}};
}

json solution_json(const Instance& instance, const ScenarioSet& scenarios,
                   const Solution& solution) {
  json out;
  out["x"] = matrix_json(solution.x);
  out["w"] = solution.w;
  json plans = json::array();
  for (std::size_t w = 0; w < solution.plans.size(); ++w) {
    const ScenarioPlan& plan = solution.plans[w];
    json routes = json::array();
    for (int t = 0; t < instance.num_trucks(); ++t) routes.push_back(trace_route(plan.v[t]));
    plans.push_back({{"probability", scenarios[w].probability},
                     {"y", matrix_json(plan.y)},
                     {"s", matrix_json(plan.s)},
                     {"routes", std::move(routes)}});
  }
  out["scenarios"] = std::move(plans);
  out["cost"] = cost_json(solution.cost);
  return out;
}

Matrix<int> read_matrix(const json& node, std::size_t rows, std::size_t cols,
                        const std::string& what) {
  if (!node.is_array() || node.size() != rows) {
    throw ParseError(what + " must have " + std::to_string(rows) + " rows");
  }
  Matrix<int> m(rows, cols, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = node[r];
    if (!row.is_array() || row.size() != cols) {
      throw ParseError(what + " row " + std::to_string(r) + " must have " +
                       std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_number_integer()) throw ParseError(what + " entries must be integers");
      m(r, c) = row[c].get<int>();
    }
  }
  return m;
}

int trucks_used(const Solution& solution) {
  int used = 0;
  for (int v : solution.w) used += v;
  return used;
}

int truck_customers(const Solution& solution) {
  int count = 0;
  for (int v : solution.x.data()) count += v;
  return count;
}

double expected_carrier_customers(const ScenarioSet& scenarios, const Solution& solution) {
  double total = 0.0;
  for (std::size_t w = 0; w < solution.plans.size(); ++w) {
    int count = 0;
    for (int v : solution.plans[w].y.data()) count += v;
    total += scenarios[w].probability * count;
  }
  return total;
}

json outcome_json(const Instance& instance, const ScenarioSet& scenarios,
                  const PlanOutcome& outcome) {
  json out;
  out["status"] = outcome.status;
  out["solution"] =
      outcome.solution ? solution_json(instance, scenarios, *outcome.solution) : json();
  if (outcome.report) {
    out["lower_bound"] = number_or_null(outcome.report->lower_bound);
    out["upper_bound"] = number_or_null(outcome.report->upper_bound);
    out["nodes_explored"] = outcome.report->nodes_explored;
  }
  return out;
}

}  // namespace

std::string write_solution(const Instance& instance, const ScenarioSet& scenarios,
                           const Solution& solution) {
  return solution_json(instance, scenarios, solution).dump(2) + "\n";
}

Solution read_solution(const Instance& instance, const ScenarioSet& scenarios,
                       std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("solution is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("solution must be a JSON object");
  const std::size_t n = instance.num_customers();
  const std::size_t trucks = instance.num_trucks();
  const std::size_t carriers = instance.num_carriers();

  Solution solution = empty_solution(instance, scenarios);
  if (!doc.contains("x") || !doc.contains("w") || !doc.contains("scenarios")) {
    throw ParseError("solution needs x, w and scenarios");
  }
  solution.x = read_matrix(doc["x"], n, trucks, "x");
  const json& w = doc["w"];
  if (!w.is_array() || w.size() != trucks) throw ParseError("w must have one entry per truck");
  for (std::size_t t = 0; t < trucks; ++t) {
    if (!w[t].is_number_integer()) throw ParseError("w entries must be integers");
    solution.w[t] = w[t].get<int>();
  }
  const json& plans = doc["scenarios"];
  if (!plans.is_array() || plans.size() != scenarios.size()) {
    throw ParseError("scenarios must have " + std::to_string(scenarios.size()) + " entries");
  }
  const int locations = instance.num_locations();
  for (std::size_t k = 0; k < scenarios.size(); ++k) {
    const json& plan = plans[k];
    if (!plan.is_object() || !plan.contains("y") || !plan.contains("s") ||
        !plan.contains("routes")) {
      throw ParseError("scenario " + std::to_string(k) + " needs y, s and routes");
    }
    ScenarioPlan& out = solution.plans[k];
    out.y = read_matrix(plan["y"], n, carriers, "y");
    out.s = read_matrix(plan["s"], n, trucks, "s");
    const json& routes = plan["routes"];
    if (!routes.is_array() || routes.size() != trucks) {
      throw ParseError("routes must have one entry per truck");
    }
    for (std::size_t t = 0; t < trucks; ++t) {
      const json& route = routes[t];
      if (!route.is_array()) throw ParseError("route must be a list of locations");
      std::vector<int> stops;
      for (const json& stop : route) {
        if (!stop.is_number_integer()) throw ParseError("route stops must be integers");
        const int u = stop.get<int>();
        if (u < 0 || u >= locations) {
          throw ParseError("route stop " + std::to_string(u) + " is not a location");
        }
        stops.push_back(u);
      }
      if (stops.size() == 1) throw ParseError("route needs at least two stops");
      for (std::size_t i = 0; i + 1 < stops.size(); ++i) out.v[t](stops[i], stops[i + 1]) = 1;
    }
  }
  solution.cost = cost_of(instance, scenarios, solution);
  return solution;
}

std::string write_solve_report(const Instance& instance, const ScenarioSet& scenarios,
                               const SolverChoice& choice, const RunOptions& options,
                               const PlanOutcome& outcome) {
  json out;
  out["solver"] = choice.name();
  out["status"] = outcome.status;
  out["instance"] = {{"customers", instance.num_customers()},
                     {"trucks", instance.num_trucks()},
                     {"carriers", instance.num_carriers()},
                     {"scenarios", scenarios.size()}};
  out["objective"] = outcome.solution ? json(outcome.solution->cost.total) : json();
  if (outcome.report) {
    const SolveReport& report = *outcome.report;
    out["lower_bound"] = number_or_null(report.lower_bound);
    out["upper_bound"] = number_or_null(report.upper_bound);
    out["gap"] = number_or_null(report.gap());
    out["nodes_explored"] = report.nodes_explored;
    out["lp_iterations"] = report.lp_iterations;
    out["wall_seconds"] = report.wall_seconds;
    const SolveConfig& config = options.config;
    out["config"] = {
        {"gap_tolerance", config.gap_tolerance},
        {"node_limit", config.node_limit},
        {"time_limit_seconds",
         config.time_limit_seconds ? json(*config.time_limit_seconds) : json()},
        {"branching",
         config.branching == Branching::kPseudoCost ? "pseudo-cost" : "most-fractional"},
        {"warm_start", options.warm_start}};
  }
  return out.dump(2) + "\n";
}

std::string plan_csv(const Instance& instance, const ScenarioSet& scenarios,
                     const SolverChoice& choice, const PlanOutcome& outcome) {
  std::ostringstream out;
  out << "solver,status,customers,trucks_used,truck_customers,expected_carrier_customers,"
         "assignment_term,truck_initial,expected_carrier,expected_routing,total,"
         "lower_bound,nodes\n";
  out << choice.name() << ',' << outcome.status << ',' << instance.num_customers() << ',';
  if (outcome.solution) {
    const Solution& s = *outcome.solution;
    out << trucks_used(s) << ',' << truck_customers(s) << ','
        << fmt(expected_carrier_customers(scenarios, s)) << ','
        << fmt(s.cost.assignment_term) << ',' << fmt(s.cost.truck_initial) << ','
        << fmt(s.cost.expected_carrier) << ',' << fmt(s.cost.expected_routing) << ','
        << fmt(s.cost.total) << ',';
  } else {
    out << ",,,,,,,,";
  }
  if (outcome.report) {
    out << fmt(outcome.report->lower_bound) << ',' << outcome.report->nodes_explored;
  } else {
    out << ',';
  }
  out << '\n';
  return out.str();
}

std::string sweep_csv(const ScenarioSet& scenarios, const SolverChoice& choice,
                      const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "customers,solver,status,mode,trucks_used,truck_customers,"
         "expected_carrier_customers,truck_initial,expected_carrier,expected_routing,"
         "total\n";
  for (const SweepRow& row : rows) {
    const ScenarioSet sub = prefix_scenarios(scenarios, row.customers);
    out << row.customers << ',' << choice.name() << ',' << row.outcome.status << ','
        << service_mode(row.outcome) << ',';
    if (row.outcome.solution) {
      const Solution& s = *row.outcome.solution;
      out << trucks_used(s) << ',' << truck_customers(s) << ','
          << fmt(expected_carrier_customers(sub, s)) << ',' << fmt(s.cost.truck_initial)
          << ',' << fmt(s.cost.expected_carrier) << ',' << fmt(s.cost.expected_routing)
          << ',' << fmt(s.cost.total);
    } else {
      out << ",,,,,,";
    }
    out << '\n';
  }
  return out.str();
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
  std::ostringstream out;
  out << "customers";
  if (!rows.empty()) {
    for (const SchemeResult& scheme : rows.front().schemes) out << ',' << scheme.scheme;
  }
  out << ",odp_status\n";
  for (const CompareRow& row : rows) {
    out << row.customers;
    std::string odp_status;
    for (const SchemeResult& scheme : row.schemes) {
      out << ',';
      if (scheme.outcome.solution) out << fmt(scheme.outcome.solution->cost.total);
      if (scheme.scheme == "odp") odp_status = scheme.outcome.status;
    }
    out << ',' << odp_status << '\n';
  }
  return out.str();
}

std::string far_csv(const std::vector<FarRow>& rows) {
  std::ostringstream out;
  out << "distance_km,extra_customer_mode,status,total\n";
  for (const FarRow& row : rows) {
    out << fmt(row.distance_km) << ',' << row.mode << ',' << row.outcome.status << ',';
    if (row.outcome.solution) out << fmt(row.outcome.solution->cost.total);
    out << '\n';
  }
  return out.str();
}

std::string sweep_json(const Instance& instance, const ScenarioSet& scenarios,
                       const SolverChoice& choice, const std::vector<SweepRow>& rows) {
  json out;
  out["solver"] = choice.name();
  json list = json::array();
  for (const SweepRow& row : rows) {
    json item = outcome_json(prefix_instance(instance, row.customers),
                             prefix_scenarios(scenarios, row.customers), row.outcome);
    item["customers"] = row.customers;
    item["mode"] = service_mode(row.outcome);
    list.push_back(std::move(item));
  }
  out["rows"] = std::move(list);
  return out.dump(2) + "\n";
}

std::string compare_json(const Instance& instance, const ScenarioSet& scenarios,
                         const std::vector<CompareRow>& rows) {
  json list = json::array();
  for (const CompareRow& row : rows) {
    const Instance sub = prefix_instance(instance, row.customers);
    const ScenarioSet sub_scenarios = prefix_scenarios(scenarios, row.customers);
    json schemes = json::object();
    for (const SchemeResult& scheme : row.schemes) {
      schemes[scheme.scheme] = outcome_json(sub, sub_scenarios, scheme.outcome);
    }
    list.push_back({{"customers", row.customers}, {"schemes", std::move(schemes)}});
  }
  return json{{"rows", std::move(list)}}.dump(2) + "\n";
}

std::string far_json(const Instance& instance, const ScenarioSet& scenarios,
                     const FarCustomerOptions& far, const std::vector<FarRow>& rows) {
  json list = json::array();
  for (const FarRow& row : rows) {
    const auto [grown, grown_scenarios] =
        add_far_customer(instance, scenarios, row.distance_km, far);
    json item = outcome_json(grown, grown_scenarios, row.outcome);
    item["distance_km"] = row.distance_km;
    item["mode"] = row.mode;
    list.push_back(std::move(item));
  }
  return json{{"anchor", far.anchor},
              {"window", std::string(window_name(far.window))},
              {"rows", std::move(list)}}
             .dump(2) +
         "\n";
}

}  // namespace odp
