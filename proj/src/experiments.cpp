#include "odp/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "odp/evaluate.hpp"
#include "odp/heuristic.hpp"

namespace odp {

std::string SolverChoice::name() const {
  switch (kind) {
    case SolverKind::kExact:
      return "exact";
    case SolverKind::kGreedy:
      return "greedy";
    case SolverKind::kCarrierOnly:
      return "carrier-only";
    case SolverKind::kTruckOnly:
      return "truck-only:" + std::to_string(truck_type);
  }
  return "unknown";
}

SolverChoice parse_solver(std::string_view text) {
  if (text == "exact") return {SolverKind::kExact, 1};
  if (text == "greedy") return {SolverKind::kGreedy, 1};
  if (text == "carrier-only") return {SolverKind::kCarrierOnly, 1};
  constexpr std::string_view prefix = "truck-only:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string_view digits = text.substr(prefix.size());
    int k = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && k >= 1) {
      return {SolverKind::kTruckOnly, k};
    }
  }
  throw ValidationError("unknown solver '" + std::string(text) +
                        "' (exact, greedy, carrier-only, truck-only:k)");
}

std::vector<int> truck_types(const Instance& instance) {
  std::vector<int> firsts;
  for (int t = 0; t < instance.num_trucks(); ++t) {
    const bool seen = std::any_of(firsts.begin(), firsts.end(), [&](int f) {
      return instance.truck(f).capacity_kg == instance.truck(t).capacity_kg &&
             instance.truck(f).initial_cost == instance.truck(t).initial_cost;
    });
    if (!seen) firsts.push_back(t);
  }
  return firsts;
}

bool PlanOutcome::limit_hit() const {
  return status == "gap_limit" || status == "node_limit" || status == "time_limit";
}

PlanOutcome run_solver(const Instance& instance, const ScenarioSet& scenarios,
                       const SolverChoice& choice, const RunOptions& options) {
  PlanOutcome outcome;
  switch (choice.kind) {
    case SolverKind::kExact: {
      std::optional<Solution> start;
      if (options.warm_start) {
        try {
          start = greedy_plan(instance, scenarios);
        } catch (const ValidationError&) {
          // No feasible greedy plan; search without a start.
        }
      }
      ExactResult exact =
          solve_exact(instance, scenarios, options.config, {}, start ? &*start : nullptr);
      outcome.status = to_string(exact.report.status);
      outcome.solution = std::move(exact.solution);
      outcome.report = std::move(exact.report);
      break;
    }
    case SolverKind::kGreedy:
      try {
        outcome.solution = greedy_plan(instance, scenarios);
        outcome.status = "feasible";
      } catch (const ValidationError&) {
        outcome.status = "infeasible";
      }
      break;
    case SolverKind::kCarrierOnly:
      if (instance.num_carriers() == 0) {
        outcome.status = "infeasible";
      } else {
        outcome.solution = baseline_carrier_only(instance, scenarios);
        outcome.status = "feasible";
      }
      break;
    case SolverKind::kTruckOnly: {
      const std::vector<int> types = truck_types(instance);
      if (choice.truck_type > static_cast<int>(types.size())) {
        throw ValidationError("instance has no truck type " +
                              std::to_string(choice.truck_type));
      }
      outcome.solution =
          baseline_single_truck_type(instance, scenarios, types[choice.truck_type - 1]);
      outcome.status = outcome.solution ? "feasible" : "infeasible";
      break;
    }
  }
  return outcome;
}

Instance prefix_instance(const Instance& instance, int n) {
  if (n < 0 || n > instance.num_customers()) {
    throw ValidationError("prefix of " + std::to_string(n) + " customers out of range");
  }
  InstanceData data = instance.data();
  data.customers.resize(n);
  for (Carrier& r : data.carriers) r.charge_per_customer.resize(n);
  auto cut = [n](const Matrix<double>& m) {
    Matrix<double> out(n + 1, n + 1, 0.0);
    for (int u = 0; u <= n; ++u)
      for (int v = 0; v <= n; ++v) out(u, v) = m(u, v);
    return out;
  };
  data.distance_km = cut(data.distance_km);
  if (data.routing_cost) data.routing_cost = cut(*data.routing_cost);
  if (!data.location_labels.empty()) data.location_labels.resize(n + 1);
  return make_instance(std::move(data));
}

ScenarioSet prefix_scenarios(const ScenarioSet& scenarios, int n) {
  std::vector<Scenario> out = scenarios.scenarios();
  for (Scenario& s : out) s.demand.resize(n);
  return make_scenario_set(std::move(out), n);
}

std::string service_mode(const PlanOutcome& outcome) {
  if (!outcome.solution) return "infeasible";
  const Solution& solution = *outcome.solution;
  bool truck = false;
  for (int v : solution.x.data()) truck = truck || v != 0;
  bool carrier = false;
  for (const ScenarioPlan& plan : solution.plans) {
    for (int v : plan.y.data()) carrier = carrier || v != 0;
  }
  if (truck && carrier) return "mixed";
  if (truck) return "truck-only";
  if (carrier) return "carrier-only";
  return "none";
}

std::vector<SweepRow> sweep_customers(const Instance& instance,
                                      const ScenarioSet& scenarios, int from, int to,
                                      const SolverChoice& choice,
                                      const RunOptions& options) {
  if (from < 0 || to < from || to > instance.num_customers()) {
    throw ValidationError("sweep range must satisfy 0 <= from <= to <= customers");
  }
  std::vector<SweepRow> rows;
  for (int n = from; n <= to; ++n) {
    const Instance sub = prefix_instance(instance, n);
    const ScenarioSet sub_scenarios = prefix_scenarios(scenarios, n);
    rows.push_back({n, run_solver(sub, sub_scenarios, choice, options)});
  }
  return rows;
}

std::vector<CompareRow> compare_schemes(const Instance& instance,
                                        const ScenarioSet& scenarios, int from, int to,
                                        const RunOptions& options) {
  if (from < 0 || to < from || to > instance.num_customers()) {
    throw ValidationError("sweep range must satisfy 0 <= from <= to <= customers");
  }
  const std::vector<int> types = truck_types(instance);
  std::vector<CompareRow> rows;
  for (int n = from; n <= to; ++n) {
    const Instance sub = prefix_instance(instance, n);
    const ScenarioSet sub_scenarios = prefix_scenarios(scenarios, n);
    CompareRow row;
    row.customers = n;
    row.schemes.push_back({"carrier-only", run_solver(sub, sub_scenarios,
                                                      {SolverKind::kCarrierOnly, 1})});
    for (std::size_t k = 0; k < types.size(); ++k) {
      const std::string& label = instance.truck(types[k]).label;
      const std::string name =
          (label.empty() ? "truck" + std::to_string(k + 1) : label) + "-only";
      row.schemes.push_back(
          {name, run_solver(sub, sub_scenarios,
                            {SolverKind::kTruckOnly, static_cast<int>(k) + 1})});
    }
    row.schemes.push_back(
        {"odp", run_solver(sub, sub_scenarios, {SolverKind::kExact, 1}, options)});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::pair<Instance, ScenarioSet> add_far_customer(const Instance& instance,
                                                  const ScenarioSet& scenarios,
                                                  double distance_km,
                                                  const FarCustomerOptions& options) {
  check_compatible(instance, scenarios);
  if (!(distance_km >= 0.0) || !std::isfinite(distance_km)) {
    throw ValidationError("spur distance must be finite and >= 0");
  }
  const int n = instance.num_customers();
  if (options.anchor < 0 || options.anchor > n) {
    throw ValidationError("anchor must be the depot or an existing customer");
  }
  InstanceData data = instance.data();
  const bool default_routing =
      instance.routing_cost_matrix() == default_routing_cost(instance.distance_matrix());

  double weight = 30.0;
  if (options.weight_kg) {
    weight = *options.weight_kg;
  } else if (n > 0) {
    weight = instance.weight(0);
  }
  data.customers.push_back({n + 1, weight, options.window});

  if (!options.charges.empty() &&
      options.charges.size() != static_cast<std::size_t>(instance.num_carriers())) {
    throw ValidationError("need one charge per carrier for the extra customer");
  }
  for (int r = 0; r < instance.num_carriers(); ++r) {
    double charge = 0.0;
    if (!options.charges.empty()) {
      charge = options.charges[r];
    } else if (n > 0) {
      charge = instance.charge(0, r);
    } else {
      throw ValidationError("extra customer charges are required without customers");
    }
    data.carriers[r].charge_per_customer.push_back(charge);
  }

  const int extra = n + 1;
  auto grow = [&](const Matrix<double>& m, double spur) {
    Matrix<double> out(n + 2, n + 2, 0.0);
    for (int u = 0; u <= n; ++u)
      for (int v = 0; v <= n; ++v) out(u, v) = m(u, v);
    for (int u = 0; u <= n; ++u) {
      out(extra, u) = out(u, extra) = spur + m(options.anchor, u);
    }
    return out;
  };
  data.distance_km = grow(instance.distance_matrix(), distance_km);
  if (default_routing) {
    data.routing_cost.reset();
  } else {
    const double per_km = 1.05 * 0.1;
    data.routing_cost = grow(instance.routing_cost_matrix(), distance_km * per_km);
  }
  if (!data.location_labels.empty()) data.location_labels.push_back("far");

  std::vector<Scenario> extended = scenarios.scenarios();
  for (Scenario& s : extended) s.demand.push_back(1);
  Instance grown = make_instance(std::move(data));
  ScenarioSet grown_scenarios = make_scenario_set(std::move(extended), n + 1);
  return {std::move(grown), std::move(grown_scenarios)};
}

std::vector<FarRow> far_customer(const Instance& instance, const ScenarioSet& scenarios,
                                 const std::vector<double>& distances,
                                 const SolverChoice& choice,
                                 const FarCustomerOptions& far,
                                 const RunOptions& options) {
  std::vector<FarRow> rows;
  for (double d : distances) {
    const auto [grown, grown_scenarios] = add_far_customer(instance, scenarios, d, far);
    FarRow row;
    row.distance_km = d;
    row.outcome = run_solver(grown, grown_scenarios, choice, options);
    if (!row.outcome.solution) {
      row.mode = "infeasible";
    } else {
      const int extra = grown.num_customers() - 1;
      bool on_truck = false;
      for (int t = 0; t < grown.num_trucks(); ++t) {
        on_truck = on_truck || row.outcome.solution->x(extra, t) != 0;
      }
      row.mode = on_truck ? "truck" : "carrier";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace odp
