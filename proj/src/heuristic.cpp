#include "odp/heuristic.hpp"

#include <algorithm>
#include <limits>

#include "odp/evaluate.hpp"

namespace odp {

namespace {

constexpr double kSlack = 1e-9;
constexpr double kImprovement = 1e-12;

// [begin, end) of each window block in a window-ordered route.
std::array<std::pair<int, int>, 3> block_ranges(const Instance& instance,
                                                const std::vector<int>& route) {
  std::array<std::pair<int, int>, 3> ranges{};
  int pos = 0;
  for (int b = 0; b < 3; ++b) {
    const int begin = pos;
    while (pos < static_cast<int>(route.size()) &&
           static_cast<int>(instance.window_of(route[pos])) == b) {
      ++pos;
    }
    ranges[b] = {begin, pos};
  }
  return ranges;
}

// Demanding customers of `members` in scenario w.
std::vector<int> demanding(const ScenarioSet& scenarios, std::size_t w,
                           const std::vector<int>& members) {
  std::vector<int> out;
  for (int c : members) {
    if (scenarios[w].demand[c] != 0) out.push_back(c);
  }
  return out;
}

struct TruckLoad {
  std::vector<int> members;  // ascending
  double weight = 0.0;
  std::vector<std::vector<int>> routes;  // per scenario
  bool feasible = true;
  double expected_routing = 0.0;
};

void route_all(const Instance& instance, const ScenarioSet& scenarios,
               TruckLoad& load) {
  load.routes.assign(scenarios.size(), {});
  load.feasible = true;
  load.expected_routing = 0.0;
  for (std::size_t w = 0; w < scenarios.size(); ++w) {
    load.routes[w] = plan_route(instance, demanding(scenarios, w, load.members));
    if (!within_limits(instance, load.routes[w])) {
      load.feasible = false;
      return;
    }
    load.expected_routing +=
        scenarios[w].probability * route_cost(instance, load.routes[w]);
  }
}

bool try_add(const Instance& instance, const ScenarioSet& scenarios, int truck,
             TruckLoad& load, int c) {
  if (load.weight + instance.weight(c) > instance.truck(truck).capacity_kg + kSlack) {
    return false;
  }
  TruckLoad trial = load;
  trial.members.insert(std::lower_bound(trial.members.begin(), trial.members.end(), c),
                       c);
  trial.weight += instance.weight(c);
  route_all(instance, scenarios, trial);
  if (!trial.feasible) return false;
  load = std::move(trial);
  return true;
}

double carrier_value(const Instance& instance, const ScenarioSet& scenarios, int c) {
  const int r = instance.cheapest_carrier(c);
  if (r < 0) return std::numeric_limits<double>::infinity();
  return scenarios.expected_demand(c) * instance.charge(c, r);
}

// Expected saving of serving `load` by the truck instead of by carriers.
double saving(const Instance& instance, const ScenarioSet& scenarios, int truck,
              const TruckLoad& load) {
  if (load.members.empty()) return 0.0;
  double value = 0.0;
  for (int c : load.members) value += carrier_value(instance, scenarios, c);
  return value - instance.truck(truck).initial_cost -
         instance.assignment_weight() * static_cast<double>(load.members.size()) -
         load.expected_routing;
}

std::vector<ScenarioRouting> empty_routing(const Instance& instance,
                                           const ScenarioSet& scenarios) {
  ScenarioRouting blank;
  blank.routes.assign(instance.num_trucks(), {});
  blank.carrier.assign(instance.num_customers(), -1);
  return std::vector<ScenarioRouting>(scenarios.size(), blank);
}

bool has_demand(const ScenarioSet& scenarios, int c) {
  for (const Scenario& s : scenarios.scenarios()) {
    if (s.demand[c] != 0) return true;
  }
  return false;
}

}  // namespace

bool within_limits(const Instance& instance, const std::vector<int>& route) {
  const std::array<double, 3> load = window_loads(instance, route);
  for (Window w : kAllWindows) {
    if (load[static_cast<int>(w)] > instance.window_limits()[w] + kSlack) return false;
  }
  return true;
}

std::vector<int> nearest_neighbor_route(const Instance& instance,
                                        const std::vector<int>& customers) {
  std::array<std::vector<int>, 3> blocks;
  for (int c : customers) blocks[static_cast<int>(instance.window_of(c))].push_back(c);
  std::vector<int> route;
  int at = 0;
  for (auto& block : blocks) {
    std::sort(block.begin(), block.end());
    std::vector<bool> used(block.size(), false);
    for (std::size_t step = 0; step < block.size(); ++step) {
      int pick = -1;
      for (std::size_t k = 0; k < block.size(); ++k) {
        if (used[k]) continue;
        if (pick < 0 || instance.routing_cost(at, location_of(block[k])) <
                            instance.routing_cost(at, location_of(block[pick]))) {
          pick = static_cast<int>(k);
        }
      }
      used[pick] = true;
      route.push_back(block[pick]);
      at = location_of(block[pick]);
    }
  }
  return route;
}

std::vector<int> two_opt(const Instance& instance, std::vector<int> route) {
  const auto ranges = block_ranges(instance, route);
  double best = route_cost(instance, route);
  const bool feasible = within_limits(instance, route);
  bool improved = true;
  while (improved) {
    improved = false;
    for (const auto& [begin, end] : ranges) {
      for (int i = begin; i < end; ++i) {
        for (int j = i + 1; j < end; ++j) {
          std::reverse(route.begin() + i, route.begin() + j + 1);
          const double cost = route_cost(instance, route);
          if (cost < best - kImprovement &&
              (!feasible || within_limits(instance, route))) {
            best = cost;
            improved = true;
          } else {
            std::reverse(route.begin() + i, route.begin() + j + 1);
          }
        }
      }
    }
  }
  return route;
}

std::vector<int> plan_route(const Instance& instance,
                            const std::vector<int>& customers) {
  return two_opt(instance, nearest_neighbor_route(instance, customers));
}

Solution greedy_plan(const Instance& instance, const ScenarioSet& scenarios) {
  check_compatible(instance, scenarios);
  const int n = instance.num_customers();

  std::vector<int> order;
  for (int c = 0; c < n; ++c) {
    if (has_demand(scenarios, c)) order.push_back(c);
  }
  auto score = [&](int c) {
    const int r = instance.cheapest_carrier(c);
    return scenarios.expected_demand(c) * (r < 0 ? 0.0 : instance.charge(c, r));
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return score(a) > score(b); });

  Matrix<int> x(n, instance.num_trucks(), 0);
  std::vector<bool> assigned(n, false);
  std::vector<bool> used(instance.num_trucks(), false);
  std::vector<TruckLoad> committed(instance.num_trucks());

  while (true) {
    int best_truck = -1;
    double best_saving = 0.0;
    TruckLoad best_load;
    for (int t = 0; t < instance.num_trucks(); ++t) {
      if (used[t]) continue;
      TruckLoad load;
      route_all(instance, scenarios, load);
      for (int c : order) {
        if (!assigned[c]) try_add(instance, scenarios, t, load, c);
      }
      // Drop members whose carrier price is below their marginal truck cost.
      for (std::size_t k = load.members.size(); k-- > 0;) {
        const int c = load.members[k];
        if (instance.cheapest_carrier(c) < 0) continue;
        TruckLoad without = load;
        without.members.erase(without.members.begin() + static_cast<std::ptrdiff_t>(k));
        without.weight -= instance.weight(c);
        route_all(instance, scenarios, without);
        if (without.feasible && saving(instance, scenarios, t, without) >
                                    saving(instance, scenarios, t, load) + kImprovement) {
          load = std::move(without);
        }
      }
      const double s = saving(instance, scenarios, t, load);
      if (!load.members.empty() && s > best_saving + kImprovement) {
        best_saving = s;
        best_truck = t;
        best_load = load;
      }
    }
    if (best_truck < 0) break;
    used[best_truck] = true;
    for (int c : best_load.members) {
      assigned[c] = true;
      x(c, best_truck) = 1;
    }
    committed[best_truck] = std::move(best_load);
  }

  // Customers no carrier can serve must ride a truck even at a loss.
  for (int c : order) {
    if (assigned[c] || instance.cheapest_carrier(c) >= 0) continue;
    bool placed = false;
    for (int t = 0; t < instance.num_trucks() && !placed; ++t) {
      if (try_add(instance, scenarios, t, committed[t], c)) {
        placed = true;
        used[t] = true;
        assigned[c] = true;
        x(c, t) = 1;
      }
    }
    if (!placed) {
      throw ValidationError("customer " + std::to_string(c + 1) +
                            " fits no truck and no carrier serves it");
    }
  }

  std::vector<ScenarioRouting> routing = empty_routing(instance, scenarios);
  for (std::size_t w = 0; w < scenarios.size(); ++w) {
    for (int t = 0; t < instance.num_trucks(); ++t) {
      if (used[t]) routing[w].routes[t] = committed[t].routes[w];
    }
    for (int c = 0; c < n; ++c) {
      if (!assigned[c] && scenarios[w].demand[c] != 0) {
        routing[w].carrier[c] = instance.cheapest_carrier(c);
      }
    }
  }
  return assemble_solution(instance, scenarios, x, routing);
}

Solution baseline_carrier_only(const Instance& instance, const ScenarioSet& scenarios) {
  check_compatible(instance, scenarios);
  if (instance.num_carriers() == 0) {
    throw ValidationError("carrier-only baseline needs at least one carrier");
  }
  std::vector<ScenarioRouting> routing = empty_routing(instance, scenarios);
  for (std::size_t w = 0; w < scenarios.size(); ++w) {
    for (int c = 0; c < instance.num_customers(); ++c) {
      if (scenarios[w].demand[c] != 0) {
        routing[w].carrier[c] = instance.cheapest_carrier(c);
      }
    }
  }
  Matrix<int> x(instance.num_customers(), instance.num_trucks(), 0);
  return assemble_solution(instance, scenarios, x, routing);
}

std::optional<Solution> baseline_single_truck_type(const Instance& instance,
                                                   const ScenarioSet& scenarios,
                                                   int truck) {
  check_compatible(instance, scenarios);
  if (truck < 0 || truck >= instance.num_trucks()) {
    throw ValidationError("unknown truck " + std::to_string(truck));
  }
  const Truck& type = instance.truck(truck);
  std::vector<int> fleet;
  for (int t = 0; t < instance.num_trucks(); ++t) {
    if (instance.truck(t).capacity_kg == type.capacity_kg &&
        instance.truck(t).initial_cost == type.initial_cost) {
      fleet.push_back(t);
    }
  }

  const int n = instance.num_customers();
  std::vector<int> order;
  for (int c = 0; c < n; ++c) {
    if (has_demand(scenarios, c)) order.push_back(c);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return instance.weight(a) > instance.weight(b);
  });

  const std::size_t first = order.empty() ? 0 : 1;
  for (std::size_t k = first; k <= fleet.size(); ++k) {
    std::vector<TruckLoad> loads(k);
    for (TruckLoad& load : loads) route_all(instance, scenarios, load);
    bool packed = true;
    for (int c : order) {
      bool placed = false;
      for (std::size_t b = 0; b < k && !placed; ++b) {
        placed = try_add(instance, scenarios, fleet[b], loads[b], c);
      }
      if (!placed) {
        packed = false;
        break;
      }
    }
    if (!packed) continue;

    Matrix<int> x(n, instance.num_trucks(), 0);
    std::vector<ScenarioRouting> routing = empty_routing(instance, scenarios);
    for (std::size_t b = 0; b < k; ++b) {
      for (int c : loads[b].members) x(c, fleet[b]) = 1;
      for (std::size_t w = 0; w < scenarios.size(); ++w) {
        routing[w].routes[fleet[b]] = loads[b].routes[w];
      }
    }
    return assemble_solution(instance, scenarios, x, routing);
  }
  return std::nullopt;
}

}  // namespace odp
