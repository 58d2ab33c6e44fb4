#include "odp/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace odp {

namespace {

constexpr double kDistanceSlack = 1e-9;

std::string tuple_text(const std::vector<int>& indices) {
  std::string text = "(";
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k > 0) text += ",";
    text += std::to_string(indices[k]);
  }
  return text + ")";
}

void check_dimensions(const Instance& instance, const ScenarioSet& scenarios,
                      const Solution& solution) {
  check_compatible(instance, scenarios);
  const std::size_t n = instance.num_customers();
  const std::size_t t = instance.num_trucks();
  const std::size_t r = instance.num_carriers();
  const std::size_t u = instance.num_locations();
  auto fail = [](const std::string& what) {
    throw ValidationError("solution dimension mismatch: " + what);
  };
  if (solution.x.rows() != n || solution.x.cols() != t) fail("x");
  if (solution.w.size() != t) fail("w");
  if (solution.plans.size() != scenarios.size()) fail("scenario count");
  for (const ScenarioPlan& plan : solution.plans) {
    if (plan.y.rows() != n || plan.y.cols() != r) fail("y");
    if (plan.s.rows() != n || plan.s.cols() != t) fail("s");
    if (plan.v.size() != t) fail("v truck count");
    for (const Matrix<int>& v : plan.v) {
      if (v.rows() != u || v.cols() != u) fail("v");
    }
  }
}

class ViolationSink {
 public:
  explicit ViolationSink(ValidationReport& report) : report_(report) {}

  // Records lhs (sense) rhs when violated.
  void less_equal(ConstraintFamily f, std::vector<int> idx, double lhs,
                  double rhs, double tolerance = 0.0) {
    if (lhs > rhs + tolerance) add(f, std::move(idx), rhs - lhs, "<=");
  }
  void greater_equal(ConstraintFamily f, std::vector<int> idx, double lhs,
                     double rhs) {
    if (lhs < rhs) add(f, std::move(idx), lhs - rhs, ">=");
  }
  void equal(ConstraintFamily f, std::vector<int> idx, double lhs, double rhs) {
    if (lhs != rhs) add(f, std::move(idx), -std::abs(lhs - rhs), "==");
  }

 private:
  void add(ConstraintFamily f, std::vector<int> idx, double slack,
           const char* sense) {
    std::string message = "(" + std::to_string(equation_number(f)) + ") " +
                          std::string(family_name(f)) + " " + tuple_text(idx) +
                          " violated: " + sense + " short by " +
                          std::to_string(-slack);
    report_.violations.push_back({f, std::move(idx), slack, std::move(message)});
  }

  ValidationReport& report_;
};

bool is_binary(int v) { return v == 0 || v == 1; }

}  // namespace

std::set<ConstraintFamily> ValidationReport::families() const {
  std::set<ConstraintFamily> out;
  for (const Violation& v : violations) out.insert(v.family);
  return out;
}

ValidationReport validate(const Instance& instance, const ScenarioSet& scenarios,
                          const Solution& solution) {
  check_dimensions(instance, scenarios, solution);
  ValidationReport report;
  ViolationSink sink(report);

  const int n = instance.num_customers();
  const int trucks = instance.num_trucks();
  const int carriers = instance.num_carriers();
  const int locations = instance.num_locations();
  const auto& x = solution.x;

  for (int c = 0; c < n; ++c) {
    for (int t = 0; t < trucks; ++t) {
      if (!is_binary(x(c, t))) {
        sink.equal(ConstraintFamily::kFirstStageDomain, {c + 1, t}, x(c, t), 0);
      }
    }
  }
  for (int t = 0; t < trucks; ++t) {
    if (!is_binary(solution.w[t])) {
      sink.equal(ConstraintFamily::kFirstStageDomain, {t}, solution.w[t], 0);
    }
  }

  // (4) and (5) are first-stage rows.
  for (int t = 0; t < trucks; ++t) {
    double weight = 0.0;
    long assigned = 0;
    for (int c = 0; c < n; ++c) {
      weight += instance.weight(c) * x(c, t);
      assigned += x(c, t);
    }
    sink.less_equal(ConstraintFamily::kCapacity, {t}, weight,
                    instance.truck(t).capacity_kg, kDistanceSlack);
    sink.less_equal(ConstraintFamily::kTruckUse, {t},
                    static_cast<double>(assigned),
                    static_cast<double>(instance.big_m()) * solution.w[t]);
  }

  const auto& morning = instance.window_members(Window::kMorning);
  const auto& afternoon = instance.window_members(Window::kAfternoon);
  const auto& evening = instance.window_members(Window::kEvening);

  for (std::size_t w = 0; w < scenarios.size(); ++w) {
    const int sw = static_cast<int>(w);
    const auto& demand = scenarios[w].demand;
    const ScenarioPlan& plan = solution.plans[w];

    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < carriers; ++r) {
        if (!is_binary(plan.y(c, r))) {
          sink.equal(ConstraintFamily::kSecondStageDomain, {c + 1, r, sw},
                     plan.y(c, r), 0);
        }
      }
      for (int t = 0; t < trucks; ++t) {
        const int s = plan.s(c, t);
        if (s < 0 || s > n) {
          sink.less_equal(ConstraintFamily::kOrderDomain, {c + 1, t, sw},
                          std::max(-s, s - n), 0);
        }
      }
    }

    // (3)
    for (int c = 0; c < n; ++c) {
      long covered = 0;
      for (int t = 0; t < trucks; ++t) covered += x(c, t);
      for (int r = 0; r < carriers; ++r) covered += plan.y(c, r);
      sink.greater_equal(ConstraintFamily::kAssignment, {c + 1, sw},
                         static_cast<double>(covered), demand[c]);
    }

    for (int t = 0; t < trucks; ++t) {
      const Matrix<int>& v = plan.v[t];
      for (int a = 0; a < locations; ++a) {
        for (int b = 0; b < locations; ++b) {
          if (!is_binary(v(a, b))) {
            sink.equal(ConstraintFamily::kSecondStageDomain, {a, b, t, sw},
                       v(a, b), 0);
          }
        }
      }

      // (6)
      for (int a = 0; a < locations; ++a) {
        sink.equal(ConstraintFamily::kNoSelfLoop, {a, t, sw}, v(a, a), 0);
      }

      // (7), (8)
      long into_depot = 0;
      long out_of_depot = 0;
      for (int a = 0; a < locations; ++a) {
        into_depot += v(a, 0);
        out_of_depot += v(0, a);
      }
      sink.less_equal(ConstraintFamily::kDepotIn, {t, sw},
                      static_cast<double>(into_depot), 1);
      sink.less_equal(ConstraintFamily::kDepotOut, {t, sw},
                      static_cast<double>(out_of_depot), 1);

      // (9), (10)
      for (int c = 0; c < n; ++c) {
        const int loc = location_of(c);
        long in = 0;
        long out = 0;
        for (int a = 0; a < locations; ++a) {
          in += v(a, loc);
          out += v(loc, a);
        }
        const int required = x(c, t) * demand[c];
        sink.equal(ConstraintFamily::kFlowIn, {c + 1, t, sw},
                   static_cast<double>(in), required);
        sink.equal(ConstraintFamily::kFlowOut, {c + 1, t, sw},
                   static_cast<double>(out), required);
      }

      // (11)-(13)
      const std::array<ConstraintFamily, 3> limit_family = {
          ConstraintFamily::kLimitMorning, ConstraintFamily::kLimitAfternoon,
          ConstraintFamily::kLimitEvening};
      for (Window win : kAllWindows) {
        double load = 0.0;
        for (int a = 0; a < locations; ++a) {
          for (int c : instance.window_members(win)) {
            const int loc = location_of(c);
            if (v(a, loc) != 0) load += v(a, loc) * instance.distance(a, loc);
          }
        }
        sink.less_equal(limit_family[static_cast<int>(win)], {t, sw}, load,
                        instance.window_limits()[win], kDistanceSlack);
      }

      // (14)
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          const long lhs = static_cast<long>(plan.s(i, t)) - plan.s(j, t) +
                           static_cast<long>(n) * v(location_of(i), location_of(j));
          sink.less_equal(ConstraintFamily::kSubtour, {i + 1, j + 1, t, sw},
                          static_cast<double>(lhs), n - 1);
        }
      }

      // (15), (16)
      auto order_rows = [&](ConstraintFamily f, const std::vector<int>& early,
                            const std::vector<int>& late) {
        const long block = static_cast<long>(early.size());
        for (int i : early) {
          for (int j : late) {
            const long lhs = static_cast<long>(demand[i]) * plan.s(i, t);
            const long rhs = plan.s(j, t) + block * (1 - demand[i]);
            sink.less_equal(f, {i + 1, j + 1, t, sw}, static_cast<double>(lhs),
                            static_cast<double>(rhs));
          }
        }
      };
      order_rows(ConstraintFamily::kMorningBeforeAfternoon, morning, afternoon);
      order_rows(ConstraintFamily::kAfternoonBeforeEvening, afternoon, evening);
    }
  }
  return report;
}

CostBreakdown cost_of(const Instance& instance, const ScenarioSet& scenarios,
                      const Solution& solution) {
  check_dimensions(instance, scenarios, solution);
  const int n = instance.num_customers();
  const int trucks = instance.num_trucks();
  const int locations = instance.num_locations();

  CostBreakdown cost;
  long assigned = 0;
  for (int c = 0; c < n; ++c) {
    for (int t = 0; t < trucks; ++t) assigned += solution.x(c, t);
  }
  cost.assignment_term = instance.assignment_weight() * static_cast<double>(assigned);
  for (int t = 0; t < trucks; ++t) {
    cost.truck_initial += instance.truck(t).initial_cost * solution.w[t];
  }
  for (std::size_t w = 0; w < scenarios.size(); ++w) {
    const double p = scenarios[w].probability;
    const ScenarioPlan& plan = solution.plans[w];
    double carrier = 0.0;
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < instance.num_carriers(); ++r) {
        if (plan.y(c, r) != 0) carrier += instance.charge(c, r) * plan.y(c, r);
      }
    }
    double routing = 0.0;
    for (int t = 0; t < trucks; ++t) {
      for (int a = 0; a < locations; ++a) {
        for (int b = 0; b < locations; ++b) {
          if (plan.v[t](a, b) != 0) {
            routing += instance.routing_cost(a, b) * plan.v[t](a, b);
          }
        }
      }
    }
    cost.expected_carrier += p * carrier;
    cost.expected_routing += p * routing;
  }
  cost.total = cost.assignment_term + cost.truck_initial +
               cost.expected_carrier + cost.expected_routing;
  return cost;
}

std::vector<int> order_positions(const Instance& instance,
                                 const std::vector<int>& route) {
  const int n = instance.num_customers();
  std::vector<int> s(n, -1);
  std::array<int, 3> visited_in_window{0, 0, 0};
  for (std::size_t k = 0; k < route.size(); ++k) {
    s[route[k]] = static_cast<int>(k) + 1;
    ++visited_in_window[static_cast<int>(instance.window_of(route[k]))];
  }
  const int after_morning = visited_in_window[0];
  const int after_afternoon = after_morning + visited_in_window[1];
  const int after_all = static_cast<int>(route.size());
  for (int c = 0; c < n; ++c) {
    if (s[c] >= 0) continue;
    switch (instance.window_of(c)) {
      case Window::kMorning:
        s[c] = after_morning;
        break;
      case Window::kAfternoon:
        s[c] = after_afternoon;
        break;
      case Window::kEvening:
        s[c] = after_all;
        break;
    }
  }
  return s;
}

Solution assemble_solution(const Instance& instance, const ScenarioSet& scenarios,
                           const Matrix<int>& x,
                           const std::vector<ScenarioRouting>& routing) {
  check_compatible(instance, scenarios);
  if (routing.size() != scenarios.size()) {
    throw ValidationError("routing must provide one entry per scenario");
  }
  const int n = instance.num_customers();
  const int trucks = instance.num_trucks();
  Solution solution = empty_solution(instance, scenarios);
  if (x.rows() != static_cast<std::size_t>(n) ||
      x.cols() != static_cast<std::size_t>(trucks)) {
    throw ValidationError("assignment matrix has the wrong shape");
  }
  solution.x = x;
  for (int t = 0; t < trucks; ++t) {
    for (int c = 0; c < n; ++c) {
      if (x(c, t) != 0) solution.w[t] = 1;
    }
  }
  for (std::size_t w = 0; w < scenarios.size(); ++w) {
    const ScenarioRouting& r = routing[w];
    ScenarioPlan& plan = solution.plans[w];
    if (r.routes.size() != static_cast<std::size_t>(trucks) ||
        r.carrier.size() != static_cast<std::size_t>(n)) {
      throw ValidationError("scenario routing has the wrong shape");
    }
    for (int t = 0; t < trucks; ++t) {
      const std::vector<int>& route = r.routes[t];
      int prev = 0;
      for (int c : route) {
        plan.v[t](prev, location_of(c)) = 1;
        prev = location_of(c);
      }
      if (!route.empty()) plan.v[t](prev, 0) = 1;
      const std::vector<int> s = order_positions(instance, route);
      for (int c = 0; c < n; ++c) plan.s(c, t) = s[c];
    }
    for (int c = 0; c < n; ++c) {
      if (r.carrier[c] >= 0) plan.y(c, r.carrier[c]) = 1;
    }
  }
  solution.cost = cost_of(instance, scenarios, solution);
  return solution;
}

std::vector<int> trace_route(const Matrix<int>& v) {
  const std::size_t locations = v.rows();
  std::vector<int> route;
  std::vector<bool> seen(locations, false);
  int current = 0;
  route.push_back(0);
  while (true) {
    int next = -1;
    for (std::size_t b = 0; b < locations; ++b) {
      if (v(current, b) != 0 && b != static_cast<std::size_t>(current)) {
        next = static_cast<int>(b);
        break;
      }
    }
    if (next < 0) break;
    route.push_back(next);
    if (next == 0 || seen[next]) break;
    seen[next] = true;
    current = next;
  }
  if (route.size() == 1) route.clear();
  return route;
}

std::array<double, 3> window_loads(const Instance& instance,
                                   const std::vector<int>& route) {
  std::array<double, 3> load{0.0, 0.0, 0.0};
  int prev = 0;
  for (int c : route) {
    const int loc = location_of(c);
    load[static_cast<int>(instance.window_of(c))] += instance.distance(prev, loc);
    prev = loc;
  }
  return load;
}

double route_cost(const Instance& instance, const std::vector<int>& route) {
  if (route.empty()) return 0.0;
  double cost = 0.0;
  int prev = 0;
  for (int c : route) {
    cost += instance.routing_cost(prev, location_of(c));
    prev = location_of(c);
  }
  return cost + instance.routing_cost(prev, 0);
}

namespace {

struct BestRoute {
  bool feasible = false;
  double cost = 0.0;
  std::vector<int> order;
  std::vector<int> positions;  // S for every customer on this truck
};

bool within_limits(const Instance& instance, const std::vector<int>& route) {
  const std::array<double, 3> load = window_loads(instance, route);
  for (Window w : kAllWindows) {
    if (load[static_cast<int>(w)] > instance.window_limits()[w] + kDistanceSlack) {
      return false;
    }
  }
  return true;
}

// Integer S in [0, n'] satisfying rows (14)-(16) for one truck driving
// `route`, or empty when none exists. Rows are difference constraints
// S_a - S_b <= c, solved by Bellman-Ford from a zero node.
std::vector<int> order_values(const Instance& instance, const std::vector<int>& demand,
                              const std::vector<int>& route) {
  const int n = instance.num_customers();
  const int zero = n;
  struct Edge {
    int from, to;
    long weight;
  };
  std::vector<Edge> edges;
  auto bound = [&](int a, int b, long c) { edges.push_back({b, a, c}); };
  Matrix<int> arc(n, n, 0);
  for (std::size_t k = 0; k + 1 < route.size(); ++k) arc(route[k], route[k + 1]) = 1;
  for (int i = 0; i < n; ++i) {
    bound(i, zero, n);
    bound(zero, i, 0);
    for (int j = 0; j < n; ++j) {
      if (i != j) bound(i, j, n - 1 - static_cast<long>(n) * arc(i, j));
    }
  }
  auto order = [&](const std::vector<int>& early, const std::vector<int>& late) {
    for (int i : early) {
      if (demand[i] == 0) continue;
      for (int j : late) bound(i, j, 0);
    }
  };
  order(instance.window_members(Window::kMorning), instance.window_members(Window::kAfternoon));
  order(instance.window_members(Window::kAfternoon), instance.window_members(Window::kEvening));

  std::vector<long> dist(n + 1, 0);
  for (int round = 0; round <= n + 1; ++round) {
    bool changed = false;
    for (const Edge& e : edges) {
      if (dist[e.from] + e.weight < dist[e.to]) {
        dist[e.to] = dist[e.from] + e.weight;
        changed = true;
      }
    }
    if (!changed) {
      std::vector<int> values(n);
      for (int i = 0; i < n; ++i) values[i] = static_cast<int>(dist[i] - dist[zero]);
      return values;
    }
  }
  return {};
}

// Cheapest tour through the customers of `mask` that keeps the window limits
// and admits visit-order values, trying every visiting sequence.
BestRoute best_route_for(const Instance& instance, const std::vector<int>& demand,
                         unsigned mask) {
  std::vector<int> route;
  for (int c = 0; c < instance.num_customers(); ++c) {
    if (mask & (1u << c)) route.push_back(c);
  }
  BestRoute best;
  do {
    if (!within_limits(instance, route)) continue;
    const double cost = route_cost(instance, route);
    if (best.feasible && cost >= best.cost) continue;
    std::vector<int> positions = order_values(instance, demand, route);
    if (positions.empty() && instance.num_customers() > 0) continue;
    best = {true, cost, route, std::move(positions)};
  } while (std::next_permutation(route.begin(), route.end()));
  return best;
}

}  // namespace

std::optional<OracleResult> brute_force_optimum(const Instance& instance,
                                                const ScenarioSet& scenarios,
                                                OracleLimits limits) {
  check_compatible(instance, scenarios);
  const int n = instance.num_customers();
  const int trucks = instance.num_trucks();
  if (n > limits.max_customers || trucks > limits.max_trucks ||
      instance.num_carriers() > limits.max_carriers ||
      static_cast<int>(scenarios.size()) > limits.max_scenarios) {
    throw ValidationError(
        "instance exceeds the brute-force guard (customers <= " +
        std::to_string(limits.max_customers) + ", trucks <= " +
        std::to_string(limits.max_trucks) + ", carriers <= " +
        std::to_string(limits.max_carriers) + ", scenarios <= " +
        std::to_string(limits.max_scenarios) + ")");
  }

  const unsigned subsets = 1u << n;
  std::vector<std::vector<BestRoute>> routes(scenarios.size(),
                                             std::vector<BestRoute>(subsets));
  for (std::size_t w = 0; w < scenarios.size(); ++w) {
    for (unsigned mask = 0; mask < subsets; ++mask) {
      routes[w][mask] = best_route_for(instance, scenarios[w].demand, mask);
    }
  }

  const int bits = n * trucks;
  const unsigned long assignments = 1ul << bits;
  bool found = false;
  double best_total = std::numeric_limits<double>::infinity();
  Matrix<int> best_x;
  std::vector<ScenarioRouting> best_routing;
  std::vector<std::vector<std::vector<int>>> best_positions;

  for (unsigned long code = 0; code < assignments; ++code) {
    Matrix<int> x(n, trucks);
    for (int c = 0; c < n; ++c) {
      for (int t = 0; t < trucks; ++t) {
        x(c, t) = static_cast<int>((code >> (c * trucks + t)) & 1ul);
      }
    }

    bool feasible = true;
    double total = 0.0;
    for (int t = 0; t < trucks && feasible; ++t) {
      double weight = 0.0;
      bool used = false;
      for (int c = 0; c < n; ++c) {
        weight += instance.weight(c) * x(c, t);
        total += instance.assignment_weight() * x(c, t);
        used = used || x(c, t) != 0;
      }
      if (weight > instance.truck(t).capacity_kg + kDistanceSlack) feasible = false;
      if (used) total += instance.truck(t).initial_cost;
    }
    if (!feasible) continue;

    std::vector<ScenarioRouting> routing(scenarios.size());
    std::vector<std::vector<std::vector<int>>> positions(
        scenarios.size(), std::vector<std::vector<int>>(trucks));
    for (std::size_t w = 0; w < scenarios.size() && feasible; ++w) {
      const auto& demand = scenarios[w].demand;
      ScenarioRouting& r = routing[w];
      r.routes.resize(trucks);
      r.carrier.assign(n, -1);
      double second_stage = 0.0;
      for (int t = 0; t < trucks && feasible; ++t) {
        unsigned visited = 0;
        for (int c = 0; c < n; ++c) {
          if (x(c, t) != 0 && demand[c] != 0) visited |= 1u << c;
        }
        const BestRoute& best = routes[w][visited];
        if (!best.feasible) {
          feasible = false;
          break;
        }
        r.routes[t] = best.order;
        positions[w][t] = best.positions;
        second_stage += best.cost;
      }
      for (int c = 0; c < n && feasible; ++c) {
        if (demand[c] == 0) continue;
        bool on_truck = false;
        for (int t = 0; t < trucks; ++t) on_truck = on_truck || x(c, t) != 0;
        if (on_truck) continue;
        const int carrier = instance.cheapest_carrier(c);
        if (carrier < 0) {
          feasible = false;
          break;
        }
        r.carrier[c] = carrier;
        second_stage += instance.charge(c, carrier);
      }
      total += scenarios[w].probability * second_stage;
    }
    if (!feasible) continue;
    if (!found || total < best_total) {
      found = true;
      best_total = total;
      best_x = x;
      best_routing = std::move(routing);
      best_positions = std::move(positions);
    }
  }

  if (!found) return std::nullopt;
  OracleResult result;
  result.solution = assemble_solution(instance, scenarios, best_x, best_routing);
  for (std::size_t w = 0; w < scenarios.size(); ++w) {
    for (int t = 0; t < trucks; ++t) {
      for (int c = 0; c < n; ++c) result.solution.plans[w].s(c, t) = best_positions[w][t][c];
    }
  }
  result.total = result.solution.cost.total;
  return result;
}

}  // namespace odp
