#ifndef ODP_TESTS_SUPPORT_HPP
#define ODP_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "odp/core.hpp"
#include "odp/evaluate.hpp"
#include "odp/scenario.hpp"

namespace odp::testing {

struct RandomShape {
  int customers = 3;
  int trucks = 1;
  int carriers = 1;
  int scenarios = 1;
};

// Small random instance: integer symmetric distances, random windows,
// weights, capacities and prices. Limits are drawn so that they sometimes
// bind.
inline Instance random_instance(std::mt19937_64& rng, RandomShape shape) {
  std::uniform_int_distribution<int> dist_km(1, 12);
  std::uniform_int_distribution<int> window(0, 2);
  std::uniform_int_distribution<int> weight(1, 4);
  std::uniform_int_distribution<int> price(2, 12);
  std::uniform_int_distribution<int> fixed(0, 15);
  std::uniform_int_distribution<int> capacity(3, 12);
  std::uniform_int_distribution<int> limit(5, 30);

  const int n = shape.customers;
  InstanceData data;
  for (int c = 0; c < n; ++c) {
    data.customers.push_back({c + 1, static_cast<double>(weight(rng)),
                              static_cast<Window>(window(rng))});
  }
  for (int t = 0; t < shape.trucks; ++t) {
    data.trucks.push_back({static_cast<double>(capacity(rng)),
                           static_cast<double>(fixed(rng)), ""});
  }
  for (int r = 0; r < shape.carriers; ++r) {
    Carrier carrier;
    for (int c = 0; c < n; ++c) carrier.charge_per_customer.push_back(price(rng));
    data.carriers.push_back(carrier);
  }
  data.distance_km = Matrix<double>(n + 1, n + 1, 0.0);
  for (int u = 0; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      const double d = dist_km(rng);
      data.distance_km(u, v) = d;
      data.distance_km(v, u) = d;
    }
  }
  // Routing cost is distance scaled so truck and carrier costs compete.
  Matrix<double> routing(n + 1, n + 1, 0.0);
  for (int u = 0; u <= n; ++u) {
    for (int v = 0; v <= n; ++v) routing(u, v) = 0.5 * data.distance_km(u, v);
  }
  data.routing_cost = routing;
  data.window_limits = {static_cast<double>(limit(rng)),
                        static_cast<double>(limit(rng)),
                        static_cast<double>(limit(rng))};
  std::uniform_int_distribution<int> coin(0, 1);
  data.assignment_weight = coin(rng) ? 1.0 : 0.0;
  return make_instance(data);
}

inline ScenarioSet random_scenarios(std::mt19937_64& rng, int customers,
                                    int count) {
  std::bernoulli_distribution demand(0.7);
  std::vector<Scenario> scenarios;
  std::vector<double> weights;
  std::uniform_real_distribution<double> w(0.2, 1.0);
  double total = 0.0;
  for (int k = 0; k < count; ++k) {
    weights.push_back(w(rng));
    total += weights.back();
  }
  double assigned = 0.0;
  for (int k = 0; k < count; ++k) {
    Scenario s;
    for (int c = 0; c < customers; ++c) s.demand.push_back(demand(rng) ? 1 : 0);
    s.probability = k + 1 == count ? 1.0 - assigned : weights[k] / total;
    assigned += s.probability;
    scenarios.push_back(s);
  }
  return make_scenario_set(scenarios, customers);
}

// n customers all at the depot, one van priced like the sg-2017 profile,
// one carrier at 21 per package.
inline Instance clustered_instance(int n, int vans = 1) {
  InstanceData data;
  for (int c = 0; c < n; ++c) {
    data.customers.push_back({c + 1, 30.0, Window::kMorning});
  }
  for (int t = 0; t < vans; ++t) data.trucks.push_back({1060.0, 280.0, "van"});
  data.carriers.push_back({std::vector<double>(n, 21.0)});
  data.distance_km = Matrix<double>(n + 1, n + 1, 0.0);
  data.window_limits = {50.0, 50.0, 50.0};
  return make_instance(data);
}

// Random integer point: either an assembled plan from random assignments and
// routes, or such a plan with one entry flipped.
inline Solution random_point(std::mt19937_64& rng, const Instance& instance,
                      const ScenarioSet& scenarios) {
  const int n = instance.num_customers();
  const int trucks = instance.num_trucks();
  const int carriers = instance.num_carriers();
  std::uniform_int_distribution<int> pick_truck(-1, trucks - 1);
  Matrix<int> x(n, trucks, 0);
  for (int c = 0; c < n; ++c) {
    const int t = pick_truck(rng);
    if (t >= 0) x(c, t) = 1;
  }
  std::vector<ScenarioRouting> routing(scenarios.size());
  for (std::size_t w = 0; w < scenarios.size(); ++w) {
    routing[w].routes.assign(trucks, {});
    routing[w].carrier.assign(n, -1);
    for (int t = 0; t < trucks; ++t) {
      std::vector<int> members;
      for (int c = 0; c < n; ++c) {
        if (x(c, t) && scenarios[w].demand[c]) members.push_back(c);
      }
      std::shuffle(members.begin(), members.end(), rng);
      std::stable_sort(members.begin(), members.end(), [&](int a, int b) {
        return instance.window_of(a) < instance.window_of(b);
      });
      routing[w].routes[t] = members;
    }
    for (int c = 0; c < n; ++c) {
      bool on_truck = false;
      for (int t = 0; t < trucks; ++t) on_truck = on_truck || x(c, t);
      if (scenarios[w].demand[c] && !on_truck && carriers > 0) {
        routing[w].carrier[c] = std::uniform_int_distribution<int>(0, carriers - 1)(rng);
      }
    }
  }
  Solution s = assemble_solution(instance, scenarios, x, routing);
  std::uniform_int_distribution<int> mutate(0, 5);
  switch (mutate(rng)) {
    case 0:
      if (n > 0) {
        const int c = std::uniform_int_distribution<int>(0, n - 1)(rng);
        const int t = std::uniform_int_distribution<int>(0, trucks - 1)(rng);
        s.x(c, t) ^= 1;
      }
      break;
    case 1: {
      const int t = std::uniform_int_distribution<int>(0, trucks - 1)(rng);
      s.w[t] ^= 1;
      break;
    }
    case 2: {
      const int loc = instance.num_locations();
      const int u = std::uniform_int_distribution<int>(0, loc - 1)(rng);
      const int v = std::uniform_int_distribution<int>(0, loc - 1)(rng);
      s.plans[0].v[0](u, v) ^= 1;
      break;
    }
    case 3:
      if (n > 0) {
        const int c = std::uniform_int_distribution<int>(0, n - 1)(rng);
        s.plans[0].s(c, 0) = std::uniform_int_distribution<int>(0, n)(rng);
      }
      break;
    default:
      break;
  }
  s.cost = cost_of(instance, scenarios, s);
  return s;
}

}  // namespace odp::testing

#endif  // ODP_TESTS_SUPPORT_HPP
