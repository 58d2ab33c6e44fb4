#include "odp/scenario.hpp"

#include <cmath>
#include <random>
#include <string>

namespace odp {

ScenarioSet deterministic_all_demand(int num_customers) {
  if (num_customers < 0) {
    throw ValidationError("number of customers must be non-negative");
  }
  return make_scenario_set({{std::vector<int>(num_customers, 1), 1.0}},
                           num_customers);
}

ScenarioSet uniform_scenarios(
    const std::vector<std::vector<int>>& demand_vectors) {
  if (demand_vectors.empty()) {
    throw ValidationError("uniform_scenarios needs at least one demand vector");
  }
  const std::size_t n = demand_vectors.front().size();
  const double p = 1.0 / static_cast<double>(demand_vectors.size());
  std::vector<Scenario> scenarios;
  scenarios.reserve(demand_vectors.size());
  for (const auto& demand : demand_vectors) {
    if (demand.size() != n) {
      throw ValidationError("demand vectors must all have the same length");
    }
    scenarios.push_back({demand, p});
  }
  return make_scenario_set(std::move(scenarios), static_cast<int>(n));
}

ScenarioSet bernoulli_scenarios(const std::vector<double>& probability,
                                int max_scenarios, std::uint64_t seed) {
  if (max_scenarios < 1) throw ValidationError("max_scenarios must be >= 1");
  const int n = static_cast<int>(probability.size());
  std::vector<int> fixed(n, 0);
  std::vector<int> random_customers;
  for (int c = 0; c < n; ++c) {
    const double p = probability[c];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw ValidationError("demand probability of customer " +
                            std::to_string(c + 1) + " must lie in [0,1]");
    }
    if (p == 1.0) {
      fixed[c] = 1;
    } else if (p > 0.0) {
      random_customers.push_back(c);
    }
  }

  const int k = static_cast<int>(random_customers.size());
  std::vector<Scenario> scenarios;
  if (k < 31 && (std::int64_t{1} << k) <= max_scenarios) {
    const std::int64_t outcomes = std::int64_t{1} << k;
    for (std::int64_t mask = 0; mask < outcomes; ++mask) {
      Scenario s{fixed, 1.0};
      for (int b = 0; b < k; ++b) {
        const int c = random_customers[b];
        const bool has_demand = (mask >> (k - 1 - b)) & 1;
        s.demand[c] = has_demand ? 1 : 0;
        s.probability *= has_demand ? probability[c] : 1.0 - probability[c];
      }
      scenarios.push_back(std::move(s));
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double p = 1.0 / static_cast<double>(max_scenarios);
    for (int i = 0; i < max_scenarios; ++i) {
      Scenario s{fixed, p};
      for (int c : random_customers) {
        s.demand[c] = unit(rng) < probability[c] ? 1 : 0;
      }
      scenarios.push_back(std::move(s));
    }
  }
  return make_scenario_set(std::move(scenarios), n);
}

}  // namespace odp
