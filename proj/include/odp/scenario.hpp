#ifndef ODP_SCENARIO_HPP
#define ODP_SCENARIO_HPP

#include <cstdint>
#include <vector>

#include "odp/core.hpp"

namespace odp {

// One scenario in which every customer has a package, P = 1.
ScenarioSet deterministic_all_demand(int num_customers);

// Uniform distribution over the given demand vectors; duplicates are kept.
ScenarioSet uniform_scenarios(const std::vector<std::vector<int>>& demand_vectors);

// Independent per-customer Bernoulli demand. Customers with probability 0 or 1
// are fixed; if the remaining 2^k outcomes fit in max_scenarios they are
// enumerated exactly (first customer varies slowest), otherwise max_scenarios
// samples are drawn with P = 1 / max_scenarios.
ScenarioSet bernoulli_scenarios(const std::vector<double>& probability,
                                int max_scenarios, std::uint64_t seed);

}  // namespace odp

#endif  // ODP_SCENARIO_HPP
