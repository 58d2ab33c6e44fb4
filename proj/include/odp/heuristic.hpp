#ifndef ODP_HEURISTIC_HPP
#define ODP_HEURISTIC_HPP

#include <optional>
#include <vector>

#include "odp/core.hpp"

namespace odp {

// Routes are sequences of 0-based customers; the depot is implicit at both
// ends.

// Nearest neighbor from the depot through the morning, afternoon and evening
// customers in turn. Ties go to the lower customer index.
std::vector<int> nearest_neighbor_route(const Instance& instance,
                                        const std::vector<int>& customers);

// Segment reversals inside one window block, accepted while routing cost
// strictly decreases; a route within the distance limits stays within them.
std::vector<int> two_opt(const Instance& instance, std::vector<int> route);

bool within_limits(const Instance& instance, const std::vector<int>& route);

// nearest_neighbor_route followed by two_opt.
std::vector<int> plan_route(const Instance& instance,
                            const std::vector<int>& customers);

// Assigns customers (by expected demand x cheapest charge, descending) to the
// truck with the best expected saving over the carrier until no truck saves
// anything; everything else goes to its cheapest carrier. Throws
// ValidationError when a demanding customer cannot be served (no carriers and
// no truck can take it).
Solution greedy_plan(const Instance& instance, const ScenarioSet& scenarios);

// X = W = 0, every demanding customer on its cheapest carrier. Throws
// ValidationError without carriers.
Solution baseline_carrier_only(const Instance& instance, const ScenarioSet& scenarios);

// Only trucks with the same capacity and initial cost as `truck`, no carriers:
// the fewest such trucks that hold every demanding customer (first fit by
// decreasing weight) with routes inside the limits in every scenario.
// nullopt when even all trucks of the type cannot.
std::optional<Solution> baseline_single_truck_type(const Instance& instance,
                                                   const ScenarioSet& scenarios,
                                                   int truck);

}  // namespace odp

#endif  // ODP_HEURISTIC_HPP
