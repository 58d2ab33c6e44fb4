#ifndef ODP_EVALUATE_HPP
#define ODP_EVALUATE_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "odp/core.hpp"
#include "odp/family.hpp"

namespace odp {

struct Violation {
  ConstraintFamily family;
  std::vector<int> indices;  // index tuple in the family's own order
  double slack = 0.0;        // negative amount by which the row is violated
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::set<ConstraintFamily> families() const;
};

// Checks constraints (3)-(19) directly on the decisions. Combinatorial rows use
// integer arithmetic; the distance-limit rows allow 1e-9 km of slack.
// Throws ValidationError on dimension mismatch.
ValidationReport validate(const Instance& instance, const ScenarioSet& scenarios,
                          const Solution& solution);

// Objective terms of the decisions; feasibility is not required.
CostBreakdown cost_of(const Instance& instance, const ScenarioSet& scenarios,
                      const Solution& solution);

// Second-stage routing for one scenario: each truck's visited customers
// (0-based, in visit order) and each customer's carrier or -1.
struct ScenarioRouting {
  std::vector<std::vector<int>> routes;
  std::vector<int> carrier;
};

// Visit-order values S for one truck. Visited customers get positions 1..k
// along the route; unvisited ones are placed between the window blocks so the
// ordering rows hold.
std::vector<int> order_positions(const Instance& instance,
                                 const std::vector<int>& route);

// Builds a full Solution (V, S, Y, W, cost) from first-stage X and per-scenario
// routes. W(t) = 1 iff truck t has an assignment.
Solution assemble_solution(const Instance& instance, const ScenarioSet& scenarios,
                           const Matrix<int>& x,
                           const std::vector<ScenarioRouting>& routing);

// Follows V from the depot; returns [0, ..., 0] or empty when the truck has no
// departure. Stops if a location repeats.
std::vector<int> trace_route(const Matrix<int>& v);

// Distance driven into each window's customers along a depot-started route of
// 0-based customers.
std::array<double, 3> window_loads(const Instance& instance,
                                   const std::vector<int>& route);
double route_cost(const Instance& instance, const std::vector<int>& route);

struct OracleLimits {
  int max_customers = 6;
  int max_trucks = 2;
  int max_carriers = 2;
  int max_scenarios = 3;
};

struct OracleResult {
  Solution solution;
  double total = 0.0;
};

// Exhaustive optimum of the program by enumerating every X matrix and, per
// scenario and truck, every visiting sequence that admits integer S values
// for rows (14)-(16). Returns nullopt when no feasible point exists. Throws
// ValidationError beyond the guard.
std::optional<OracleResult> brute_force_optimum(const Instance& instance,
                                                const ScenarioSet& scenarios,
                                                OracleLimits limits = {});

}  // namespace odp

#endif  // ODP_EVALUATE_HPP
