#ifndef ODP_EXPERIMENTS_HPP
#define ODP_EXPERIMENTS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odp/branch_and_bound.hpp"
#include "odp/core.hpp"

namespace odp {

enum class SolverKind { kExact, kGreedy, kCarrierOnly, kTruckOnly };

struct SolverChoice {
  SolverKind kind = SolverKind::kExact;
  int truck_type = 1;  // 1-based, for kTruckOnly

  std::string name() const;
};

// "exact", "greedy", "carrier-only", "truck-only:k". Throws ValidationError.
SolverChoice parse_solver(std::string_view text);

// Distinct (capacity, initial cost) pairs in order of first appearance; the
// value is the first truck index of each type.
std::vector<int> truck_types(const Instance& instance);

struct PlanOutcome {
  // optimal, feasible, infeasible, gap_limit, node_limit or time_limit.
  std::string status;
  std::optional<Solution> solution;
  std::optional<SolveReport> report;  // exact solver only
  bool limit_hit() const;
};

struct RunOptions {
  SolveConfig config;
  // Seeds branch-and-bound with greedy_plan.
  bool warm_start = true;
};

PlanOutcome run_solver(const Instance& instance, const ScenarioSet& scenarios,
                       const SolverChoice& choice, const RunOptions& options = {});

// First n customers with the matching distance, cost and carrier data.
Instance prefix_instance(const Instance& instance, int n);
ScenarioSet prefix_scenarios(const ScenarioSet& scenarios, int n);

// "carrier-only", "truck-only", "mixed", "none" (nothing to deliver) or
// "infeasible".
std::string service_mode(const PlanOutcome& outcome);

struct SweepRow {
  int customers = 0;
  PlanOutcome outcome;
};

std::vector<SweepRow> sweep_customers(const Instance& instance,
                                      const ScenarioSet& scenarios, int from, int to,
                                      const SolverChoice& choice,
                                      const RunOptions& options = {});

struct SchemeResult {
  std::string scheme;  // carrier-only, <label>-only per truck type, odp
  PlanOutcome outcome;
};

struct CompareRow {
  int customers = 0;
  std::vector<SchemeResult> schemes;
};

std::vector<CompareRow> compare_schemes(const Instance& instance,
                                        const ScenarioSet& scenarios, int from, int to,
                                        const RunOptions& options = {});

struct FarCustomerOptions {
  Window window = Window::kMorning;
  int anchor = 0;  // location the spur starts from
  std::optional<double> weight_kg;  // defaults to customer 1's weight, else 30
  // Per-carrier charge; defaults to each carrier's charge for customer 1.
  std::vector<double> charges;
};

// Appends customer n+1 at spur distance d from the anchor:
// K(extra, u) = d + K(anchor, u). Every scenario gets demand 1 for it.
std::pair<Instance, ScenarioSet> add_far_customer(const Instance& instance,
                                                  const ScenarioSet& scenarios,
                                                  double distance_km,
                                                  const FarCustomerOptions& options = {});

struct FarRow {
  double distance_km = 0.0;
  std::string mode;  // truck or carrier, for the extra customer
  PlanOutcome outcome;
};

std::vector<FarRow> far_customer(const Instance& instance, const ScenarioSet& scenarios,
                                 const std::vector<double>& distances,
                                 const SolverChoice& choice,
                                 const FarCustomerOptions& far = {},
                                 const RunOptions& options = {});

}  // namespace odp

#endif  // ODP_EXPERIMENTS_HPP
