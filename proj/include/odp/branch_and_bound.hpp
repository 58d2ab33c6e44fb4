#ifndef ODP_BRANCH_AND_BOUND_HPP
#define ODP_BRANCH_AND_BOUND_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "odp/core.hpp"
#include "odp/lp.hpp"
#include "odp/milp.hpp"

namespace odp {

enum class Branching { kMostFractional, kPseudoCost };

struct SolveConfig {
  double gap_tolerance = 1e-6;  // relative
  std::int64_t node_limit = 1'000'000;
  std::optional<double> time_limit_seconds;
  Branching branching = Branching::kMostFractional;
  double lp_tolerance = 1e-7;
  double integrality_tolerance = 1e-6;
  // Column vector of a known feasible point; rejected silently if it fails
  // row verification.
  std::optional<std::vector<double>> initial_solution;
  bool record_trace = false;
};

void check_config(const SolveConfig& config);

enum class SolveStatus { kOptimal, kGapLimit, kNodeLimit, kTimeLimit, kInfeasible };

const char* to_string(SolveStatus status);

struct BoundSample {
  std::int64_t nodes = 0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<std::vector<double>> incumbent;
  double lower_bound = 0.0;
  double upper_bound = 0.0;  // +inf without incumbent
  std::int64_t nodes_explored = 0;
  std::int64_t lp_iterations = 0;
  double wall_seconds = 0.0;
  std::vector<BoundSample> trace;

  double gap() const;
};

SolveReport branch_and_bound(const MilpModel& model, const SolveConfig& config = {});

struct ExactResult {
  SolveReport report;
  std::optional<Solution> solution;
};

// Builds the extensive form, solves it and decodes the incumbent. Throws
// std::logic_error if a decoded incumbent fails the validator.
ExactResult solve_exact(const Instance& instance, const ScenarioSet& scenarios,
                        const SolveConfig& config = {}, BuildOptions build = {},
                        const Solution* start = nullptr);

}  // namespace odp

#endif  // ODP_BRANCH_AND_BOUND_HPP
