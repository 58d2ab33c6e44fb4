#ifndef ODP_REPORT_HPP
#define ODP_REPORT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "odp/core.hpp"
#include "odp/experiments.hpp"

namespace odp {

// solution.json: first-stage x and w, per scenario y, s and the truck routes as
// location lists starting and ending at the depot, plus the cost breakdown.
std::string write_solution(const Instance& instance, const ScenarioSet& scenarios,
                           const Solution& solution);

// Inverse of write_solution. V is rebuilt from the routes and the cost is
// recomputed. Throws ParseError when the document does not fit the instance.
Solution read_solution(const Instance& instance, const ScenarioSet& scenarios,
                       std::string_view text);

// solve_report.json for one run. Infinite bounds are written as null.
std::string write_solve_report(const Instance& instance, const ScenarioSet& scenarios,
                               const SolverChoice& choice, const RunOptions& options,
                               const PlanOutcome& outcome);

// report.csv, one header line then one line per run.
std::string plan_csv(const Instance& instance, const ScenarioSet& scenarios,
                     const SolverChoice& choice, const PlanOutcome& outcome);
std::string sweep_csv(const ScenarioSet& scenarios, const SolverChoice& choice,
                      const std::vector<SweepRow>& rows);
std::string compare_csv(const std::vector<CompareRow>& rows);
std::string far_csv(const std::vector<FarRow>& rows);

// JSON sidecars with the full solution of every row.
std::string sweep_json(const Instance& instance, const ScenarioSet& scenarios,
                       const SolverChoice& choice, const std::vector<SweepRow>& rows);
std::string compare_json(const Instance& instance, const ScenarioSet& scenarios,
                         const std::vector<CompareRow>& rows);
std::string far_json(const Instance& instance, const ScenarioSet& scenarios,
                     const FarCustomerOptions& far, const std::vector<FarRow>& rows);

}  // namespace odp

#endif  // ODP_REPORT_HPP
