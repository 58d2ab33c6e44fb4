#ifndef ODP_LP_HPP
#define ODP_LP_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "odp/milp.hpp"

namespace odp {

struct LpOptions {
  double feasibility_tolerance = 1e-7;
  double optimality_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  std::int64_t iteration_limit = 50'000'000;
  // Pivots between tableau rebuilds from the original rows.
  std::int64_t refactor_interval = 20'000;
  // Relative cost shift applied to nonbasic columns during the dual phase.
  double perturbation = 1e-7;
};

enum class LpStatus { kOptimal, kInfeasible, kIterationLimit, kNumericalFailure };

const char* to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::kNumericalFailure;
  double objective = 0.0;
  std::vector<double> values;  // structural columns
  std::vector<int> basis;      // basic variable per row; >= num_columns are slacks
  std::int64_t iterations = 0;
};

struct BoundChange {
  int column = 0;
  double lower = 0.0;
  double upper = 0.0;
};

// Bounded-variable dual simplex over the continuous relaxation of a
// MilpModel. Every column is boxed and row slacks get implied finite ranges,
// so any basis can be made dual feasible by placing nonbasics at the bound
// matching their reduced-cost sign. The solver keeps its basis between calls:
// after set_bounds() the next solve() restarts from the previous optimum.
class DualSimplex {
 public:
  explicit DualSimplex(const MilpModel& model, LpOptions options = {});

  // Structural bounds; must lie within the model's column bounds.
  void set_bounds(std::span<const double> lower, std::span<const double> upper);

  LpResult solve();

  std::int64_t total_iterations() const { return total_iterations_; }
  int num_rows() const { return m_; }
  int num_columns() const { return n_; }

 private:
  double& tab(int i, int j) { return tab_[static_cast<std::size_t>(i) * total_ + j]; }
  double tab(int i, int j) const {
    return tab_[static_cast<std::size_t>(i) * total_ + j];
  }

  void load_original();
  int choose_leaving(bool bland) const;
  int choose_entering(int r, bool to_lower, bool bland) const;
  void pivot_tableau(int r, int q);
  void update_weight(int i);
  void pivot(int r, int q, bool to_lower);
  void move_nonbasic(int j, double value);
  void place_nonbasics();
  void recompute_primal();
  void recompute_duals();
  double max_row_residual() const;
  void refactor();
  double shift_size(int j) const;
  void shift_cost(int j);
  void perturb_costs();
  LpStatus dual_phase(std::int64_t& iterations);
  bool primal_cleanup(std::int64_t& iterations);

  const MilpModel& model_;
  LpOptions opt_;
  int m_ = 0;
  int n_ = 0;
  int total_ = 0;

  std::vector<std::vector<Coefficient>> rows_;  // <= / = form
  std::vector<double> rhs_;

  std::vector<double> tab_;
  std::vector<double> beta_;
  std::vector<double> weight_;
  std::vector<double> cost_;
  std::vector<double> work_cost_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> d_;
  std::vector<double> x_;
  std::vector<int> basic_;
  std::vector<int> where_;
  std::vector<char> at_upper_;
  std::vector<int> scratch_;

  std::int64_t total_iterations_ = 0;
  std::int64_t since_refactor_ = 0;
};

// One-shot relaxation with optional bound overrides.
LpResult solve_lp_relaxation(const MilpModel& model,
                             std::span<const BoundChange> changes = {},
                             LpOptions options = {});

}  // namespace odp

#endif  // ODP_LP_HPP
