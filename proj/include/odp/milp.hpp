#ifndef ODP_MILP_HPP
#define ODP_MILP_HPP

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "odp/core.hpp"
#include "odp/family.hpp"

namespace odp {

enum class VarType { kContinuous, kBinary, kInteger };
enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct Column {
  double cost = 0.0;
  double lower = 0.0;
  double upper = 1.0;
  VarType type = VarType::kBinary;
};

struct Coefficient {
  int column = 0;
  double value = 0.0;
};

// Which family a row belongs to plus its index tuple. Customers are 1-based,
// trucks, carriers and scenarios 0-based, locations 0 = depot.
struct RowTag {
  ConstraintFamily family = ConstraintFamily::kAssignment;
  std::array<int, 4> index{-1, -1, -1, -1};
};

struct Row {
  std::vector<Coefficient> coefficients;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
  RowTag tag;
};

enum class ColumnKind { kX, kW, kY, kV, kS };

struct VarRef {
  ColumnKind kind = ColumnKind::kX;
  // X(c,t), W(t), Y(c,r,w), V(u,v,t,w), S(c,t,w); c is 0-based here.
  std::array<int, 4> index{-1, -1, -1, -1};
};

// Dense column numbering for the extensive form: X block, W block, then per
// scenario Y, V and S blocks.
class ColumnLayout {
 public:
  ColumnLayout() = default;
  ColumnLayout(int customers, int trucks, int carriers, int scenarios);

  bool valid() const { return valid_; }
  int customers() const { return n_; }
  int trucks() const { return t_; }
  int carriers() const { return r_; }
  int scenarios() const { return q_; }
  int locations() const { return n_ + 1; }
  int num_columns() const { return total_; }

  int x(int c, int t) const { return c * t_ + t; }
  int w(int t) const { return x_block_ + t; }
  int y(int c, int r, int w) const { return scenario_base(w) + c * r_ + r; }
  int v(int u, int v, int t, int w) const {
    return scenario_base(w) + y_block_ + (t * (n_ + 1) + u) * (n_ + 1) + v;
  }
  int s(int c, int t, int w) const {
    return scenario_base(w) + y_block_ + v_block_ + c * t_ + t;
  }

  VarRef decode(int column) const;
  std::string name(int column) const;

  bool operator==(const ColumnLayout&) const = default;

 private:
  int scenario_base(int w) const { return x_block_ + t_ + w * per_scenario_; }

  bool valid_ = false;
  int n_ = 0, t_ = 0, r_ = 0, q_ = 0;
  int x_block_ = 0, y_block_ = 0, v_block_ = 0, s_block_ = 0;
  int per_scenario_ = 0, total_ = 0;
};

// Minimization model over bounded columns. `layout` is set for models built
// from an instance and left invalid for hand-written ones.
struct MilpModel {
  std::vector<Column> columns;
  std::vector<Row> rows;
  ColumnLayout layout;

  int num_columns() const { return static_cast<int>(columns.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
};

struct BuildOptions {
  // Adds sum_i X(i,t) >= sum_i X(i,t+1) for consecutive identical trucks.
  bool symmetry_breaking = false;
};

// Extensive-form deterministic equivalent with one shared copy of X and W.
// Rows come in canonical order: family, then lexicographic index tuple.
MilpModel build_model(const Instance& instance, const ScenarioSet& scenarios,
                      BuildOptions options = {});

// e.g. "capacity (4) for truck 2". Throws std::out_of_range on a bad index.
std::string explain_row(const MilpModel& model, int row);

// CPLEX LP text; variables named X_i_t, W_t, Y_i_r_w, V_u_v_t_w, S_i_t_w.
std::string write_lp(const MilpModel& model);

double row_activity(const Row& row, std::span<const double> values);
double objective_value(const MilpModel& model, std::span<const double> values);

// Indices of rows violated by more than `tolerance`, plus columns outside
// their bounds reported as -1 - column.
std::vector<int> violated_rows(const MilpModel& model,
                               std::span<const double> values,
                               double tolerance = 1e-9);

// Column vector of a Solution for a model built from the same inputs.
std::vector<double> to_columns(const MilpModel& model, const Solution& solution);

// Solution from a column vector; integer columns are rounded to nearest and the
// cost breakdown is recomputed.
Solution from_columns(const Instance& instance, const ScenarioSet& scenarios,
                      const MilpModel& model, std::span<const double> values);

}  // namespace odp

#endif  // ODP_MILP_HPP
