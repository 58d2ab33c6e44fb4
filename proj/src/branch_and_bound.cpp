#include "odp/branch_and_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <set>
#include <stdexcept>

#include "odp/evaluate.hpp"

namespace odp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kOptimalGap = 1e-6;

struct NodeRecord {
  int parent = -1;
  int column = -1;  // branching column, -1 at the root
  double lower = 0.0;
  double upper = 0.0;
  double bound = -kInf;
  // For pseudo-cost updates: parent LP value and distance moved.
  double parent_objective = 0.0;
  double moved = 0.0;
  bool up = false;
};

double scaled(double value) { return std::max(1.0, std::abs(value)); }

bool is_integer_column(const Column& column) {
  return column.type != VarType::kContinuous;
}

class PseudoCosts {
 public:
  explicit PseudoCosts(int columns)
      : down_sum_(columns, 0.0), up_sum_(columns, 0.0),
        down_count_(columns, 0), up_count_(columns, 0) {}

  void update(int column, bool up, double gain_per_unit) {
    if (up) {
      up_sum_[column] += gain_per_unit;
      ++up_count_[column];
    } else {
      down_sum_[column] += gain_per_unit;
      ++down_count_[column];
    }
  }

  double score(int column, double fraction) const {
    const double down = estimate(column, false) * fraction;
    const double up = estimate(column, true) * (1.0 - fraction);
    return std::max(down, 1e-6) * std::max(up, 1e-6);
  }

 private:
  double estimate(int column, bool up) const {
    const auto& sums = up ? up_sum_ : down_sum_;
    const auto& counts = up ? up_count_ : down_count_;
    if (counts[column] > 0) return sums[column] / counts[column];
    double total = 0.0;
    int seen = 0;
    for (std::size_t j = 0; j < sums.size(); ++j) {
      if (counts[j] > 0) {
        total += sums[j] / counts[j];
        ++seen;
      }
    }
    return seen > 0 ? total / seen : 1.0;
  }

  std::vector<double> down_sum_, up_sum_;
  std::vector<int> down_count_, up_count_;
};

// Lower class branches first: truck use, assignments, then routing and
// carrier choices, then visit orders.
std::vector<int> branching_class(const MilpModel& model) {
  std::vector<int> cls(model.num_columns(), 0);
  for (int j = 0; j < model.num_columns(); ++j) {
    if (model.layout.valid() && model.layout.num_columns() == model.num_columns()) {
      switch (model.layout.decode(j).kind) {
        case ColumnKind::kW:
          cls[j] = 0;
          break;
        case ColumnKind::kX:
          cls[j] = 1;
          break;
        case ColumnKind::kY:
        case ColumnKind::kV:
          cls[j] = 2;
          break;
        case ColumnKind::kS:
          cls[j] = 3;
          break;
      }
    } else {
      cls[j] = model.columns[j].type == VarType::kBinary ? 0 : 1;
    }
  }
  return cls;
}

// LP copy with depot linking cuts: per truck and scenario, depot out-degree is
// at least the in-degree of every customer and depot in-degree at least its
// out-degree. Valid for integer points because (14) rules out cycles that miss
// the depot.
MilpModel with_depot_cuts(const MilpModel& model) {
  const ColumnLayout& layout = model.layout;
  if (!layout.valid() || layout.num_columns() != model.num_columns()) return model;
  MilpModel lp = model;
  const int locations = layout.locations();
  for (int w = 0; w < layout.scenarios(); ++w) {
    for (int t = 0; t < layout.trucks(); ++t) {
      for (int i = 1; i < locations; ++i) {
        Row out_row;
        Row in_row;
        for (int u = 0; u < locations; ++u) {
          if (u != i) {
            out_row.coefficients.push_back({layout.v(0, u, t, w), 1.0});
            in_row.coefficients.push_back({layout.v(u, 0, t, w), 1.0});
          }
          if (u != 0) {
            out_row.coefficients.push_back({layout.v(u, i, t, w), -1.0});
            in_row.coefficients.push_back({layout.v(i, u, t, w), -1.0});
          }
        }
        out_row.sense = in_row.sense = RowSense::kGreaterEqual;
        out_row.tag = {ConstraintFamily::kDepotOut, {i, t, w, -1}};
        in_row.tag = {ConstraintFamily::kDepotIn, {i, t, w, -1}};
        lp.rows.push_back(std::move(out_row));
        lp.rows.push_back(std::move(in_row));
      }
    }
  }
  return lp;
}

bool verify_point(const MilpModel& model, const std::vector<double>& point) {
  if (point.size() != static_cast<std::size_t>(model.num_columns())) return false;
  for (int j = 0; j < model.num_columns(); ++j) {
    if (!std::isfinite(point[j])) return false;
    if (is_integer_column(model.columns[j]) && point[j] != std::round(point[j])) {
      return false;
    }
  }
  return violated_rows(model, point, 1e-9).empty();
}

}  // namespace

void check_config(const SolveConfig& config) {
  if (!(config.gap_tolerance >= 0.0)) {
    throw ValidationError("gap_tolerance must be >= 0");
  }
  if (config.node_limit < 1) throw ValidationError("node_limit must be >= 1");
  if (config.time_limit_seconds && !(*config.time_limit_seconds >= 0.0)) {
    throw ValidationError("time_limit must be >= 0");
  }
  if (!(config.lp_tolerance > 0.0) || !(config.integrality_tolerance > 0.0)) {
    throw ValidationError("tolerances must be positive");
  }
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kGapLimit:
      return "gap_limit";
    case SolveStatus::kNodeLimit:
      return "node_limit";
    case SolveStatus::kTimeLimit:
      return "time_limit";
    case SolveStatus::kInfeasible:
      return "infeasible";
  }
  return "unknown";
}

double SolveReport::gap() const {
  if (!incumbent) return kInf;
  return std::max(0.0, upper_bound - lower_bound) / scaled(upper_bound);
}

SolveReport branch_and_bound(const MilpModel& model, const SolveConfig& config) {
  check_config(config);
  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
        .count();
  };

  SolveReport report;
  const int n = model.num_columns();

  double upper = kInf;
  std::vector<double> best;
  auto gap_slack = [&] { return config.gap_tolerance * scaled(upper); };

  std::vector<BoundSample>* trace = config.record_trace ? &report.trace : nullptr;
  double last_lower = -kInf;
  double last_upper = kInf;
  auto sample = [&](double lower) {
    if (!trace) return;
    if (lower == last_lower && upper == last_upper) return;
    last_lower = lower;
    last_upper = upper;
    trace->push_back({report.nodes_explored, lower, upper});
  };

  if (config.initial_solution && verify_point(model, *config.initial_solution)) {
    best = *config.initial_solution;
    upper = objective_value(model, best);
  }

  if (n == 0) {
    std::vector<double> empty;
    report.nodes_explored = 1;
    if (violated_rows(model, empty, 1e-9).empty()) {
      report.status = SolveStatus::kOptimal;
      report.incumbent = empty;
      report.lower_bound = report.upper_bound = 0.0;
    } else {
      report.status = SolveStatus::kInfeasible;
      report.lower_bound = report.upper_bound = kInf;
    }
    report.wall_seconds = elapsed();
    return report;
  }

  LpOptions lp_options;
  lp_options.feasibility_tolerance = config.lp_tolerance;
  const MilpModel lp_model = with_depot_cuts(model);
  auto lp = std::make_unique<DualSimplex>(lp_model, lp_options);

  std::vector<double> root_lower(n), root_upper(n);
  for (int j = 0; j < n; ++j) {
    root_lower[j] = model.columns[j].lower;
    root_upper[j] = model.columns[j].upper;
  }
  std::vector<double> lower = root_lower, upper_bounds = root_upper;
  std::vector<int> stamp(n, -1);
  std::vector<int> touched;

  auto load_node = [&](int id, const std::vector<NodeRecord>& nodes) {
    for (int j : touched) {
      lower[j] = root_lower[j];
      upper_bounds[j] = root_upper[j];
    }
    touched.clear();
    for (int k = id; k >= 0; k = nodes[k].parent) {
      const NodeRecord& rec = nodes[k];
      if (rec.column < 0 || stamp[rec.column] == id) continue;
      stamp[rec.column] = id;
      lower[rec.column] = rec.lower;
      upper_bounds[rec.column] = rec.upper;
      touched.push_back(rec.column);
    }
  };

  std::vector<NodeRecord> nodes;
  nodes.push_back({});
  std::set<std::pair<double, int>> open;  // (bound, -id): newest first on ties
  PseudoCosts pseudo(n);
  const std::vector<int> priority = branching_class(model);

  double pruned_lower = kInf;  // smallest bound discarded by the gap test
  double unresolved = kInf;    // bounds of nodes lost to LP failures
  bool limit_hit = false;
  SolveStatus limit_status = SolveStatus::kNodeLimit;
  int next = 0;

  auto frontier_lower = [&] {
    double value = std::min({pruned_lower, unresolved, upper});
    if (!open.empty()) value = std::min(value, open.begin()->first);
    if (next >= 0) value = std::min(value, nodes[next].bound);
    return value;
  };

  while (true) {
    if (next < 0) {
      if (open.empty()) break;
      auto it = open.begin();
      next = -it->second;
      open.erase(it);
      if (nodes[next].bound >= upper - gap_slack()) {
        // Everything left is within the gap of the incumbent.
        pruned_lower = std::min(pruned_lower, nodes[next].bound);
        for (const auto& [bound, id] : open) {
          pruned_lower = std::min(pruned_lower, bound);
        }
        open.clear();
        next = -1;
        break;
      }
    }
    if (report.nodes_explored >= config.node_limit) {
      limit_hit = true;
      limit_status = SolveStatus::kNodeLimit;
      break;
    }
    if (config.time_limit_seconds && elapsed() >= *config.time_limit_seconds) {
      limit_hit = true;
      limit_status = SolveStatus::kTimeLimit;
      break;
    }

    const int id = next;
    load_node(id, nodes);
    lp->set_bounds(lower, upper_bounds);
    LpResult lp_result = lp->solve();
    report.lp_iterations += lp_result.iterations;
    if (lp_result.status == LpStatus::kNumericalFailure ||
        lp_result.status == LpStatus::kIterationLimit) {
      lp = std::make_unique<DualSimplex>(lp_model, lp_options);
      lp->set_bounds(lower, upper_bounds);
      lp_result = lp->solve();
      report.lp_iterations += lp_result.iterations;
    }
    ++report.nodes_explored;
    next = -1;

    if (lp_result.status == LpStatus::kInfeasible) {
      sample(frontier_lower());
      continue;
    }
    if (lp_result.status != LpStatus::kOptimal) {
      unresolved = std::min(unresolved, nodes[id].bound);
      sample(frontier_lower());
      continue;
    }

    const NodeRecord& node = nodes[id];
    if (node.column >= 0 && node.moved > 0.0) {
      const double gain =
          std::max(0.0, lp_result.objective - node.parent_objective) / node.moved;
      pseudo.update(node.column, node.up, gain);
    }
    const double bound = std::max(node.bound, lp_result.objective);
    if (bound >= upper - gap_slack()) {
      pruned_lower = std::min(pruned_lower, bound);
      sample(frontier_lower());
      continue;
    }

    const std::vector<double>& values = lp_result.values;
    int branch = -1;
    int branch_class = 0;
    double best_score = -1.0;
    for (int j = 0; j < n; ++j) {
      if (!is_integer_column(model.columns[j])) continue;
      const double f = values[j] - std::floor(values[j]);
      const double distance = std::min(f, 1.0 - f);
      if (distance <= config.integrality_tolerance) continue;
      const double score = config.branching == Branching::kPseudoCost
                               ? pseudo.score(j, f)
                               : distance;
      if (branch < 0 || priority[j] < branch_class ||
          (priority[j] == branch_class && score > best_score)) {
        best_score = score;
        branch = j;
        branch_class = priority[j];
      }
    }

    if (branch < 0) {
      std::vector<double> point = values;
      for (int j = 0; j < n; ++j) {
        if (is_integer_column(model.columns[j])) point[j] = std::round(point[j]);
      }
      if (violated_rows(model, point, 1e-9).empty()) {
        const double value = objective_value(model, point);
        if (value < upper) {
          upper = value;
          best = std::move(point);
        }
      } else {
        unresolved = std::min(unresolved, bound);
      }
      sample(frontier_lower());
      continue;
    }

    const double v = values[branch];
    const double down_upper = std::floor(v);
    const double up_lower = std::ceil(v);
    NodeRecord down{id, branch, lower[branch], down_upper, bound,
                    lp_result.objective, v - down_upper, false};
    NodeRecord up{id, branch, up_lower, upper_bounds[branch], bound,
                  lp_result.objective, up_lower - v, true};
    const bool prefer_up = v - down_upper >= 0.5;
    const int down_id = static_cast<int>(nodes.size());
    nodes.push_back(down);
    const int up_id = static_cast<int>(nodes.size());
    nodes.push_back(up);
    // Plunge depth-first until an incumbent exists, and afterwards while the
    // node stays in the better half of the current gap.
    const double best_open = open.empty() ? bound : std::min(bound, open.begin()->first);
    if (!std::isfinite(upper) || bound - best_open <= 0.5 * (upper - best_open)) {
      next = prefer_up ? up_id : down_id;
      const int other = prefer_up ? down_id : up_id;
      open.insert({bound, -other});
    } else {
      open.insert({bound, -down_id});
      open.insert({bound, -up_id});
    }
    sample(frontier_lower());
  }

  const double final_lower = frontier_lower();
  report.lower_bound = final_lower;
  report.upper_bound = upper;
  if (std::isfinite(upper)) report.incumbent = best;

  if (limit_hit) {
    report.status = limit_status;
  } else if (!std::isfinite(upper)) {
    report.status =
        std::isfinite(unresolved) ? SolveStatus::kGapLimit : SolveStatus::kInfeasible;
    if (report.status == SolveStatus::kInfeasible) report.lower_bound = kInf;
  } else if (upper - final_lower <= kOptimalGap * scaled(upper)) {
    report.status = SolveStatus::kOptimal;
  } else {
    report.status = SolveStatus::kGapLimit;
  }
  if (report.incumbent) {
    report.lower_bound = std::min(report.lower_bound, report.upper_bound);
  }
  sample(report.lower_bound);
  report.wall_seconds = elapsed();
  return report;
}

ExactResult solve_exact(const Instance& instance, const ScenarioSet& scenarios,
                        const SolveConfig& config, BuildOptions build,
                        const Solution* start) {
  const MilpModel model = build_model(instance, scenarios, build);
  SolveConfig effective = config;
  if (start && !effective.initial_solution) {
    effective.initial_solution = to_columns(model, *start);
  }
  ExactResult result;
  result.report = branch_and_bound(model, effective);
  if (result.report.incumbent) {
    Solution solution = from_columns(instance, scenarios, model, *result.report.incumbent);
    const ValidationReport check = validate(instance, scenarios, solution);
    if (!check.ok()) {
      throw std::logic_error("incumbent failed validation: " +
                             check.violations.front().message);
    }
    result.solution = std::move(solution);
  }
  return result;
}

}  // namespace odp
