#include "odp/milp.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "odp/evaluate.hpp"

namespace odp {

ColumnLayout::ColumnLayout(int customers, int trucks, int carriers,
                           int scenarios)
    : valid_(true), n_(customers), t_(trucks), r_(carriers), q_(scenarios) {
  x_block_ = n_ * t_;
  y_block_ = n_ * r_;
  v_block_ = (n_ + 1) * (n_ + 1) * t_;
  s_block_ = n_ * t_;
  per_scenario_ = y_block_ + v_block_ + s_block_;
  total_ = x_block_ + t_ + per_scenario_ * q_;
}

VarRef ColumnLayout::decode(int column) const {
  if (!valid_ || column < 0 || column >= total_) {
    throw std::out_of_range("column " + std::to_string(column) +
                            " is outside the layout");
  }
  if (column < x_block_) {
    return {ColumnKind::kX, {column / t_, column % t_, -1, -1}};
  }
  if (column < x_block_ + t_) {
    return {ColumnKind::kW, {column - x_block_, -1, -1, -1}};
  }
  const int rel = column - x_block_ - t_;
  const int w = rel / per_scenario_;
  int k = rel % per_scenario_;
  if (k < y_block_) return {ColumnKind::kY, {k / r_, k % r_, w, -1}};
  k -= y_block_;
  if (k < v_block_) {
    const int u_count = n_ + 1;
    const int t = k / (u_count * u_count);
    const int rem = k % (u_count * u_count);
    return {ColumnKind::kV, {rem / u_count, rem % u_count, t, w}};
  }
  k -= v_block_;
  return {ColumnKind::kS, {k / t_, k % t_, w, -1}};
}

std::string ColumnLayout::name(int column) const {
  const VarRef ref = decode(column);
  const auto& i = ref.index;
  auto s = [](int v) { return std::to_string(v); };
  switch (ref.kind) {
    case ColumnKind::kX:
      return "X_" + s(i[0] + 1) + "_" + s(i[1]);
    case ColumnKind::kW:
      return "W_" + s(i[0]);
    case ColumnKind::kY:
      return "Y_" + s(i[0] + 1) + "_" + s(i[1]) + "_" + s(i[2]);
    case ColumnKind::kV:
      return "V_" + s(i[0]) + "_" + s(i[1]) + "_" + s(i[2]) + "_" + s(i[3]);
    case ColumnKind::kS:
      return "S_" + s(i[0] + 1) + "_" + s(i[1]) + "_" + s(i[2]);
  }
  return "?";
}

MilpModel build_model(const Instance& instance, const ScenarioSet& scenarios,
                      BuildOptions options) {
  check_compatible(instance, scenarios);
  const int n = instance.num_customers();
  const int trucks = instance.num_trucks();
  const int carriers = instance.num_carriers();
  const int q = static_cast<int>(scenarios.size());
  const int locations = n + 1;

  MilpModel model;
  model.layout = ColumnLayout(n, trucks, carriers, q);
  const ColumnLayout& L = model.layout;
  model.columns.resize(L.num_columns());

  for (int c = 0; c < n; ++c) {
    for (int t = 0; t < trucks; ++t) {
      model.columns[L.x(c, t)] = {instance.assignment_weight(), 0.0, 1.0,
                                  VarType::kBinary};
    }
  }
  for (int t = 0; t < trucks; ++t) {
    model.columns[L.w(t)] = {instance.truck(t).initial_cost, 0.0, 1.0,
                             VarType::kBinary};
  }
  for (int w = 0; w < q; ++w) {
    const double p = scenarios[w].probability;
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < carriers; ++r) {
        model.columns[L.y(c, r, w)] = {p * instance.charge(c, r), 0.0, 1.0,
                                       VarType::kBinary};
      }
    }
    for (int t = 0; t < trucks; ++t) {
      for (int u = 0; u < locations; ++u) {
        for (int v = 0; v < locations; ++v) {
          model.columns[L.v(u, v, t, w)] = {p * instance.routing_cost(u, v), 0.0,
                                            1.0, VarType::kBinary};
        }
      }
      for (int c = 0; c < n; ++c) {
        model.columns[L.s(c, t, w)] = {0.0, 0.0, static_cast<double>(n),
                                       VarType::kInteger};
      }
    }
  }

  auto add = [&](ConstraintFamily f, std::array<int, 4> index, RowSense sense,
                 double rhs, std::vector<Coefficient> coefficients) {
    model.rows.push_back({std::move(coefficients), sense, rhs, {f, index}});
  };

  // (3)
  for (int c = 0; c < n; ++c) {
    for (int w = 0; w < q; ++w) {
      std::vector<Coefficient> coefs;
      for (int t = 0; t < trucks; ++t) coefs.push_back({L.x(c, t), 1.0});
      for (int r = 0; r < carriers; ++r) coefs.push_back({L.y(c, r, w), 1.0});
      add(ConstraintFamily::kAssignment, {c + 1, w, -1, -1},
          RowSense::kGreaterEqual, scenarios[w].demand[c], std::move(coefs));
    }
  }
  // (4)
  for (int t = 0; t < trucks; ++t) {
    std::vector<Coefficient> coefs;
    for (int c = 0; c < n; ++c) coefs.push_back({L.x(c, t), instance.weight(c)});
    add(ConstraintFamily::kCapacity, {t, -1, -1, -1}, RowSense::kLessEqual,
        instance.truck(t).capacity_kg, std::move(coefs));
  }
  // (5)
  for (int t = 0; t < trucks; ++t) {
    std::vector<Coefficient> coefs;
    for (int c = 0; c < n; ++c) coefs.push_back({L.x(c, t), 1.0});
    coefs.push_back({L.w(t), -static_cast<double>(instance.big_m())});
    add(ConstraintFamily::kTruckUse, {t, -1, -1, -1}, RowSense::kLessEqual, 0.0,
        std::move(coefs));
  }
  // (6)
  for (int u = 0; u < locations; ++u) {
    for (int t = 0; t < trucks; ++t) {
      for (int w = 0; w < q; ++w) {
        add(ConstraintFamily::kNoSelfLoop, {u, t, w, -1}, RowSense::kEqual, 0.0,
            {{L.v(u, u, t, w), 1.0}});
      }
    }
  }
  // (7), (8)
  for (ConstraintFamily f :
       {ConstraintFamily::kDepotIn, ConstraintFamily::kDepotOut}) {
    for (int t = 0; t < trucks; ++t) {
      for (int w = 0; w < q; ++w) {
        std::vector<Coefficient> coefs;
        for (int u = 0; u < locations; ++u) {
          const int col = f == ConstraintFamily::kDepotIn ? L.v(u, 0, t, w)
                                                          : L.v(0, u, t, w);
          coefs.push_back({col, 1.0});
        }
        add(f, {t, w, -1, -1}, RowSense::kLessEqual, 1.0, std::move(coefs));
      }
    }
  }
  // (9), (10): D is a per-scenario constant, so X D is linear.
  for (ConstraintFamily f : {ConstraintFamily::kFlowIn, ConstraintFamily::kFlowOut}) {
    for (int c = 0; c < n; ++c) {
      const int loc = location_of(c);
      for (int t = 0; t < trucks; ++t) {
        for (int w = 0; w < q; ++w) {
          std::vector<Coefficient> coefs;
          for (int u = 0; u < locations; ++u) {
            const int col = f == ConstraintFamily::kFlowIn ? L.v(u, loc, t, w)
                                                           : L.v(loc, u, t, w);
            coefs.push_back({col, 1.0});
          }
          const int d = scenarios[w].demand[c];
          if (d != 0) coefs.push_back({L.x(c, t), -static_cast<double>(d)});
          add(f, {c + 1, t, w, -1}, RowSense::kEqual, 0.0, std::move(coefs));
        }
      }
    }
  }
  // (11)-(13)
  const std::array<ConstraintFamily, 3> limit_family = {
      ConstraintFamily::kLimitMorning, ConstraintFamily::kLimitAfternoon,
      ConstraintFamily::kLimitEvening};
  for (Window win : kAllWindows) {
    for (int t = 0; t < trucks; ++t) {
      for (int w = 0; w < q; ++w) {
        std::vector<Coefficient> coefs;
        for (int u = 0; u < locations; ++u) {
          for (int c : instance.window_members(win)) {
            const double k = instance.distance(u, location_of(c));
            if (k != 0.0) coefs.push_back({L.v(u, location_of(c), t, w), k});
          }
        }
        add(limit_family[static_cast<int>(win)], {t, w, -1, -1},
            RowSense::kLessEqual, instance.window_limits()[win],
            std::move(coefs));
      }
    }
  }
  // (14)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int t = 0; t < trucks; ++t) {
        for (int w = 0; w < q; ++w) {
          add(ConstraintFamily::kSubtour, {i + 1, j + 1, t, w},
              RowSense::kLessEqual, n - 1.0,
              {{L.s(i, t, w), 1.0},
               {L.s(j, t, w), -1.0},
               {L.v(location_of(i), location_of(j), t, w),
                static_cast<double>(n)}});
        }
      }
    }
  }
  // (15), (16): D_i S_i - S_j <= |block| (1 - D_i)
  auto order_rows = [&](ConstraintFamily f, const std::vector<int>& early,
                        const std::vector<int>& late) {
    const double block = static_cast<double>(early.size());
    for (int i : early) {
      for (int j : late) {
        for (int t = 0; t < trucks; ++t) {
          for (int w = 0; w < q; ++w) {
            const int d = scenarios[w].demand[i];
            std::vector<Coefficient> coefs;
            if (d != 0) coefs.push_back({L.s(i, t, w), static_cast<double>(d)});
            coefs.push_back({L.s(j, t, w), -1.0});
            add(f, {i + 1, j + 1, t, w}, RowSense::kLessEqual, block * (1 - d),
                std::move(coefs));
          }
        }
      }
    }
  };
  order_rows(ConstraintFamily::kMorningBeforeAfternoon,
             instance.window_members(Window::kMorning),
             instance.window_members(Window::kAfternoon));
  order_rows(ConstraintFamily::kAfternoonBeforeEvening,
             instance.window_members(Window::kAfternoon),
             instance.window_members(Window::kEvening));

  if (options.symmetry_breaking) {
    for (int t = 0; t + 1 < trucks; ++t) {
      if (!(instance.truck(t).capacity_kg == instance.truck(t + 1).capacity_kg &&
            instance.truck(t).initial_cost == instance.truck(t + 1).initial_cost)) {
        continue;
      }
      std::vector<Coefficient> coefs;
      for (int c = 0; c < n; ++c) {
        coefs.push_back({L.x(c, t), 1.0});
        coefs.push_back({L.x(c, t + 1), -1.0});
      }
      add(ConstraintFamily::kSymmetry, {t, t + 1, -1, -1},
          RowSense::kGreaterEqual, 0.0, std::move(coefs));
    }
  }
  return model;
}

std::string explain_row(const MilpModel& model, int row) {
  if (row < 0 || row >= model.num_rows()) {
    throw std::out_of_range("row " + std::to_string(row) + " out of range [0, " +
                            std::to_string(model.num_rows()) + ")");
  }
  const RowTag& tag = model.rows[row].tag;
  const auto& i = tag.index;
  auto s = [](int v) { return std::to_string(v); };
  const std::string eq = " (" + s(equation_number(tag.family)) + ")";
  switch (tag.family) {
    case ConstraintFamily::kAssignment:
      return "assignment" + eq + " for customer " + s(i[0]) + ", scenario " + s(i[1]);
    case ConstraintFamily::kCapacity:
      return "capacity" + eq + " for truck " + s(i[0]);
    case ConstraintFamily::kTruckUse:
      return "truck use" + eq + " for truck " + s(i[0]);
    case ConstraintFamily::kNoSelfLoop:
      return "no self loop" + eq + " at location " + s(i[0]) + ", truck " +
             s(i[1]) + ", scenario " + s(i[2]);
    case ConstraintFamily::kDepotIn:
      return "depot arrivals" + eq + " for truck " + s(i[0]) + ", scenario " + s(i[1]);
    case ConstraintFamily::kDepotOut:
      return "depot departures" + eq + " for truck " + s(i[0]) + ", scenario " +
             s(i[1]);
    case ConstraintFamily::kFlowIn:
      return "arrivals at customer " + s(i[0]) + eq + " for truck " + s(i[1]) +
             ", scenario " + s(i[2]);
    case ConstraintFamily::kFlowOut:
      return "departures from customer " + s(i[0]) + eq + " for truck " + s(i[1]) +
             ", scenario " + s(i[2]);
    case ConstraintFamily::kLimitMorning:
    case ConstraintFamily::kLimitAfternoon:
    case ConstraintFamily::kLimitEvening: {
      const char* window = tag.family == ConstraintFamily::kLimitMorning ? "morning"
                           : tag.family == ConstraintFamily::kLimitAfternoon
                               ? "afternoon"
                               : "evening";
      return std::string(window) + " distance limit" + eq + " for truck " +
             s(i[0]) + ", scenario " + s(i[1]);
    }
    case ConstraintFamily::kSubtour:
      return "MTZ subtour elimination" + eq + " for pair (i=" + s(i[0]) +
             ", j=" + s(i[1]) + "), truck " + s(i[2]) + ", scenario " + s(i[3]);
    case ConstraintFamily::kMorningBeforeAfternoon:
      return "morning customer " + s(i[0]) + " before afternoon customer " +
             s(i[1]) + eq + ", truck " + s(i[2]) + ", scenario " + s(i[3]);
    case ConstraintFamily::kAfternoonBeforeEvening:
      return "afternoon customer " + s(i[0]) + " before evening customer " +
             s(i[1]) + eq + ", truck " + s(i[2]) + ", scenario " + s(i[3]);
    case ConstraintFamily::kSymmetry:
      return "symmetry breaking between trucks " + s(i[0]) + " and " + s(i[1]);
    default:
      return std::string(family_name(tag.family)) + eq;
  }
}

namespace {

std::string format_number(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

std::string column_name(const MilpModel& model, int column) {
  if (model.layout.valid()) return model.layout.name(column);
  return "x" + std::to_string(column);
}

std::string row_name(const MilpModel& model, int row) {
  const RowTag& tag = model.rows[row].tag;
  if (!model.layout.valid()) return "r" + std::to_string(row);
  std::string name = tag.family == ConstraintFamily::kSymmetry
                         ? "sym"
                         : "c" + std::to_string(equation_number(tag.family));
  for (int v : tag.index) {
    if (v >= 0) name += "_" + std::to_string(v);
  }
  return name;
}

void append_terms(std::string& out, const MilpModel& model,
                  const std::vector<Coefficient>& terms) {
  int on_line = 0;
  bool first = true;
  for (const Coefficient& term : terms) {
    if (on_line == 8) {
      out += "\n   ";
      on_line = 0;
    }
    const double magnitude = std::abs(term.value);
    if (term.value < 0) {
      out += " - ";
    } else if (!first) {
      out += " + ";
    } else {
      out += " ";
    }
    if (magnitude != 1.0) out += format_number(magnitude) + " ";
    out += column_name(model, term.column);
    first = false;
    ++on_line;
  }
  if (terms.empty() && model.num_columns() > 0) {
    out += " 0 " + column_name(model, 0);
  }
}

}  // namespace

std::string write_lp(const MilpModel& model) {
  std::string out = "\\ delivery planning extensive form\nMinimize\n obj:";
  std::vector<Coefficient> objective;
  for (int j = 0; j < model.num_columns(); ++j) {
    if (model.columns[j].cost != 0.0) objective.push_back({j, model.columns[j].cost});
  }
  append_terms(out, model, objective);
  out += "\nSubject To\n";
  for (int k = 0; k < model.num_rows(); ++k) {
    const Row& row = model.rows[k];
    out += " " + row_name(model, k) + ":";
    append_terms(out, model, row.coefficients);
    switch (row.sense) {
      case RowSense::kLessEqual:
        out += " <= ";
        break;
      case RowSense::kEqual:
        out += " = ";
        break;
      case RowSense::kGreaterEqual:
        out += " >= ";
        break;
    }
    out += format_number(row.rhs) + "\n";
  }
  out += "Bounds\n";
  for (int j = 0; j < model.num_columns(); ++j) {
    const Column& col = model.columns[j];
    if (col.type == VarType::kBinary) continue;
    out += " " + format_number(col.lower) + " <= " + column_name(model, j) +
           " <= " + format_number(col.upper) + "\n";
  }
  std::string binaries;
  std::string generals;
  for (int j = 0; j < model.num_columns(); ++j) {
    if (model.columns[j].type == VarType::kBinary) {
      binaries += " " + column_name(model, j) + "\n";
    } else if (model.columns[j].type == VarType::kInteger) {
      generals += " " + column_name(model, j) + "\n";
    }
  }
  if (!binaries.empty()) out += "Binary\n" + binaries;
  if (!generals.empty()) out += "General\n" + generals;
  out += "End\n";
  return out;
}

double row_activity(const Row& row, std::span<const double> values) {
  double activity = 0.0;
  for (const Coefficient& term : row.coefficients) {
    activity += term.value * values[term.column];
  }
  return activity;
}

double objective_value(const MilpModel& model, std::span<const double> values) {
  double total = 0.0;
  for (int j = 0; j < model.num_columns(); ++j) {
    if (model.columns[j].cost != 0.0) total += model.columns[j].cost * values[j];
  }
  return total;
}

std::vector<int> violated_rows(const MilpModel& model,
                               std::span<const double> values,
                               double tolerance) {
  std::vector<int> out;
  for (int j = 0; j < model.num_columns(); ++j) {
    const Column& col = model.columns[j];
    if (values[j] < col.lower - tolerance || values[j] > col.upper + tolerance) {
      out.push_back(-1 - j);
    }
  }
  for (int k = 0; k < model.num_rows(); ++k) {
    const Row& row = model.rows[k];
    const double activity = row_activity(row, values);
    bool bad = false;
    switch (row.sense) {
      case RowSense::kLessEqual:
        bad = activity > row.rhs + tolerance;
        break;
      case RowSense::kGreaterEqual:
        bad = activity < row.rhs - tolerance;
        break;
      case RowSense::kEqual:
        bad = std::abs(activity - row.rhs) > tolerance;
        break;
    }
    if (bad) out.push_back(k);
  }
  return out;
}

std::vector<double> to_columns(const MilpModel& model, const Solution& solution) {
  const ColumnLayout& L = model.layout;
  if (!L.valid()) throw ValidationError("model has no instance layout");
  if (solution.x.rows() != static_cast<std::size_t>(L.customers()) ||
      solution.x.cols() != static_cast<std::size_t>(L.trucks()) ||
      solution.plans.size() != static_cast<std::size_t>(L.scenarios())) {
    throw ValidationError("solution does not match the model layout");
  }
  std::vector<double> values(L.num_columns(), 0.0);
  for (int c = 0; c < L.customers(); ++c) {
    for (int t = 0; t < L.trucks(); ++t) values[L.x(c, t)] = solution.x(c, t);
  }
  for (int t = 0; t < L.trucks(); ++t) values[L.w(t)] = solution.w[t];
  for (int w = 0; w < L.scenarios(); ++w) {
    const ScenarioPlan& plan = solution.plans[w];
    for (int c = 0; c < L.customers(); ++c) {
      for (int r = 0; r < L.carriers(); ++r) values[L.y(c, r, w)] = plan.y(c, r);
      for (int t = 0; t < L.trucks(); ++t) values[L.s(c, t, w)] = plan.s(c, t);
    }
    for (int t = 0; t < L.trucks(); ++t) {
      for (int u = 0; u < L.locations(); ++u) {
        for (int v = 0; v < L.locations(); ++v) {
          values[L.v(u, v, t, w)] = plan.v[t](u, v);
        }
      }
    }
  }
  return values;
}

Solution from_columns(const Instance& instance, const ScenarioSet& scenarios,
                      const MilpModel& model, std::span<const double> values) {
  const ColumnLayout& L = model.layout;
  if (!L.valid() || L.customers() != instance.num_customers() ||
      L.trucks() != instance.num_trucks() ||
      L.carriers() != instance.num_carriers() ||
      L.scenarios() != static_cast<int>(scenarios.size()) ||
      values.size() != static_cast<std::size_t>(L.num_columns())) {
    throw ValidationError("column vector does not match the instance layout");
  }
  auto as_int = [&](int column) {
    return static_cast<int>(std::lround(values[column]));
  };
  Solution solution = empty_solution(instance, scenarios);
  for (int c = 0; c < L.customers(); ++c) {
    for (int t = 0; t < L.trucks(); ++t) solution.x(c, t) = as_int(L.x(c, t));
  }
  for (int t = 0; t < L.trucks(); ++t) solution.w[t] = as_int(L.w(t));
  for (int w = 0; w < L.scenarios(); ++w) {
    ScenarioPlan& plan = solution.plans[w];
    for (int c = 0; c < L.customers(); ++c) {
      for (int r = 0; r < L.carriers(); ++r) plan.y(c, r) = as_int(L.y(c, r, w));
      for (int t = 0; t < L.trucks(); ++t) plan.s(c, t) = as_int(L.s(c, t, w));
    }
    for (int t = 0; t < L.trucks(); ++t) {
      for (int u = 0; u < L.locations(); ++u) {
        for (int v = 0; v < L.locations(); ++v) {
          plan.v[t](u, v) = as_int(L.v(u, v, t, w));
        }
      }
    }
  }
  solution.cost = cost_of(instance, scenarios, solution);
  return solution;
}

}  // namespace odp
