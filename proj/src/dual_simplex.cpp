#include "odp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace odp {

namespace {

constexpr double kDropTolerance = 1e-13;

}  // namespace

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kIterationLimit:
      return "iteration_limit";
    case LpStatus::kNumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

DualSimplex::DualSimplex(const MilpModel& model, LpOptions options)
    : model_(model), opt_(options) {
  m_ = model.num_rows();
  n_ = model.num_columns();
  total_ = n_ + m_;

  cost_.assign(total_, 0.0);
  lower_.assign(total_, 0.0);
  upper_.assign(total_, 0.0);
  for (int j = 0; j < n_; ++j) {
    const Column& col = model.columns[j];
    if (!std::isfinite(col.lower) || !std::isfinite(col.upper) ||
        col.lower > col.upper) {
      throw ValidationError("column " + std::to_string(j) +
                            " needs finite bounds lower <= upper");
    }
    cost_[j] = col.cost;
    lower_[j] = col.lower;
    upper_[j] = col.upper;
  }

  rows_.resize(m_);
  rhs_.resize(m_);
  for (int i = 0; i < m_; ++i) {
    const Row& row = model.rows[i];
    const double sign = row.sense == RowSense::kGreaterEqual ? -1.0 : 1.0;
    for (const Coefficient& term : row.coefficients) {
      if (term.column < 0 || term.column >= n_) {
        throw ValidationError("row " + std::to_string(i) +
                              " references an unknown column");
      }
      rows_[i].push_back({term.column, sign * term.value});
    }
    rhs_[i] = sign * row.rhs;
    // Slack s = rhs - a x is boxed by the activity range over the column box.
    double min_activity = 0.0;
    for (const Coefficient& term : rows_[i]) {
      min_activity += std::min(term.value * lower_[term.column],
                               term.value * upper_[term.column]);
    }
    const int slack = n_ + i;
    lower_[slack] = 0.0;
    upper_[slack] = row.sense == RowSense::kEqual
                        ? 0.0
                        : std::max(0.0, rhs_[i] - min_activity);
  }

  basic_.resize(m_);
  where_.assign(total_, -1);
  at_upper_.assign(total_, 0);
  d_.assign(total_, 0.0);
  x_.assign(total_, 0.0);
  load_original();
  for (int i = 0; i < m_; ++i) {
    basic_[i] = n_ + i;
    where_[n_ + i] = i;
  }
  work_cost_ = cost_;
  d_ = cost_;
  place_nonbasics();
  recompute_primal();
}

void DualSimplex::load_original() {
  weight_.assign(m_, 1.0);
  tab_.assign(static_cast<std::size_t>(m_) * total_, 0.0);
  beta_ = rhs_;
  for (int i = 0; i < m_; ++i) {
    for (const Coefficient& term : rows_[i]) tab(i, term.column) += term.value;
    tab(i, n_ + i) = 1.0;
  }
}

void DualSimplex::place_nonbasics() {
  for (int j = 0; j < total_; ++j) {
    if (where_[j] >= 0) continue;
    if (d_[j] > opt_.optimality_tolerance) {
      at_upper_[j] = 0;
    } else if (d_[j] < -opt_.optimality_tolerance) {
      at_upper_[j] = 1;
    }
    x_[j] = at_upper_[j] ? upper_[j] : lower_[j];
  }
}

void DualSimplex::recompute_primal() {
  for (int i = 0; i < m_; ++i) x_[basic_[i]] = beta_[i];
  for (int j = 0; j < total_; ++j) {
    if (where_[j] >= 0 || x_[j] == 0.0) continue;
    const double value = x_[j];
    for (int i = 0; i < m_; ++i) {
      const double a = tab(i, j);
      if (a != 0.0) x_[basic_[i]] -= a * value;
    }
  }
}

void DualSimplex::recompute_duals() {
  d_ = work_cost_;
  for (int i = 0; i < m_; ++i) {
    const double cb = work_cost_[basic_[i]];
    if (cb == 0.0) continue;
    const double* row = &tab_[static_cast<std::size_t>(i) * total_];
    for (int j = 0; j < total_; ++j) {
      if (row[j] != 0.0) d_[j] -= cb * row[j];
    }
  }
  for (int i = 0; i < m_; ++i) d_[basic_[i]] = 0.0;
}

void DualSimplex::move_nonbasic(int j, double value) {
  const double delta = value - x_[j];
  if (delta == 0.0) return;
  for (int i = 0; i < m_; ++i) {
    const double a = tab(i, j);
    if (a != 0.0) x_[basic_[i]] -= a * delta;
  }
  x_[j] = value;
}

void DualSimplex::set_bounds(std::span<const double> lower,
                             std::span<const double> upper) {
  if (lower.size() != static_cast<std::size_t>(n_) ||
      upper.size() != static_cast<std::size_t>(n_)) {
    throw ValidationError("bound vectors must cover every column");
  }
  for (int j = 0; j < n_; ++j) {
    if (lower[j] == lower_[j] && upper[j] == upper_[j]) continue;
    lower_[j] = lower[j];
    upper_[j] = upper[j];
    if (where_[j] >= 0) continue;
    if (d_[j] > 0.0) {
      at_upper_[j] = 0;
    } else if (d_[j] < 0.0) {
      at_upper_[j] = 1;
    }
    move_nonbasic(j, at_upper_[j] ? upper_[j] : lower_[j]);
  }
}

int DualSimplex::choose_leaving(bool bland) const {
  const double tol = opt_.feasibility_tolerance;
  int best_row = -1;
  double best = 0.0;
  for (int i = 0; i < m_; ++i) {
    const int v = basic_[i];
    double infeasibility = 0.0;
    if (x_[v] < lower_[v] - tol) {
      infeasibility = lower_[v] - x_[v];
    } else if (x_[v] > upper_[v] + tol) {
      infeasibility = x_[v] - upper_[v];
    } else {
      continue;
    }
    if (bland) {
      if (best_row < 0 || v < basic_[best_row]) best_row = i;
    } else if (infeasibility * infeasibility > best * weight_[i]) {
      // Dual steepest edge: weight_ holds ||row i of B^-1||^2.
      best = infeasibility * infeasibility / weight_[i];
      best_row = i;
    }
  }
  return best_row;
}

int DualSimplex::choose_entering(int r, bool to_lower, bool bland) const {
  const double* row = &tab_[static_cast<std::size_t>(r) * total_];
  const double ptol = opt_.pivot_tolerance;
  const double dtol = opt_.optimality_tolerance;

  // x_B(r) = beta - sum a_j x_j. Raising x_B(r) needs a_j < 0 for a column
  // that can increase (at lower) or a_j > 0 for one that can decrease.
  auto eligible = [&](int j, double a) {
    if (where_[j] >= 0 || lower_[j] == upper_[j] || std::abs(a) <= ptol) {
      return false;
    }
    const bool increases = !at_upper_[j];
    return to_lower ? (increases ? a < 0.0 : a > 0.0)
                    : (increases ? a > 0.0 : a < 0.0);
  };
  auto reduced = [&](int j) {
    return at_upper_[j] ? std::max(0.0, -d_[j]) : std::max(0.0, d_[j]);
  };

  if (bland) {
    int best = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int j = 0; j < total_; ++j) {
      const double a = row[j];
      if (!eligible(j, a)) continue;
      const double ratio = reduced(j) / std::abs(a);
      if (ratio < best_ratio - 1e-12) {
        best_ratio = ratio;
        best = j;
      }
    }
    return best;
  }

  // Harris two-pass ratio test: relaxed bound first, then the largest pivot
  // among candidates within it.
  double bound = std::numeric_limits<double>::infinity();
  for (int j = 0; j < total_; ++j) {
    const double a = row[j];
    if (!eligible(j, a)) continue;
    bound = std::min(bound, (reduced(j) + dtol) / std::abs(a));
  }
  if (!std::isfinite(bound)) return -1;
  int best = -1;
  double best_pivot = 0.0;
  for (int j = 0; j < total_; ++j) {
    const double a = row[j];
    if (!eligible(j, a)) continue;
    if (reduced(j) / std::abs(a) <= bound && std::abs(a) > best_pivot) {
      best_pivot = std::abs(a);
      best = j;
    }
  }
  return best;
}

void DualSimplex::pivot_tableau(int r, int q) {
  double* prow = &tab_[static_cast<std::size_t>(r) * total_];
  const double inv = 1.0 / prow[q];
  scratch_.clear();
  for (int j = 0; j < total_; ++j) {
    if (prow[j] == 0.0) continue;
    prow[j] *= inv;
    if (std::abs(prow[j]) < kDropTolerance) {
      prow[j] = 0.0;
      continue;
    }
    scratch_.push_back(j);
  }
  prow[q] = 1.0;
  beta_[r] *= inv;
  for (int i = 0; i < m_; ++i) {
    if (i == r) continue;
    double* row = &tab_[static_cast<std::size_t>(i) * total_];
    const double f = row[q];
    if (f == 0.0) continue;
    for (int j : scratch_) {
      double v = row[j] - f * prow[j];
      row[j] = std::abs(v) < kDropTolerance ? 0.0 : v;
    }
    row[q] = 0.0;
    beta_[i] -= f * beta_[r];
    update_weight(i);
  }
  update_weight(r);
}

void DualSimplex::update_weight(int i) {
  const double* inverse = &tab_[static_cast<std::size_t>(i) * total_ + n_];
  double sum = 0.0;
  for (int k = 0; k < m_; ++k) sum += inverse[k] * inverse[k];
  weight_[i] = std::max(sum, 1e-12);
}

void DualSimplex::pivot(int r, int q, bool to_lower) {
  const int leaving = basic_[r];
  const double* prow = &tab_[static_cast<std::size_t>(r) * total_];
  const double alpha = prow[q];
  const double target = to_lower ? lower_[leaving] : upper_[leaving];

  const double delta = (x_[leaving] - target) / alpha;
  for (int i = 0; i < m_; ++i) {
    const double a = tab(i, q);
    if (a != 0.0) x_[basic_[i]] -= a * delta;
  }
  x_[q] += delta;
  x_[leaving] = target;

  const double theta = d_[q] / alpha;
  if (theta != 0.0) {
    for (int j = 0; j < total_; ++j) {
      if (prow[j] != 0.0) d_[j] -= theta * prow[j];
    }
  }
  d_[q] = 0.0;
  d_[leaving] = -theta;

  pivot_tableau(r, q);
  where_[leaving] = -1;
  at_upper_[leaving] = to_lower ? 0 : 1;
  basic_[r] = q;
  where_[q] = r;
}

double DualSimplex::max_row_residual() const {
  double worst = 0.0;
  for (int i = 0; i < m_; ++i) {
    double activity = x_[n_ + i];
    for (const Coefficient& term : rows_[i]) activity += term.value * x_[term.column];
    worst = std::max(worst, std::abs(activity - rhs_[i]) / (1.0 + std::abs(rhs_[i])));
  }
  return worst;
}

void DualSimplex::refactor() {
  std::vector<char> in_target(total_, 0);
  std::vector<int> structurals;
  for (int i = 0; i < m_; ++i) {
    in_target[basic_[i]] = 1;
    if (basic_[i] < n_) structurals.push_back(basic_[i]);
  }
  std::sort(structurals.begin(), structurals.end());

  load_original();
  std::vector<int> row_basic(m_);
  for (int i = 0; i < m_; ++i) row_basic[i] = n_ + i;
  for (int j : structurals) {
    int best_row = -1;
    double best = 1e-9;
    for (int i = 0; i < m_; ++i) {
      if (in_target[row_basic[i]] && row_basic[i] >= n_) continue;
      if (row_basic[i] < n_) continue;
      const double a = std::abs(tab(i, j));
      if (a > best) {
        best = a;
        best_row = i;
      }
    }
    if (best_row < 0) continue;  // singular: j drops out of the basis
    pivot_tableau(best_row, j);
    row_basic[best_row] = j;
  }

  std::fill(where_.begin(), where_.end(), -1);
  basic_ = row_basic;
  for (int i = 0; i < m_; ++i) where_[basic_[i]] = i;
  recompute_duals();
  place_nonbasics();
  recompute_primal();
  since_refactor_ = 0;
}

double DualSimplex::shift_size(int j) const {
  // Deterministic pseudo-random magnitude in [1, 2).
  const std::uint64_t h = (static_cast<std::uint64_t>(j) + 1) * 0x9E3779B97F4A7C15ULL;
  const double u = 1.0 + static_cast<double>(h >> 11) * 0x1.0p-53;
  return opt_.perturbation * (1.0 + std::abs(cost_[j])) * u;
}

// Moves d_j at least shift_size(j) onto the dual feasible side of its bound by
// changing the working cost of nonbasic column j.
void DualSimplex::shift_cost(int j) {
  if (opt_.perturbation <= 0.0 || where_[j] >= 0 || lower_[j] == upper_[j]) return;
  const double eps = shift_size(j);
  const double target = at_upper_[j] ? std::min(d_[j], -eps) : std::max(d_[j], eps);
  work_cost_[j] += target - d_[j];
  d_[j] = target;
}

void DualSimplex::perturb_costs() {
  work_cost_ = cost_;
  for (int j = 0; j < total_; ++j) {
    if (where_[j] >= 0 || lower_[j] == upper_[j]) continue;
    const double eps = opt_.perturbation > 0.0 ? shift_size(j) : 0.0;
    work_cost_[j] += at_upper_[j] ? -eps : eps;
    d_[j] += at_upper_[j] ? -eps : eps;
  }
}

LpStatus DualSimplex::dual_phase(std::int64_t& iterations) {
  const std::int64_t stall_limit = std::max<std::int64_t>(500, m_);
  std::int64_t degenerate_run = 0;
  int verify_refactors = 0;
  bool infeasible_checked = false;

  while (true) {
    if (iterations >= opt_.iteration_limit) return LpStatus::kIterationLimit;
    const bool bland = degenerate_run > stall_limit;
    const int r = choose_leaving(bland);
    if (r < 0) {
      // Candidate optimum: rebuild duals and primals from the tableau and
      // check the original rows before accepting.
      recompute_duals();
      bool flipped = false;
      for (int j = 0; j < total_; ++j) {
        if (where_[j] >= 0 || lower_[j] == upper_[j]) continue;
        if ((!at_upper_[j] && d_[j] < -opt_.feasibility_tolerance) ||
            (at_upper_[j] && d_[j] > opt_.feasibility_tolerance)) {
          at_upper_[j] = !at_upper_[j];
          flipped = true;
        }
      }
      if (flipped) place_nonbasics();
      recompute_primal();
      if (max_row_residual() > opt_.feasibility_tolerance) {
        if (verify_refactors++ >= 2) return LpStatus::kNumericalFailure;
        refactor();
        continue;
      }
      if (choose_leaving(false) >= 0) continue;
      return LpStatus::kOptimal;
    }
    const int leaving = basic_[r];
    const bool to_lower = x_[leaving] < lower_[leaving];
    const int q = choose_entering(r, to_lower, bland);
    if (q < 0) {
      if (!infeasible_checked && since_refactor_ > 0) {
        infeasible_checked = true;
        refactor();
        continue;
      }
      return LpStatus::kInfeasible;
    }
    const double gain =
        std::abs(d_[q] / tab(r, q)) *
        std::abs(x_[leaving] - (to_lower ? lower_[leaving] : upper_[leaving]));
    pivot(r, q, to_lower);
    for (int j : scratch_) shift_cost(j);  // pivot-row columns incl. leaving
    ++iterations;
    ++since_refactor_;
    degenerate_run = gain > 1e-12 ? 0 : degenerate_run + 1;
    if (since_refactor_ >= opt_.refactor_interval) refactor();
  }
}

// Primal simplex with Bland's rule from a primal feasible basis; removes the
// dual infeasibilities left after dropping the cost perturbation.
bool DualSimplex::primal_cleanup(std::int64_t& iterations) {
  const double dtol = opt_.optimality_tolerance;
  const double ptol = opt_.pivot_tolerance;
  while (true) {
    if (iterations >= opt_.iteration_limit) return false;
    int q = -1;
    for (int j = 0; j < total_; ++j) {
      if (where_[j] >= 0 || lower_[j] == upper_[j]) continue;
      if ((!at_upper_[j] && d_[j] < -dtol) || (at_upper_[j] && d_[j] > dtol)) {
        q = j;
        break;
      }
    }
    if (q < 0) return true;
    const double dir = at_upper_[q] ? -1.0 : 1.0;
    double step = upper_[q] - lower_[q];
    int row = -1;
    bool row_to_lower = false;
    for (int i = 0; i < m_; ++i) {
      const double a = tab(i, q);
      if (std::abs(a) <= ptol) continue;
      const int b = basic_[i];
      const double rate = -a * dir;  // change of x_b per unit step
      const double room = rate < 0.0 ? (x_[b] - lower_[b]) / -rate
                                     : (upper_[b] - x_[b]) / rate;
      const double limit = std::max(0.0, room);
      if (limit < step || (limit == step && row >= 0 && b < basic_[row])) {
        step = limit;
        row = i;
        row_to_lower = rate < 0.0;
      }
    }
    ++iterations;
    if (row < 0) {
      at_upper_[q] = !at_upper_[q];
      move_nonbasic(q, at_upper_[q] ? upper_[q] : lower_[q]);
      continue;
    }
    pivot(row, q, row_to_lower);
    ++since_refactor_;
  }
}

LpResult DualSimplex::solve() {
  LpResult result;
  std::int64_t iterations = 0;
  perturb_costs();
  LpStatus status = dual_phase(iterations);
  for (int round = 0; status == LpStatus::kOptimal; ++round) {
    work_cost_ = cost_;
    recompute_duals();
    if (!primal_cleanup(iterations)) {
      status = LpStatus::kIterationLimit;
      break;
    }
    recompute_primal();
    if (choose_leaving(false) < 0 &&
        max_row_residual() <= opt_.feasibility_tolerance) {
      break;
    }
    if (round >= 2) {
      status = LpStatus::kNumericalFailure;
      break;
    }
    refactor();
    status = dual_phase(iterations);
  }
  work_cost_ = cost_;

  total_iterations_ += iterations;
  result.status = status;
  result.iterations = iterations;
  result.basis = basic_;
  result.values.assign(x_.begin(), x_.begin() + n_);
  if (result.status == LpStatus::kOptimal) {
    // Snap to bounds within tolerance so integrality tests see exact values.
    for (int j = 0; j < n_; ++j) {
      double& v = result.values[j];
      if (std::abs(v - lower_[j]) <= opt_.feasibility_tolerance) v = lower_[j];
      if (std::abs(v - upper_[j]) <= opt_.feasibility_tolerance) v = upper_[j];
    }
    double objective = 0.0;
    for (int j = 0; j < n_; ++j) objective += cost_[j] * x_[j];
    result.objective = objective;
  }
  return result;
}

LpResult solve_lp_relaxation(const MilpModel& model,
                             std::span<const BoundChange> changes,
                             LpOptions options) {
  DualSimplex lp(model, options);
  if (!changes.empty()) {
    std::vector<double> lower(model.num_columns());
    std::vector<double> upper(model.num_columns());
    for (int j = 0; j < model.num_columns(); ++j) {
      lower[j] = model.columns[j].lower;
      upper[j] = model.columns[j].upper;
    }
    for (const BoundChange& change : changes) {
      if (change.column < 0 || change.column >= model.num_columns()) {
        throw std::out_of_range("bound change on unknown column " +
                                std::to_string(change.column));
      }
      lower[change.column] = change.lower;
      upper[change.column] = change.upper;
    }
    lp.set_bounds(lower, upper);
  }
  return lp.solve();
}

}  // namespace odp
