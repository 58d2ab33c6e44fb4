#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "odp/branch_and_bound.hpp"
#include "odp/evaluate.hpp"
#include "odp/lp.hpp"
#include "odp/milp.hpp"
#include "odp/scenario.hpp"
#include "support.hpp"

namespace odp {
namespace {

MilpModel one_column_model(double lower, double upper, VarType type) {
  MilpModel model;
  model.columns.push_back({-1.0, lower, upper, type});
  return model;
}

TEST(LpRelaxation, SingleRowMaximizesX) {
  MilpModel model = one_column_model(0.0, 1.0, VarType::kContinuous);
  model.rows.push_back({{{0, 1.0}}, RowSense::kLessEqual, 1.0, {}});
  const LpResult result = solve_lp_relaxation(model);
  ASSERT_EQ(result.status, LpStatus::kOptimal);
  EXPECT_DOUBLE_EQ(result.objective, -1.0);
  EXPECT_DOUBLE_EQ(result.values[0], 1.0);
}

TEST(LpRelaxation, ContradictoryRowsAreInfeasible) {
  MilpModel model = one_column_model(0.0, 5.0, VarType::kContinuous);
  model.rows.push_back({{{0, 1.0}}, RowSense::kGreaterEqual, 2.0, {}});
  model.rows.push_back({{{0, 1.0}}, RowSense::kLessEqual, 1.0, {}});
  EXPECT_EQ(solve_lp_relaxation(model).status, LpStatus::kInfeasible);
}

TEST(LpRelaxation, TwoVariableVertex) {
  // min -x - y s.t. x + 2y <= 4, 3x + y <= 6 on [0,10]^2: optimum at (1.6, 1.2).
  MilpModel model;
  model.columns = {{-1.0, 0.0, 10.0, VarType::kContinuous},
                   {-1.0, 0.0, 10.0, VarType::kContinuous}};
  model.rows.push_back({{{0, 1.0}, {1, 2.0}}, RowSense::kLessEqual, 4.0, {}});
  model.rows.push_back({{{0, 3.0}, {1, 1.0}}, RowSense::kLessEqual, 6.0, {}});
  const LpResult result = solve_lp_relaxation(model);
  ASSERT_EQ(result.status, LpStatus::kOptimal);
  EXPECT_NEAR(result.objective, -2.8, 1e-9);
  EXPECT_NEAR(result.values[0], 1.6, 1e-9);
  EXPECT_NEAR(result.values[1], 1.2, 1e-9);
}

TEST(LpRelaxation, EqualityRowsAndBoundOverrides) {
  // min x + y s.t. x + y = 3, x - y >= -1 on [0,5]^2; then force x <= 0.5.
  MilpModel model;
  model.columns = {{1.0, 0.0, 5.0, VarType::kContinuous},
                   {1.0, 0.0, 5.0, VarType::kContinuous}};
  model.rows.push_back({{{0, 1.0}, {1, 1.0}}, RowSense::kEqual, 3.0, {}});
  model.rows.push_back({{{0, 1.0}, {1, -1.0}}, RowSense::kGreaterEqual, -1.0, {}});
  LpResult result = solve_lp_relaxation(model);
  ASSERT_EQ(result.status, LpStatus::kOptimal);
  EXPECT_NEAR(result.objective, 3.0, 1e-9);

  const BoundChange change{0, 0.0, 0.5};
  result = solve_lp_relaxation(model, std::span(&change, 1));
  EXPECT_EQ(result.status, LpStatus::kInfeasible);
}

TEST(LpRelaxation, BasisIsReproducible) {
  std::mt19937_64 rng(3);
  const Instance instance = testing::random_instance(rng, {4, 2, 1, 2});
  const ScenarioSet scenarios = testing::random_scenarios(rng, 4, 2);
  const MilpModel model = build_model(instance, scenarios);
  const LpResult a = solve_lp_relaxation(model);
  const LpResult b = solve_lp_relaxation(model);
  ASSERT_EQ(a.status, LpStatus::kOptimal);
  EXPECT_EQ(a.basis, b.basis);
  EXPECT_EQ(a.values, b.values);
  EXPECT_TRUE(violated_rows(model, a.values, 1e-6).empty());
}

TEST(LpRelaxation, TinyModelBoundsIntegerOptimum) {
  InstanceData data;
  data.customers = {{1, 30.0, Window::kMorning}};
  data.trucks = {{1060.0, 280.0, "van"}};
  data.carriers = {{{21.0}}};
  data.distance_km = Matrix<double>(2, 2, 0.0);
  data.distance_km(0, 1) = data.distance_km(1, 0) = 5.0;
  data.window_limits = {50, 50, 50};
  const Instance instance = make_instance(data);
  const ScenarioSet scenarios = deterministic_all_demand(1);
  const MilpModel model = build_model(instance, scenarios);
  ASSERT_EQ(model.num_columns(), 8);

  // Independent oracle: every 0/1 assignment of the 7 binaries and every
  // S in [0, 1].
  double best = std::numeric_limits<double>::infinity();
  for (int code = 0; code < (1 << model.num_columns()); ++code) {
    std::vector<double> point(model.num_columns());
    for (int j = 0; j < model.num_columns(); ++j) point[j] = (code >> j) & 1;
    if (violated_rows(model, point).empty()) {
      best = std::min(best, objective_value(model, point));
    }
  }
  EXPECT_DOUBLE_EQ(best, 21.0);
  const LpResult lp = solve_lp_relaxation(model);
  ASSERT_EQ(lp.status, LpStatus::kOptimal);
  EXPECT_LE(lp.objective, best + 1e-9);
}

TEST(BranchAndBound, SingleCustomerUsesCarrier) {
  InstanceData data;
  data.customers = {{1, 30.0, Window::kMorning}};
  data.trucks = {{1060.0, 280.0, "van"}};
  data.carriers = {{{21.0}}};
  data.distance_km = Matrix<double>(2, 2, 0.0);
  data.distance_km(0, 1) = data.distance_km(1, 0) = 5.0;
  data.window_limits = {50, 50, 50};
  const Instance instance = make_instance(data);
  const ExactResult result = solve_exact(instance, deterministic_all_demand(1));
  ASSERT_EQ(result.report.status, SolveStatus::kOptimal);
  EXPECT_NEAR(result.report.upper_bound, 21.0, 1e-9);
  ASSERT_TRUE(result.solution);
  EXPECT_EQ(result.solution->w[0], 0);
  EXPECT_EQ(result.solution->plans[0].y(0, 0), 1);
}

TEST(BranchAndBound, EmptyModelIsOptimalAtZero) {
  InstanceData data;
  data.trucks = {{1060.0, 280.0, "van"}};
  data.distance_km = Matrix<double>(1, 1, 0.0);
  data.window_limits = {50, 50, 50};
  const Instance instance = make_instance(data);
  const ExactResult result = solve_exact(instance, deterministic_all_demand(0));
  EXPECT_EQ(result.report.status, SolveStatus::kOptimal);
  EXPECT_DOUBLE_EQ(result.report.upper_bound, 0.0);
  ASSERT_TRUE(result.solution);
  EXPECT_EQ(result.solution->w[0], 0);
}

TEST(BranchAndBound, ClusteredSixteenCustomersTakeTheVan) {
  const Instance instance = testing::clustered_instance(16);
  SolveConfig config;
  config.time_limit_seconds = 60.0;
  const ExactResult result = solve_exact(instance, deterministic_all_demand(16), config);
  ASSERT_EQ(result.report.status, SolveStatus::kOptimal);
  // 280 + 16 assignment term beats 16 x 21 = 336.
  EXPECT_NEAR(result.report.upper_bound, 296.0, 1e-9);
  EXPECT_EQ(result.solution->w[0], 1);
}

TEST(BranchAndBound, InfeasibleModel) {
  MilpModel model = one_column_model(0.0, 1.0, VarType::kBinary);
  model.rows.push_back({{{0, 2.0}}, RowSense::kEqual, 1.0, {}});
  const SolveReport report = branch_and_bound(model);
  EXPECT_EQ(report.status, SolveStatus::kInfeasible);
  EXPECT_FALSE(report.incumbent);
}

TEST(BranchAndBound, NodeLimitKeepsBounds) {
  std::mt19937_64 rng(11);
  const Instance instance = testing::random_instance(rng, {5, 2, 1, 2});
  const ScenarioSet scenarios = testing::random_scenarios(rng, 5, 2);
  SolveConfig config;
  config.node_limit = 3;
  const SolveReport report = branch_and_bound(build_model(instance, scenarios), config);
  if (report.status == SolveStatus::kNodeLimit && report.incumbent) {
    EXPECT_LE(report.lower_bound,
              report.upper_bound + 1e-6 * std::max(1.0, std::abs(report.upper_bound)));
  }
  EXPECT_LE(report.nodes_explored, 3);
}

TEST(BranchAndBound, BoundsAreMonotone) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance instance = testing::random_instance(rng, {4, 2, 1, 2});
    const ScenarioSet scenarios = testing::random_scenarios(rng, 4, 2);
    SolveConfig config;
    config.record_trace = true;
    config.branching = trial % 2 ? Branching::kPseudoCost : Branching::kMostFractional;
    const SolveReport report = branch_and_bound(build_model(instance, scenarios), config);
    for (std::size_t k = 1; k < report.trace.size(); ++k) {
      EXPECT_GE(report.trace[k].lower_bound, report.trace[k - 1].lower_bound - 1e-9);
      EXPECT_LE(report.trace[k].upper_bound, report.trace[k - 1].upper_bound);
    }
  }
}

TEST(BranchAndBound, DeterministicGivenConfig) {
  std::mt19937_64 rng(8);
  const Instance instance = testing::random_instance(rng, {4, 2, 2, 2});
  const ScenarioSet scenarios = testing::random_scenarios(rng, 4, 2);
  const MilpModel model = build_model(instance, scenarios);
  const SolveReport a = branch_and_bound(model);
  const SolveReport b = branch_and_bound(model);
  EXPECT_EQ(a.nodes_explored, b.nodes_explored);
  EXPECT_EQ(a.incumbent, b.incumbent);
}

TEST(BranchAndBound, RejectsBadConfig) {
  SolveConfig config;
  config.gap_tolerance = -1.0;
  EXPECT_THROW(check_config(config), ValidationError);
  config = {};
  config.node_limit = 0;
  EXPECT_THROW(check_config(config), ValidationError);
}

TEST(BranchAndBound, MatchesOracleOnRandomInstances) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const testing::RandomShape shape{1 + trial % 4, 1 + trial % 2, 1, 1 + trial % 2};
    const Instance instance = testing::random_instance(rng, shape);
    const ScenarioSet scenarios =
        testing::random_scenarios(rng, shape.customers, shape.scenarios);
    const auto oracle = brute_force_optimum(instance, scenarios);
    SolveConfig config;
    config.branching = trial % 3 == 0 ? Branching::kPseudoCost : Branching::kMostFractional;
    const ExactResult exact = solve_exact(instance, scenarios, config);
    ASSERT_TRUE(oracle.has_value()) << "trial " << trial;
    ASSERT_EQ(exact.report.status, SolveStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(exact.report.upper_bound, oracle->total,
                1e-6 * std::max(1.0, std::abs(oracle->total)))
        << "trial " << trial;
  }
}

}  // namespace
}  // namespace odp
