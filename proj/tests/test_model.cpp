#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "odp/evaluate.hpp"
#include "odp/milp.hpp"
#include "odp/scenario.hpp"
#include "support.hpp"

namespace odp {
namespace {

InstanceData three_windows() {
  InstanceData data;
  data.customers = {{1, 30.0, Window::kMorning},
                    {2, 30.0, Window::kAfternoon},
                    {3, 30.0, Window::kEvening}};
  data.trucks = {{1060.0, 280.0, "van"}, {1360.0, 440.0, "10ft"}, {2268.0, 640.0, "14ft"}};
  data.carriers = {{{21.0, 21.0, 21.0}}};
  data.distance_km = Matrix<double>(4, 4, 0.0);
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v) data.distance_km(u, v) = u == v ? 0.0 : 5.0 + u + v;
  data.window_limits = {50, 50, 50};
  return data;
}

TEST(Instance, EmptyIsValid) {
  InstanceData data;
  data.trucks = {{1060.0, 280.0, "van"}};
  data.carriers = {{{}}};
  data.distance_km = Matrix<double>(1, 1, 0.0);
  const Instance instance = make_instance(data);
  EXPECT_EQ(instance.num_customers(), 0);
  EXPECT_EQ(instance.num_locations(), 1);
  EXPECT_EQ(instance.locations()[0].id, 0);
}

TEST(Instance, AsymmetricDistanceRejected) {
  InstanceData data = three_windows();
  data.distance_km(1, 2) = 3.0;
  EXPECT_THROW(make_instance(data), ValidationError);
}

TEST(Instance, ThreeWindowsPartitionCustomers) {
  const Instance instance = make_instance(three_windows());
  EXPECT_EQ(instance.window_members(Window::kMorning), std::vector<int>{0});
  EXPECT_EQ(instance.window_members(Window::kAfternoon), std::vector<int>{1});
  EXPECT_EQ(instance.window_members(Window::kEvening), std::vector<int>{2});
  EXPECT_DOUBLE_EQ(instance.truck(2).capacity_kg, 2268.0);
  for (int c = 0; c < 3; ++c) EXPECT_EQ(instance.locations()[c + 1].id, c + 1);
}

TEST(Instance, RejectsBadFields) {
  InstanceData data = three_windows();
  data.trucks[0].capacity_kg = 0.0;
  EXPECT_THROW(make_instance(data), ValidationError);
  data = three_windows();
  data.carriers[0].charge_per_customer[1] = -1.0;
  EXPECT_THROW(make_instance(data), ValidationError);
  data = three_windows();
  data.carriers[0].charge_per_customer.pop_back();
  EXPECT_THROW(make_instance(data), ValidationError);
  data = three_windows();
  data.distance_km(1, 1) = 1.0;
  EXPECT_THROW(make_instance(data), ValidationError);
  data = three_windows();
  data.big_m = 3;
  EXPECT_THROW(make_instance(data), ValidationError);
}

TEST(Instance, DeterministicRebuild) {
  const Instance a = make_instance(three_windows());
  EXPECT_EQ(a, make_instance(three_windows()));
  EXPECT_EQ(a, make_instance(a.data()));
}

TEST(RoutingCost, FuelFormula) {
  Matrix<double> k(2, 2, 0.0);
  k(0, 1) = k(1, 0) = 100.0;
  const Matrix<double> cost = default_routing_cost(k);
  EXPECT_DOUBLE_EQ(cost(0, 0), 0.0);
  EXPECT_NEAR(cost(0, 1), 10.5, 1e-12);
  k(0, 1) = k(1, 0) = 1.0;
  EXPECT_NEAR(default_routing_cost(k)(1, 0), 0.105, 1e-15);
}

TEST(Scenarios, Deterministic) {
  const ScenarioSet three = deterministic_all_demand(3);
  ASSERT_EQ(three.size(), 1u);
  EXPECT_EQ(three[0].demand, (std::vector<int>{1, 1, 1}));
  EXPECT_DOUBLE_EQ(three[0].probability, 1.0);
  const ScenarioSet none = deterministic_all_demand(0);
  ASSERT_EQ(none.size(), 1u);
  EXPECT_TRUE(none[0].demand.empty());
  EXPECT_EQ(deterministic_all_demand(20)[0].demand, std::vector<int>(20, 1));
}

TEST(Scenarios, Uniform) {
  const ScenarioSet set = uniform_scenarios({{1, 0}, {0, 1}, {1, 0}});
  ASSERT_EQ(set.size(), 3u);
  for (std::size_t w = 0; w < 3; ++w) EXPECT_DOUBLE_EQ(set[w].probability, 1.0 / 3.0);
  EXPECT_EQ(set[0], set[2]);
  EXPECT_DOUBLE_EQ(uniform_scenarios({{1}})[0].probability, 1.0);
}

TEST(Scenarios, RejectBadInput) {
  EXPECT_THROW(make_scenario_set({{{1, 2}, 1.0}}, 2), ValidationError);
  EXPECT_THROW(make_scenario_set({{{1, 0}, 0.6}}, 2), ValidationError);
  EXPECT_THROW(make_scenario_set({{{1}, 1.0}}, 2), ValidationError);
}

TEST(Scenarios, BernoulliDegenerate) {
  const ScenarioSet ones = bernoulli_scenarios({1.0, 1.0}, 7, 3);
  ASSERT_EQ(ones.size(), 1u);
  EXPECT_EQ(ones[0].demand, (std::vector<int>{1, 1}));
  EXPECT_DOUBLE_EQ(ones[0].probability, 1.0);
  const ScenarioSet zero = bernoulli_scenarios({0.0}, 4, 3);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0].demand, std::vector<int>{0});
}

TEST(Scenarios, BernoulliHalfHalf) {
  const ScenarioSet set = bernoulli_scenarios({0.5, 0.5}, 4, 3);
  ASSERT_EQ(set.size(), 4u);
  for (std::size_t w = 0; w < 4; ++w) EXPECT_DOUBLE_EQ(set[w].probability, 0.25);
}

TEST(Scenarios, BernoulliEnumerationMatchesDirectProduct) {
  const std::vector<double> p{0.3, 1.0, 0.7, 0.0, 0.15, 0.5};
  const ScenarioSet set = bernoulli_scenarios(p, 64, 11);
  double sum = 0.0;
  for (const Scenario& s : set.scenarios()) {
    double product = 1.0;
    for (std::size_t i = 0; i < p.size(); ++i) product *= s.demand[i] ? p[i] : 1.0 - p[i];
    EXPECT_NEAR(s.probability, product, 1e-12);
    sum += s.probability;
  }
  EXPECT_EQ(set.size(), 16u);
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Scenarios, SamplingIsReproducible) {
  const std::vector<double> p(12, 0.4);
  const ScenarioSet a = bernoulli_scenarios(p, 10, 99);
  EXPECT_EQ(a.size(), 10u);
  EXPECT_EQ(a, bernoulli_scenarios(p, 10, 99));
  EXPECT_NE(a, bernoulli_scenarios(p, 10, 100));
}

int column_formula(int n, int t, int r, int q) {
  return n * t + t + n * r * q + (n + 1) * (n + 1) * t * q + n * t * q;
}

TEST(Model, SingleCustomerHasEightColumns) {
  const Instance instance = testing::clustered_instance(1);
  const MilpModel model = build_model(instance, deterministic_all_demand(1));
  EXPECT_EQ(model.num_columns(), 8);
}

TEST(Model, ColumnCountFormula) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const testing::RandomShape shape{trial % 5, 1 + trial % 3, trial % 3, 1 + trial % 2};
    const Instance instance = testing::random_instance(rng, shape);
    const ScenarioSet scenarios =
        testing::random_scenarios(rng, shape.customers, shape.scenarios);
    const MilpModel model = build_model(instance, scenarios);
    EXPECT_EQ(model.num_columns(), column_formula(shape.customers, shape.trucks,
                                                  shape.carriers, shape.scenarios));
  }
}

TEST(Model, EmptyInstance) {
  const Instance instance = testing::clustered_instance(0);
  const MilpModel model = build_model(instance, deterministic_all_demand(0));
  for (int j = 0; j < model.num_columns(); ++j) {
    const VarRef ref = model.layout.decode(j);
    EXPECT_TRUE(ref.kind == ColumnKind::kW || ref.kind == ColumnKind::kV);
  }
  const std::vector<double> zero(model.num_columns(), 0.0);
  EXPECT_TRUE(violated_rows(model, zero).empty());
  EXPECT_DOUBLE_EQ(objective_value(model, zero), 0.0);
}

TEST(Model, MtzRowCount) {
  const Instance instance = testing::clustered_instance(20);
  const MilpModel model = build_model(instance, deterministic_all_demand(20));
  int mtz = 0;
  for (const Row& row : model.rows) mtz += row.tag.family == ConstraintFamily::kSubtour;
  EXPECT_EQ(mtz, 20 * 19);
}

TEST(Model, RowsReferenceValidColumnsAndFamilies) {
  std::mt19937_64 rng(8);
  const Instance instance = testing::random_instance(rng, {4, 2, 2, 2});
  const MilpModel model = build_model(instance, testing::random_scenarios(rng, 4, 2));
  for (const Row& row : model.rows) {
    const int f = equation_number(row.tag.family);
    EXPECT_GE(f, 3);
    EXPECT_LE(f, 16);
    for (const Coefficient& a : row.coefficients) {
      EXPECT_GE(a.column, 0);
      EXPECT_LT(a.column, model.num_columns());
    }
  }
}

TEST(Model, LayoutIsABijection) {
  const ColumnLayout layout(3, 2, 2, 2);
  std::vector<int> seen(layout.num_columns(), 0);
  auto mark = [&](int j) {
    ASSERT_GE(j, 0);
    ASSERT_LT(j, layout.num_columns());
    ++seen[j];
  };
  for (int t = 0; t < 2; ++t) mark(layout.w(t));
  for (int c = 0; c < 3; ++c)
    for (int t = 0; t < 2; ++t) mark(layout.x(c, t));
  for (int w = 0; w < 2; ++w) {
    for (int c = 0; c < 3; ++c)
      for (int r = 0; r < 2; ++r) mark(layout.y(c, r, w));
    for (int t = 0; t < 2; ++t) {
      for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v) mark(layout.v(u, v, t, w));
      for (int c = 0; c < 3; ++c) mark(layout.s(c, t, w));
    }
  }
  for (int count : seen) EXPECT_EQ(count, 1);
}

TEST(Model, ExplainRow) {
  const Instance instance = make_instance(three_windows());
  const MilpModel model = build_model(instance, deterministic_all_demand(3));
  bool capacity = false;
  bool mtz = false;
  for (int i = 0; i < model.num_rows(); ++i) {
    const RowTag& tag = model.rows[i].tag;
    if (tag.family == ConstraintFamily::kCapacity && tag.index[0] == 2) {
      EXPECT_EQ(explain_row(model, i), "capacity (4) for truck 2");
      capacity = true;
    }
    if (tag.family == ConstraintFamily::kSubtour && tag.index[0] == 1 &&
        tag.index[1] == 2 && tag.index[2] == 0 && tag.index[3] == 0) {
      const std::string text = explain_row(model, i);
      EXPECT_NE(text.find("(14)"), std::string::npos) << text;
      EXPECT_NE(text.find('1'), std::string::npos);
      EXPECT_NE(text.find('2'), std::string::npos);
      mtz = true;
    }
  }
  EXPECT_TRUE(capacity);
  EXPECT_TRUE(mtz);
  EXPECT_THROW(explain_row(model, model.num_rows()), std::out_of_range);
  EXPECT_THROW(explain_row(model, -1), std::out_of_range);
}

TEST(Model, LpExportSections) {
  const Instance instance = testing::clustered_instance(2);
  const MilpModel model = build_model(instance, deterministic_all_demand(2));
  const std::string lp = write_lp(model);
  for (const char* token : {"Minimize", "Subject To", "Bounds", "Binary", "General", "End",
                            "X_1_0", "W_0", "Y_2_0_0", "V_0_1_0_0", "S_1_0_0"}) {
    EXPECT_NE(lp.find(token), std::string::npos) << token;
  }
  EXPECT_EQ(lp, write_lp(build_model(instance, deterministic_all_demand(2))));
}

TEST(Validator, ZeroSolutionMissesDemand) {
  const Instance instance = testing::clustered_instance(1);
  const ScenarioSet scenarios = deterministic_all_demand(1);
  const ValidationReport report = validate(instance, scenarios, empty_solution(instance, scenarios));
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].family, ConstraintFamily::kAssignment);
}

TEST(Validator, TwoLoopsBreakSubtourElimination) {
  const Instance instance = testing::clustered_instance(4);
  const ScenarioSet scenarios = deterministic_all_demand(4);
  Solution s = empty_solution(instance, scenarios);
  s.w[0] = 1;
  for (int c = 0; c < 4; ++c) s.x(c, 0) = 1;
  Matrix<int>& v = s.plans[0].v[0];
  v(0, 1) = v(1, 2) = v(2, 0) = 1;
  v(3, 4) = v(4, 3) = 1;
  for (int c = 0; c < 4; ++c) s.plans[0].s(c, 0) = c + 1;
  s.cost = cost_of(instance, scenarios, s);
  const ValidationReport report = validate(instance, scenarios, s);
  EXPECT_EQ(report.families(), std::set<ConstraintFamily>{ConstraintFamily::kSubtour});
}

TEST(Validator, MorningAfterAfternoon) {
  InstanceData data = three_windows();
  data.customers.pop_back();
  data.carriers[0].charge_per_customer.pop_back();
  Matrix<double> k(3, 3, 1.0);
  for (int u = 0; u < 3; ++u) k(u, u) = 0.0;
  data.distance_km = k;
  const Instance instance = make_instance(data);
  const ScenarioSet scenarios = deterministic_all_demand(2);
  Solution s = empty_solution(instance, scenarios);
  s.w[0] = 1;
  s.x(0, 0) = s.x(1, 0) = 1;
  Matrix<int>& v = s.plans[0].v[0];
  v(0, 2) = v(2, 1) = v(1, 0) = 1;
  s.plans[0].s(1, 0) = 1;
  s.plans[0].s(0, 0) = 2;
  for (int t = 1; t < 3; ++t) s.plans[0].s(0, t) = s.plans[0].s(1, t) = 1;
  const ValidationReport report = validate(instance, scenarios, s);
  EXPECT_TRUE(report.families().count(ConstraintFamily::kMorningBeforeAfternoon));
}

TEST(Cost, ZeroSolution) {
  const Instance instance = make_instance(three_windows());
  const ScenarioSet scenarios = deterministic_all_demand(3);
  EXPECT_EQ(cost_of(instance, scenarios, empty_solution(instance, scenarios)), CostBreakdown{});
}

TEST(Cost, VanAndFiveCarrierCustomers) {
  const Instance instance = testing::clustered_instance(5);
  const ScenarioSet scenarios = deterministic_all_demand(5);
  Solution s = empty_solution(instance, scenarios);
  s.w[0] = 1;
  for (int c = 0; c < 5; ++c) s.plans[0].y(c, 0) = 1;
  const CostBreakdown cost = cost_of(instance, scenarios, s);
  EXPECT_DOUBLE_EQ(cost.truck_initial, 280.0);
  EXPECT_DOUBLE_EQ(cost.expected_carrier, 105.0);
  EXPECT_DOUBLE_EQ(cost.total, cost.assignment_term + cost.truck_initial +
                                   cost.expected_carrier + cost.expected_routing);
}

TEST(Oracle, Examples) {
  EXPECT_DOUBLE_EQ(brute_force_optimum(testing::clustered_instance(0),
                                       deterministic_all_demand(0))->total,
                   0.0);
  InstanceData data;
  data.customers = {{1, 30.0, Window::kMorning}, {2, 30.0, Window::kMorning}};
  data.trucks = {{1060.0, 30.0, "van"}};
  data.carriers = {{{21.0, 21.0}}};
  data.distance_km = Matrix<double>(3, 3, 0.0);
  data.window_limits = {50, 50, 50};
  const auto best = brute_force_optimum(make_instance(data), deterministic_all_demand(2));
  ASSERT_TRUE(best);
  EXPECT_DOUBLE_EQ(best->total, 32.0);
}

TEST(Oracle, InterleavesWithoutAfternoonCustomers) {
  InstanceData data;
  data.customers = {{1, 1.0, Window::kMorning},
                    {2, 1.0, Window::kEvening},
                    {3, 1.0, Window::kEvening}};
  data.trucks = {{10.0, 5.0, ""}};
  data.carriers = {{{50.0, 50.0, 50.0}}};
  data.distance_km = Matrix<double>(4, 4, 10.0);
  for (int u = 0; u < 4; ++u) data.distance_km(u, u) = 0.0;
  auto set = [&](int u, int v) { data.distance_km(u, v) = data.distance_km(v, u) = 1.0; };
  set(0, 2);
  set(2, 1);
  set(1, 3);
  set(3, 0);
  data.window_limits = {50, 50, 50};
  const Instance instance = make_instance(data);
  const ScenarioSet scenarios = deterministic_all_demand(3);
  const auto best = brute_force_optimum(instance, scenarios);
  ASSERT_TRUE(best);
  EXPECT_NEAR(best->total, 5.0 + 3.0 + 4 * 0.105, 1e-12);
  EXPECT_TRUE(validate(instance, scenarios, best->solution).ok());
}

TEST(Oracle, SolutionsPassTheValidator) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const testing::RandomShape shape{1 + trial % 5, 1 + trial % 2, trial % 3, 1 + trial % 2};
    const Instance instance = testing::random_instance(rng, shape);
    const ScenarioSet scenarios =
        testing::random_scenarios(rng, shape.customers, shape.scenarios);
    const auto best = brute_force_optimum(instance, scenarios);
    if (best) EXPECT_TRUE(validate(instance, scenarios, best->solution).ok()) << trial;
  }
}

TEST(Oracle, GuardRejectsLargeInstances) {
  EXPECT_THROW(brute_force_optimum(testing::clustered_instance(7), deterministic_all_demand(7)),
               ValidationError);
}

TEST(Agreement, ModelValidatorAndCost) {
  std::mt19937_64 rng(2024);
  int feasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const testing::RandomShape shape{trial % 6, 1 + trial % 2, 1 + trial % 2, 1 + trial % 3};
    const Instance instance = testing::random_instance(rng, shape);
    const ScenarioSet scenarios =
        testing::random_scenarios(rng, shape.customers, shape.scenarios);
    const MilpModel model = build_model(instance, scenarios);
    const Solution point = testing::random_point(rng, instance, scenarios);
    const std::vector<double> columns = to_columns(model, point);
    const bool model_ok = violated_rows(model, columns).empty();
    const bool validator_ok = validate(instance, scenarios, point).ok();
    EXPECT_EQ(model_ok, validator_ok) << "trial " << trial;
    EXPECT_NEAR(objective_value(model, columns), point.cost.total, 1e-9);
    EXPECT_EQ(from_columns(instance, scenarios, model, columns), point);
    feasible += validator_ok;
    if (validator_ok && shape.customers <= 5 && shape.scenarios <= 3) {
      const auto best = brute_force_optimum(instance, scenarios);
      ASSERT_TRUE(best);
      EXPECT_LE(best->total, point.cost.total + 1e-9);
    }
  }
  EXPECT_GT(feasible, 30);
}

}  // namespace
}  // namespace odp
