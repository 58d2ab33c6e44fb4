#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "odp/ingest.hpp"
#include "odp/scenario.hpp"
#include "support.hpp"

namespace odp {
namespace {

const std::string kHeader =
    "TINY\n\nVEHICLE\nNUMBER     CAPACITY\n  25         200\n\nCUSTOMER\n"
    "CUST NO.  XCOORD.   YCOORD.    DEMAND   READY TIME  DUE DATE   SERVICE   TIME\n\n";

std::string c101() { return read_text_file(std::string(ODP_DATA_DIR) + "/c101.txt"); }

TEST(Windows, ReadyTimeMapping) {
  EXPECT_EQ(window_from_ready_time(0.0), Window::kMorning);
  EXPECT_EQ(window_from_ready_time(912.0), Window::kEvening);  // w = 15.08
  EXPECT_EQ(window_from_ready_time(449.0), Window::kMorning);
  EXPECT_EQ(window_from_ready_time(450.0), Window::kAfternoon);  // w = 12
  EXPECT_EQ(window_from_ready_time(899.0), Window::kAfternoon);
  EXPECT_EQ(window_from_ready_time(900.0), Window::kEvening);  // w = 15
  EXPECT_THROW(window_from_ready_time(-1.0), ValidationError);
  EXPECT_THROW(window_from_ready_time(std::nan("")), ValidationError);
  EXPECT_THROW(window_from_ready_time(INFINITY), ValidationError);
}

TEST(Windows, MappingIsTotal) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ready(0.0, 5000.0);
  for (int k = 0; k < 1000; ++k) {
    const double t = ready(rng);
    const double w = t / 150.0 + 9.0;
    const Window expected = w < 12 ? Window::kMorning
                            : w < 15 ? Window::kAfternoon
                                     : Window::kEvening;
    EXPECT_EQ(window_from_ready_time(t), expected);
  }
}

TEST(Solomon, CoincidentDepotAndCustomer) {
  const std::string text = kHeader +
                           "    0      40         50          0          0       1236          0\n"
                           "    1      40         50         10          0        967         90\n";
  const Instance instance = parse_solomon(text, 1);
  EXPECT_DOUBLE_EQ(instance.distance(0, 1), 0.0);
  EXPECT_EQ(instance.window_of(0), Window::kMorning);
}

TEST(Solomon, C101FirstForty) {
  const Instance instance = parse_solomon(c101(), 40);
  ASSERT_EQ(instance.num_customers(), 40);
  EXPECT_EQ(instance.window_of(0), Window::kEvening);  // ready 912
  EXPECT_EQ(instance.window_of(4), Window::kMorning);  // ready 15
  EXPECT_EQ(instance.window_of(5), Window::kAfternoon);  // ready 621
  EXPECT_DOUBLE_EQ(instance.distance(0, 1), std::hypot(5.0, 18.0));
  EXPECT_DOUBLE_EQ(instance.weight(7), 30.0);
  ASSERT_EQ(instance.num_trucks(), 3);
  EXPECT_DOUBLE_EQ(instance.truck(0).capacity_kg, 1060.0);
  EXPECT_DOUBLE_EQ(instance.truck(1).initial_cost, 440.0);
  EXPECT_DOUBLE_EQ(instance.truck(2).capacity_kg, 2268.0);
  EXPECT_DOUBLE_EQ(instance.charge(3, 0), 21.0);
  EXPECT_DOUBLE_EQ(instance.window_limits().afternoon, 50.0);
  EXPECT_DOUBLE_EQ(instance.routing_cost(0, 1), std::hypot(5.0, 18.0) * 1.05 * 0.1);
  for (int u = 0; u <= 40; ++u) {
    EXPECT_EQ(instance.distance(u, u), 0.0);
    for (int v = 0; v <= 40; ++v) EXPECT_EQ(instance.distance(u, v), instance.distance(v, u));
  }
}

TEST(Solomon, OptionsOverrideProfile) {
  SolomonOptions options;
  options.fleet = {2};
  options.carriers = 0;
  options.package_weight = 12.5;
  options.window_limits = WindowLimits{1, 2, 3};
  const Instance instance = parse_solomon(c101(), 5, options);
  EXPECT_EQ(instance.num_trucks(), 2);
  EXPECT_EQ(instance.num_carriers(), 0);
  EXPECT_DOUBLE_EQ(instance.weight(0), 12.5);
  EXPECT_DOUBLE_EQ(instance.window_limits().evening, 3.0);
}

TEST(Solomon, Errors) {
  EXPECT_THROW(parse_solomon(c101(), 101), ParseError);
  EXPECT_THROW(parse_solomon("C101\nnothing here\n", 0), ParseError);
  EXPECT_THROW(parse_solomon(kHeader + "0 40 50 0 0 1236 zero\n", 0), ParseError);
  EXPECT_THROW(parse_solomon(kHeader + "0 40 50 0 0 1236\n", 0), ParseError);
  EXPECT_THROW(parse_solomon(kHeader, 0), ParseError);
  SolomonOptions options;
  options.profile = "nowhere";
  EXPECT_THROW(parse_solomon(c101(), 3, options), ValidationError);
}

const char* kMinimal = R"({
  "customers": [{"id": 1, "weight_kg": 30, "window": "morning"}],
  "trucks": [{"capacity_kg": 1060, "initial_cost": 280}],
  "carriers": [{"charges": [21]}],
  "distance_km": [[0, 3], [3, 0]],
  "window_limits_km": {"morning": 50, "afternoon": 50, "evening": 50},
  "scenarios": [{"demand": [1], "p": 1}]
})";

TEST(InstanceFile, Minimal) {
  const auto [instance, scenarios] = parse_instance_file(kMinimal);
  EXPECT_EQ(instance.num_customers(), 1);
  EXPECT_EQ(scenarios.size(), 1u);
  EXPECT_DOUBLE_EQ(instance.assignment_weight(), 1.0);
  EXPECT_DOUBLE_EQ(instance.routing_cost(0, 1), 3.0 * 1.05 * 0.1);
}

TEST(InstanceFile, Rejections) {
  std::string text = kMinimal;
  std::string bad_p = text;
  bad_p.replace(bad_p.find(R"([{"demand": [1], "p": 1}])"), 25,
                R"([{"demand": [1], "p": 0.5}, {"demand": [0], "p": 0.4}])");
  EXPECT_THROW(parse_instance_file(bad_p), ValidationError);

  std::string asym = text;
  asym.replace(asym.find("[[0, 3], [3, 0]]"), 16, "[[0, 3], [4, 0]]");
  EXPECT_THROW(parse_instance_file(asym), ValidationError);

  std::string missing = text;
  missing.replace(missing.find(R"("trucks")"), 8, R"("lorries")");
  EXPECT_THROW(parse_instance_file(missing), ParseError);

  std::string window = text;
  window.replace(window.find("morning"), 7, "noonish");
  EXPECT_THROW(parse_instance_file(window), ParseError);

  EXPECT_THROW(parse_instance_file("{not json"), ParseError);
  EXPECT_THROW(parse_instance_file("[]"), ParseError);
}

TEST(InstanceFile, RoundTripTwentyCustomersThreeScenarios) {
  const Instance instance = parse_solomon(c101(), 20);
  std::mt19937_64 rng(4);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::vector<int>> vectors(3, std::vector<int>(20));
  for (auto& v : vectors)
    for (int& d : v) d = coin(rng);
  const ScenarioSet scenarios = uniform_scenarios(vectors);
  const std::string text = write_instance_file(instance, scenarios);
  const auto [back, back_scenarios] = parse_instance_file(text);
  EXPECT_EQ(back, instance);
  EXPECT_EQ(back_scenarios, scenarios);
  EXPECT_EQ(write_instance_file(back, back_scenarios), text);
}

TEST(InstanceFile, RoundTripRandomInstances) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> noise(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = trial % 7;
    InstanceData data =
        testing::random_instance(rng, {n, 1 + trial % 3, trial % 3, 1}).data();
    for (Customer& c : data.customers) c.package_weight += noise(rng);
    data.window_limits.morning += noise(rng) / 3.0;
    if (trial % 2) data.location_labels.assign(n + 1, "loc");
    if (trial % 3 == 0) data.routing_cost.reset();
    for (Truck& t : data.trucks) t.label = trial % 4 ? "" : "t";
    const Instance instance = make_instance(data);
    const ScenarioSet scenarios = testing::random_scenarios(rng, n, 1 + trial % 3);
    const auto [back, back_scenarios] =
        parse_instance_file(write_instance_file(instance, scenarios));
    EXPECT_EQ(back, instance) << "trial " << trial;
    EXPECT_EQ(back_scenarios, scenarios) << "trial " << trial;
  }
}

TEST(InstanceFile, WriteNeedsScenarios) {
  const Instance instance = testing::clustered_instance(2);
  EXPECT_THROW(write_instance_file(instance, ScenarioSet{}), ValidationError);
}

TEST(InstanceFile, ProfileLiteralsAppear) {
  const Instance instance = parse_solomon(c101(), 3);
  const std::string text = write_instance_file(instance, deterministic_all_demand(3));
  for (const char* literal : {"280", "440", "640", "21"}) {
    EXPECT_NE(text.find(literal), std::string::npos) << literal;
  }
}

}  // namespace
}  // namespace odp
