#include "odp/core.hpp"

#include <cmath>
#include <string>

namespace odp {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

bool finite_non_negative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

std::string_view window_name(Window w) {
  switch (w) {
    case Window::kMorning:
      return "morning";
    case Window::kAfternoon:
      return "afternoon";
    case Window::kEvening:
      return "evening";
  }
  return "unknown";
}

Window parse_window(std::string_view name) {
  if (name == "morning" || name == "m") return Window::kMorning;
  if (name == "afternoon" || name == "a") return Window::kAfternoon;
  if (name == "evening" || name == "e") return Window::kEvening;
  throw ValidationError("unknown time window '" + std::string(name) + "'");
}

double WindowLimits::operator[](Window w) const {
  switch (w) {
    case Window::kMorning:
      return morning;
    case Window::kAfternoon:
      return afternoon;
    case Window::kEvening:
      return evening;
  }
  return 0.0;
}

int Instance::cheapest_carrier(int c) const {
  int best = -1;
  for (int r = 0; r < num_carriers(); ++r) {
    if (best < 0 || charge(c, r) < charge(c, best)) best = r;
  }
  return best;
}

InstanceData Instance::data() const {
  InstanceData raw;
  raw.customers = customers_;
  raw.trucks = trucks_;
  raw.carriers = carriers_;
  raw.distance_km = distance_km_;
  raw.routing_cost = routing_cost_;
  raw.window_limits = window_limits_;
  raw.assignment_weight = assignment_weight_;
  raw.big_m = big_m_;
  for (const Location& loc : locations_) raw.location_labels.push_back(loc.label);
  return raw;
}

Matrix<double> default_routing_cost(const Matrix<double>& distance_km) {
  Matrix<double> cost(distance_km.rows(), distance_km.cols());
  for (std::size_t u = 0; u < distance_km.rows(); ++u) {
    for (std::size_t v = 0; v < distance_km.cols(); ++v) {
      const double k = distance_km(u, v);
      require(finite_non_negative(k),
              "distance (" + std::to_string(u) + "," + std::to_string(v) +
                  ") must be finite and non-negative");
      cost(u, v) = k * 1.05 * 0.1;
    }
  }
  return cost;
}

Instance make_instance(InstanceData raw) {
  const int n = static_cast<int>(raw.customers.size());
  const std::size_t locations = static_cast<std::size_t>(n) + 1;

  require(raw.big_m > 0, "big_m must be positive");
  require(n < raw.big_m, "number of customers must be below big_m (" +
                             std::to_string(raw.big_m) + ")");
  require(std::isfinite(raw.assignment_weight) && raw.assignment_weight >= 0.0,
          "assignment_weight must be finite and non-negative");

  for (int c = 0; c < n; ++c) {
    const Customer& customer = raw.customers[c];
    require(customer.id == c + 1, "customer ids must be 1..n in order; got " +
                                      std::to_string(customer.id) +
                                      " at position " + std::to_string(c + 1));
    require(std::isfinite(customer.package_weight) &&
                customer.package_weight > 0.0,
            "customer " + std::to_string(customer.id) +
                " package weight must be positive");
    const int w = static_cast<int>(customer.window);
    require(w >= 0 && w < 3, "customer " + std::to_string(customer.id) +
                                 " has no valid time window");
  }
  for (std::size_t t = 0; t < raw.trucks.size(); ++t) {
    const Truck& truck = raw.trucks[t];
    require(std::isfinite(truck.capacity_kg) && truck.capacity_kg > 0.0,
            "truck " + std::to_string(t) + " capacity must be positive");
    require(finite_non_negative(truck.initial_cost),
            "truck " + std::to_string(t) + " initial cost must be >= 0");
  }
  for (std::size_t r = 0; r < raw.carriers.size(); ++r) {
    const Carrier& carrier = raw.carriers[r];
    require(carrier.charge_per_customer.size() == raw.customers.size(),
            "carrier " + std::to_string(r) + " must list one charge per customer");
    for (double charge : carrier.charge_per_customer) {
      require(finite_non_negative(charge),
              "carrier " + std::to_string(r) + " charges must be >= 0");
    }
  }

  require(raw.distance_km.rows() == locations &&
              raw.distance_km.cols() == locations,
          "distance matrix must be " + std::to_string(locations) + "x" +
              std::to_string(locations));
  for (std::size_t u = 0; u < locations; ++u) {
    require(raw.distance_km(u, u) == 0.0,
            "distance matrix diagonal must be zero at " + std::to_string(u));
    for (std::size_t v = 0; v < locations; ++v) {
      require(finite_non_negative(raw.distance_km(u, v)),
              "distances must be finite and non-negative");
      require(raw.distance_km(u, v) == raw.distance_km(v, u),
              "distance matrix is not symmetric at (" + std::to_string(u) +
                  "," + std::to_string(v) + ")");
    }
  }

  Matrix<double> routing =
      raw.routing_cost ? *raw.routing_cost : default_routing_cost(raw.distance_km);
  require(routing.rows() == locations && routing.cols() == locations,
          "routing cost matrix must match the distance matrix shape");
  for (double value : routing.data()) {
    require(finite_non_negative(value),
            "routing costs must be finite and non-negative");
  }

  for (Window w : kAllWindows) {
    require(finite_non_negative(raw.window_limits[w]),
            "window limit for " + std::string(window_name(w)) +
                " must be finite and non-negative");
  }

  require(raw.location_labels.empty() ||
              raw.location_labels.size() == locations,
          "location labels must cover every location");

  Instance instance;
  instance.customers_ = std::move(raw.customers);
  instance.trucks_ = std::move(raw.trucks);
  instance.carriers_ = std::move(raw.carriers);
  instance.distance_km_ = std::move(raw.distance_km);
  instance.routing_cost_ = std::move(routing);
  instance.window_limits_ = raw.window_limits;
  instance.assignment_weight_ = raw.assignment_weight;
  instance.big_m_ = raw.big_m;
  for (std::size_t u = 0; u < locations; ++u) {
    std::string label;
    if (!raw.location_labels.empty()) {
      label = raw.location_labels[u];
    } else {
      label = u == 0 ? "depot" : "C" + std::to_string(u);
    }
    instance.locations_.push_back({static_cast<int>(u), std::move(label)});
  }
  for (int c = 0; c < n; ++c) {
    instance.members_[static_cast<int>(instance.customers_[c].window)]
        .push_back(c);
  }
  return instance;
}

double ScenarioSet::expected_demand(int c) const {
  double total = 0.0;
  for (const Scenario& s : scenarios_) total += s.probability * s.demand[c];
  return total;
}

ScenarioSet make_scenario_set(std::vector<Scenario> scenarios,
                              int num_customers) {
  require(num_customers >= 0, "number of customers must be non-negative");
  require(!scenarios.empty(), "a scenario set needs at least one scenario");
  double sum = 0.0;
  for (std::size_t w = 0; w < scenarios.size(); ++w) {
    const Scenario& s = scenarios[w];
    require(s.demand.size() == static_cast<std::size_t>(num_customers),
            "scenario " + std::to_string(w) + " demand vector has length " +
                std::to_string(s.demand.size()) + ", expected " +
                std::to_string(num_customers));
    for (int d : s.demand) {
      require(d == 0 || d == 1,
              "scenario " + std::to_string(w) + " demand entries must be 0/1");
    }
    require(std::isfinite(s.probability) && s.probability >= 0.0 &&
                s.probability <= 1.0,
            "scenario " + std::to_string(w) + " probability must lie in [0,1]");
    sum += s.probability;
  }
  require(std::abs(sum - 1.0) <= kProbabilityTolerance,
          "scenario probabilities sum to " + std::to_string(sum) +
              ", expected 1");
  ScenarioSet set;
  set.scenarios_ = std::move(scenarios);
  set.num_customers_ = num_customers;
  return set;
}

void check_compatible(const Instance& instance, const ScenarioSet& scenarios) {
  require(!scenarios.empty(), "scenario set is empty");
  require(scenarios.num_customers() == instance.num_customers(),
          "scenario set covers " + std::to_string(scenarios.num_customers()) +
              " customers but the instance has " +
              std::to_string(instance.num_customers()));
}

Solution empty_solution(const Instance& instance, const ScenarioSet& scenarios) {
  const std::size_t n = instance.num_customers();
  const std::size_t t = instance.num_trucks();
  const std::size_t r = instance.num_carriers();
  const std::size_t u = instance.num_locations();
  Solution solution;
  solution.x = Matrix<int>(n, t);
  solution.w.assign(t, 0);
  solution.plans.resize(scenarios.size());
  for (ScenarioPlan& plan : solution.plans) {
    plan.y = Matrix<int>(n, r);
    plan.v.assign(t, Matrix<int>(u, u));
    plan.s = Matrix<int>(n, t);
  }
  return solution;
}

}  // namespace odp
