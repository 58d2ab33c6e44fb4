#ifndef ODP_CORE_HPP
#define ODP_CORE_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace odp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when raw data breaks an instance, scenario or solution invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Dense row-major matrix with value semantics.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

enum class Window { kMorning = 0, kAfternoon = 1, kEvening = 2 };

inline constexpr std::array<Window, 3> kAllWindows = {
    Window::kMorning, Window::kAfternoon, Window::kEvening};

std::string_view window_name(Window w);
Window parse_window(std::string_view name);

// Location 0 is the depot; customer with 0-based index c sits at location c + 1.
inline int location_of(int customer_index) { return customer_index + 1; }

struct Location {
  int id = 0;
  std::string label;
  bool operator==(const Location&) const = default;
};

struct Customer {
  int id = 0;  // 1-based, equals its location id
  double package_weight = 0.0;
  Window window = Window::kMorning;
  bool operator==(const Customer&) const = default;
};

struct Truck {
  double capacity_kg = 0.0;
  double initial_cost = 0.0;
  std::string label;
  bool operator==(const Truck&) const = default;
};

struct Carrier {
  std::vector<double> charge_per_customer;  // indexed by 0-based customer
  bool operator==(const Carrier&) const = default;
};

struct WindowLimits {
  double morning = 0.0;
  double afternoon = 0.0;
  double evening = 0.0;

  double operator[](Window w) const;
  bool operator==(const WindowLimits&) const = default;
};

// Raw fields accepted by make_instance. routing_cost defaults to
// default_routing_cost(distance_km); empty location_labels get generated ones.
struct InstanceData {
  std::vector<Customer> customers;
  std::vector<Truck> trucks;
  std::vector<Carrier> carriers;
  Matrix<double> distance_km;
  std::optional<Matrix<double>> routing_cost;
  WindowLimits window_limits;
  double assignment_weight = 1.0;
  int big_m = 1000;
  std::vector<std::string> location_labels;
};

// Validated, immutable problem data.
class Instance {
 public:
  Instance() = default;

  int num_customers() const { return static_cast<int>(customers_.size()); }
  int num_locations() const { return num_customers() + 1; }
  int num_trucks() const { return static_cast<int>(trucks_.size()); }
  int num_carriers() const { return static_cast<int>(carriers_.size()); }

  const std::vector<Customer>& customers() const { return customers_; }
  const std::vector<Truck>& trucks() const { return trucks_; }
  const std::vector<Carrier>& carriers() const { return carriers_; }
  const std::vector<Location>& locations() const { return locations_; }

  const Customer& customer(int c) const { return customers_[c]; }
  const Truck& truck(int t) const { return trucks_[t]; }
  Window window_of(int c) const { return customers_[c].window; }
  double weight(int c) const { return customers_[c].package_weight; }
  double charge(int c, int r) const {
    return carriers_[r].charge_per_customer[c];
  }
  // Cheapest carrier for customer c (lowest index on ties), -1 without carriers.
  int cheapest_carrier(int c) const;

  double distance(int u, int v) const { return distance_km_(u, v); }
  double routing_cost(int u, int v) const { return routing_cost_(u, v); }
  const Matrix<double>& distance_matrix() const { return distance_km_; }
  const Matrix<double>& routing_cost_matrix() const { return routing_cost_; }

  const WindowLimits& window_limits() const { return window_limits_; }
  double assignment_weight() const { return assignment_weight_; }
  int big_m() const { return big_m_; }

  // 0-based customer indices of one window set, ascending.
  const std::vector<int>& window_members(Window w) const {
    return members_[static_cast<int>(w)];
  }

  // Raw fields that rebuild an identical instance through make_instance.
  InstanceData data() const;

  bool operator==(const Instance&) const = default;

 private:
  friend Instance make_instance(InstanceData raw);

  std::vector<Customer> customers_;
  std::vector<Truck> trucks_;
  std::vector<Carrier> carriers_;
  std::vector<Location> locations_;
  Matrix<double> distance_km_;
  Matrix<double> routing_cost_;
  WindowLimits window_limits_;
  double assignment_weight_ = 1.0;
  int big_m_ = 1000;
  std::array<std::vector<int>, 3> members_;
};

Instance make_instance(InstanceData raw);

// Fuel-based per-arc cost: distance x 1.05 S$/litre x 0.1 litre/km.
Matrix<double> default_routing_cost(const Matrix<double>& distance_km);

inline constexpr double kProbabilityTolerance = 1e-9;

struct Scenario {
  std::vector<int> demand;  // D_i(w) in {0,1}, indexed by 0-based customer
  double probability = 0.0;
  bool operator==(const Scenario&) const = default;
};

class ScenarioSet {
 public:
  ScenarioSet() = default;

  std::size_t size() const { return scenarios_.size(); }
  bool empty() const { return scenarios_.empty(); }
  int num_customers() const { return num_customers_; }
  const Scenario& operator[](std::size_t w) const { return scenarios_[w]; }
  const std::vector<Scenario>& scenarios() const { return scenarios_; }

  // Sum over scenarios of P(w) D_i(w).
  double expected_demand(int c) const;

  bool operator==(const ScenarioSet&) const = default;

 private:
  friend ScenarioSet make_scenario_set(std::vector<Scenario>, int);

  std::vector<Scenario> scenarios_;
  int num_customers_ = 0;
};

// Validates binary demands of length num_customers and sum(P) = 1.
ScenarioSet make_scenario_set(std::vector<Scenario> scenarios,
                              int num_customers);

void check_compatible(const Instance& instance, const ScenarioSet& scenarios);

struct CostBreakdown {
  double assignment_term = 0.0;
  double truck_initial = 0.0;
  double expected_carrier = 0.0;
  double expected_routing = 0.0;
  double total = 0.0;
  bool operator==(const CostBreakdown&) const = default;
};

// Second-stage decisions for one scenario.
struct ScenarioPlan {
  Matrix<int> y;               // customer x carrier
  std::vector<Matrix<int>> v;  // per truck, location x location
  Matrix<int> s;               // customer x truck, visit order
  bool operator==(const ScenarioPlan&) const = default;
};

struct Solution {
  Matrix<int> x;      // customer x truck
  std::vector<int> w;  // per truck
  std::vector<ScenarioPlan> plans;
  CostBreakdown cost;
  bool operator==(const Solution&) const = default;
};

// All-zero decisions sized for the instance and scenario set.
Solution empty_solution(const Instance& instance, const ScenarioSet& scenarios);

}  // namespace odp

#endif  // ODP_CORE_HPP
