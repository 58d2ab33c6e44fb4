#ifndef ODP_INGEST_HPP
#define ODP_INGEST_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "odp/core.hpp"

namespace odp {

// Truck types, carrier tariff and defaults bundled under one name.
struct PricingProfile {
  std::string name;
  std::vector<Truck> truck_types;
  double carrier_charge = 0.0;  // per package
  double package_weight = 0.0;  // kg
  WindowLimits window_limits;
};

// "sg-2017": van 1060 kg / S$280, 10ft 1360 kg / S$440, 14ft 2268 kg / S$640,
// carrier S$21 per package, 30 kg packages, 50 km per window.
PricingProfile pricing_profile(std::string_view name);
std::vector<std::string> profile_names();

struct SolomonRecord {
  int cust_no = 0;
  double x = 0.0;
  double y = 0.0;
  double demand = 0.0;
  double ready_time = 0.0;
  double due_date = 0.0;
  double service_time = 0.0;
};

// Depot first. Throws ParseError on a malformed header or record.
std::vector<SolomonRecord> parse_solomon_records(std::string_view text);

struct SolomonOptions {
  std::string profile = "sg-2017";
  // Trucks per profile type, in profile order; missing entries mean zero.
  std::vector<int> fleet{1, 1, 1};
  int carriers = 1;
  std::optional<double> package_weight;
  std::optional<WindowLimits> window_limits;
};

// morning below 12, afternoon below 15, evening otherwise, with
// w = ready_time / 150 + 9. Throws ValidationError on negative or non-finite
// input.
Window window_from_ready_time(double ready_time);

// Instance over the depot and the first `first_n` customers. Coordinates are
// kilometres; distances are Euclidean.
Instance parse_solomon(std::string_view text, int first_n,
                       const SolomonOptions& options = {});

// JSON interchange format. Throws ParseError on schema violations and
// ValidationError when the data breaks an instance or scenario invariant.
std::pair<Instance, ScenarioSet> parse_instance_file(std::string_view text);

// Throws ValidationError on an empty scenario set.
std::string write_instance_file(const Instance& instance, const ScenarioSet& scenarios);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace odp

#endif  // ODP_INGEST_HPP
