#include "odp/ingest.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace odp {

namespace {

using nlohmann::json;

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos > start) fields.push_back(line.substr(start, pos - start));
  }
  return fields;
}

double to_number(std::string_view field, int line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
    throw ParseError("line " + std::to_string(line_no) + ": '" + std::string(field) +
                     "' is not a number");
  }
  return value;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

const json& require(const json& object, const char* key, const std::string& where) {
  if (!object.is_object() || !object.contains(key)) {
    throw ParseError(where + ": missing key '" + key + "'");
  }
  return object.at(key);
}

double number(const json& value, const std::string& where) {
  if (!value.is_number()) throw ParseError(where + ": expected a number");
  return value.get<double>();
}

int integer(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw ParseError(where + ": expected an integer");
  return value.get<int>();
}

Matrix<double> matrix(const json& value, const std::string& where) {
  if (!value.is_array()) throw ParseError(where + ": expected an array of rows");
  const std::size_t n = value.size();
  Matrix<double> out(n, n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    const json& row = value[u];
    if (!row.is_array() || row.size() != n) {
      throw ParseError(where + ": row " + std::to_string(u) + " must have " +
                       std::to_string(n) + " entries");
    }
    for (std::size_t v = 0; v < n; ++v) {
      out(u, v) = number(row[v], where + "[" + std::to_string(u) + "][" +
                                     std::to_string(v) + "]");
    }
  }
  return out;
}

json matrix_json(const Matrix<double>& m) {
  json rows = json::array();
  for (std::size_t u = 0; u < m.rows(); ++u) {
    json row = json::array();
    for (std::size_t v = 0; v < m.cols(); ++v) row.push_back(m(u, v));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

PricingProfile pricing_profile(std::string_view name) {
  if (name == "sg-2017") {
    PricingProfile p;
    p.name = "sg-2017";
    p.truck_types = {{1060.0, 280.0, "van"},
                     {1360.0, 440.0, "10ft"},
                     {2268.0, 640.0, "14ft"}};
    p.carrier_charge = 21.0;
    p.package_weight = 30.0;
    p.window_limits = {50.0, 50.0, 50.0};
    return p;
  }
  throw ValidationError("unknown pricing profile '" + std::string(name) + "'");
}

std::vector<std::string> profile_names() { return {"sg-2017"}; }

std::vector<SolomonRecord> parse_solomon_records(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }

  std::size_t i = 0;
  auto skip_blank = [&] {
    while (i < lines.size() && split_fields(lines[i]).empty()) ++i;
  };
  auto expect_keyword = [&](std::string_view keyword) {
    skip_blank();
    if (i >= lines.size()) {
      throw ParseError("missing " + std::string(keyword) + " section");
    }
    const auto fields = split_fields(lines[i]);
    if (upper(fields.front()) != keyword) {
      throw ParseError("line " + std::to_string(i + 1) + ": expected " +
                       std::string(keyword) + " section");
    }
    ++i;
  };

  skip_blank();
  if (i >= lines.size()) throw ParseError("empty Solomon file");
  ++i;  // instance name
  expect_keyword("VEHICLE");
  expect_keyword("NUMBER");
  skip_blank();
  if (i >= lines.size() || split_fields(lines[i]).size() != 2) {
    throw ParseError("malformed vehicle line");
  }
  to_number(split_fields(lines[i])[0], static_cast<int>(i + 1));
  to_number(split_fields(lines[i])[1], static_cast<int>(i + 1));
  ++i;
  expect_keyword("CUSTOMER");
  expect_keyword("CUST");

  std::vector<SolomonRecord> records;
  for (; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    if (fields.empty()) continue;
    const int line_no = static_cast<int>(i + 1);
    if (fields.size() != 7) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 7 fields, got " +
                       std::to_string(fields.size()));
    }
    SolomonRecord r;
    const double id = to_number(fields[0], line_no);
    if (id != std::floor(id) || id != static_cast<double>(records.size())) {
      throw ParseError("line " + std::to_string(line_no) + ": customer number " +
                       std::string(fields[0]) + " out of sequence");
    }
    r.cust_no = static_cast<int>(id);
    r.x = to_number(fields[1], line_no);
    r.y = to_number(fields[2], line_no);
    r.demand = to_number(fields[3], line_no);
    r.ready_time = to_number(fields[4], line_no);
    r.due_date = to_number(fields[5], line_no);
    r.service_time = to_number(fields[6], line_no);
    records.push_back(r);
  }
  if (records.empty()) throw ParseError("no depot record");
  return records;
}

Window window_from_ready_time(double ready_time) {
  if (!std::isfinite(ready_time) || ready_time < 0.0) {
    throw ValidationError("ready time must be finite and non-negative");
  }
  const double w = ready_time / 150.0 + 9.0;
  if (w < 12.0) return Window::kMorning;
  if (w < 15.0) return Window::kAfternoon;
  return Window::kEvening;
}

Instance parse_solomon(std::string_view text, int first_n, const SolomonOptions& options) {
  const std::vector<SolomonRecord> records = parse_solomon_records(text);
  const int available = static_cast<int>(records.size()) - 1;
  if (first_n < 0 || first_n > available) {
    throw ParseError("requested " + std::to_string(first_n) + " customers but the file has " +
                     std::to_string(available));
  }
  const PricingProfile profile = pricing_profile(options.profile);
  if (options.fleet.size() > profile.truck_types.size()) {
    throw ValidationError("fleet lists more truck types than the profile has");
  }
  if (options.carriers < 0) throw ValidationError("carrier count must be >= 0");

  InstanceData data;
  const double weight = options.package_weight.value_or(profile.package_weight);
  for (int c = 1; c <= first_n; ++c) {
    data.customers.push_back({c, weight, window_from_ready_time(records[c].ready_time)});
  }
  for (std::size_t k = 0; k < options.fleet.size(); ++k) {
    if (options.fleet[k] < 0) throw ValidationError("fleet counts must be >= 0");
    for (int copy = 0; copy < options.fleet[k]; ++copy) {
      data.trucks.push_back(profile.truck_types[k]);
    }
  }
  for (int r = 0; r < options.carriers; ++r) {
    data.carriers.push_back({std::vector<double>(first_n, profile.carrier_charge)});
  }
  data.distance_km = Matrix<double>(first_n + 1, first_n + 1, 0.0);
  for (int u = 0; u <= first_n; ++u) {
    for (int v = 0; v <= first_n; ++v) {
      data.distance_km(u, v) = std::hypot(records[u].x - records[v].x,
                                          records[u].y - records[v].y);
    }
  }
  data.window_limits = options.window_limits.value_or(profile.window_limits);
  return make_instance(std::move(data));
}

std::pair<Instance, ScenarioSet> parse_instance_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance file must be a JSON object");

  InstanceData data;
  const json& customers = require(doc, "customers", "instance");
  if (!customers.is_array()) throw ParseError("customers: expected an array");
  for (std::size_t k = 0; k < customers.size(); ++k) {
    const std::string where = "customers[" + std::to_string(k) + "]";
    const json& c = customers[k];
    Customer customer;
    customer.id = integer(require(c, "id", where), where + ".id");
    customer.package_weight = number(require(c, "weight_kg", where), where + ".weight_kg");
    const json& window = require(c, "window", where);
    if (!window.is_string()) throw ParseError(where + ".window: expected a string");
    try {
      customer.window = parse_window(window.get<std::string>());
    } catch (const Error& e) {
      throw ParseError(where + ".window: " + e.what());
    }
    data.customers.push_back(customer);
  }

  const json& trucks = require(doc, "trucks", "instance");
  if (!trucks.is_array()) throw ParseError("trucks: expected an array");
  for (std::size_t k = 0; k < trucks.size(); ++k) {
    const std::string where = "trucks[" + std::to_string(k) + "]";
    Truck truck;
    truck.capacity_kg = number(require(trucks[k], "capacity_kg", where), where);
    truck.initial_cost = number(require(trucks[k], "initial_cost", where), where);
    if (trucks[k].contains("label")) {
      if (!trucks[k]["label"].is_string()) throw ParseError(where + ".label: expected a string");
      truck.label = trucks[k]["label"].get<std::string>();
    }
    data.trucks.push_back(truck);
  }

  const json& carriers = require(doc, "carriers", "instance");
  if (!carriers.is_array()) throw ParseError("carriers: expected an array");
  for (std::size_t k = 0; k < carriers.size(); ++k) {
    const std::string where = "carriers[" + std::to_string(k) + "]";
    const json& charges = require(carriers[k], "charges", where);
    if (!charges.is_array()) throw ParseError(where + ".charges: expected an array");
    Carrier carrier;
    for (const json& v : charges) carrier.charge_per_customer.push_back(number(v, where));
    data.carriers.push_back(carrier);
  }

  data.distance_km = matrix(require(doc, "distance_km", "instance"), "distance_km");
  if (doc.contains("routing_cost")) {
    data.routing_cost = matrix(doc["routing_cost"], "routing_cost");
  }
  const json& limits = require(doc, "window_limits_km", "instance");
  data.window_limits.morning = number(require(limits, "morning", "window_limits_km"),
                                      "window_limits_km.morning");
  data.window_limits.afternoon = number(require(limits, "afternoon", "window_limits_km"),
                                        "window_limits_km.afternoon");
  data.window_limits.evening = number(require(limits, "evening", "window_limits_km"),
                                      "window_limits_km.evening");
  if (doc.contains("assignment_weight")) {
    data.assignment_weight = number(doc["assignment_weight"], "assignment_weight");
  }
  if (doc.contains("big_m")) data.big_m = integer(doc["big_m"], "big_m");
  if (doc.contains("location_labels")) {
    const json& labels = doc["location_labels"];
    if (!labels.is_array()) throw ParseError("location_labels: expected an array");
    for (const json& label : labels) {
      if (!label.is_string()) throw ParseError("location_labels: expected strings");
      data.location_labels.push_back(label.get<std::string>());
    }
  }

  const json& scenario_list = require(doc, "scenarios", "instance");
  if (!scenario_list.is_array()) throw ParseError("scenarios: expected an array");
  std::vector<Scenario> scenarios;
  for (std::size_t k = 0; k < scenario_list.size(); ++k) {
    const std::string where = "scenarios[" + std::to_string(k) + "]";
    Scenario s;
    const json& demand = require(scenario_list[k], "demand", where);
    if (!demand.is_array()) throw ParseError(where + ".demand: expected an array");
    for (const json& d : demand) s.demand.push_back(integer(d, where + ".demand"));
    s.probability = number(require(scenario_list[k], "p", where), where + ".p");
    scenarios.push_back(std::move(s));
  }

  Instance instance = make_instance(std::move(data));
  ScenarioSet set = make_scenario_set(std::move(scenarios), instance.num_customers());
  return {std::move(instance), std::move(set)};
}

std::string write_instance_file(const Instance& instance, const ScenarioSet& scenarios) {
  if (scenarios.empty()) throw ValidationError("cannot write an empty scenario set");
  check_compatible(instance, scenarios);
  const InstanceData data = instance.data();

  json doc;
  doc["customers"] = json::array();
  for (const Customer& c : data.customers) {
    doc["customers"].push_back({{"id", c.id},
                                {"weight_kg", c.package_weight},
                                {"window", std::string(window_name(c.window))}});
  }
  doc["trucks"] = json::array();
  for (const Truck& t : data.trucks) {
    json truck{{"capacity_kg", t.capacity_kg}, {"initial_cost", t.initial_cost}};
    if (!t.label.empty()) truck["label"] = t.label;
    doc["trucks"].push_back(std::move(truck));
  }
  doc["carriers"] = json::array();
  for (const Carrier& r : data.carriers) {
    doc["carriers"].push_back({{"charges", r.charge_per_customer}});
  }
  doc["distance_km"] = matrix_json(data.distance_km);
  if (instance.routing_cost_matrix() != default_routing_cost(instance.distance_matrix())) {
    doc["routing_cost"] = matrix_json(instance.routing_cost_matrix());
  }
  doc["window_limits_km"] = {{"morning", data.window_limits.morning},
                             {"afternoon", data.window_limits.afternoon},
                             {"evening", data.window_limits.evening}};
  doc["assignment_weight"] = data.assignment_weight;
  doc["big_m"] = data.big_m;

  std::vector<std::string> default_labels{"depot"};
  for (int u = 1; u < instance.num_locations(); ++u) {
    default_labels.push_back("C" + std::to_string(u));
  }
  if (data.location_labels != default_labels) doc["location_labels"] = data.location_labels;

  doc["scenarios"] = json::array();
  for (const Scenario& s : scenarios.scenarios()) {
    doc["scenarios"].push_back({{"demand", s.demand}, {"p", s.probability}});
  }
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("failed writing " + path);
}

}  // namespace odp
