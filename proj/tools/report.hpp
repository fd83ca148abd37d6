#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace bwkit::app {

using nlohmann::json;

/// One validated quantity: `value` compared against `tolerance`.
struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  /// "<=" (value must not exceed tolerance) or ">" (value must exceed it).
  std::string relation = "<=";

  bool passed() const { return relation == ">" ? value > tolerance : value <= tolerance; }
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  json result = json::object();
  json settings = json::object();
  /// Wall-clock timings; the only part of a report that varies between runs.
  json duration = json::object();

  void check(std::string name, double value, double tolerance) {
    checks_.push_back({std::move(name), value, tolerance, "<="});
  }
  void check_above(std::string name, double value, double threshold) {
    checks_.push_back({std::move(name), value, threshold, ">"});
  }

  const std::string& command() const { return command_; }
  const std::vector<Check>& checks() const { return checks_; }
  bool all_passed() const {
    for (const auto& c : checks_)
      if (!c.passed()) return false;
    return true;
  }

  json checks_json() const {
    json out = json::array();
    for (const auto& c : checks_) {
      out.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"relation", c.relation},
                     {"passed", c.passed()}});
    }
    return out;
  }

 private:
  std::string command_;
  std::vector<Check> checks_;
};

}  // namespace bwkit::app
