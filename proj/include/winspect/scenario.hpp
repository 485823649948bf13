#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "winspect/control.hpp"
#include "winspect/geometry.hpp"
#include "winspect/metrics.hpp"
#include "winspect/trajectory.hpp"

namespace winspect {

/// Configuration/validation failure; the message names the offending key.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  std::vector<TurbineModel> turbines;
  int uav_count = 1;
  WindModel wind;
  PlannerParams planner;
  PIDGains gains;
  CameraModel camera;
  double sample_density = 2.0;  // coverage surface points per meter
  double dt = 0.05;             // s, (0, 0.5]
  uint64_t seed = 0;
  int image_size = 512;         // segmentation frame resolution
  std::string label = "scenario";
  std::string terrain;          // free-text, no behavioral effect
};

/// Parses the flat key-value scenario format (see docs/scenario_format.md),
/// applies documented defaults, and validates every invariant. Throws
/// ScenarioError naming the offending key.
Scenario parse_scenario(std::istream& is, const std::string& name_hint = "scenario");
Scenario load_scenario(const std::string& path);

}  // namespace winspect
