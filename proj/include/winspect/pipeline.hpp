#pragma once

#include <string>
#include <vector>

#include "winspect/control.hpp"
#include "winspect/geometry.hpp"
#include "winspect/metrics.hpp"
#include "winspect/parallel.hpp"
#include "winspect/scenario.hpp"
#include "winspect/trajectory.hpp"
#include "winspect/vision.hpp"

namespace winspect {

/// What the vision front end recovered for one turbine from its S_p frame.
struct TurbineObservation {
  int turbine_id = 0;
  InspectionZone zone;
  Point3 initial_point{};
  std::vector<BladeOrientation> orientations;  // one per blade, ascending index
};

struct PipelineResult {
  std::vector<TurbineObservation> observations;
  MissionPlan plan;
  std::vector<FlightLog> logs;
  MetricsReport report;
};

/// Pipeline error with the failing stage name prefixed to the message.
class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vision front end for a single turbine: zone -> S_p -> silhouette ->
/// segmentation -> background removal -> binarize -> contours -> area filter
/// -> min-area rect -> pitch angle -> tilt class.
TurbineObservation observe_turbine(const TurbineModel& turbine, int turbine_id, int image_size,
                                   RunMode mode = RunMode::parallel);

/// Full run: observe every turbine, assemble the mission, simulate the fleet
/// under wind, and compute the metrics report. Deterministic per seed.
PipelineResult run_pipeline(const Scenario& scenario, RunMode mode = RunMode::parallel);

enum class OutputFormat { csv, json_lines };

/// Writes mission/flight/metrics tables plus report.txt into out_dir using
/// fixed file names. Byte-deterministic for a given result.
void write_outputs(const PipelineResult& result, const Scenario& scenario,
                   const std::string& out_dir, OutputFormat format = OutputFormat::csv);

struct AngleSweepRow {
  double truth_deg = 0.0;
  double estimate_deg = 0.0;
  double error_deg = 0.0;  // wrapped modulo 180
  TiltClass truth_class = TiltClass::Horizontal;
  TiltClass estimate_class = TiltClass::Horizontal;
};

/// Renders a single fronto-parallel blade at `steps` image-plane angles evenly
/// spaced over [0, 180) and runs the estimation pipeline on each frame. The
/// ground truth is measured from the projected hub/tip pixels.
std::vector<AngleSweepRow> sweep_angle_harness(int steps, int image_size = 512,
                                               RunMode mode = RunMode::parallel);

std::string angle_sweep_table(const std::vector<AngleSweepRow>& rows);

}  // namespace winspect
