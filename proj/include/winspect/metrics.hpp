#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "winspect/control.hpp"
#include "winspect/geometry.hpp"
#include "winspect/parallel.hpp"

namespace winspect {

/// Gimbal camera visibility limits used by the coverage metric.
struct CameraModel {
  double fov_deg = 60.0;           // gaze cone full angle, (0, 180)
  double min_range = 2.0;          // m, >= 0
  double max_range = 25.0;         // m, > min_range
  double max_incidence_deg = 60.0; // degrees off the surface normal, (0, 90]
  void validate() const;
};

struct MetricsReport {
  double total_time_min = 0.0;
  double total_length_m = 0.0;
  double blade_coverage_pct = 0.0;
  double mean_deviation_m = 0.0;
  int uav_count = 0;
  int operator_count = 0;
};

/// Sum of distances between consecutive actual positions.
double path_length(const FlightLog& log);

/// Wall-clock of the parallel fleet: max over UAVs of the log time span, minutes.
double inspection_time_min(const std::vector<FlightLog>& logs);

/// Mean over samples of |actual - reference|.
double mean_deviation(const FlightLog& log);

/// Blade surfaces sampled along each blade axis on both faces (normals along
/// +/- the rotor axis). A point counts as covered when some log sample sees it
/// within [min_range, max_range], inside the gaze cone of half-angle fov/2,
/// and at incidence <= max_incidence. Returns the per-blade coverage percent
/// averaged over all blades. Serial and parallel modes are bit-identical.
double surface_coverage(const std::vector<FlightLog>& logs,
                        const std::vector<TurbineModel>& turbines, const CameraModel& camera,
                        double sample_density, RunMode mode = RunMode::parallel);

MetricsReport build_report(const std::vector<FlightLog>& logs,
                           const std::vector<TurbineModel>& turbines, const CameraModel& camera,
                           double sample_density, int uav_count,
                           RunMode mode = RunMode::parallel);

/// metrics table header + one row, exact column order of the report fields.
std::string metrics_csv(const MetricsReport& report);
MetricsReport parse_metrics_csv(std::istream& is);

/// Per-metric comparison of the reports against the first (baseline) entry,
/// as delimited text with percent-change columns. Throws on length mismatch
/// or fewer than two entries.
std::string compare_report(const std::vector<MetricsReport>& reports,
                           const std::vector<std::string>& labels);

}  // namespace winspect
