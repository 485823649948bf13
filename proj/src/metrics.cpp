#include "winspect/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace winspect {

void CameraModel::validate() const {
  if (!(fov_deg > 0.0 && fov_deg < 180.0)) throw std::invalid_argument("camera.fov must be in (0,180)");
  if (!(min_range >= 0.0)) throw std::invalid_argument("camera.min_range must be >= 0");
  if (!(min_range < max_range)) throw std::invalid_argument("camera.min_range must be < camera.max_range");
  if (!(max_incidence_deg > 0.0 && max_incidence_deg <= 90.0))
    throw std::invalid_argument("camera.max_incidence must be in (0,90]");
}

double path_length(const FlightLog& log) {
  if (log.samples.empty()) throw std::invalid_argument("path_length: empty log");
  double len = 0.0;
  for (size_t i = 1; i < log.samples.size(); ++i)
    len += distance(log.samples[i - 1].position, log.samples[i].position);
  return len;
}

double inspection_time_min(const std::vector<FlightLog>& logs) {
  if (logs.empty()) throw std::invalid_argument("inspection_time: no logs");
  double max_span = 0.0;
  for (const FlightLog& log : logs) {
    if (log.samples.empty()) continue;
    max_span = std::max(max_span, log.samples.back().t - log.samples.front().t);
  }
  return max_span / 60.0;
}

double mean_deviation(const FlightLog& log) {
  if (log.samples.empty()) throw std::invalid_argument("mean_deviation: empty log");
  double sum = 0.0;
  for (const FlightSample& s : log.samples) sum += distance(s.position, s.reference);
  return sum / static_cast<double>(log.samples.size());
}

namespace {

struct SurfacePoint {
  Point3 position;
  Vec3 normal;
  int blade_id;  // global blade index across turbines
};

struct ViewSample {
  Point3 position;
  Vec3 gaze;
};

bool sees(const ViewSample& view, const SurfacePoint& pt, const CameraModel& cam,
          double cos_half_fov, double cos_max_incidence) {
  Vec3 to_pt = pt.position - view.position;
  double range = norm(to_pt);
  if (range < cam.min_range || range > cam.max_range) return false;
  if (dot(view.gaze, to_pt) < cos_half_fov * range) return false;
  // incidence between the ray back to the camera and the face normal
  if (dot(-1.0 * to_pt, pt.normal) < cos_max_incidence * range) return false;
  return true;
}

}  // namespace

double surface_coverage(const std::vector<FlightLog>& logs,
                        const std::vector<TurbineModel>& turbines, const CameraModel& camera,
                        double sample_density, RunMode mode) {
  camera.validate();
  if (!(sample_density > 0.0)) throw std::invalid_argument("sample_density must be > 0");
  if (turbines.empty()) return 0.0;

  std::vector<SurfacePoint> points;
  int blade_total = 0;
  for (const TurbineModel& turbine : turbines) {
    std::vector<Point3> tips = blade_tips(turbine);
    Vec3 normal = turbine.rotor_axis();
    for (int k = 0; k < turbine.blade_count; ++k) {
      int m = static_cast<int>(std::ceil(turbine.blade_length * sample_density));
      for (int j = 0; j < m; ++j) {
        double s = (j + 0.5) / m;
        Point3 p = turbine.hub_position + s * (tips[k] - turbine.hub_position);
        points.push_back({p, normal, blade_total});
        points.push_back({p, -1.0 * normal, blade_total});
      }
      ++blade_total;
    }
  }
  if (points.empty() || blade_total == 0) return 0.0;

  std::vector<ViewSample> views;
  for (const FlightLog& log : logs)
    for (const FlightSample& s : log.samples) views.push_back({s.position, s.gaze});

  const double cos_half_fov = std::cos(deg2rad(camera.fov_deg / 2.0));
  const double cos_max_inc = std::cos(deg2rad(camera.max_incidence_deg));

  const int np = static_cast<int>(points.size());
  std::vector<uint8_t> covered(np, 0);
  auto evaluate = [&](int i) {
    const SurfacePoint& pt = points[i];
    for (const ViewSample& view : views) {
      if (sees(view, pt, camera, cos_half_fov, cos_max_inc)) {
        covered[i] = 1;
        return;
      }
    }
  };

  if (mode == RunMode::parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (int i = 0; i < np; ++i) evaluate(i);
  } else {
    for (int i = 0; i < np; ++i) evaluate(i);
  }

  std::vector<int> seen_per_blade(blade_total, 0), total_per_blade(blade_total, 0);
  for (int i = 0; i < np; ++i) {
    ++total_per_blade[points[i].blade_id];
    seen_per_blade[points[i].blade_id] += covered[i];
  }
  double pct_sum = 0.0;
  for (int b = 0; b < blade_total; ++b)
    pct_sum += 100.0 * seen_per_blade[b] / std::max(total_per_blade[b], 1);
  return pct_sum / blade_total;
}

MetricsReport build_report(const std::vector<FlightLog>& logs,
                           const std::vector<TurbineModel>& turbines, const CameraModel& camera,
                           double sample_density, int uav_count, RunMode mode) {
  MetricsReport report;
  report.total_time_min = inspection_time_min(logs);
  double length = 0.0, dev_sum = 0.0;
  size_t samples = 0;
  for (const FlightLog& log : logs) {
    if (log.samples.empty()) continue;
    length += path_length(log);
    for (const FlightSample& s : log.samples) dev_sum += distance(s.position, s.reference);
    samples += log.samples.size();
  }
  report.total_length_m = length;
  report.mean_deviation_m = samples ? dev_sum / static_cast<double>(samples) : 0.0;
  report.blade_coverage_pct = surface_coverage(logs, turbines, camera, sample_density, mode);
  report.uav_count = uav_count;
  report.operator_count = 0;  // autonomous runs
  return report;
}

namespace {

std::string fmt(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
  return buf;
}

}  // namespace

std::string metrics_csv(const MetricsReport& r) {
  std::ostringstream os;
  os << "total_time_min,total_length_m,blade_coverage_pct,mean_deviation_m,uav_count,operator_count\n";
  os << fmt(r.total_time_min) << ',' << fmt(r.total_length_m) << ',' << fmt(r.blade_coverage_pct)
     << ',' << fmt(r.mean_deviation_m) << ',' << r.uav_count << ',' << r.operator_count << '\n';
  return os.str();
}

MetricsReport parse_metrics_csv(std::istream& is) {
  std::string header, row;
  if (!std::getline(is, header) || !std::getline(is, row))
    throw std::runtime_error("metrics csv: missing header or row");
  std::vector<double> vals;
  std::stringstream ss(row);
  std::string cell;
  while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
  if (vals.size() != 6) throw std::runtime_error("metrics csv: expected 6 columns");
  MetricsReport r;
  r.total_time_min = vals[0];
  r.total_length_m = vals[1];
  r.blade_coverage_pct = vals[2];
  r.mean_deviation_m = vals[3];
  r.uav_count = static_cast<int>(vals[4]);
  r.operator_count = static_cast<int>(vals[5]);
  return r;
}

std::string compare_report(const std::vector<MetricsReport>& reports,
                           const std::vector<std::string>& labels) {
  if (reports.size() != labels.size()) throw std::invalid_argument("compare_report: length mismatch");
  if (reports.size() < 2) throw std::invalid_argument("compare_report: need at least two reports");

  struct MetricCol {
    const char* name;
    double (*get)(const MetricsReport&);
    bool integral;
  };
  const MetricCol cols[] = {
      {"total_time_min", [](const MetricsReport& r) { return r.total_time_min; }, false},
      {"total_length_m", [](const MetricsReport& r) { return r.total_length_m; }, false},
      {"blade_coverage_pct", [](const MetricsReport& r) { return r.blade_coverage_pct; }, false},
      {"mean_deviation_m", [](const MetricsReport& r) { return r.mean_deviation_m; }, false},
      {"uav_count", [](const MetricsReport& r) { return static_cast<double>(r.uav_count); }, true},
      {"operator_count",
       [](const MetricsReport& r) { return static_cast<double>(r.operator_count); }, true},
  };

  std::ostringstream os;
  os << "metric";
  for (const std::string& l : labels) os << ',' << l;
  for (size_t i = 1; i < labels.size(); ++i) os << ',' << labels[i] << "_pct_change";
  os << '\n';
  for (const MetricCol& col : cols) {
    os << col.name;
    for (const MetricsReport& r : reports)
      os << ',' << (col.integral ? std::to_string(static_cast<long long>(col.get(r)))
                                 : fmt(col.get(r)));
    double base = col.get(reports[0]);
    for (size_t i = 1; i < reports.size(); ++i) {
      os << ',';
      if (base != 0.0) os << fmt((col.get(reports[i]) - base) / base * 100.0, 1);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace winspect
