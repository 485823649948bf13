#include "winspect/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "winspect/render.hpp"

namespace winspect {

namespace {

template <class F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const PipelineError&) {
    throw;  // already attributed
  } catch (const std::exception& e) {
    throw PipelineError(std::string(name) + ": " + e.what());
  }
}

// Field of view that frames the whole inspection zone from the given range,
// with margin. The coverage camera keeps its own configured fov.
double fit_fov_deg(double zone_radius, double range) {
  double fov = 2.0 * rad2deg(std::atan2(1.15 * zone_radius, range));
  return std::clamp(fov, 20.0, 150.0);
}

}  // namespace

TurbineObservation observe_turbine(const TurbineModel& turbine, int turbine_id, int image_size,
                                   RunMode mode) {
  TurbineObservation obs;
  obs.turbine_id = turbine_id;

  std::vector<Point3> tips = stage("blade_tips", [&] { return blade_tips(turbine); });
  obs.zone = stage("compute_zone", [&] { return compute_zone(tips); });
  obs.initial_point = stage("initial_point", [&] { return initial_point(obs.zone); });

  RenderOptions options;
  options.width = options.height = image_size;
  options.fov_deg = fit_fov_deg(obs.zone.radius, distance(obs.initial_point, obs.zone.center));
  CameraPose pose{obs.initial_point, obs.zone.center};
  Raster image = stage("render_silhouette",
                       [&] { return render_silhouette(turbine, pose, options, mode); });

  std::vector<Segment> segments =
      stage("segment_components", [&] { return segment_components(image); });
  stage("remove_background", [&] { return remove_background(image, segments); });

  double threshold = default_area_threshold(image.width, image.height);
  obs.orientations.resize(turbine.blade_count);
  for (int k = 0; k < turbine.blade_count; ++k) {
    uint8_t label = static_cast<uint8_t>(kLabelBladeBase + k);
    std::vector<Contour> contours;
    for (const Segment& seg : segments) {
      if (seg.source_label != label) continue;
      BinaryMask mask = stage("binarize", [&] { return binarize(seg); });
      auto traced = stage("find_contours", [&] { return find_contours(mask); });
      contours.insert(contours.end(), traced.begin(), traced.end());
    }
    contours = stage("filter_by_area", [&] { return filter_by_area(contours, threshold); });
    if (contours.empty())
      throw PipelineError("filter_by_area: blade " + std::to_string(k) +
                          " of turbine " + std::to_string(turbine_id) + " not recovered");
    const Contour* best = &contours.front();
    double best_area = contour_area(*best);
    for (const Contour& c : contours) {
      double a = contour_area(c);
      if (a > best_area) {
        best = &c;
        best_area = a;
      }
    }
    RotatedRect rect = stage("min_area_rect", [&] { return min_area_rect(*best); });
    obs.orientations[k] = stage("pitch_angle", [&] { return estimate_orientation(rect); });
  }
  return obs;
}

PipelineResult run_pipeline(const Scenario& scenario, RunMode mode) {
  PipelineResult result;
  std::vector<std::vector<BladeOrientation>> orientations;
  for (size_t i = 0; i < scenario.turbines.size(); ++i) {
    TurbineObservation obs =
        observe_turbine(scenario.turbines[i], static_cast<int>(i), scenario.image_size, mode);
    orientations.push_back(obs.orientations);
    result.observations.push_back(std::move(obs));
  }

  result.plan = stage("assemble_mission", [&] {
    return assemble_mission(scenario.turbines, orientations, scenario.uav_count, scenario.planner);
  });
  result.logs = stage("simulate_flight", [&] {
    return simulate_flight(result.plan, scenario.gains, scenario.wind, scenario.dt, mode);
  });
  result.report = stage("metrics", [&] {
    return build_report(result.logs, scenario.turbines, scenario.camera, scenario.sample_density,
                        scenario.uav_count, mode);
  });
  return result;
}

namespace {

std::string fmt(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

struct Cell {
  std::string text;
  bool is_string = false;
};

Cell num(double v, int prec = 6) { return {fmt(v, prec), false}; }
Cell num(int v) { return {std::to_string(v), false}; }
Cell str(std::string s) { return {std::move(s), true}; }

// One tabular output in either format: CSV gets a header row, JSON lines get
// one object per row with the same column order.
class TableFile {
 public:
  TableFile(const std::string& path, OutputFormat format, std::vector<std::string> columns)
      : os_(path, std::ios::binary), format_(format), columns_(std::move(columns)) {
    if (!os_) throw std::runtime_error("cannot open " + path);
    if (format_ == OutputFormat::csv) {
      for (size_t i = 0; i < columns_.size(); ++i) os_ << (i ? "," : "") << columns_[i];
      os_ << '\n';
    }
  }

  void row(const std::vector<Cell>& cells) {
    if (format_ == OutputFormat::csv) {
      for (size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i].text;
      os_ << '\n';
    } else {
      os_ << '{';
      for (size_t i = 0; i < cells.size(); ++i) {
        os_ << (i ? "," : "") << '"' << json_escape(columns_[i]) << "\":";
        if (cells[i].is_string)
          os_ << '"' << json_escape(cells[i].text) << '"';
        else
          os_ << cells[i].text;
      }
      os_ << "}\n";
    }
  }

 private:
  std::ofstream os_;
  OutputFormat format_;
  std::vector<std::string> columns_;
};

const char* table_ext(OutputFormat format) {
  return format == OutputFormat::csv ? ".csv" : ".jsonl";
}

}  // namespace

void write_outputs(const PipelineResult& result, const Scenario& scenario,
                   const std::string& out_dir, OutputFormat format) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const std::string base = out_dir + "/";

  {
    TableFile mission(base + "mission" + table_ext(format), format,
                      {"uav_id", "segment_index", "kind", "waypoint_index", "x", "y", "z",
                       "gaze_x", "gaze_y", "gaze_z", "speed"});
    for (int u = 0; u < result.plan.uav_count; ++u) {
      const auto& route = result.plan.routes[u];
      for (size_t s = 0; s < route.size(); ++s) {
        for (size_t w = 0; w < route[s].waypoints.size(); ++w) {
          const Waypoint& wp = route[s].waypoints[w];
          mission.row({num(u), num(static_cast<int>(s)), str(to_string(route[s].kind)),
                       num(static_cast<int>(w)), num(wp.position.x), num(wp.position.y),
                       num(wp.position.z), num(wp.gaze.x), num(wp.gaze.y), num(wp.gaze.z),
                       num(wp.speed)});
        }
      }
    }
  }

  for (const FlightLog& log : result.logs) {
    TableFile flight(base + "flight_uav" + std::to_string(log.uav_id) + table_ext(format), format,
                     {"t", "x", "y", "z", "ref_x", "ref_y", "ref_z", "ux", "uy", "uz", "wx", "wy",
                      "wz"});
    for (const FlightSample& s : log.samples)
      flight.row({num(s.t), num(s.position.x), num(s.position.y), num(s.position.z),
                  num(s.reference.x), num(s.reference.y), num(s.reference.z), num(s.control.x),
                  num(s.control.y), num(s.control.z), num(s.wind.x), num(s.wind.y),
                  num(s.wind.z)});
  }

  {
    const MetricsReport& r = result.report;
    TableFile metrics(base + "metrics" + table_ext(format), format,
                      {"total_time_min", "total_length_m", "blade_coverage_pct",
                       "mean_deviation_m", "uav_count", "operator_count"});
    metrics.row({num(r.total_time_min), num(r.total_length_m), num(r.blade_coverage_pct),
                 num(r.mean_deviation_m), num(r.uav_count), num(r.operator_count)});
  }

  std::ofstream report(base + "report.txt", std::ios::binary);
  if (!report) throw std::runtime_error("cannot open " + base + "report.txt");
  report << "scenario: " << scenario.label << '\n';
  if (!scenario.terrain.empty()) report << "terrain: " << scenario.terrain << '\n';
  report << "seed: " << scenario.seed << '\n';
  report << "turbines: " << scenario.turbines.size() << '\n';
  report << "uavs: " << scenario.uav_count << '\n';
  report << '\n' << "blade orientations:\n";
  std::vector<OrientationRow> rows;
  for (const TurbineObservation& obs : result.observations)
    for (size_t k = 0; k < obs.orientations.size(); ++k)
      rows.push_back({obs.turbine_id, static_cast<int>(k), obs.orientations[k]});
  report << orientation_table(rows);
  report << '\n' << "metrics:\n" << metrics_csv(result.report);
}

std::vector<AngleSweepRow> sweep_angle_harness(int steps, int image_size, RunMode mode) {
  if (steps < 1) throw std::invalid_argument("sweep_angle_harness: steps must be >= 1");
  std::vector<AngleSweepRow> rows;
  rows.reserve(steps);

  for (int i = 0; i < steps; ++i) {
    double truth_target = 180.0 * i / steps;

    // One blade in the world YZ plane; the camera sits on the rotor axis so the
    // projection is fronto-parallel and angle-preserving.
    double azimuth = std::fmod(360.0 - truth_target, 360.0);
    TurbineModel turbine = make_turbine({0, 0, 0}, 80.0, 0.0, 40.0, 1, azimuth);
    CameraPose pose{turbine.hub_position + Vec3{2.0 * turbine.blade_length, 0.0, 0.0},
                    turbine.hub_position};
    RenderOptions options;
    options.width = options.height = image_size;
    options.fov_deg = 60.0;

    // Ground truth from the projected blade endpoints, same convention as the
    // estimator ([0,180], y down).
    ProjectedPoint hub_px =
        project_point(pose, options.fov_deg, options.width, options.height, turbine.hub_position);
    ProjectedPoint tip_px = project_point(pose, options.fov_deg, options.width, options.height,
                                          blade_tips(turbine)[0]);
    double truth = rad2deg(std::atan2(tip_px.v - hub_px.v, tip_px.u - hub_px.u));
    truth = std::fmod(truth, 180.0);
    if (truth < 0.0) truth += 180.0;

    Raster image = render_silhouette(turbine, pose, options, mode);
    std::vector<Segment> segments = segment_components(image);
    double threshold = default_area_threshold(image.width, image.height);
    AngleSweepRow row;
    row.truth_deg = truth;
    row.truth_class = classify_tilt(truth);
    bool found = false;
    for (const Segment& seg : segments) {
      if (seg.kind != ComponentKind::Blade) continue;
      auto contours = filter_by_area(find_contours(binarize(seg)), threshold);
      for (const Contour& c : contours) {
        BladeOrientation est = estimate_orientation(min_area_rect(c));
        row.estimate_deg = est.theta_deg;
        row.estimate_class = est.tilt_class;
        found = true;
      }
    }
    if (!found) throw PipelineError("sweep_angle: blade not recovered at step " + std::to_string(i));
    double diff = std::abs(row.estimate_deg - row.truth_deg);
    row.error_deg = std::min(diff, 180.0 - diff);
    rows.push_back(row);
  }
  return rows;
}

std::string angle_sweep_table(const std::vector<AngleSweepRow>& rows) {
  std::ostringstream os;
  os << "truth_deg,est_deg,err_deg,truth_class,est_class\n";
  for (const AngleSweepRow& r : rows)
    os << fmt(r.truth_deg, 3) << ',' << fmt(r.estimate_deg, 3) << ',' << fmt(r.error_deg, 3) << ','
       << to_string(r.truth_class) << ',' << to_string(r.estimate_class) << '\n';
  return os.str();
}

}  // namespace winspect
