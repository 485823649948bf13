#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "winspect/metrics.hpp"

using namespace winspect;

namespace {

FlightLog log_from_positions(const std::vector<Point3>& positions, double dt = 1.0) {
  FlightLog log;
  log.dt = dt;
  for (size_t i = 0; i < positions.size(); ++i)
    log.samples.push_back({i * dt, positions[i], positions[i], {1, 0, 0}, {}, {}});
  return log;
}

std::mt19937_64 rng(777);

}  // namespace

TEST_CASE("path_length: 3-4-5 leg, single sample, closed square") {
  CHECK(path_length(log_from_positions({{0, 0, 0}, {3, 4, 0}})) == doctest::Approx(5.0));
  CHECK(path_length(log_from_positions({{7, 7, 7}})) == 0.0);
  CHECK(path_length(log_from_positions(
            {{0, 0, 0}, {10, 0, 0}, {10, 10, 0}, {0, 10, 0}, {0, 0, 0}})) ==
        doctest::Approx(40.0));
}

TEST_CASE("path_length: invariant under rigid motion") {
  std::uniform_real_distribution<double> coord(-20.0, 20.0);
  std::vector<Point3> pts;
  for (int i = 0; i < 50; ++i) pts.push_back({coord(rng), coord(rng), coord(rng)});
  double base = path_length(log_from_positions(pts));

  double a = 0.7;
  Vec3 shift{4, -3, 12};
  std::vector<Point3> moved;
  for (const Point3& p : pts)
    moved.push_back(Vec3{p.x * std::cos(a) - p.y * std::sin(a),
                         p.x * std::sin(a) + p.y * std::cos(a), p.z} +
                    shift);
  CHECK(path_length(log_from_positions(moved)) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("inspection_time: wall clock of the parallel fleet") {
  FlightLog a = log_from_positions(std::vector<Point3>(481, Point3{}), 1.0);  // spans 480 s
  CHECK(inspection_time_min({a}) == doctest::Approx(8.0));

  FlightLog b = log_from_positions(std::vector<Point3>(301, Point3{}), 1.0);
  FlightLog c = log_from_positions(std::vector<Point3>(401, Point3{}), 1.0);
  CHECK(inspection_time_min({b, c, a}) == doctest::Approx(8.0));  // max, not sum
  CHECK(inspection_time_min({a, a}) == doctest::Approx(8.0));
}

TEST_CASE("mean_deviation: zero, constant offset, and a two-pass oracle") {
  FlightLog ideal = log_from_positions({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
  CHECK(mean_deviation(ideal) == 0.0);

  FlightLog offset = ideal;
  for (auto& s : offset.samples) s.position += Vec3{1, 0, 0};
  CHECK(mean_deviation(offset) == doctest::Approx(1.0));

  FlightLog noisy;
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    Point3 ref{d(rng), d(rng), d(rng)};
    Point3 act{d(rng), d(rng), d(rng)};
    noisy.samples.push_back({i * 0.1, act, ref, {1, 0, 0}, {}, {}});
  }
  double expected = 0.0;
  for (const auto& s : noisy.samples) expected += distance(s.position, s.reference);
  expected /= noisy.samples.size();
  CHECK(mean_deviation(noisy) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("surface_coverage: empty logs cover nothing") {
  std::vector<TurbineModel> turbines = {make_turbine({0, 0, 0}, 80.0, 0.0, 40.0, 3, 75.0)};
  CHECK(surface_coverage({}, turbines, CameraModel{}, 2.0) == 0.0);
}

TEST_CASE("surface_coverage: single sample matches an independent predicate count") {
  TurbineModel turbine = make_turbine({0, 0, 0}, 80.0, 0.0, 40.0, 3, 75.0);
  CameraModel camera;
  double density = 2.0;

  // one pose staring at the midpoint of blade 0 from the +x side
  auto tips = blade_tips(turbine);
  Point3 mid = turbine.hub_position + 0.5 * (tips[0] - turbine.hub_position);
  Point3 pos = mid + Vec3{10.0, 0.0, 0.0};
  Vec3 gaze = normalized(mid - pos);
  FlightLog log;
  log.samples.push_back({0.0, pos, pos, gaze, {}, {}});

  // independent re-implementation of the three predicates over the sample grid
  int covered = 0, total = 0;
  for (int k = 0; k < 3; ++k) {
    int m = static_cast<int>(std::ceil(turbine.blade_length * density));
    for (int j = 0; j < m; ++j) {
      Point3 p = turbine.hub_position +
                 ((j + 0.5) / m) * (tips[k] - turbine.hub_position);
      for (double face : {1.0, -1.0}) {
        ++total;
        Vec3 normal{face, 0.0, 0.0};  // rotor axis is +x for yaw 0
        Vec3 v = p - pos;
        double range = norm(v);
        if (range < camera.min_range || range > camera.max_range) continue;
        if (std::acos(std::clamp(dot(gaze, v) / range, -1.0, 1.0)) >
            deg2rad(camera.fov_deg / 2.0))
          continue;
        if (std::acos(std::clamp(dot(-1.0 * v, normal) / range, -1.0, 1.0)) >
            deg2rad(camera.max_incidence_deg))
          continue;
        ++covered;
      }
    }
  }
  double expected = 100.0 * covered / (total / 3.0) / 3.0;  // per-blade average
  double actual = surface_coverage({log}, {turbine}, camera, density);
  CHECK(actual == doctest::Approx(expected).epsilon(1e-9));
  CHECK(actual > 0.0);
  CHECK(actual < 100.0);
}

TEST_CASE("surface_coverage: monotone in added samples and bounded") {
  TurbineModel turbine = make_turbine({0, 0, 0}, 80.0, 0.0, 40.0, 3, 75.0);
  auto tips = blade_tips(turbine);

  std::vector<FlightLog> logs(1);
  double prev = 0.0;
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j <= 10; ++j) {
      Point3 axis = turbine.hub_position + (j / 10.0) * (tips[k] - turbine.hub_position);
      for (double face : {1.0, -1.0}) {
        Point3 pos = axis + Vec3{10.0 * face, 0.0, 0.0};
        logs[0].samples.push_back({0.0, pos, pos, Vec3{-face, 0, 0}, {}, {}});
      }
    }
    double cov = surface_coverage(logs, {turbine}, CameraModel{}, 2.0);
    CHECK(cov >= prev);
    CHECK(cov >= 0.0);
    CHECK(cov <= 100.0);
    prev = cov;
  }
  CHECK(prev > 90.0);  // dense ladder of poses sees nearly everything
}

TEST_CASE("metrics csv: fixed header, parse round trip") {
  MetricsReport r{8.25, 1100.5, 95.25, 1.125, 3, 0};
  std::string csv = metrics_csv(r);
  CHECK(csv.find("total_time_min,total_length_m,blade_coverage_pct,mean_deviation_m,"
                 "uav_count,operator_count\n") == 0);
  std::istringstream is(csv);
  MetricsReport back = parse_metrics_csv(is);
  CHECK(back.total_time_min == doctest::Approx(8.25));
  CHECK(back.total_length_m == doctest::Approx(1100.5));
  CHECK(back.blade_coverage_pct == doctest::Approx(95.25));
  CHECK(back.mean_deviation_m == doctest::Approx(1.125));
  CHECK(back.uav_count == 3);
  CHECK(back.operator_count == 0);
}

TEST_CASE("compare_report: percent changes against the baseline") {
  MetricsReport manual{90.0, 1400.0, 88.0, 3.0, 1, 3};
  MetricsReport automated{8.0, 1100.0, 95.0, 1.0, 3, 0};
  std::string table = compare_report({manual, automated}, {"manual", "automated"});

  std::istringstream is(table);
  std::string line;
  std::getline(is, line);
  CHECK(line == "metric,manual,automated,automated_pct_change");
  std::getline(is, line);
  CHECK(line.find("total_time_min,90.000000,8.000000,-91.1") == 0);
  std::getline(is, line);
  CHECK(line.find("total_length_m,1400.000000,1100.000000,-21.4") == 0);
}

TEST_CASE("compare_report: identical reports give zero change everywhere") {
  MetricsReport r{10.0, 500.0, 90.0, 1.0, 2, 0};
  std::string table = compare_report({r, r}, {"a", "b"});
  std::istringstream is(table);
  std::string line;
  std::getline(is, line);  // header
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    if (line.rfind("operator_count", 0) == 0) {
      CHECK(line == "operator_count,0,0,");  // zero baseline: no percent defined
    } else {
      CHECK(line.substr(line.find_last_of(',') + 1) == "0.0");
    }
  }
  CHECK(rows == 6);
}

TEST_CASE("compare_report: input validation") {
  MetricsReport r{};
  CHECK_THROWS_AS(compare_report({r}, {"only"}), std::invalid_argument);
  CHECK_THROWS_AS(compare_report({r, r}, {"one"}), std::invalid_argument);
}
