#include "winspect/geometry.hpp"

#include <algorithm>
#include <string>

namespace winspect {

double point_segment_distance(const Point3& p, const Point3& a, const Point3& b) {
  Vec3 ab = b - a;
  double len_sq = norm_sq(ab);
  if (len_sq <= 0.0) return distance(p, a);
  double t = std::clamp(dot(p - a, ab) / len_sq, 0.0, 1.0);
  return distance(p, a + t * ab);
}

void TurbineModel::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("TurbineModel: " + what); };
  if (!(tower_height > 0.0)) fail("tower_height must be > 0");
  if (!(blade_length > 0.0)) fail("blade_length must be > 0");
  if (blade_count < 1) fail("blade_count must be >= 1");
  if (blade_count > 200) fail("blade_count must be <= 200 (per-blade raster labels)");
  if (nacelle_yaw_deg < 0.0 || nacelle_yaw_deg >= 360.0) fail("nacelle_yaw must be in [0,360)");
  if (static_cast<int>(blade_pitch_truth_deg.size()) != blade_count)
    fail("blade_pitch length must equal blade_count");
  Point3 expected_hub = tower_base + Vec3{0.0, 0.0, tower_height};
  if (distance(hub_position, expected_hub) > 1e-9)
    fail("hub_position must sit atop the tower");
  for (double v : {tower_height, blade_length, nacelle_yaw_deg, rotor_phase_deg})
    if (!std::isfinite(v)) fail("non-finite field");
}

Vec3 TurbineModel::rotor_axis() const {
  double yaw = deg2rad(nacelle_yaw_deg);
  return {std::cos(yaw), std::sin(yaw), 0.0};
}

Vec3 TurbineModel::rotor_plane_u() const {
  double yaw = deg2rad(nacelle_yaw_deg);
  return {-std::sin(yaw), std::cos(yaw), 0.0};
}

double TurbineModel::blade_azimuth_deg(int k) const {
  return rotor_phase_deg + k * (360.0 / blade_count);
}

TurbineModel make_turbine(Point3 tower_base, double tower_height, double nacelle_yaw_deg,
                          double blade_length, int blade_count, double rotor_phase_deg,
                          std::vector<double> blade_pitch_truth_deg) {
  TurbineModel t;
  t.tower_base = tower_base;
  t.tower_height = tower_height;
  t.hub_position = tower_base + Vec3{0.0, 0.0, tower_height};
  t.nacelle_yaw_deg = nacelle_yaw_deg;
  t.blade_length = blade_length;
  t.blade_count = blade_count;
  t.rotor_phase_deg = rotor_phase_deg;
  if (blade_pitch_truth_deg.empty()) blade_pitch_truth_deg.assign(std::max(blade_count, 0), 0.0);
  t.blade_pitch_truth_deg = std::move(blade_pitch_truth_deg);
  t.validate();
  return t;
}

std::vector<Point3> blade_tips(const TurbineModel& turbine) {
  turbine.validate();
  Vec3 u = turbine.rotor_plane_u();
  Vec3 w{0.0, 0.0, 1.0};
  std::vector<Point3> tips;
  tips.reserve(turbine.blade_count);
  for (int k = 0; k < turbine.blade_count; ++k) {
    double az = deg2rad(turbine.blade_azimuth_deg(k));
    tips.push_back(turbine.hub_position + turbine.blade_length * (std::cos(az) * u + std::sin(az) * w));
  }
  return tips;
}

InspectionZone compute_zone(const std::vector<Point3>& tips) {
  if (tips.empty()) throw std::invalid_argument("no blade tips");
  Vec3 sum{};
  for (const Point3& t : tips) sum += t;
  InspectionZone zone;
  zone.center = sum / static_cast<double>(tips.size());
  zone.radius = 0.0;
  for (const Point3& t : tips) zone.radius = std::max(zone.radius, distance(zone.center, t));
  return zone;
}

Point3 initial_point(const InspectionZone& zone, double approach_azimuth_deg) {
  double az = deg2rad(approach_azimuth_deg);
  return zone.center + zone.radius * Vec3{std::cos(az), std::sin(az), 0.0};
}

}  // namespace winspect
