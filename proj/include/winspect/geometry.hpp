#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace winspect {

constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator*(Vec3 a, double s) { return a *= s; }
inline Vec3 operator*(double s, Vec3 a) { return a *= s; }
inline Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
inline bool operator==(const Vec3& a, const Vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm_sq(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm_sq(a)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

inline Vec3 normalized(const Vec3& a) {
  double n = norm(a);
  if (n <= 0.0) throw std::invalid_argument("cannot normalize zero vector");
  return a / n;
}

/// World points: right-handed frame, z up, meters.
using Point3 = Vec3;

/// Distance from point p to the segment [a, b].
double point_segment_distance(const Point3& p, const Point3& a, const Point3& b);

/// Parametric wind energy unit. Blades are straight segments from the hub to
/// their tips, lying in the rotor plane (the vertical plane perpendicular to
/// the nacelle yaw direction).
struct TurbineModel {
  Point3 tower_base{};
  double tower_height = 0.0;          // m, > 0
  Point3 hub_position{};              // tower_base + (0,0,tower_height)
  double nacelle_yaw_deg = 0.0;       // [0,360); 0 = rotor axis along +x
  double blade_length = 0.0;          // m, > 0
  int blade_count = 0;                // >= 1
  double rotor_phase_deg = 0.0;       // in-plane azimuth of blade 0
  std::vector<double> blade_pitch_truth_deg;  // per-blade twist about the blade axis,
                                              // consumed only by the synthetic renderer

  void validate() const;  // throws std::invalid_argument naming the bad field

  /// Horizontal unit vector along the nacelle yaw direction (the rotor axis).
  Vec3 rotor_axis() const;
  /// Horizontal unit vector inside the rotor plane; together with +z it spans it.
  Vec3 rotor_plane_u() const;
  /// In-plane azimuth of blade k, degrees.
  double blade_azimuth_deg(int k) const;
};

TurbineModel make_turbine(Point3 tower_base, double tower_height, double nacelle_yaw_deg,
                          double blade_length, int blade_count, double rotor_phase_deg,
                          std::vector<double> blade_pitch_truth_deg = {});

/// Sphere bounding the rotor: every blade tip used to build it lies inside or on it.
struct InspectionZone {
  Point3 center{};
  double radius = 0.0;
};

/// One tip per blade, each at distance blade_length from the hub.
std::vector<Point3> blade_tips(const TurbineModel& turbine);

/// Center = component-wise mean of the tips, radius = max distance center->tip.
/// Throws on an empty tip list.
InspectionZone compute_zone(const std::vector<Point3>& tips);

/// Viewpoint on the zone sphere at hub height. The default azimuth 0 puts it on
/// the +x axis; other values rotate it in the horizontal plane about the center.
Point3 initial_point(const InspectionZone& zone, double approach_azimuth_deg = 0.0);

}  // namespace winspect
