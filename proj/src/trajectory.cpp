#include "winspect/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace winspect {

const char* to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::BladeSweep: return "BladeSweep";
    case SegmentKind::Return: return "Return";
    case SegmentKind::TowerOrbit: return "TowerOrbit";
    case SegmentKind::NacelleOrbit: return "NacelleOrbit";
  }
  return "?";
}

void PlannerParams::validate() const {
  if (!(standoff > 0.0)) throw std::invalid_argument("planner.standoff must be > 0");
  if (!(pass_spacing > 0.0)) throw std::invalid_argument("planner.pass_spacing must be > 0");
  if (sides != 1 && sides != 2) throw std::invalid_argument("planner.sides must be 1 or 2");
  if (!(cruise_speed > 0.0)) throw std::invalid_argument("planner.cruise_speed must be > 0");
}

double segment_path_length(const TrajectorySegment& segment) {
  double len = 0.0;
  for (size_t i = 1; i < segment.waypoints.size(); ++i)
    len += distance(segment.waypoints[i - 1].position, segment.waypoints[i].position);
  return len;
}

namespace {

double polyline_duration(const TrajectorySegment& seg, double cruise_speed) {
  return segment_path_length(seg) / cruise_speed;
}

// Spherical interpolation between unit directions; antipodal pairs rotate
// through a deterministic perpendicular axis.
Vec3 slerp_dir(const Vec3& a, const Vec3& b, double t) {
  double d = std::clamp(dot(a, b), -1.0, 1.0);
  double ang = std::acos(d);
  if (ang < 1e-9) return a;
  if (ang > kPi - 1e-6) {
    Vec3 axis = cross(a, Vec3{0.0, 0.0, 1.0});
    if (norm(axis) < 1e-6) axis = cross(a, Vec3{1.0, 0.0, 0.0});
    axis = normalized(axis);
    double half = t * kPi;
    // Rodrigues rotation of a about axis by half.
    return a * std::cos(half) + cross(axis, a) * std::sin(half) +
           axis * dot(axis, a) * (1.0 - std::cos(half));
  }
  double s = std::sin(ang);
  Vec3 out = a * (std::sin((1.0 - t) * ang) / s) + b * (std::sin(t * ang) / s);
  return normalized(out);
}

}  // namespace

TrajectorySegment plan_blade_path(const Point3& hub, const Point3& tip,
                                  const BladeOrientation& orientation,
                                  const PlannerParams& params, const Vec3& rotor_normal) {
  params.validate();
  double blade_len = distance(tip, hub);
  if (blade_len <= 0.0) throw std::invalid_argument("plan_blade_path: degenerate blade");
  Vec3 n = normalized(rotor_normal);

  int rung_steps = static_cast<int>(std::ceil(blade_len / params.pass_spacing));
  rung_steps = std::max(rung_steps, 1);
  std::vector<Point3> rungs;  // tip -> hub
  rungs.reserve(rung_steps + 1);
  for (int j = 0; j <= rung_steps; ++j)
    rungs.push_back(tip + (hub - tip) * (static_cast<double>(j) / rung_steps));

  bool reverse_first = false;  // first pass defaults to tip -> hub
  double side = 1.0;           // first face on +normal
  switch (orientation.tilt_class) {
    case TiltClass::Vertical:
      reverse_first = tip.z < hub.z;  // start at the upper end and descend
      break;
    case TiltClass::Horizontal:
      reverse_first = true;  // lateral sweep root -> tip
      side = -1.0;
      break;
    case TiltClass::Acute:
      break;
  }
  if (reverse_first) std::reverse(rungs.begin(), rungs.end());

  TrajectorySegment seg;
  seg.kind = SegmentKind::BladeSweep;
  auto add_pass = [&](const std::vector<Point3>& order, double face) {
    for (const Point3& r : order) {
      Waypoint wp;
      wp.position = r + params.standoff * face * n;
      wp.gaze = -face * n;
      wp.speed = params.cruise_speed;
      seg.waypoints.push_back(wp);
    }
  };
  add_pass(rungs, side);
  if (params.sides == 2) {
    std::vector<Point3> back(rungs.rbegin(), rungs.rend());
    add_pass(back, -side);
  }
  seg.duration = polyline_duration(seg, params.cruise_speed);
  return seg;
}

TrajectorySegment plan_return(const Point3& from, const Point3& origin, double return_time_s) {
  if (!(return_time_s > 0.0)) throw std::invalid_argument("plan_return: return_time must be > 0");
  TrajectorySegment seg;
  seg.kind = SegmentKind::Return;
  double dist = distance(origin, from);
  Vec3 gaze = dist > 1e-12 ? normalized(origin - from) : Vec3{1.0, 0.0, 0.0};
  double speed = std::max(dist / return_time_s, 1e-12);
  seg.waypoints.push_back({from, gaze, speed, 0.0});
  seg.waypoints.push_back({origin, gaze, speed, 0.0});
  seg.duration = return_time_s;
  return seg;
}

std::vector<TrajectorySegment> plan_static_structures(const TurbineModel& turbine,
                                                      const PlannerParams& params) {
  turbine.validate();
  params.validate();
  const double s = params.standoff;
  Point3 axis_base = turbine.tower_base;
  double height = turbine.tower_height;

  int ring_count = static_cast<int>(std::ceil(height / params.pass_spacing)) + 1;
  int points_per_ring =
      std::max(4, static_cast<int>(std::ceil(2.0 * kPi * s / params.pass_spacing)));
  points_per_ring += points_per_ring % 2;  // keep both rotor-axis points in the ring
  // Anchoring the rings on the rotor axis guarantees the two points exactly
  // up/downwind of the hub, which always clear the blade filter below.
  double a0 = deg2rad(turbine.nacelle_yaw_deg);

  // Orbit points that would come closer than the standoff to a blade axis are
  // dropped; the arc on the rotor-axis side always survives.
  std::vector<Point3> tips = blade_tips(turbine);
  auto clear_of_blades = [&](const Point3& p) {
    for (const Point3& tip : tips)
      if (point_segment_distance(p, turbine.hub_position, tip) < s - 1e-9) return false;
    return true;
  };
  auto gaze_to_axis = [&](const Point3& p) {
    Vec3 g{axis_base.x - p.x, axis_base.y - p.y, 0.0};
    return normalized(g);
  };

  TrajectorySegment tower;
  tower.kind = SegmentKind::TowerOrbit;
  for (int r = 0; r < ring_count; ++r) {
    double z = axis_base.z + height * (static_cast<double>(r) / (ring_count - 1));
    for (int i = 0; i < points_per_ring; ++i) {
      double az = a0 + 2.0 * kPi * i / points_per_ring;
      Point3 p{axis_base.x + s * std::cos(az), axis_base.y + s * std::sin(az), z};
      if (!clear_of_blades(p)) continue;
      tower.waypoints.push_back({p, gaze_to_axis(p), params.cruise_speed, 0.0});
    }
  }
  tower.duration = polyline_duration(tower, params.cruise_speed);

  TrajectorySegment nacelle;
  nacelle.kind = SegmentKind::NacelleOrbit;
  Point3 nac_center = turbine.hub_position;
  for (int i = 0; i < points_per_ring; ++i) {
    double az = a0 + 2.0 * kPi * i / points_per_ring;
    Point3 p{nac_center.x + s * std::cos(az), nac_center.y + s * std::sin(az), nac_center.z};
    if (!clear_of_blades(p)) continue;
    Vec3 g = normalized(Vec3{nac_center.x - p.x, nac_center.y - p.y, 0.0});
    nacelle.waypoints.push_back({p, g, params.cruise_speed, 0.0});
  }
  if (!nacelle.waypoints.empty()) nacelle.waypoints.push_back(nacelle.waypoints.front());
  nacelle.duration = polyline_duration(nacelle, params.cruise_speed);

  return {tower, nacelle};
}

Waypoint sample_trajectory(const TrajectorySegment& segment, double t) {
  if (segment.waypoints.empty()) throw std::invalid_argument("sample_trajectory: empty segment");
  if (t < 0.0 || t > segment.duration + 1e-9)
    throw std::invalid_argument("sample_trajectory: t outside [0, duration]");
  if (t <= 0.0 || segment.duration <= 0.0) return segment.waypoints.front();
  if (t >= segment.duration) return segment.waypoints.back();

  double total = segment_path_length(segment);
  if (total <= 0.0) return segment.waypoints.front();
  double target = total * (t / segment.duration);

  double acc = 0.0;
  for (size_t i = 1; i < segment.waypoints.size(); ++i) {
    const Waypoint& a = segment.waypoints[i - 1];
    const Waypoint& b = segment.waypoints[i];
    double edge = distance(a.position, b.position);
    if (acc + edge >= target || i + 1 == segment.waypoints.size()) {
      double u = edge > 0.0 ? std::clamp((target - acc) / edge, 0.0, 1.0) : 0.0;
      Waypoint out;
      out.position = a.position + u * (b.position - a.position);
      out.gaze = slerp_dir(a.gaze, b.gaze, u);
      out.speed = a.speed + u * (b.speed - a.speed);
      out.hold = 0.0;
      return out;
    }
    acc += edge;
  }
  return segment.waypoints.back();
}

double route_duration(const std::vector<TrajectorySegment>& route) {
  double total = 0.0;
  for (const TrajectorySegment& seg : route) total += seg.duration;
  return total;
}

Waypoint sample_route(const std::vector<TrajectorySegment>& route, double t) {
  if (route.empty()) throw std::invalid_argument("sample_route: empty route");
  if (t <= 0.0) return sample_trajectory(route.front(), 0.0);
  double acc = 0.0;
  for (const TrajectorySegment& seg : route) {
    if (t <= acc + seg.duration) return sample_trajectory(seg, t - acc);
    acc += seg.duration;
  }
  return route.back().waypoints.back();
}

namespace {

// Prepends the fleet's current position so the segment starts where the
// previous one ended, and rescales the duration to the new path length.
void stitch(TrajectorySegment& seg, const Point3& current, double cruise_speed) {
  Waypoint lead = seg.waypoints.front();
  lead.position = current;
  seg.waypoints.insert(seg.waypoints.begin(), lead);
  seg.duration = segment_path_length(seg) / cruise_speed;
}

}  // namespace

MissionPlan assemble_mission(const std::vector<TurbineModel>& turbines,
                             const std::vector<std::vector<BladeOrientation>>& orientations,
                             int uav_count, const PlannerParams& params) {
  params.validate();
  if (uav_count < 1) throw std::invalid_argument("assemble_mission: uav_count must be >= 1");
  if (orientations.size() != turbines.size())
    throw std::invalid_argument("assemble_mission: orientations misaligned with turbines");
  for (size_t i = 0; i < turbines.size(); ++i)
    if (static_cast<int>(orientations[i].size()) != turbines[i].blade_count)
      throw std::invalid_argument("assemble_mission: orientations misaligned with blade count");

  MissionPlan plan;
  plan.uav_count = uav_count;
  plan.routes.resize(uav_count);
  plan.origins.assign(uav_count, Point3{});

  std::vector<std::vector<size_t>> assigned(uav_count);
  for (size_t i = 0; i < turbines.size(); ++i)
    assigned[i % uav_count].push_back(i);

  for (int u = 0; u < uav_count; ++u) {
    if (assigned[u].empty()) continue;  // idle UAV: empty route, origin at world zero
    const TurbineModel& first = turbines[assigned[u].front()];
    Point3 origin = initial_point(compute_zone(blade_tips(first)));
    plan.origins[u] = origin;
    Point3 current = origin;
    auto& route = plan.routes[u];

    for (size_t ti : assigned[u]) {
      const TurbineModel& turbine = turbines[ti];
      std::vector<Point3> tips = blade_tips(turbine);
      Vec3 normal = turbine.rotor_axis();

      for (int k = 0; k < turbine.blade_count; ++k) {
        TrajectorySegment sweep = plan_blade_path(turbine.hub_position, tips[k],
                                                  orientations[ti][k], params, normal);
        stitch(sweep, current, params.cruise_speed);
        current = sweep.waypoints.back().position;
        route.push_back(std::move(sweep));

        double back = std::max(distance(current, origin), 1e-9);
        route.push_back(plan_return(current, origin, back / params.cruise_speed));
        current = origin;
      }

      for (TrajectorySegment& orbit : plan_static_structures(turbine, params)) {
        if (orbit.waypoints.empty()) continue;
        stitch(orbit, current, params.cruise_speed);
        current = orbit.waypoints.back().position;
        route.push_back(std::move(orbit));
      }

      double back = std::max(distance(current, origin), 1e-9);
      route.push_back(plan_return(current, origin, back / params.cruise_speed));
      current = origin;
    }
  }
  return plan;
}

}  // namespace winspect
