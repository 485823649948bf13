#pragma once

#include <vector>

#include "winspect/geometry.hpp"
#include "winspect/vision.hpp"

namespace winspect {

struct Waypoint {
  Point3 position{};
  Vec3 gaze{1.0, 0.0, 0.0};  // unit camera direction
  double speed = 0.0;        // m/s, > 0
  double hold = 0.0;         // s, >= 0
};

enum class SegmentKind { BladeSweep, Return, TowerOrbit, NacelleOrbit };
const char* to_string(SegmentKind kind);

struct TrajectorySegment {
  SegmentKind kind = SegmentKind::Return;
  std::vector<Waypoint> waypoints;
  double duration = 0.0;  // s
};

struct PlannerParams {
  double standoff = 10.0;      // m, safe distance to structure
  double pass_spacing = 5.0;   // m, ladder rung / orbit ring spacing
  int sides = 2;               // blade faces to image (1 or 2)
  double cruise_speed = 4.0;   // m/s
  void validate() const;
};

struct MissionPlan {
  std::vector<std::vector<TrajectorySegment>> routes;  // one route per UAV
  int uav_count = 0;
  std::vector<Point3> origins;  // per-UAV initial point
};

/// Tilt-adaptive ladder sweep along the blade: rungs parallel to the blade
/// axis, offset by standoff along +/- rotor_normal, traversed tip->hub then
/// hub->tip on the opposite face when sides = 2. The tilt class selects rung
/// order and first face: Vertical descends from the upper end, Horizontal
/// sweeps laterally root->tip on the -normal face, Acute runs tip->hub on the
/// +normal face. Gaze points at the nearest blade-axis point.
TrajectorySegment plan_blade_path(const Point3& hub, const Point3& tip,
                                  const BladeOrientation& orientation,
                                  const PlannerParams& params, const Vec3& rotor_normal);

/// Straight-line return, linear in time: elapsed 0 -> from, return_time -> origin.
TrajectorySegment plan_return(const Point3& from, const Point3& origin, double return_time_s);

/// Fixed trajectories for the static components: a ring stack around the tower
/// from base to nacelle height plus one closed nacelle orbit, both at radius
/// standoff with gaze at the structure axis. Orbit points that would come
/// closer than the standoff to a blade axis are dropped, so near hub height
/// only the arc clear of the rotor remains.
std::vector<TrajectorySegment> plan_static_structures(const TurbineModel& turbine,
                                                      const PlannerParams& params);

/// Position/gaze at elapsed time t in [0, duration]: linear interpolation along
/// the waypoint polyline at arc length t/duration, gaze spherically interpolated.
Waypoint sample_trajectory(const TrajectorySegment& segment, double t);

double segment_path_length(const TrajectorySegment& segment);
double route_duration(const std::vector<TrajectorySegment>& route);

/// Piecewise evaluation across a whole route; t is clamped to [0, total duration].
Waypoint sample_route(const std::vector<TrajectorySegment>& route, double t);

/// Round-robin assignment of turbines to UAVs. Per turbine: each blade sweep is
/// followed by a Return, then TowerOrbit, NacelleOrbit, Return. Every route
/// starts at its UAV's initial point and every Return ends there. Connector
/// waypoints are inserted so consecutive segments share endpoint positions.
MissionPlan assemble_mission(const std::vector<TurbineModel>& turbines,
                             const std::vector<std::vector<BladeOrientation>>& orientations,
                             int uav_count, const PlannerParams& params);

}  // namespace winspect
