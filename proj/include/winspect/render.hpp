#pragma once

#include "winspect/geometry.hpp"
#include "winspect/parallel.hpp"
#include "winspect/raster.hpp"

namespace winspect {

/// Pinhole camera pose; up is derived from world +z.
struct CameraPose {
  Point3 position{};
  Point3 target{};
};

struct RenderOptions {
  double fov_deg = 90.0;  // horizontal field of view
  int width = 512;
  int height = 512;
  // Component proportions relative to the turbine dimensions.
  double blade_chord_frac = 0.045;    // of blade_length (full chord)
  double tower_radius_frac = 0.02;    // of tower_height
  double nacelle_length_frac = 0.15;  // of blade_length
  double nacelle_radius_frac = 0.05;  // of blade_length
};

struct ProjectedPoint {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
  bool in_front = false;
};

ProjectedPoint project_point(const CameraPose& pose, double fov_deg, int width, int height,
                             const Point3& p);

/// Labeled silhouette of the turbine as seen from the pose: tower, nacelle and
/// blades rasterized as thick segments, blades drawn last (blade k gets label
/// kLabelBladeBase + k). Throws "subject not in view" when nothing projects
/// into the frame. Deterministic; serial and parallel modes are bit-identical.
Raster render_silhouette(const TurbineModel& turbine, const CameraPose& pose,
                         const RenderOptions& options, RunMode mode = RunMode::parallel);

}  // namespace winspect
