#include "winspect/render.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace winspect {

namespace {

struct CameraFrame {
  Point3 position;
  Vec3 forward, right, up;
  double focal_px = 0.0;
  double cx = 0.0, cy = 0.0;
};

CameraFrame make_frame(const CameraPose& pose, double fov_deg, int width, int height) {
  Vec3 view = pose.target - pose.position;
  if (norm(view) < 1e-9) throw std::runtime_error("subject not in view");
  if (!(fov_deg > 0.0 && fov_deg < 180.0)) throw std::invalid_argument("fov out of range");
  CameraFrame f;
  f.position = pose.position;
  f.forward = normalized(view);
  Vec3 world_up{0.0, 0.0, 1.0};
  Vec3 r = cross(f.forward, world_up);
  if (norm(r) < 1e-9) r = cross(f.forward, Vec3{1.0, 0.0, 0.0});
  f.right = normalized(r);
  f.up = cross(f.right, f.forward);
  f.focal_px = (width / 2.0) / std::tan(deg2rad(fov_deg) / 2.0);
  f.cx = (width - 1) / 2.0;
  f.cy = (height - 1) / 2.0;
  return f;
}

struct P2d {
  double x, y;
};

// A 3D segment projected into the image as a 2D thick segment.
struct ThickSegment {
  P2d a, b;
  double half_width_px;
  uint8_t label;
  double min_x, min_y, max_x, max_y;  // bbox incl. half width

  bool covers(double px, double py) const {
    if (px < min_x || px > max_x || py < min_y || py > max_y) return false;
    double abx = b.x - a.x, aby = b.y - a.y;
    double len_sq = abx * abx + aby * aby;
    double t = 0.0;
    if (len_sq > 0.0) t = std::clamp(((px - a.x) * abx + (py - a.y) * aby) / len_sq, 0.0, 1.0);
    double dx = px - (a.x + t * abx), dy = py - (a.y + t * aby);
    return dx * dx + dy * dy <= half_width_px * half_width_px;
  }
};

constexpr double kNearPlane = 0.05;

ProjectedPoint project_camera_space(const CameraFrame& f, const Point3& p) {
  Vec3 d = p - f.position;
  ProjectedPoint out;
  out.depth = dot(d, f.forward);
  out.in_front = out.depth > kNearPlane;
  if (out.in_front) {
    out.u = f.cx + f.focal_px * dot(d, f.right) / out.depth;
    out.v = f.cy - f.focal_px * dot(d, f.up) / out.depth;
  }
  return out;
}

// Projects the world segment [a,b], clipping against the near plane, and
// appends the resulting thick 2D segment (if any part is in front).
void add_segment(std::vector<ThickSegment>& prims, const CameraFrame& f, Point3 a, Point3 b,
                 double world_half_width, uint8_t label) {
  double da = dot(a - f.position, f.forward);
  double db = dot(b - f.position, f.forward);
  if (da <= kNearPlane && db <= kNearPlane) return;
  if (da <= kNearPlane || db <= kNearPlane) {
    double t = (kNearPlane - da) / (db - da);  // intersection with the near plane
    Point3 cut = a + t * (b - a);
    if (da <= kNearPlane)
      a = cut;
    else
      b = cut;
  }
  ProjectedPoint pa = project_camera_space(f, a);
  ProjectedPoint pb = project_camera_space(f, b);
  if (!pa.in_front || !pb.in_front) return;
  ThickSegment s;
  s.a = {pa.u, pa.v};
  s.b = {pb.u, pb.v};
  double mid_depth = (pa.depth + pb.depth) / 2.0;
  s.half_width_px = std::max(world_half_width * f.focal_px / mid_depth, 0.5);
  s.label = label;
  s.min_x = std::min(s.a.x, s.b.x) - s.half_width_px;
  s.max_x = std::max(s.a.x, s.b.x) + s.half_width_px;
  s.min_y = std::min(s.a.y, s.b.y) - s.half_width_px;
  s.max_y = std::max(s.a.y, s.b.y) + s.half_width_px;
  prims.push_back(s);
}

}  // namespace

ProjectedPoint project_point(const CameraPose& pose, double fov_deg, int width, int height,
                             const Point3& p) {
  return project_camera_space(make_frame(pose, fov_deg, width, height), p);
}

Raster render_silhouette(const TurbineModel& turbine, const CameraPose& pose,
                         const RenderOptions& options, RunMode mode) {
  turbine.validate();
  if (options.width < 64 || options.height < 64)
    throw std::invalid_argument("render_silhouette: resolution below 64x64");
  CameraFrame frame = make_frame(pose, options.fov_deg, options.width, options.height);

  // Painter order: tower, nacelle, then blades.
  std::vector<ThickSegment> prims;
  Point3 hub = turbine.hub_position;
  add_segment(prims, frame, turbine.tower_base, hub,
              options.tower_radius_frac * turbine.tower_height, kLabelTower);
  Vec3 axis = turbine.rotor_axis();
  double nac_half = options.nacelle_length_frac * turbine.blade_length / 2.0;
  add_segment(prims, frame, hub - nac_half * axis, hub + nac_half * axis,
              options.nacelle_radius_frac * turbine.blade_length, kLabelNacelle);
  std::vector<Point3> tips = blade_tips(turbine);
  for (int k = 0; k < turbine.blade_count; ++k) {
    // A pitched blade presents a narrower chord to the sensor.
    double pitch = deg2rad(turbine.blade_pitch_truth_deg[k]);
    double width_scale = std::max(std::abs(std::cos(pitch)), 0.15);
    double half_chord = options.blade_chord_frac * turbine.blade_length * width_scale / 2.0;
    add_segment(prims, frame, hub, tips[k], half_chord, static_cast<uint8_t>(kLabelBladeBase + k));
  }

  Raster img(options.width, options.height);
  const int h = options.height, w = options.width;
  const ThickSegment* pr = prims.data();
  const int pn = static_cast<int>(prims.size());

  if (mode == RunMode::parallel) {
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
      uint8_t* row = img.data.data() + static_cast<size_t>(y) * w;
      for (int x = 0; x < w; ++x)
        for (int i = 0; i < pn; ++i)
          if (pr[i].covers(x, y)) row[x] = pr[i].label;
    }
  } else {
    for (int y = 0; y < h; ++y) {
      uint8_t* row = img.data.data() + static_cast<size_t>(y) * w;
      for (int x = 0; x < w; ++x)
        for (int i = 0; i < pn; ++i)
          if (pr[i].covers(x, y)) row[x] = pr[i].label;
    }
  }

  bool any = false;
  for (uint8_t v : img.data)
    if (v != kLabelBackground) {
      any = true;
      break;
    }
  if (!any) throw std::runtime_error("subject not in view");
  return img;
}

}  // namespace winspect
