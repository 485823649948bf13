#include "winspect/vision.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "winspect/geometry.hpp"

namespace winspect {

const char* to_string(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::Blade: return "Blade";
    case ComponentKind::Tower: return "Tower";
    case ComponentKind::Nacelle: return "Nacelle";
  }
  return "?";
}

const char* to_string(TiltClass tilt) {
  switch (tilt) {
    case TiltClass::Acute: return "Acute";
    case TiltClass::Horizontal: return "Horizontal";
    case TiltClass::Vertical: return "Vertical";
  }
  return "?";
}

namespace {

ComponentKind kind_of_label(uint8_t label) {
  if (label == kLabelTower) return ComponentKind::Tower;
  if (label == kLabelNacelle) return ComponentKind::Nacelle;
  return ComponentKind::Blade;
}

// 8-connected component ids in raster scan discovery order, grouping pixels by
// the predicate "same value as the seed". Returns the number of components.
template <class SameValue>
int label_components(int width, int height, std::vector<int32_t>& comp, SameValue&& same) {
  comp.assign(static_cast<size_t>(width) * height, 0);
  int next_id = 0;
  std::vector<int> stack;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      size_t idx = static_cast<size_t>(y) * width + x;
      if (comp[idx] != 0 || !same(x, y, x, y)) continue;
      ++next_id;
      comp[idx] = next_id;
      stack.push_back(static_cast<int>(idx));
      while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        int cx = cur % width;
        int cy = cur / width;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            int nx = cx + dx;
            int ny = cy + dy;
            if (nx < 0 || nx >= width || ny < 0 || ny >= height) continue;
            size_t nidx = static_cast<size_t>(ny) * width + nx;
            if (comp[nidx] == 0 && same(cx, cy, nx, ny)) {
              comp[nidx] = next_id;
              stack.push_back(static_cast<int>(nidx));
            }
          }
        }
      }
    }
  }
  return next_id;
}

}  // namespace

std::vector<Segment> segment_components(const Raster& image) {
  // Label equality keeps touching regions of different components separate.
  std::vector<int32_t> comp;
  int count = label_components(image.width, image.height, comp, [&](int sx, int sy, int nx, int ny) {
    uint8_t v = image.at(nx, ny);
    return v != kLabelBackground && v == image.at(sx, sy);
  });

  std::vector<Segment> segments(count);
  std::vector<bool> seen(count, false);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      int32_t id = comp[static_cast<size_t>(y) * image.width + x];
      if (id == 0) continue;
      Segment& s = segments[id - 1];
      if (!seen[id - 1]) {
        seen[id - 1] = true;
        s.source_label = image.at(x, y);
        s.kind = kind_of_label(s.source_label);
        s.mask = BinaryMask(image.width, image.height);
        s.bbox = {x, y, 1, 1};
      }
      s.mask.at(x, y) = 1;
      int x1 = std::max(s.bbox.x + s.bbox.w, x + 1);
      int y1 = std::max(s.bbox.y + s.bbox.h, y + 1);
      s.bbox.x = std::min(s.bbox.x, x);
      s.bbox.y = std::min(s.bbox.y, y);
      s.bbox.w = x1 - s.bbox.x;
      s.bbox.h = y1 - s.bbox.y;
    }
  }
  return segments;
}

Raster remove_background(const Raster& image, const std::vector<Segment>& segments) {
  for (const Segment& s : segments)
    if (s.mask.width != image.width || s.mask.height != image.height)
      throw std::invalid_argument("remove_background: dimension mismatch");
  Raster out(image.width, image.height);
  for (const Segment& s : segments) {
    const size_t n = s.mask.bits.size();
    for (size_t i = 0; i < n; ++i)
      if (s.mask.bits[i]) out.data[i] = image.data[i];
  }
  return out;
}

BinaryMask binarize(const Segment& segment) {
  BinaryMask out(segment.mask.width, segment.mask.height);
  for (size_t i = 0; i < segment.mask.bits.size(); ++i) out.bits[i] = segment.mask.bits[i] ? 1 : 0;
  return out;
}

namespace {

// Moore neighborhood in screen-clockwise order starting west (y grows down).
constexpr std::array<std::array<int, 2>, 8> kRing = {{
    {{-1, 0}}, {{-1, -1}}, {{0, -1}}, {{1, -1}}, {{1, 0}}, {{1, 1}}, {{0, 1}}, {{-1, 1}},
}};

int ring_index(int dx, int dy) {
  for (int i = 0; i < 8; ++i)
    if (kRing[i][0] == dx && kRing[i][1] == dy) return i;
  throw std::logic_error("ring_index: not a neighbor offset");
}

// Moore-neighbor border following restricted to one 8-connected component.
// Jacob's stopping criterion: terminate when the walk is about to leave the
// start pixel in the same direction it first left it.
Contour trace_component(int width, int height, const std::vector<int32_t>& comp, int32_t id,
                        int start_x, int start_y) {
  auto inside = [&](int x, int y) {
    return x >= 0 && x < width && y >= 0 && y < height &&
           comp[static_cast<size_t>(y) * width + x] == id;
  };

  Contour contour;
  contour.points.push_back({static_cast<double>(start_x), static_cast<double>(start_y)});

  int cx = start_x, cy = start_y;
  int bx = start_x - 1, by = start_y;  // backtrack: west of the scan-order start, always background
  int first_dir = -1;
  const size_t step_cap = 4 * static_cast<size_t>(width) * height + 8;

  for (size_t step = 0; step < step_cap; ++step) {
    int i0 = ring_index(bx - cx, by - cy);
    int found = -1;
    int next_bx = bx, next_by = by;
    for (int k = 1; k <= 8; ++k) {
      int i = (i0 + k) % 8;
      int nx = cx + kRing[i][0];
      int ny = cy + kRing[i][1];
      if (inside(nx, ny)) {
        found = i;
        break;
      }
      next_bx = nx;  // last examined background pixel becomes the next backtrack
      next_by = ny;
    }
    if (found < 0) return contour;  // isolated pixel
    if (first_dir < 0) {
      first_dir = found;
    } else if (cx == start_x && cy == start_y && found == first_dir) {
      // The arrival at the start was appended last step; drop the duplicate.
      if (contour.points.size() > 1) contour.points.pop_back();
      return contour;
    }
    bx = next_bx;
    by = next_by;
    cx += kRing[found][0];
    cy += kRing[found][1];
    contour.points.push_back({static_cast<double>(cx), static_cast<double>(cy)});
  }
  throw std::logic_error("find_contours: tracing did not terminate");
}

}  // namespace

std::vector<Contour> find_contours(const BinaryMask& mask) {
  std::vector<int32_t> comp;
  int count = label_components(mask.width, mask.height, comp,
                               [&](int, int, int nx, int ny) { return mask.at(nx, ny) != 0; });
  std::vector<Contour> contours;
  contours.reserve(count);
  std::vector<bool> traced(count, false);
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      int32_t id = comp[static_cast<size_t>(y) * mask.width + x];
      if (id == 0 || traced[id - 1]) continue;
      traced[id - 1] = true;  // scan order guarantees (x,y) is the component's top-left pixel
      contours.push_back(trace_component(mask.width, mask.height, comp, id, x, y));
    }
  }
  return contours;
}

double contour_area(const Contour& contour) {
  const auto& pts = contour.points;
  if (pts.size() < 3) return 0.0;
  double twice_area = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const P2& a = pts[i];
    const P2& b = pts[(i + 1) % pts.size()];
    twice_area += a.x * b.y - b.x * a.y;
  }
  return std::abs(twice_area) / 2.0;
}

std::vector<Contour> filter_by_area(const std::vector<Contour>& contours, double threshold) {
  if (threshold < 0.0) throw std::invalid_argument("filter_by_area: negative threshold");
  std::vector<Contour> kept;
  for (const Contour& c : contours)
    if (contour_area(c) > threshold) kept.push_back(c);
  return kept;
}

namespace {

double cross2(const P2& o, const P2& a, const P2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew monotone chain; returns hull in order without the repeated endpoint.
std::vector<P2> convex_hull(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end(), [](const P2& a, const P2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const P2& a, const P2& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<P2> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double canonical_angle_deg(double dx, double dy) {
  double a = rad2deg(std::atan2(dy, dx));
  a = std::fmod(a, 180.0);
  if (a < 0.0) a += 180.0;
  return a;
}

}  // namespace

RotatedRect min_area_rect(const Contour& contour) {
  if (contour.points.empty()) throw std::invalid_argument("min_area_rect: empty contour");
  std::vector<P2> hull = convex_hull(contour.points);

  RotatedRect best;
  if (hull.size() == 1) {
    best.center = hull[0];
    return best;
  }

  double best_area = std::numeric_limits<double>::infinity();
  double best_spread = -1.0;  // for flat hulls area ties at 0; keep the longest side
  size_t n = hull.size();
  for (size_t i = 0; i < n; ++i) {
    const P2& a = hull[i];
    const P2& b = hull[(i + 1) % n];
    double ex = b.x - a.x, ey = b.y - a.y;
    double len = std::hypot(ex, ey);
    if (len <= 0.0) continue;
    double dx = ex / len, dy = ey / len;   // edge direction
    double nx = -dy, ny = dx;              // edge normal
    double umin = std::numeric_limits<double>::infinity(), umax = -umin;
    double vmin = umin, vmax = -umin;
    for (const P2& p : hull) {
      double u = p.x * dx + p.y * dy;
      double v = p.x * nx + p.y * ny;
      umin = std::min(umin, u);
      umax = std::max(umax, u);
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
    double w = umax - umin, h = vmax - vmin;
    double area = w * h;
    double spread = std::max(w, h);
    if (area < best_area - 1e-12 || (std::abs(area - best_area) <= 1e-12 && spread > best_spread)) {
      best_area = area;
      best_spread = spread;
      double cu = (umin + umax) / 2.0, cv = (vmin + vmax) / 2.0;
      best.center = {cu * dx + cv * nx, cu * dy + cv * ny};
      if (w >= h) {
        best.width = w;
        best.height = h;
        best.angle_deg = canonical_angle_deg(dx, dy);
      } else {
        best.width = h;
        best.height = w;
        best.angle_deg = canonical_angle_deg(nx, ny);
      }
    }
  }
  return best;
}

double pitch_angle(const RotatedRect& rect) {
  if (rect.width <= 0.0) throw std::invalid_argument("degenerate rectangle");
  double a = deg2rad(rect.angle_deg);
  P2 dir{std::cos(a), std::sin(a)};
  P2 e0{rect.center.x - dir.x * rect.width / 2.0, rect.center.y - dir.y * rect.width / 2.0};
  P2 e1{rect.center.x + dir.x * rect.width / 2.0, rect.center.y + dir.y * rect.width / 2.0};
  // top = smaller image y; ties broken toward smaller x so dx >= 0
  P2 top = e0, bottom = e1;
  if (e1.y < e0.y || (e1.y == e0.y && e1.x < e0.x)) std::swap(top, bottom);
  double theta = rad2deg(std::atan2(bottom.y - top.y, bottom.x - top.x));
  if (theta < 0.0) theta += 180.0;
  return theta;
}

TiltClass classify_tilt(double theta_deg) {
  if (!(theta_deg >= 0.0 && theta_deg <= 180.0))
    throw std::invalid_argument("classify_tilt: theta outside [0,180]");
  if (theta_deg < 30.0 || theta_deg >= 150.0) return TiltClass::Horizontal;
  if (theta_deg < 60.0 || theta_deg >= 120.0) return TiltClass::Acute;
  return TiltClass::Vertical;
}

BladeOrientation estimate_orientation(const RotatedRect& rect) {
  BladeOrientation o;
  o.theta_deg = pitch_angle(rect);
  o.tilt_class = classify_tilt(o.theta_deg);
  return o;
}

double default_area_threshold(int width, int height) {
  return 0.001 * static_cast<double>(width) * static_cast<double>(height);
}

std::string orientation_table(const std::vector<OrientationRow>& rows) {
  std::ostringstream os;
  os << "turbine_id,blade_index,theta_deg,tilt_class\n";
  char buf[64];
  for (const OrientationRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.2f", r.orientation.theta_deg);
    os << r.turbine_id << ',' << r.blade_index << ',' << buf << ','
       << to_string(r.orientation.tilt_class) << '\n';
  }
  return os.str();
}

}  // namespace winspect
