#pragma once

#include <string>
#include <vector>

#include "winspect/raster.hpp"

namespace winspect {

enum class ComponentKind { Blade, Tower, Nacelle };
enum class TiltClass { Acute, Horizontal, Vertical };

const char* to_string(ComponentKind kind);
const char* to_string(TiltClass tilt);

/// Tight axis-aligned pixel box, inclusive of (x,y), exclusive of (x+w,y+h).
struct PixelBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
};

/// One connected region of a single component label.
struct Segment {
  ComponentKind kind = ComponentKind::Blade;
  uint8_t source_label = 0;  // raw raster label this region came from
  BinaryMask mask;           // full-image dimensions
  PixelBox bbox;             // tight box over set mask pixels
};

/// 2D pixel-frame point (x right, y down). Traced contours hold integer
/// lattice positions; synthetic contours may be sub-pixel.
struct P2 {
  double x = 0.0;
  double y = 0.0;
};

/// Closed boundary. Consecutive points from the tracer are 8-connected,
/// and the last point is adjacent to the first.
struct Contour {
  std::vector<P2> points;
};

/// Canonical form: width >= height, angle = direction of the long side in
/// [0, 180) degrees measured in the pixel frame.
struct RotatedRect {
  P2 center{};
  double width = 0.0;
  double height = 0.0;
  double angle_deg = 0.0;
};

struct BladeOrientation {
  double theta_deg = 0.0;  // [0, 180]
  TiltClass tilt_class = TiltClass::Horizontal;
};

/// Deterministic geometric segmenter: one Segment per 8-connected region of
/// each non-background label. Stands in for a learned model behind the same
/// raster-in / segments-out surface.
std::vector<Segment> segment_components(const Raster& image);

/// Keeps pixels covered by any segment mask, zeroes the rest.
Raster remove_background(const Raster& image, const std::vector<Segment>& segments);

/// Binarized mask of one segment: bit set exactly where the mask claims membership.
BinaryMask binarize(const Segment& segment);

/// Outer border of every 8-connected foreground component, traced by
/// Moore-neighbor border following. Holes are ignored.
std::vector<Contour> find_contours(const BinaryMask& mask);

/// Shoelace area of the closed boundary polygon. Single point -> 0.
double contour_area(const Contour& contour);

/// Keeps contours with area strictly greater than the threshold, preserving order.
std::vector<Contour> filter_by_area(const std::vector<Contour>& contours, double threshold);

/// Minimum-area enclosing rectangle via convex hull + rotating calipers.
RotatedRect min_area_rect(const Contour& contour);

/// Inclination of the rectangle's long axis through its top/bottom endpoints
/// (smaller/larger image-y), full-quadrant and normalized to [0, 180].
/// Vertical lines map to 90. Throws on a zero-length long axis.
double pitch_angle(const RotatedRect& rect);

/// Horizontal for [0,30) and [150,180]; Acute for [30,60) and [120,150);
/// Vertical for [60,120). Throws outside [0, 180].
TiltClass classify_tilt(double theta_deg);

BladeOrientation estimate_orientation(const RotatedRect& rect);

/// Default contour area filter: 0.1% of the image area.
double default_area_threshold(int width, int height);

struct OrientationRow {
  int turbine_id = 0;
  int blade_index = 0;
  BladeOrientation orientation;
};

/// Delimited rows: turbine_id,blade_index,theta_deg,tilt_class (with header).
std::string orientation_table(const std::vector<OrientationRow>& rows);

}  // namespace winspect
