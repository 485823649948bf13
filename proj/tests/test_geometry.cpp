#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "winspect/geometry.hpp"

using namespace winspect;

namespace {

std::mt19937_64 rng(12345);

Point3 random_point(double span = 100.0) {
  std::uniform_real_distribution<double> d(-span, span);
  return {d(rng), d(rng), d(rng)};
}

// Rodrigues rotation about a unit axis, independent of any library code.
Point3 rotate_about(const Point3& p, const Point3& pivot, const Vec3& axis, double angle_rad) {
  Vec3 v = p - pivot;
  Vec3 r = v * std::cos(angle_rad) + cross(axis, v) * std::sin(angle_rad) +
           axis * dot(axis, v) * (1.0 - std::cos(angle_rad));
  return pivot + r;
}

TurbineModel random_turbine() {
  std::uniform_real_distribution<double> height(40.0, 120.0);
  std::uniform_real_distribution<double> len(15.0, 60.0);
  std::uniform_real_distribution<double> yaw(0.0, 359.9);
  std::uniform_real_distribution<double> phase(0.0, 360.0);
  std::uniform_int_distribution<int> blades(1, 6);
  return make_turbine(random_point(200.0), height(rng), yaw(rng), len(rng), blades(rng),
                      phase(rng));
}

}  // namespace

TEST_CASE("blade tips: symmetric three-blade rotor in the world YZ plane") {
  TurbineModel t = make_turbine({0, 0, 50}, 50.0, 0.0, 50.0, 3, 90.0);
  auto tips = blade_tips(t);
  REQUIRE(tips.size() == 3);
  double s = 50.0 * std::sqrt(3.0) / 2.0;  // 43.301...
  CHECK(distance(tips[0], {0, 0, 150}) < 1e-9);
  CHECK(distance(tips[1], {0, -s, 75}) < 1e-9);
  CHECK(distance(tips[2], {0, s, 75}) < 1e-9);
}

TEST_CASE("blade tips: single blade lies at blade_length from the hub") {
  TurbineModel t = make_turbine({10, -5, 0}, 70.0, 30.0, 42.0, 1, 0.0);
  auto tips = blade_tips(t);
  REQUIRE(tips.size() == 1);
  CHECK(distance(tips[0], t.hub_position) == doctest::Approx(42.0).epsilon(1e-12));
}

TEST_CASE("blade tips: every tip at blade_length from the hub (random turbines)") {
  for (int i = 0; i < 200; ++i) {
    TurbineModel t = random_turbine();
    for (const Point3& tip : blade_tips(t))
      CHECK(std::abs(distance(tip, t.hub_position) - t.blade_length) < 1e-9);
  }
}

TEST_CASE("compute_zone: symmetric tips center at the origin") {
  double s = 43.301270189221930;  // 50 sin 60
  auto zone = compute_zone({{50, 0, 0}, {-25, s, 0}, {-25, -s, 0}});
  CHECK(norm(zone.center) < 1e-6);
  CHECK(zone.radius == doctest::Approx(50.0).epsilon(1e-6));
}

TEST_CASE("compute_zone: single tip gives a zero-radius zone") {
  auto zone = compute_zone({{3, 4, 0}});
  CHECK(distance(zone.center, {3, 4, 0}) == 0.0);
  CHECK(zone.radius == 0.0);
}

TEST_CASE("compute_zone: empty tip list is rejected") {
  CHECK_THROWS_WITH_AS(compute_zone({}), "no blade tips", std::invalid_argument);
}

TEST_CASE("compute_zone: center and radius match the brute-force oracle") {
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> count(1, 8);
    int n = count(rng);
    std::vector<Point3> tips;
    for (int i = 0; i < n; ++i) tips.push_back(random_point());

    Vec3 mean{};
    for (const Point3& t : tips) mean += t;
    mean = mean / n;
    double max_dist = 0.0;
    for (const Point3& t : tips) max_dist = std::max(max_dist, distance(mean, t));

    auto zone = compute_zone(tips);
    CHECK(distance(zone.center, mean) < 1e-9);
    CHECK(std::abs(zone.radius - max_dist) < 1e-9);
    for (const Point3& t : tips)  // sphere membership
      CHECK(norm_sq(t - zone.center) <= zone.radius * zone.radius + 1e-9);
  }
}

TEST_CASE("compute_zone: translation equivariance and rotation invariance of the radius") {
  std::vector<Point3> tips;
  for (int i = 0; i < 6; ++i) tips.push_back(random_point());
  auto base = compute_zone(tips);

  Vec3 shift{13.5, -2.25, 8.0};
  std::vector<Point3> moved;
  for (const Point3& t : tips) moved.push_back(t + shift);
  auto shifted = compute_zone(moved);
  CHECK(distance(shifted.center, base.center + shift) < 1e-9);
  CHECK(shifted.radius == doctest::Approx(base.radius).epsilon(1e-12));

  Vec3 axis = normalized(Vec3{1.0, 2.0, -0.5});
  Point3 pivot{4.0, 4.0, 4.0};
  std::vector<Point3> rotated;
  for (const Point3& t : tips) rotated.push_back(rotate_about(t, pivot, axis, 1.1));
  CHECK(std::abs(compute_zone(rotated).radius - base.radius) < 1e-9);
}

TEST_CASE("initial_point: offset along +x by the radius") {
  InspectionZone zone{{10, 20, 30}, 5.0};
  Point3 sp = initial_point(zone);
  CHECK(distance(sp, {15, 20, 30}) < 1e-12);
}

TEST_CASE("initial_point: zero radius collapses onto the center") {
  InspectionZone zone{{1, 2, 3}, 0.0};
  CHECK(distance(initial_point(zone), zone.center) == 0.0);
}

TEST_CASE("initial_point: chained from the symmetric-rotor zone") {
  double s = 43.301270189221930;
  auto zone = compute_zone({{50, 0, 0}, {-25, s, 0}, {-25, -s, 0}});
  CHECK(distance(initial_point(zone), {50, 0, 0}) < 1e-6);
}

TEST_CASE("initial_point: lies exactly on the zone sphere for any approach azimuth") {
  for (int i = 0; i < 20; ++i) {
    InspectionZone zone{random_point(), std::uniform_real_distribution<double>(0.1, 80.0)(rng)};
    double az = std::uniform_real_distribution<double>(0.0, 360.0)(rng);
    CHECK(distance(initial_point(zone, az), zone.center) ==
          doctest::Approx(zone.radius).epsilon(1e-12));
  }
}

TEST_CASE("turbine validation catches inconsistent models") {
  CHECK_THROWS_AS(make_turbine({0, 0, 0}, -5.0, 0.0, 40.0, 3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_turbine({0, 0, 0}, 80.0, 0.0, 40.0, 240, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_turbine({0, 0, 0}, 80.0, 0.0, 0.0, 3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_turbine({0, 0, 0}, 80.0, 0.0, 40.0, 0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_turbine({0, 0, 0}, 80.0, 0.0, 40.0, 3, 0.0, {1.0}), std::invalid_argument);
  TurbineModel t = make_turbine({0, 0, 0}, 80.0, 0.0, 40.0, 3, 0.0);
  t.hub_position.z += 1.0;
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}

TEST_CASE("point_segment_distance basics") {
  CHECK(point_segment_distance({0, 1, 0}, {-1, 0, 0}, {1, 0, 0}) == doctest::Approx(1.0));
  CHECK(point_segment_distance({5, 0, 0}, {-1, 0, 0}, {1, 0, 0}) == doctest::Approx(4.0));
  CHECK(point_segment_distance({2, 2, 2}, {1, 1, 1}, {1, 1, 1}) ==
        doctest::Approx(std::sqrt(3.0)));
}
