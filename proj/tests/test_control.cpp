#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "winspect/control.hpp"
#include "winspect/metrics.hpp"

using namespace winspect;

namespace {

// Straight leg from `a` to `b` at the given speed, wrapped as a one-route plan.
MissionPlan straight_leg(const Point3& a, const Point3& b, double speed) {
  TrajectorySegment seg;
  seg.kind = SegmentKind::BladeSweep;
  Vec3 gaze = normalized(b - a);
  seg.waypoints = {{a, gaze, speed, 0.0}, {b, gaze, speed, 0.0}};
  seg.duration = distance(a, b) / speed;
  MissionPlan plan;
  plan.uav_count = 1;
  plan.routes = {{seg}};
  plan.origins = {a};
  return plan;
}

double tail_mean_deviation(const FlightLog& log, double fraction = 0.2) {
  size_t n = log.samples.size();
  size_t start = static_cast<size_t>(n * (1.0 - fraction));
  double sum = 0.0;
  for (size_t i = start; i < n; ++i)
    sum += distance(log.samples[i].position, log.samples[i].reference);
  return sum / static_cast<double>(n - start);
}

}  // namespace

TEST_CASE("pid_step: pure proportional") {
  PIDGains gains{2.0, 0.0, 0.0};
  auto [u, state] = pid_step(gains, PIDState{}, {1.5, 0.0, 0.0}, 0.1);
  CHECK(u.x == doctest::Approx(3.0));
  CHECK(u.y == 0.0);
  CHECK(u.z == 0.0);
  CHECK(state.primed);
}

TEST_CASE("pid_step: zero error with zero state gives zero output") {
  auto [u, state] = pid_step(PIDGains{}, PIDState{}, {0, 0, 0}, 0.05);
  CHECK(norm(u) == 0.0);
  CHECK(norm(state.integral) == 0.0);
}

TEST_CASE("pid_step: rectangle integration accumulates exactly") {
  PIDGains gains{0.0, 1.0, 0.0};
  PIDState state;
  Vec3 u{};
  for (int i = 0; i < 10; ++i) std::tie(u, state) = pid_step(gains, state, {1, 0, 0}, 0.1);
  CHECK(u.x == doctest::Approx(1.0).epsilon(1e-12));  // ki * sum(e dt) = 1.0
}

TEST_CASE("pid_step: first step has zero derivative, later steps do not") {
  PIDGains gains{0.0, 0.0, 1.0};
  auto [u1, s1] = pid_step(gains, PIDState{}, {5, 0, 0}, 0.1);
  CHECK(u1.x == 0.0);
  auto [u2, s2] = pid_step(gains, s1, {6, 0, 0}, 0.1);
  CHECK(u2.x == doctest::Approx(10.0));  // (6-5)/0.1
  (void)s2;
}

TEST_CASE("pid_step: integral clamps at the anti-windup limit") {
  PIDGains gains{0.0, 1.0, 0.0};
  PIDState state;
  Vec3 u{};
  for (int i = 0; i < 5000; ++i) std::tie(u, state) = pid_step(gains, state, {1, 0, 0}, 0.5);
  CHECK(state.integral.x == doctest::Approx(kIntegralLimit));
  CHECK(u.x == doctest::Approx(kIntegralLimit));
}

TEST_CASE("pid_step: rejects non-positive dt") {
  CHECK_THROWS_AS(pid_step(PIDGains{}, PIDState{}, {1, 0, 0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(pid_step(PIDGains{}, PIDState{}, {1, 0, 0}, -0.1), std::invalid_argument);
}

TEST_CASE("pid_step: linear in the error from zero state") {
  PIDGains gains{1.1, 0.3, 0.7};
  Vec3 e{0.4, -1.2, 2.0};
  auto [u1, s1] = pid_step(gains, PIDState{}, e, 0.05);
  auto [u3, s3] = pid_step(gains, PIDState{}, e * 3.0, 0.05);
  CHECK(u3.x == doctest::Approx(3.0 * u1.x).epsilon(1e-12));
  CHECK(u3.y == doctest::Approx(3.0 * u1.y).epsilon(1e-12));
  CHECK(u3.z == doctest::Approx(3.0 * u1.z).epsilon(1e-12));
  (void)s1;
  (void)s3;
}

TEST_CASE("pid_step: axes are decoupled") {
  PIDGains gains{1.1, 0.3, 0.7};
  PIDState state;
  std::tie(std::ignore, state) = pid_step(gains, state, {1, 2, 3}, 0.05);
  auto [u_a, sa] = pid_step(gains, state, {0.5, 2, 3}, 0.05);
  auto [u_b, sb] = pid_step(gains, state, {9.0, 2, 3}, 0.05);
  CHECK(u_a.y == u_b.y);
  CHECK(u_a.z == u_b.z);
  CHECK(u_a.x != u_b.x);
  (void)sa;
  (void)sb;
}

TEST_CASE("wind: zero gust amplitude is exactly the mean") {
  WindModel model{{3.0, -1.0, 0.5}, 0.0, 2.0, 99};
  WindStream stream(model, 0);
  for (int i = 0; i < 100; ++i) {
    Vec3 w = stream.sample(0.05);
    CHECK(w.x == 3.0);
    CHECK(w.y == -1.0);
    CHECK(w.z == 0.5);
  }
}

TEST_CASE("wind: identical seed and stream id reproduce the sequence") {
  WindModel model{{0, 0, 0}, 2.0, 1.5, 1234};
  WindStream a(model, 7);
  WindStream b(model, 7);
  WindStream c(model, 8);
  bool all_equal = true, any_differs = false;
  for (int i = 0; i < 200; ++i) {
    Vec3 wa = a.sample(0.1), wb = b.sample(0.1), wc = c.sample(0.1);
    all_equal &= wa.x == wb.x && wa.y == wb.y && wa.z == wb.z;
    any_differs |= wa.x != wc.x;
  }
  CHECK(all_equal);
  CHECK(any_differs);
}

TEST_CASE("wind: long-run standard deviation matches the gust amplitude") {
  WindModel model{{0, 0, 0}, 1.5, 2.0, 5150};
  WindStream stream(model, 0);
  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = stream.sample(0.1).x;
    sum += x;
    sum_sq += x * x;
  }
  double variance = sum_sq / n - (sum / n) * (sum / n);
  double std_dev = std::sqrt(variance);
  CHECK(std_dev == doctest::Approx(1.5).epsilon(0.15));
}

TEST_CASE("wind: invalid correlation time is rejected") {
  WindModel model{{0, 0, 0}, 1.0, 0.0, 0};
  CHECK_THROWS_AS(WindStream(model, 0), std::invalid_argument);
}

TEST_CASE("simulate: zero wind and zero gains track the reference exactly") {
  MissionPlan plan = straight_leg({0, 0, 0}, {100, 0, 0}, 4.0);
  WindModel calm{};
  auto logs = simulate_flight(plan, PIDGains{0, 0, 0}, calm, 0.05);
  REQUIRE(logs.size() == 1);
  // reference-velocity feedforward telescopes: the plant rides the reference
  CHECK(mean_deviation(logs[0]) < 1e-9);
}

TEST_CASE("simulate: constant wind with zero gains drifts by the closed form") {
  MissionPlan plan = straight_leg({0, 0, 0}, {100, 0, 0}, 4.0);
  WindModel crosswind{{0.0, 2.0, 0.0}, 0.0, 2.0, 0};
  double dt = 0.05;
  auto logs = simulate_flight(plan, PIDGains{0, 0, 0}, crosswind, dt);
  for (size_t n = 0; n < logs[0].samples.size(); ++n) {
    const FlightSample& s = logs[0].samples[n];
    double expected = 2.0 * static_cast<double>(n) * dt;  // |e_n| = |w| n dt, exactly
    CHECK(distance(s.position, s.reference) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("simulate: default gains hold a straight leg tightly in calm air") {
  MissionPlan plan = straight_leg({0, 0, 0}, {100, 0, 0}, 4.0);
  auto logs = simulate_flight(plan, PIDGains{}, WindModel{}, 0.05);
  CHECK(tail_mean_deviation(logs[0], 0.8) < 0.05);
}

TEST_CASE("simulate: crosswind steady state - integral term cancels, pure PD does not") {
  MissionPlan plan = straight_leg({0, 0, 0}, {200, 0, 0}, 4.0);
  WindModel crosswind{{0.0, 5.0, 0.0}, 0.0, 2.0, 0};

  auto with_ki = simulate_flight(plan, PIDGains{1.2, 0.2, 0.4}, crosswind, 0.05);
  CHECK(tail_mean_deviation(with_ki[0]) <= 0.1);

  auto without_ki = simulate_flight(plan, PIDGains{1.2, 0.0, 0.4}, crosswind, 0.05);
  CHECK(tail_mean_deviation(without_ki[0]) >= 0.5);
}

TEST_CASE("simulate: PID rejects gusty wind by at least half vs feedforward only") {
  MissionPlan plan = straight_leg({0, 0, 0}, {200, 0, 0}, 4.0);
  WindModel gusty{{3.0, 0.0, 2.0}, 1.0, 2.0, 42};
  auto on = simulate_flight(plan, PIDGains{}, gusty, 0.05);
  auto off = simulate_flight(plan, PIDGains{0, 0, 0}, gusty, 0.05);
  CHECK(mean_deviation(on[0]) < 0.5 * mean_deviation(off[0]));
}

TEST_CASE("simulate: identical inputs give bit-identical logs") {
  MissionPlan plan = straight_leg({0, 0, 0}, {150, 5, 20}, 4.0);
  WindModel gusty{{2.0, 1.0, 0.0}, 1.5, 2.0, 777};
  auto a = simulate_flight(plan, PIDGains{}, gusty, 0.05);
  auto b = simulate_flight(plan, PIDGains{}, gusty, 0.05);
  REQUIRE(a.size() == b.size());
  REQUIRE(a[0].samples.size() == b[0].samples.size());
  CHECK(std::memcmp(a[0].samples.data(), b[0].samples.data(),
                    a[0].samples.size() * sizeof(FlightSample)) == 0);
}

TEST_CASE("simulate: deviation never exceeds twice the standoff in calm air") {
  MissionPlan plan = straight_leg({0, 0, 0}, {100, 30, 40}, 4.0);
  auto logs = simulate_flight(plan, PIDGains{}, WindModel{}, 0.1);
  for (const FlightSample& s : logs[0].samples)
    CHECK(distance(s.position, s.reference) < 2.0 * PlannerParams{}.standoff);
}

TEST_CASE("simulate: dt out of range or empty plan is rejected") {
  MissionPlan plan = straight_leg({0, 0, 0}, {10, 0, 0}, 4.0);
  CHECK_THROWS_AS(simulate_flight(plan, PIDGains{}, WindModel{}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(simulate_flight(plan, PIDGains{}, WindModel{}, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(simulate_flight(MissionPlan{}, PIDGains{}, WindModel{}, 0.05),
                  std::invalid_argument);
}

TEST_CASE("simulate: log times are uniform and strictly increasing") {
  MissionPlan plan = straight_leg({0, 0, 0}, {37, 0, 0}, 4.0);
  auto logs = simulate_flight(plan, PIDGains{}, WindModel{}, 0.05);
  const auto& samples = logs[0].samples;
  REQUIRE(samples.size() >= 2);
  for (size_t i = 1; i < samples.size(); ++i)
    CHECK(samples[i].t - samples[i - 1].t == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(samples.back().t >= 37.0 / 4.0);
}
