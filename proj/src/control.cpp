#include "winspect/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace winspect {

void PIDGains::validate() const {
  if (!(kp >= 0.0) || !(ki >= 0.0) || !(kd >= 0.0) || !std::isfinite(kp) || !std::isfinite(ki) ||
      !std::isfinite(kd))
    throw std::invalid_argument("gains must be finite and >= 0");
}

std::pair<Vec3, PIDState> pid_step(const PIDGains& gains, const PIDState& state,
                                   const Vec3& error, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("pid_step: dt must be > 0");
  PIDState next = state;
  if (!next.primed) {
    next.prev_error = error;  // zero derivative on the first step
    next.primed = true;
  }
  auto axis = [&](double e, double& integral, double prev) {
    integral = std::clamp(integral + e * dt, -kIntegralLimit, kIntegralLimit);
    return gains.kp * e + gains.ki * integral + gains.kd * (e - prev) / dt;
  };
  Vec3 u;
  u.x = axis(error.x, next.integral.x, next.prev_error.x);
  u.y = axis(error.y, next.integral.y, next.prev_error.y);
  u.z = axis(error.z, next.integral.z, next.prev_error.z);
  next.prev_error = error;
  return {u, next};
}

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

WindStream::WindStream(const WindModel& model, uint64_t stream_id)
    : model_(model), rng_(splitmix64(model.seed ^ splitmix64(stream_id))) {
  if (!(model_.gust_correlation_time > 0.0))
    throw std::invalid_argument("wind.gust_correlation_time must be > 0");
  if (!(model_.gust_amplitude >= 0.0))
    throw std::invalid_argument("wind.gust_amplitude must be >= 0");
}

// Box-Muller on the raw engine keeps the stream reproducible across standard
// library implementations.
double WindStream::normal() {
  double u1 = (static_cast<double>(rng_()) + 1.0) / (static_cast<double>(UINT64_MAX) + 2.0);
  double u2 = (static_cast<double>(rng_()) + 1.0) / (static_cast<double>(UINT64_MAX) + 2.0);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

Vec3 WindStream::sample(double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("wind sample: dt must be > 0");
  double sigma = model_.gust_amplitude;
  if (!primed_) {
    primed_ = true;
    gust_ = {sigma * normal(), sigma * normal(), sigma * normal()};  // stationary start
  } else {
    double alpha = std::exp(-dt / model_.gust_correlation_time);
    double mix = sigma * std::sqrt(1.0 - alpha * alpha);
    gust_ = {alpha * gust_.x + mix * normal(), alpha * gust_.y + mix * normal(),
             alpha * gust_.z + mix * normal()};
  }
  return model_.mean + gust_;
}

namespace {

FlightLog simulate_one(const std::vector<TrajectorySegment>& route, const Point3& origin,
                       int uav_id, const PIDGains& gains, const WindModel& wind, double dt) {
  FlightLog log;
  log.uav_id = uav_id;
  log.dt = dt;
  WindStream stream(wind, static_cast<uint64_t>(uav_id));

  if (route.empty()) {
    log.samples.push_back({0.0, origin, origin, Vec3{1.0, 0.0, 0.0}, Vec3{}, Vec3{}});
    return log;
  }

  double total = route_duration(route);
  int steps = std::max(1, static_cast<int>(std::ceil(total / dt - 1e-9)));

  Point3 pos = sample_route(route, 0.0).position;
  PIDState state;
  for (int n = 0; n <= steps; ++n) {
    double t = n * dt;
    Waypoint ref = sample_route(route, std::min(t, total));
    Waypoint ref_next = sample_route(route, std::min(t + dt, total));
    Vec3 feedforward = (ref_next.position - ref.position) / dt;

    Vec3 error = ref.position - pos;
    auto [u, next_state] = pid_step(gains, state, error, dt);
    state = next_state;
    Vec3 w = stream.sample(dt);

    log.samples.push_back({t, pos, ref.position, ref.gaze, u, w});
    pos += (feedforward + u + w) * dt;
  }
  return log;
}

}  // namespace

std::vector<FlightLog> simulate_flight(const MissionPlan& plan, const PIDGains& gains,
                                       const WindModel& wind, double dt, RunMode mode) {
  if (!(dt > 0.0 && dt <= 0.5)) throw std::invalid_argument("simulate_flight: dt must be in (0, 0.5]");
  if (plan.uav_count < 1 || plan.routes.empty())
    throw std::invalid_argument("simulate_flight: empty plan");
  gains.validate();

  int n = plan.uav_count;
  std::vector<FlightLog> logs(n);
  if (mode == RunMode::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int u = 0; u < n; ++u)
      logs[u] = simulate_one(plan.routes[u], plan.origins[u], u, gains, wind, dt);
  } else {
    for (int u = 0; u < n; ++u)
      logs[u] = simulate_one(plan.routes[u], plan.origins[u], u, gains, wind, dt);
  }
  return logs;
}

}  // namespace winspect
