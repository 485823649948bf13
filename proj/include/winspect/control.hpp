#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "winspect/geometry.hpp"
#include "winspect/parallel.hpp"
#include "winspect/trajectory.hpp"

namespace winspect {

struct PIDGains {
  double kp = 1.2;
  double ki = 0.2;
  double kd = 0.4;
  void validate() const;
};

/// Anti-windup clamp on the per-axis error integral, m*s. Sized so the
/// integral term can cancel a sustained crosswind of ki * limit m/s.
constexpr double kIntegralLimit = 50.0;

struct PIDState {
  Vec3 integral{};
  Vec3 prev_error{};
  bool primed = false;  // first step treats prev_error as the current error
};

/// One discrete step of the per-axis controller: rectangle integration,
/// backward-difference derivative. Returns the control output and the
/// advanced state. Throws when dt <= 0.
std::pair<Vec3, PIDState> pid_step(const PIDGains& gains, const PIDState& state,
                                   const Vec3& error, double dt);

struct WindModel {
  Vec3 mean{};                         // m/s
  double gust_amplitude = 0.0;         // m/s, stationary std of the gust process
  double gust_correlation_time = 2.0;  // s, > 0
  uint64_t seed = 0;
};

/// Seedable gust stream: mean plus a first-order (Ornstein-Uhlenbeck style)
/// low-pass filtered noise with stationary std gust_amplitude. Streams with
/// distinct ids are independent; a given (seed, id) pair is deterministic
/// regardless of platform (the normal draws are generated in-house).
class WindStream {
 public:
  WindStream(const WindModel& model, uint64_t stream_id);
  Vec3 sample(double dt);  // advance by dt and return the wind velocity

 private:
  double normal();
  WindModel model_;
  std::mt19937_64 rng_;
  Vec3 gust_{};
  bool primed_ = false;
};

struct FlightSample {
  double t = 0.0;
  Point3 position{};
  Point3 reference{};
  Vec3 gaze{};  // planned camera direction at t (not exported to CSV)
  Vec3 control{};
  Vec3 wind{};
};

struct FlightLog {
  int uav_id = 0;
  double dt = 0.0;
  std::vector<FlightSample> samples;
};

/// Kinematic tracking simulation: each UAV follows its route's moving
/// reference with feedforward reference velocity, PID correction of the
/// position error, and additive wind. Explicit Euler at fixed dt, logging
/// every step until the route duration elapses. Per-UAV RNG streams keyed by
/// (wind.seed, uav_id) make serial and parallel execution bit-identical.
std::vector<FlightLog> simulate_flight(const MissionPlan& plan, const PIDGains& gains,
                                       const WindModel& wind, double dt,
                                       RunMode mode = RunMode::parallel);

}  // namespace winspect
