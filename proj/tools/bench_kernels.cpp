// Times the OpenMP kernels against their serial reference implementations:
// silhouette rendering, fleet simulation, and surface-coverage evaluation.
// Results are checked for bit-identical agreement while timing.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>

#include <omp.h>

#include "winspect/pipeline.hpp"
#include "winspect/render.hpp"
#include "winspect/scenario.hpp"

using namespace winspect;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Scenario bench_scenario() {
  std::istringstream cfg(R"(
label = bench
uav_count = 3
seed = 7
wind.mean = 4 0 0
wind.gust_amplitude = 1.5
turbine.0.tower_base = 0 0 0
turbine.0.tower_height = 80
turbine.0.blade_length = 40
turbine.0.rotor_phase = 75
turbine.1.tower_base = 0 250 0
turbine.1.tower_height = 80
turbine.1.blade_length = 40
turbine.1.rotor_phase = 15
turbine.2.tower_base = 0 500 0
turbine.2.tower_height = 80
turbine.2.blade_length = 40
turbine.2.rotor_phase = 40
)");
  return parse_scenario(cfg, "bench");
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
  std::printf("%-18s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   identical %s\n", name,
              serial_s, parallel_s, serial_s / parallel_s, identical ? "yes" : "NO");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  Scenario sc = bench_scenario();

  {
    TurbineModel t = sc.turbines[0];
    InspectionZone zone = compute_zone(blade_tips(t));
    CameraPose pose{initial_point(zone), zone.center};
    RenderOptions opt;
    opt.width = opt.height = 2048;
    opt.fov_deg = 100.0;

    auto t0 = Clock::now();
    Raster serial = render_silhouette(t, pose, opt, RunMode::serial);
    double ts = seconds_since(t0);
    t0 = Clock::now();
    Raster parallel = render_silhouette(t, pose, opt, RunMode::parallel);
    double tp = seconds_since(t0);
    report("render 2048^2", ts, tp, serial.data == parallel.data);
  }

  PipelineResult obs_serial, obs_parallel;
  {
    std::vector<std::vector<BladeOrientation>> orientations;
    for (size_t i = 0; i < sc.turbines.size(); ++i)
      orientations.push_back(
          observe_turbine(sc.turbines[i], static_cast<int>(i), sc.image_size).orientations);
    MissionPlan plan = assemble_mission(sc.turbines, orientations, sc.uav_count, sc.planner);

    auto t0 = Clock::now();
    auto logs_serial = simulate_flight(plan, sc.gains, sc.wind, sc.dt, RunMode::serial);
    double ts = seconds_since(t0);
    t0 = Clock::now();
    auto logs_parallel = simulate_flight(plan, sc.gains, sc.wind, sc.dt, RunMode::parallel);
    double tp = seconds_since(t0);
    bool identical = logs_serial.size() == logs_parallel.size();
    for (size_t u = 0; identical && u < logs_serial.size(); ++u) {
      const auto& a = logs_serial[u].samples;
      const auto& b = logs_parallel[u].samples;
      identical = a.size() == b.size() &&
                  std::memcmp(a.data(), b.data(), a.size() * sizeof(FlightSample)) == 0;
    }
    report("simulate fleet", ts, tp, identical);

    auto t1 = Clock::now();
    double cov_serial = surface_coverage(logs_serial, sc.turbines, sc.camera, 8.0, RunMode::serial);
    double tcs = seconds_since(t1);
    t1 = Clock::now();
    double cov_parallel =
        surface_coverage(logs_serial, sc.turbines, sc.camera, 8.0, RunMode::parallel);
    double tcp = seconds_since(t1);
    report("coverage 8/m", tcs, tcp, cov_serial == cov_parallel);
  }
  return 0;
}
