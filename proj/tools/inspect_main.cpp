// Command-line driver: `inspect run` executes the full planning + simulated
// flight pipeline on a scenario file, `inspect sweep-angle` runs the blade
// angle recovery harness, `inspect compare` diffs metrics files against the
// first (baseline) one.
//
// Exit codes: 0 success, 1 configuration error, 2 pipeline error.
// Set INSPECT_LOG=quiet|info|debug to control stderr verbosity.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "winspect/metrics.hpp"
#include "winspect/pipeline.hpp"
#include "winspect/scenario.hpp"

namespace {

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

LogLevel log_level() {
  const char* env = std::getenv("INSPECT_LOG");
  if (!env) return LogLevel::info;
  std::string v = env;
  if (v == "quiet") return LogLevel::quiet;
  if (v == "debug") return LogLevel::debug;
  return LogLevel::info;
}

void log(LogLevel level, const std::string& msg) {
  if (static_cast<int>(level) <= static_cast<int>(log_level())) std::cerr << msg << '\n';
}

std::string file_stem(const std::string& path) {
  std::string stem = path;
  size_t slash = stem.find_last_of("/\\");
  if (slash != std::string::npos) stem.erase(0, slash + 1);
  size_t dot = stem.find_last_of('.');
  if (dot != std::string::npos) stem.erase(dot);
  return stem;
}

int run_scenario(const std::string& scenario_path, const std::string& out_dir,
                 long long seed_override, bool has_seed, const std::string& format_name) {
  winspect::Scenario scenario;
  try {
    scenario = winspect::load_scenario(scenario_path);
    if (has_seed) {
      scenario.seed = static_cast<uint64_t>(seed_override);
      scenario.wind.seed = scenario.seed;
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }

  winspect::OutputFormat format = format_name == "json-lines" ? winspect::OutputFormat::json_lines
                                                              : winspect::OutputFormat::csv;
  try {
    log(LogLevel::info, "running scenario '" + scenario.label + "' with " +
                            std::to_string(scenario.turbines.size()) + " turbine(s), " +
                            std::to_string(scenario.uav_count) + " UAV(s)");
    winspect::PipelineResult result = winspect::run_pipeline(scenario);
    for (const auto& obs : result.observations)
      log(LogLevel::debug, "turbine " + std::to_string(obs.turbine_id) + ": " +
                               std::to_string(obs.orientations.size()) + " blade(s) oriented");
    winspect::write_outputs(result, scenario, out_dir, format);
    std::cout << "wrote " << out_dir << "/{mission, flight_uav<k>, metrics, report.txt}\n";
    std::cout << winspect::metrics_csv(result.report);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "pipeline error: " << e.what() << '\n';
    return 2;
  }
}

int run_sweep(int steps, int image_size, const std::string& out_path) {
  try {
    auto rows = winspect::sweep_angle_harness(steps, image_size);
    std::string table = winspect::angle_sweep_table(rows);
    double max_err = 0.0;
    int class_match = 0;
    for (const auto& r : rows) {
      max_err = std::max(max_err, r.error_deg);
      class_match += r.truth_class == r.estimate_class;
    }
    if (out_path.empty()) {
      std::cout << table;
    } else {
      std::ofstream os(out_path, std::ios::binary);
      os << table;
    }
    std::cerr << "steps=" << rows.size() << " max_err_deg=" << max_err
              << " class_match=" << class_match << "/" << rows.size() << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "pipeline error: " << e.what() << '\n';
    return 2;
  }
}

int run_compare(const std::vector<std::string>& paths) {
  std::vector<winspect::MetricsReport> reports;
  std::vector<std::string> labels;
  try {
    for (const std::string& p : paths) {
      std::ifstream is(p);
      if (!is) throw std::runtime_error("cannot open " + p);
      reports.push_back(winspect::parse_metrics_csv(is));
      // pipeline outputs are always named metrics.csv; label by run directory
      std::string label = file_stem(p);
      if (label == "metrics") {
        std::string dir = std::filesystem::path(p).parent_path().filename().string();
        if (!dir.empty()) label = dir;
      }
      labels.push_back(label);
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }
  try {
    std::cout << winspect::compare_report(reports, labels);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "pipeline error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automated UAV wind-turbine inspection planner and simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the full pipeline on a scenario file");
  std::string scenario_path, out_dir = "out", format = "csv";
  long long seed = 0;
  run->add_option("--scenario", scenario_path, "Scenario file")->required();
  run->add_option("--out", out_dir, "Output directory");
  auto* seed_opt = run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json-lines"}));

  auto* sweep = app.add_subcommand("sweep-angle", "Blade angle recovery harness");
  int steps = 180, image_size = 512;
  std::string sweep_out;
  sweep->add_option("--steps", steps, "Number of angle steps over [0,180)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--size", image_size, "Render resolution");
  sweep->add_option("--out", sweep_out, "Write the table to a file instead of stdout");

  auto* compare = app.add_subcommand("compare", "Compare metrics files against the first");
  std::vector<std::string> metric_files;
  compare->add_option("files", metric_files, "metrics.csv files")->expected(-2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage problems are configuration errors
  }

  if (run->parsed()) return run_scenario(scenario_path, out_dir, seed, seed_opt->count() > 0, format);
  if (sweep->parsed()) return run_sweep(steps, image_size, sweep_out);
  if (compare->parsed()) return run_compare(metric_files);
  return 1;
}
