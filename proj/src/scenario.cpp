#include "winspect/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace winspect {

namespace {

struct KeyValue {
  std::string value;
  bool used = false;
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

class Config {
 public:
  explicit Config(std::istream& is) {
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw ScenarioError("line " + std::to_string(lineno) + ": expected key = value");
      std::string key = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      if (key.empty()) throw ScenarioError("line " + std::to_string(lineno) + ": empty key");
      if (entries_.count(key)) throw ScenarioError(key + ": duplicate key");
      entries_[key] = {value, false};
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    it->second.used = true;
    return it->second.value;
  }

  double get_number(const std::string& key, double fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    it->second.used = true;
    return parse_number(key, it->second.value);
  }

  long long get_integer(const std::string& key, long long fallback) {
    double v = get_number(key, static_cast<double>(fallback));
    if (v != std::floor(v)) throw ScenarioError(key + ": expected an integer");
    return static_cast<long long>(v);
  }

  Vec3 get_vec3(const std::string& key, const Vec3& fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    it->second.used = true;
    std::istringstream ss(it->second.value);
    Vec3 v;
    if (!(ss >> v.x >> v.y >> v.z)) throw ScenarioError(key + ": expected three numbers");
    std::string rest;
    if (ss >> rest) throw ScenarioError(key + ": expected exactly three numbers");
    return v;
  }

  std::vector<double> get_list(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return {};
    it->second.used = true;
    std::istringstream ss(it->second.value);
    std::vector<double> vals;
    double v;
    while (ss >> v) vals.push_back(v);
    if (!ss.eof()) throw ScenarioError(key + ": expected numbers");
    return vals;
  }

  void reject_unused() const {
    for (const auto& [key, kv] : entries_)
      if (!kv.used) throw ScenarioError(key + ": unknown key");
  }

 private:
  static double parse_number(const std::string& key, const std::string& text) {
    try {
      size_t pos = 0;
      double v = std::stod(text, &pos);
      if (pos != text.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ScenarioError(key + ": not a number: '" + text + "'");
    }
  }

  std::map<std::string, KeyValue> entries_;
};

void check(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ScenarioError(key + ": " + what);
}

}  // namespace

Scenario parse_scenario(std::istream& is, const std::string& name_hint) {
  Config cfg(is);
  Scenario sc;

  sc.label = cfg.get_string("label", name_hint);
  sc.terrain = cfg.get_string("terrain", "");
  sc.seed = static_cast<uint64_t>(cfg.get_integer("seed", 0));
  sc.uav_count = static_cast<int>(cfg.get_integer("uav_count", 1));
  check(sc.uav_count >= 1, "uav_count", "must be >= 1");
  sc.dt = cfg.get_number("dt", 0.05);
  check(sc.dt > 0.0 && sc.dt <= 0.5, "dt", "must be in (0, 0.5]");
  sc.image_size = static_cast<int>(cfg.get_integer("image_size", 512));
  check(sc.image_size >= 64, "image_size", "must be >= 64");

  sc.wind.mean = cfg.get_vec3("wind.mean", {});
  sc.wind.gust_amplitude = cfg.get_number("wind.gust_amplitude", 0.0);
  check(sc.wind.gust_amplitude >= 0.0, "wind.gust_amplitude", "must be >= 0");
  sc.wind.gust_correlation_time = cfg.get_number("wind.gust_correlation_time", 2.0);
  check(sc.wind.gust_correlation_time > 0.0, "wind.gust_correlation_time", "must be > 0");
  sc.wind.seed = sc.seed;

  sc.planner.standoff = cfg.get_number("planner.standoff", 10.0);
  sc.planner.pass_spacing = cfg.get_number("planner.pass_spacing", 5.0);
  sc.planner.sides = static_cast<int>(cfg.get_integer("planner.sides", 2));
  sc.planner.cruise_speed = cfg.get_number("planner.cruise_speed", 4.0);
  try {
    sc.planner.validate();
  } catch (const std::exception& e) {
    throw ScenarioError(e.what());
  }

  sc.gains.kp = cfg.get_number("gains.kp", 1.2);
  sc.gains.ki = cfg.get_number("gains.ki", 0.2);
  sc.gains.kd = cfg.get_number("gains.kd", 0.4);
  try {
    sc.gains.validate();
  } catch (const std::exception& e) {
    throw ScenarioError(std::string("gains: ") + e.what());
  }

  sc.camera.fov_deg = cfg.get_number("camera.fov", 60.0);
  sc.camera.min_range = cfg.get_number("camera.min_range", 2.0);
  sc.camera.max_range = cfg.get_number("camera.max_range", 25.0);
  sc.camera.max_incidence_deg = cfg.get_number("camera.max_incidence", 60.0);
  try {
    sc.camera.validate();
  } catch (const std::exception& e) {
    throw ScenarioError(e.what());
  }
  sc.sample_density = cfg.get_number("camera.sample_density", 2.0);
  check(sc.sample_density > 0.0, "camera.sample_density", "must be > 0");

  for (int i = 0;; ++i) {
    std::string prefix = "turbine." + std::to_string(i) + ".";
    if (!cfg.has(prefix + "tower_height")) {
      // Contiguous indexing: any higher-indexed turbine key is caught by reject_unused.
      break;
    }
    Point3 base = cfg.get_vec3(prefix + "tower_base", {});
    double height = cfg.get_number(prefix + "tower_height", 0.0);
    check(height > 0.0, prefix + "tower_height", "must be > 0");
    double blade_length = cfg.get_number(prefix + "blade_length", 0.0);
    check(blade_length > 0.0, prefix + "blade_length", "must be > 0");
    std::vector<double> pitch = cfg.get_list(prefix + "blade_pitch");
    int blade_count = static_cast<int>(cfg.get_integer(
        prefix + "blade_count", pitch.empty() ? 3 : static_cast<long long>(pitch.size())));
    check(blade_count >= 1, prefix + "blade_count", "must be >= 1");
    if (!pitch.empty())
      check(static_cast<int>(pitch.size()) == blade_count, prefix + "blade_pitch",
            "length must equal blade_count");
    double yaw = cfg.get_number(prefix + "nacelle_yaw", 0.0);
    check(yaw >= 0.0 && yaw < 360.0, prefix + "nacelle_yaw", "must be in [0,360)");
    double phase = cfg.get_number(prefix + "rotor_phase", 90.0);
    try {
      sc.turbines.push_back(
          make_turbine(base, height, yaw, blade_length, blade_count, phase, std::move(pitch)));
    } catch (const std::exception& e) {
      throw ScenarioError("turbine." + std::to_string(i) + ": " + e.what());
    }
  }
  check(!sc.turbines.empty(), "turbine.0.tower_height", "at least one turbine required");

  cfg.reject_unused();
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ScenarioError("cannot open scenario file: " + path);
  std::string stem = path;
  size_t slash = stem.find_last_of("/\\");
  if (slash != std::string::npos) stem.erase(0, slash + 1);
  size_t dot = stem.find_last_of('.');
  if (dot != std::string::npos) stem.erase(dot);
  return parse_scenario(is, stem);
}

}  // namespace winspect
