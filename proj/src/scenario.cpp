#include "exovdc/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace exovdc {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

struct Entry {
  std::string value;
  int line = 0;
  mutable bool used = false;
};

// section -> key -> raw value
using Sections = std::map<std::string, std::map<std::string, Entry>>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Sections read_sections(const std::string& path,
                       std::vector<std::string>& issues) {
  std::ifstream in(path);
  if (!in) {
    issues.push_back(path + ": cannot open scenario file");
    return {};
  }
  Sections out;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        issues.push_back(path + ":" + std::to_string(lineno) +
                         ": unterminated section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      out[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      issues.push_back(path + ":" + std::to_string(lineno) +
                       ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      issues.push_back(path + ":" + std::to_string(lineno) + ": empty key");
      continue;
    }
    out[section][key] = Entry{value, lineno};
  }
  return out;
}

// Field reader with positioned error reporting.
class Fields {
 public:
  Fields(const Sections& sec, const std::string& path,
         std::vector<std::string>& issues)
      : sec_(sec), path_(path), issues_(issues) {}

  bool has(const std::string& section, const std::string& key) const {
    const auto s = sec_.find(section);
    return s != sec_.end() && s->second.count(key) > 0;
  }

  std::vector<double> numbers(const std::string& section,
                              const std::string& key, std::size_t count) {
    const Entry* e = find(section, key);
    if (!e) return {};
    std::istringstream is(e->value);
    std::vector<double> out;
    double v;
    while (is >> v) out.push_back(v);
    if (!is.eof()) {
      fail(*e, section, key, "is not numeric");
      return {};
    }
    if (count != 0 && out.size() != count) {
      fail(*e, section, key,
           "expects " + std::to_string(count) + " numbers, got " +
               std::to_string(out.size()));
      return {};
    }
    return out;
  }

  double number(const std::string& section, const std::string& key,
                double fallback) {
    if (!has(section, key)) return fallback;
    const auto v = numbers(section, key, 1);
    return v.empty() ? fallback : v[0];
  }

  bool boolean(const std::string& section, const std::string& key,
               bool fallback) {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    if (e->value == "true" || e->value == "1") return true;
    if (e->value == "false" || e->value == "0") return false;
    fail(*e, section, key, "must be true or false");
    return fallback;
  }

  std::string word(const std::string& section, const std::string& key,
                   const std::string& fallback) {
    const Entry* e = find(section, key);
    return e ? e->value : fallback;
  }

  const Entry* find(const std::string& section, const std::string& key) {
    const auto s = sec_.find(section);
    if (s == sec_.end()) return nullptr;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    k->second.used = true;
    return &k->second;
  }

  void fail(const Entry& e, const std::string& section, const std::string& key,
            const std::string& what) {
    issues_.push_back(path_ + ":" + std::to_string(e.line) + ": [" + section +
                      "] " + key + " " + what);
  }

  void report_unused() {
    for (const auto& [sname, keys] : sec_)
      for (const auto& [kname, entry] : keys)
        if (!entry.used)
          issues_.push_back(path_ + ":" + std::to_string(entry.line) + ": [" +
                            sname + "] unknown field '" + kname + "'");
  }

 private:
  const Sections& sec_;
  std::string path_;
  std::vector<std::string>& issues_;
};

Vec3 vec3_of(const std::vector<double>& v) {
  return v.size() == 3 ? Vec3{v[0], v[1], v[2]} : Vec3{};
}

}  // namespace

ControlGains default_gains() {
  ControlGains g;
  for (int i = 0; i < kNumJoints; ++i) g.lambda[i] = 5.0;
  g.K_D = Mat6::scaled_identity(3.0);
  g.K_I = Mat6::scaled_identity(5.0);
  g.gamma_w = 10.0;
  g.gamma1 = 10.0;
  g.gamma2 = 10.0;
  g.kd_joint = 1.5;
  g.ki_joint = 5.0;
  g.zeta = 10.0;
  g.beta1 = 10.0;
  g.beta2 = 10.0;
  g.k_p = 100.0;
  g.k_v = 15.0;
  g.k_b = 3.0 * kDegToRad;
  return g;
}

std::vector<std::string> validate_scenario(const ScenarioConfig& cfg) {
  std::vector<std::string> issues;
  if (!(cfg.dt > 0.0)) issues.push_back("simulation dt must be positive");
  if (!(cfg.duration >= cfg.dt))
    issues.push_back("simulation duration must be at least one step");
  if (cfg.substeps < 1) issues.push_back("simulation substeps must be >= 1");
  if (!(cfg.gains.k_b > 0.0)) issues.push_back("barrier half width must be positive");
  if (!(cfg.split_fraction > 0.0 && cfg.split_fraction < 1.0))
    issues.push_back("constraints split_fraction must lie in (0,1)");
  if (cfg.estimator.units < 1) issues.push_back("estimator units must be >= 1");
  if (!(cfg.estimator.width > 0.0))
    issues.push_back("estimator width must be positive");

  for (int i = 0; i < kNumJoints; ++i) {
    const auto tag = "joint " + std::to_string(i + 1);
    const JointGeom& j = cfg.geom.joints[i];
    if (j.rot_pre.orthonormality_defect() > 1e-8 ||
        j.rot_post.orthonormality_defect() > 1e-8)
      issues.push_back(tag + ": rotation is not orthonormal");
    Mat4 chol;
    if (!cholesky4(phi_to_pseudo(j.robot).L, chol))
      issues.push_back(tag + ": robot inertial parameters are not physically consistent");
    if (j.human.mass() > 0.0 && !cholesky4(phi_to_pseudo(j.human).L, chol))
      issues.push_back(tag + ": human inertial parameters are not physically consistent");
    if (!(j.joint_inertia() > 0.0))
      issues.push_back(tag + ": joint inertia must be positive");
    if (!cfg.constraints[i].valid())
      issues.push_back(tag + ": constraint levels must bracket zero");
    if (!(cfg.gains.lambda[i] >= 0.0))
      issues.push_back(tag + ": lambda must be non-negative");
  }
  return issues;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::vector<std::string> issues;
  const Sections sections = read_sections(path, issues);
  if (!issues.empty()) throw ValidationError(issues);
  Fields f(sections, path, issues);

  ScenarioConfig cfg;
  cfg.gains = default_gains();
  {
    auto stem = path;
    const auto slash = stem.find_last_of('/');
    if (slash != std::string::npos) stem = stem.substr(slash + 1);
    const auto dot = stem.find_last_of('.');
    if (dot != std::string::npos) stem = stem.substr(0, dot);
    cfg.name = stem;
  }

  // [simulation]
  cfg.duration = f.number("simulation", "duration", 40.0);
  cfg.dt = f.number("simulation", "dt", 1e-3);
  cfg.substeps = static_cast<int>(f.number("simulation", "substeps", 4));
  cfg.seed = static_cast<std::uint64_t>(f.number("simulation", "seed", 1));
  if (f.has("simulation", "gravity"))
    cfg.geom.gravity_world = vec3_of(f.numbers("simulation", "gravity", 3));
  const std::string ctl = f.word("simulation", "controller", "vdc");
  if (ctl == "vdc") cfg.controller = ControllerKind::vdc;
  else if (ctl == "pd") cfg.controller = ControllerKind::pd;
  else if (const Entry* e = f.find("simulation", "controller"))
    f.fail(*e, "simulation", "controller", "must be vdc or pd");

  // [gains]
  ControlGains& g = cfg.gains;
  if (f.has("gains", "lambda")) {
    const auto v = f.numbers("gains", "lambda", 0);
    if (v.size() == 1)
      for (int i = 0; i < kNumJoints; ++i) g.lambda[i] = v[0];
    else if (v.size() == kNumJoints)
      for (int i = 0; i < kNumJoints; ++i) g.lambda[i] = v[i];
    else if (const Entry* e = f.find("gains", "lambda"))
      f.fail(*e, "gains", "lambda", "expects 1 or 7 numbers");
  }
  g.K_D = Mat6::scaled_identity(f.number("gains", "kd_body", 3.0));
  g.K_I = Mat6::scaled_identity(f.number("gains", "ki_body", 5.0));
  g.gamma_w = f.number("gains", "gamma_w", 10.0);
  g.gamma1 = f.number("gains", "gamma1", 10.0);
  g.gamma2 = f.number("gains", "gamma2", 10.0);
  g.kd_joint = f.number("gains", "kd_joint", 1.5);
  g.ki_joint = f.number("gains", "ki_joint", 5.0);
  g.zeta = f.number("gains", "zeta", 10.0);
  g.beta1 = f.number("gains", "beta1", 10.0);
  g.beta2 = f.number("gains", "beta2", 10.0);
  g.k_p = f.number("gains", "kp", 100.0);
  g.k_v = f.number("gains", "kv", 15.0);
  g.k_b = f.number("gains", "kb_deg", 3.0) * kDegToRad;

  // [estimator]
  EstimatorSettings& est = cfg.estimator;
  est.units = static_cast<int>(f.number("estimator", "units", 9));
  est.center_min = f.number("estimator", "center_min", -1.0);
  est.center_max = f.number("estimator", "center_max", 1.0);
  est.width = f.number("estimator", "width", 1.0);
  est.normalize_inputs = f.boolean("estimator", "normalize_inputs", false);
  est.input_scale = f.number("estimator", "input_scale", 1.0);
  est.initial_scale = f.number("estimator", "initial_scale", 0.5);
  est.freeze = f.boolean("estimator", "freeze", false);

  // [joint N]
  for (int i = 0; i < kNumJoints; ++i) {
    const std::string sec = "joint " + std::to_string(i + 1);
    JointGeom& j = cfg.geom.joints[i];
    const std::string axis = f.word(sec, "axis", i == 4 ? "x" : (i == 6 ? "y" : "z"));
    if (axis == "x") j.axis = JointAxis::about_x();
    else if (axis == "y") j.axis = JointAxis::about_y();
    else if (axis == "z") j.axis = JointAxis::about_z();
    else if (const Entry* e = f.find(sec, "axis"))
      f.fail(*e, sec, "axis", "must be x, y or z");

    j.offset_pre = vec3_of(f.numbers(sec, "offset", f.has(sec, "offset") ? 3 : 0));
    const Vec3 rpy = vec3_of(f.numbers(sec, "rpy", f.has(sec, "rpy") ? 3 : 0));
    Mat3 pre = Mat3::from_rpy(rpy.x, rpy.y, rpy.z);
    const double pretilt = f.number(sec, "pretilt", 0.0);
    if (pretilt != 0.0) pre = pre * Mat3::axis_angle(j.axis.axis, pretilt);
    j.rot_pre = pre;
    j.offset_post = vec3_of(f.numbers(sec, "tip_offset", f.has(sec, "tip_offset") ? 3 : 0));
    const Vec3 trpy = vec3_of(f.numbers(sec, "tip_rpy", f.has(sec, "tip_rpy") ? 3 : 0));
    j.rot_post = Mat3::from_rpy(trpy.x, trpy.y, trpy.z);

    const double mass = f.number(sec, "mass", 1.0);
    const Vec3 com = vec3_of(f.numbers(sec, "com", f.has(sec, "com") ? 3 : 0));
    Vec3 gyr{0.05, 0.05, 0.05};
    if (f.has(sec, "gyration")) gyr = vec3_of(f.numbers(sec, "gyration", 3));
    const Mat3 icom = Mat3::diag(mass * gyr.x * gyr.x, mass * gyr.y * gyr.y,
                                 mass * gyr.z * gyr.z);
    j.robot = InertialParams::from_com(mass, com, icom);
    const double hscale = f.number(sec, "human_scale", 0.5);
    j.human = j.robot * hscale;
    j.motor_inertia = f.number(sec, "motor_inertia", 0.05);
    j.human_joint_inertia =
        f.number(sec, "human_joint_inertia", 0.5 * j.motor_inertia);
  }

  // [trajectory]
  for (int i = 0; i < kNumJoints; ++i) {
    const std::string key = "q" + std::to_string(i + 1);
    const Entry* e = f.find("trajectory", key);
    if (!e) continue;
    std::istringstream is(e->value);
    std::string kind;
    is >> kind;
    TrajectorySpec& spec = cfg.trajectory[i];
    if (kind == "constant") {
      spec.kind = TrajectorySpec::Kind::constant;
      if (!(is >> spec.value))
        f.fail(*e, "trajectory", key, "constant expects a value");
    } else if (kind == "sine") {
      spec.kind = TrajectorySpec::Kind::sine;
      if (!(is >> spec.amp >> spec.freq))
        f.fail(*e, "trajectory", key, "sine expects amplitude and frequency");
      is >> spec.phase;  // optional
    } else {
      f.fail(*e, "trajectory", key, "must start with constant or sine");
    }
  }

  // [disturbance]
  cfg.disturbance.enabled = f.boolean("disturbance", "enabled", false);
  if (f.has("disturbance", "amp")) {
    const auto v = f.numbers("disturbance", "amp", 6);
    if (v.size() == 6) std::copy(v.begin(), v.end(), cfg.disturbance.amp.begin());
  }
  if (f.has("disturbance", "freq")) {
    const auto v = f.numbers("disturbance", "freq", 6);
    if (v.size() == 6) std::copy(v.begin(), v.end(), cfg.disturbance.freq.begin());
  }
  cfg.disturbance.scale = f.number("disturbance", "scale", 1.0);
  cfg.disturbance.per_link = f.boolean("disturbance", "per_link", true);

  // [human_torque]
  cfg.human_torque.enabled = f.boolean("human_torque", "enabled", false);
  if (f.has("human_torque", "amp")) {
    const auto v = f.numbers("human_torque", "amp", 7);
    if (v.size() == 7) std::copy(v.begin(), v.end(), cfg.human_torque.amp.begin());
  }
  if (f.has("human_torque", "freq")) {
    const auto v = f.numbers("human_torque", "freq", 7);
    if (v.size() == 7) std::copy(v.begin(), v.end(), cfg.human_torque.freq.begin());
  }

  // [constraints]
  {
    std::array<double, 7> sat{12, 12, 12, 12, 1.2, 1.2, 1.2};
    std::array<double, 7> dead{0.2, 0.2, 0.2, 0.2, 0.05, 0.05, 0.05};
    std::array<double, 7> slope_r{1, 1, 1, 1, 1, 1, 1};
    std::array<double, 7> slope_l{1, 1, 1, 1, 1, 1, 1};
    const auto fill = [&](const char* key, std::array<double, 7>& dst) {
      if (!f.has("constraints", key)) return;
      const auto v = f.numbers("constraints", key, 7);
      if (v.size() == 7) std::copy(v.begin(), v.end(), dst.begin());
    };
    fill("saturation", sat);
    fill("dead_zone", dead);
    fill("slope_right", slope_r);
    fill("slope_left", slope_l);
    for (int i = 0; i < kNumJoints; ++i) {
      ConstraintParams& p = cfg.constraints[i];
      p.k_M = sat[i];
      p.k_m = -sat[i];
      p.m_r = dead[i];
      p.m_l = -dead[i];
      p.k_r = slope_r[i];
      p.k_l = slope_l[i];
    }
    cfg.split_fraction = f.number("constraints", "split_fraction", 0.5);
  }

  // [initial]
  if (f.has("initial", "q")) {
    const auto v = f.numbers("initial", "q", 7);
    if (v.size() == 7)
      for (int i = 0; i < kNumJoints; ++i) cfg.q0[i] = v[i];
  }
  if (f.has("initial", "qdot")) {
    const auto v = f.numbers("initial", "qdot", 7);
    if (v.size() == 7)
      for (int i = 0; i < kNumJoints; ++i) cfg.qdot0[i] = v[i];
  }

  f.report_unused();
  const auto more = validate_scenario(cfg);
  issues.insert(issues.end(), more.begin(), more.end());
  if (!issues.empty()) throw ValidationError(issues);
  return cfg;
}

}  // namespace exovdc
