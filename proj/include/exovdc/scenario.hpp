#pragma once

#include <cstdint>
#include <string>

#include "exovdc/actuator.hpp"
#include "exovdc/controller.hpp"

namespace exovdc {

enum class ControllerKind { vdc, pd };

struct TrajectorySpec {
  enum class Kind { constant, sine } kind = Kind::constant;
  double value = 0.0;               // constant level
  double amp = 0.0, freq = 0.0, phase = 0.0;  // amp sin(freq t + phase)

  void eval(double t, double& q, double& qdot, double& qddot) const {
    if (kind == Kind::constant) {
      q = value; qdot = 0.0; qddot = 0.0;
    } else {
      const double ph = freq * t + phase;
      q = amp * std::sin(ph);
      qdot = amp * freq * std::cos(ph);
      qddot = -amp * freq * freq * std::sin(ph);
    }
  }
};

struct DisturbanceSpec {
  bool enabled = false;
  std::array<double, 6> amp{};
  std::array<double, 6> freq{};
  double scale = 1.0;      // global factor on the per-link wrench
  bool per_link = true;    // same wrench at every body frame; else tip body only

  Vec6 eval(double t) const {
    Vec6 w;
    if (!enabled) return w;
    for (int c = 0; c < 6; ++c) w[c] = scale * amp[c] * std::sin(freq[c] * t);
    return w;
  }
  // Fills the per-body wrench array; returns false when disabled.
  bool fill(double t, std::array<Vec6, 7>& dist) const {
    if (!enabled) return false;
    const Vec6 w = eval(t);
    if (per_link) {
      dist.fill(w);
    } else {
      dist.fill(Vec6{});
      dist[6] = w;
    }
    return true;
  }
};

struct HumanTorqueSpec {
  bool enabled = false;
  std::array<double, 7> amp{};
  std::array<double, 7> freq{};

  Vec7 eval(double t) const {
    Vec7 tau;
    if (!enabled) return tau;
    for (int i = 0; i < 7; ++i) tau[i] = amp[i] * std::sin(freq[i] * t);
    return tau;
  }
};

struct ScenarioConfig {
  std::string name = "scenario";
  ChainGeometry geom;
  ControlGains gains;
  EstimatorSettings estimator;
  ControllerKind controller = ControllerKind::vdc;
  std::array<TrajectorySpec, kNumJoints> trajectory{};
  DisturbanceSpec disturbance;
  HumanTorqueSpec human_torque;
  std::array<ConstraintParams, kNumJoints> constraints{};
  double split_fraction = 0.5;
  double duration = 40.0;
  double dt = 1e-3;
  int substeps = 4;
  std::uint64_t seed = 1;
  Vec7 q0{}, qdot0{};

  TrajectorySample desired(double t) const {
    TrajectorySample s;
    for (int i = 0; i < kNumJoints; ++i)
      trajectory[i].eval(t, s.q[i], s.qdot[i], s.qddot[i]);
    return s;
  }
};

// Published default gain set and loop settings, applied wherever the file
// is silent.
ControlGains default_gains();

// Parse + validate a scenario file. Throws ValidationError carrying every
// problem found (with file:line positions for parse errors).
ScenarioConfig load_scenario(const std::string& path);

// Invariant checks shared by the parser and programmatic configs; returns the
// list of violations (empty when valid).
std::vector<std::string> validate_scenario(const ScenarioConfig& cfg);

}  // namespace exovdc
