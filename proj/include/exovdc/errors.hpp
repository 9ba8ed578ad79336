#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace exovdc {

struct FrameMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidTransformError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPositiveDefiniteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Required-angle error left the barrier's open set.
struct BarrierBreachError : std::runtime_error {
  BarrierBreachError(double e_a_, double k_b_)
      : std::runtime_error("required joint angle error " +
                           std::to_string(e_a_) + " rad breached the barrier " +
                           std::to_string(k_b_) + " rad"),
        e_a(e_a_),
        k_b(k_b_) {}
  double e_a, k_b;
};

// Simulation abort (barrier breach, adaptation divergence, non-finite state).
struct SimAbortError : std::runtime_error {
  SimAbortError(const std::string& reason, double t)
      : std::runtime_error(reason), time(t) {}
  double time;
};

// Scenario/config problems, all collected before reporting.
struct ValidationError : std::runtime_error {
  explicit ValidationError(std::vector<std::string> problems)
      : std::runtime_error(join(problems)), issues(std::move(problems)) {}
  std::vector<std::string> issues;

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& p : v) {
      if (!s.empty()) s += "\n";
      s += p;
    }
    return s;
  }
};

}  // namespace exovdc
