#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace exovdc {

// Column-named, row-major time-series record of one run. Column headers carry
// the unit in brackets; CSV round-trips are value-exact (17 significant
// digits).
struct SimLog {
  std::vector<std::string> columns;
  std::vector<double> values;
  std::size_t rows = 0;

  std::size_t cols() const { return columns.size(); }
  double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }
  int column_index(std::string_view name) const;

  void write_csv(const std::string& path) const;
  static SimLog read_csv(const std::string& path);
};

struct JointMetrics {
  double rms_e = 0.0;       // tracking error q_d - q
  double max_e = 0.0;
  double max_ea = 0.0;      // required-angle error (vdc)
  double rms_tau = 0.0;     // commanded
  double max_tau = 0.0;
  double sat_fraction = 0.0;  // steps where the constraint clipped the command
};

struct Metrics {
  std::array<JointMetrics, 7> joint{};
  double max_ea = 0.0;
  double min_barrier_margin = 0.0;
  double min_pseudo_eig = 0.0;          // over all estimates and steps
  double max_w_norm = 0.0, max_eps_norm = 0.0, max_phi_norm = 0.0;
  double final_w_norm = 0.0, final_eps_norm = 0.0, final_phi_norm = 0.0;
  double max_vpf_residual_rel = 0.0;
  bool has_estimates = false;
};

Metrics metrics(const SimLog& log);

// One table; pass several labeled runs to get side-by-side columns.
std::string format_metrics(const std::vector<std::pair<std::string, Metrics>>& runs);

}  // namespace exovdc
