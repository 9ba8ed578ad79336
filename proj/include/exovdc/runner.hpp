#pragma once

#include <optional>
#include <ostream>

#include "exovdc/sim.hpp"

namespace exovdc {

// One CLI invocation. Multiple scenarios run sequentially unless jobs > 1.
struct RunRequest {
  std::vector<std::string> scenario_paths;
  std::optional<std::string> controller;  // "vdc" | "pd" | "both"
  std::optional<double> duration;
  std::optional<double> dt;
  std::optional<std::string> out_dir;     // default: $EXOVDC_OUT_ROOT or ./runs
  std::optional<std::uint64_t> seed;
  bool diagnostics = false;
  int decimate = 1;
  int jobs = 1;
};

// Executes the request, writing per-run artifacts:
//   <out>/log.csv (or log_vdc.csv + log_pd.csv in both-mode)
//   <out>/metrics.txt
//   <out>/plotdata/*.csv
// Returns the process exit status: 0 iff every run finished with no invariant
// violation; aborts print one reason line to `err`.
int run_command(const RunRequest& req, std::ostream& out, std::ostream& err);

// Output directory for a scenario under this request.
std::string resolve_out_dir(const RunRequest& req, const std::string& scenario_path,
                            bool multiple);

}  // namespace exovdc
