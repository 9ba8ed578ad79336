#include "exovdc/runner.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace exovdc {

namespace fs = std::filesystem;

namespace {

std::string stem_of(const std::string& path) {
  return fs::path(path).stem().string();
}

void write_plotdata(const fs::path& dir, const SimLog& log, bool vdc,
                    bool diagnostics) {
  fs::create_directories(dir);
  const auto emit = [&](const std::string& file,
                        const std::vector<std::string>& wanted) {
    std::vector<int> idx;
    std::vector<std::string> names;
    for (const auto& w : wanted) {
      const int c = log.column_index(w);
      if (c >= 0) {
        idx.push_back(c);
        names.push_back(log.columns[c]);
      }
    }
    if (idx.size() <= 1) return;
    SimLog slice;
    slice.columns = names;
    slice.rows = log.rows;
    slice.values.reserve(log.rows * idx.size());
    for (std::size_t r = 0; r < log.rows; ++r)
      for (const int c : idx) slice.values.push_back(log.at(r, c));
    slice.write_csv((dir / file).string());
  };

  const auto per_joint = [](const std::string& base) {
    std::vector<std::string> v{"t"};
    for (int j = 1; j <= 7; ++j) v.push_back(base + std::to_string(j));
    return v;
  };
  emit("tracking_error.csv", per_joint("e"));
  emit("torque_commanded.csv", per_joint("tau_cmd"));
  emit("torque_applied.csv", per_joint("tau_app"));
  if (vdc) {
    emit("required_angle_error.csv", per_joint("ea"));
    emit("estimator_norms.csv",
         {"t", "w_norm_max", "eps_norm_max", "phi_norm_max"});
    if (diagnostics)
      emit("diagnostics.csv", {"t", "nu_total", "nu_body", "nu_joint",
                               "vpf_residual_rel", "min_pseudo_eig",
                               "barrier_margin", "bregman_max"});
  }
  std::vector<std::string> track{"t"};
  for (int j = 1; j <= 7; ++j) {
    track.push_back("q" + std::to_string(j));
    track.push_back("qd" + std::to_string(j));
  }
  emit("tracking.csv", track);
}

struct OneRun {
  std::string label;
  RunResult result;
  Metrics m;
};

int execute_scenario(const RunRequest& req, const std::string& path,
                     bool multiple, std::ostream& out, std::ostream& err,
                     std::mutex& io) {
  ScenarioConfig base;
  try {
    base = load_scenario(path);
  } catch (const ValidationError& e) {
    std::scoped_lock lock(io);
    for (const auto& issue : e.issues) err << issue << "\n";
    return 1;
  }
  if (req.duration) base.duration = *req.duration;
  if (req.dt) base.dt = *req.dt;
  if (req.seed) base.seed = *req.seed;

  std::vector<ControllerKind> kinds;
  const std::string mode = req.controller.value_or(
      base.controller == ControllerKind::vdc ? "vdc" : "pd");
  if (mode == "vdc") kinds = {ControllerKind::vdc};
  else if (mode == "pd") kinds = {ControllerKind::pd};
  else if (mode == "both") kinds = {ControllerKind::vdc, ControllerKind::pd};
  else {
    std::scoped_lock lock(io);
    err << "unknown controller mode '" << mode << "'\n";
    return 1;
  }

  const fs::path dir = resolve_out_dir(req, path, multiple);
  fs::create_directories(dir);

  std::vector<OneRun> runs;
  int status = 0;
  for (const ControllerKind kind : kinds) {
    ScenarioConfig cfg = base;
    cfg.controller = kind;
    const std::string label = kind == ControllerKind::vdc ? "vdc" : "pd";
    try {
      RunOptions opt;
      opt.decimate = req.decimate;
      OneRun r{label, run(cfg, opt), {}};
      r.m = metrics(r.result.log);
      runs.push_back(std::move(r));
    } catch (const SimAbortError& e) {
      std::scoped_lock lock(io);
      err << stem_of(path) << " [" << label << "]: " << e.what() << "\n";
      return 2;
    }
  }

  for (const auto& r : runs) {
    const std::string logname =
        kinds.size() > 1 ? "log_" + r.label + ".csv" : "log.csv";
    r.result.log.write_csv((dir / logname).string());
    write_plotdata(dir / "plotdata" / (kinds.size() > 1 ? r.label : ""),
                   r.result.log, r.label == "vdc", req.diagnostics);
    if (!r.result.violations.empty()) {
      status = 3;
      std::scoped_lock lock(io);
      for (const auto& v : r.result.violations)
        err << stem_of(path) << " [" << r.label << "]: " << v << "\n";
    }
  }

  std::vector<std::pair<std::string, Metrics>> table;
  for (const auto& r : runs) table.emplace_back(r.label, r.m);
  std::ofstream mfile(dir / "metrics.txt");
  mfile << format_metrics(table);

  {
    std::scoped_lock lock(io);
    out << stem_of(path) << ": wrote " << dir.string() << " (seed "
        << base.seed << "; ";
    for (std::size_t i = 0; i < runs.size(); ++i) {
      if (i) out << ", ";
      out << runs[i].label << " " << runs[i].result.log.rows << " rows in "
          << runs[i].result.runtime_seconds << " s";
    }
    out << ")\n";
  }
  return status;
}

}  // namespace

std::string resolve_out_dir(const RunRequest& req,
                            const std::string& scenario_path, bool multiple) {
  fs::path root;
  if (req.out_dir) {
    root = *req.out_dir;
  } else if (const char* env = std::getenv("EXOVDC_OUT_ROOT")) {
    root = env;
  } else {
    root = "runs";
  }
  if (multiple) return (root / stem_of(scenario_path)).string();
  // Single scenario: write directly into the requested directory.
  if (req.out_dir) return root.string();
  return (root / stem_of(scenario_path)).string();
}

int run_command(const RunRequest& req, std::ostream& out, std::ostream& err) {
  if (req.scenario_paths.empty()) {
    err << "no scenario given\n";
    return 1;
  }
  if (req.decimate < 1) {
    err << "--decimate must be >= 1\n";
    return 1;
  }
  for (const auto& p : req.scenario_paths)
    if (!fs::exists(p)) {
      err << p << ": no such file\n";
      return 1;
    }

  const bool multiple = req.scenario_paths.size() > 1;
  std::mutex io;
  if (req.jobs <= 1 || !multiple) {
    int status = 0;
    for (const auto& p : req.scenario_paths)
      status = std::max(status,
                        execute_scenario(req, p, multiple, out, err, io));
    return status;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<int> status{0};
  const std::size_t workers =
      std::min<std::size_t>(req.jobs, req.scenario_paths.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < req.scenario_paths.size();
           i = next.fetch_add(1)) {
        const int s = execute_scenario(req, req.scenario_paths[i], multiple,
                                       out, err, io);
        int cur = status.load();
        while (s > cur && !status.compare_exchange_weak(cur, s)) {
        }
      }
    });
  for (auto& t : pool) t.join();
  return status.load();
}

}  // namespace exovdc
