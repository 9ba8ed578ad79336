#include <iostream>

#include <CLI11.hpp>

#include "exovdc/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "exovdc - decentralized neuro-adaptive exoskeleton control simulator"};

  exovdc::RunRequest req;
  std::string controller, out_dir, kernels;
  double duration = 0, dt = 0;
  std::uint64_t seed = 0;

  app.add_option("--scenario", req.scenario_paths,
                 "scenario file(s) to run")
      ->required();
  app.add_option("--controller", controller, "vdc | pd | both");
  auto* dur_opt = app.add_option("--duration", duration, "override run length [s]");
  auto* dt_opt = app.add_option("--dt", dt, "override control period [s]");
  app.add_option("--out", out_dir, "output directory");
  auto* seed_opt =
      app.add_option("--seed", seed, "override RBF center sampling seed");
  app.add_flag("--diagnostics", req.diagnostics,
               "emit extended diagnostics plot data");
  app.add_option("--decimate", req.decimate, "log every n-th control step")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", req.jobs, "run scenarios concurrently")
      ->check(CLI::PositiveNumber);
  app.add_option("--kernels", kernels, "force kernel backend (scalar | avx2)");

  CLI11_PARSE(app, argc, argv);

  if (!controller.empty()) req.controller = controller;
  if (!out_dir.empty()) req.out_dir = out_dir;
  if (*dur_opt) req.duration = duration;
  if (*dt_opt) req.dt = dt;
  if (*seed_opt) req.seed = seed;

  if (!kernels.empty()) {
    const auto backend = kernels == "avx2" ? exovdc::kern::Backend::avx2
                                           : exovdc::kern::Backend::scalar;
    if (kernels != "avx2" && kernels != "scalar") {
      std::cerr << "unknown kernel backend '" << kernels << "'\n";
      return 1;
    }
    if (!exovdc::kern::set_backend(backend)) {
      std::cerr << kernels << " kernels not supported on this machine\n";
      return 1;
    }
  }

  return exovdc::run_command(req, std::cout, std::cerr);
}
