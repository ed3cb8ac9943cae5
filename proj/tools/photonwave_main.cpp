#include <CLI11.hpp>

#include "photonwave/run.hpp"

// photonwave <task> --config <path> [--out <dir>] [--seed <u64>] [--tol-scale <f>]
//
// The task name on the command line must match the "task" field of the
// config file; it is accepted positionally so runs read naturally.
int main(int argc, char** argv) {
  CLI::App app{"photon wave mechanics batch runner"};
  app.require_subcommand(1);

  const std::vector<std::string> tasks{"check",    "evolve", "modes",     "quantize",
                                       "lorentz",  "dirac",  "propagator"};
  photonwave::runner::RunOptions opts;

  for (const auto& t : tasks) {
    auto* sub = app.add_subcommand(t, "run the '" + t + "' task");
    sub->add_option("--config", opts.config_path, "JSON config file")->required();
    sub->add_option("--out", opts.out_dir, "output directory (default out-<task>)");
    auto* seed = sub->add_option("--seed", opts.seed_override, "override the config seed");
    auto* ts = sub->add_option("--tol-scale", opts.tol_scale_override,
                               "multiply every tolerance");
    sub->callback([&, t, seed, ts] {
      opts.task = t;
      opts.has_seed_override = seed->count() > 0;
      opts.has_tol_scale_override = ts->count() > 0;
    });
  }

  CLI11_PARSE(app, argc, argv);

  const int rc = photonwave::runner::run(opts);
  return rc;
}
