#pragma once

#include <cstdint>
#include <string>

namespace photonwave::runner {

// Batch task runner used by the CLI. Parses and validates the JSON config,
// then executes the named task and writes artifacts under out_dir:
//   log.txt       human-readable transcript
//   summary.json  machine-readable: task, parameters, one record per check
//                 with (name, value, tolerance, pass), all_pass
// plus task-specific tables (CSV) and binary snapshots. Validation happens
// before any file is created; a ConfigError leaves no partial artifacts.
//
// Exit codes: 0 all checks pass; 1 tolerance failure (summary still written);
// 2 config error; 3 desk-scale budget exceeded.
struct RunOptions {
  std::string config_path;
  std::string task;           // from the CLI subcommand; must match the config's
                              // "task" field when both are present
  std::string out_dir;        // default: "out-<task>"
  bool has_seed_override = false;
  std::uint64_t seed_override = 0;
  bool has_tol_scale_override = false;
  double tol_scale_override = 1.0;
};

int run(const RunOptions& opts);

}  // namespace photonwave::runner
