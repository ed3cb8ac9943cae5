#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "photonwave/run.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("pw_runner_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

fs::path write_config(const fs::path& dir, const json& cfg) {
  const fs::path p = dir / "config.json";
  std::ofstream os(p);
  os << cfg.dump(2);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("malformed config: nonzero exit, no partial artifacts") {
  TempDir tmp;
  const json cfg{{"task", "evolve"},
                 {"box", {{"lengths", {-1.0, 1.0, 1.0}}, {"grid", {8, 8, 8}}}}};
  photonwave::runner::RunOptions opts;
  opts.config_path = write_config(tmp.path, cfg).string();
  opts.out_dir = (tmp.path / "out").string();
  CHECK(photonwave::runner::run(opts) == 2);
  CHECK(!fs::exists(tmp.path / "out"));
}

TEST_CASE("unknown task and task mismatch are config errors") {
  TempDir tmp;
  photonwave::runner::RunOptions opts;
  opts.config_path = write_config(tmp.path, json{{"task", "frobnicate"}}).string();
  opts.out_dir = (tmp.path / "out").string();
  CHECK(photonwave::runner::run(opts) == 2);

  opts.config_path = write_config(tmp.path, json{{"task", "evolve"}}).string();
  opts.task = "modes";
  CHECK(photonwave::runner::run(opts) == 2);
  CHECK(!fs::exists(tmp.path / "out"));
}

TEST_CASE("budget guard returns exit code 3") {
  TempDir tmp;
  const json cfg{{"task", "modes"},
                 {"box", {{"lengths", {6.28, 6.28, 6.28}}, {"grid", {128, 128, 128}}}}};
  photonwave::runner::RunOptions opts;
  opts.config_path = write_config(tmp.path, cfg).string();
  opts.out_dir = (tmp.path / "out").string();
  CHECK(photonwave::runner::run(opts) == 3);
}

TEST_CASE("evolve task: artifacts, summary schema, passing checks") {
  TempDir tmp;
  const json cfg{{"task", "evolve"},
                 {"seed", 5},
                 {"box", {{"grid", {8, 8, 8}}}},
                 {"packet", {{"type", "mode"}, {"n", {1, 0, 0}}, {"lambda", 1}}},
                 {"duration_box_crossings", 1.0},
                 {"snapshots", 2}};
  photonwave::runner::RunOptions opts;
  opts.config_path = write_config(tmp.path, cfg).string();
  opts.out_dir = (tmp.path / "out").string();
  REQUIRE(photonwave::runner::run(opts) == 0);

  CHECK(fs::exists(tmp.path / "out" / "summary.json"));
  CHECK(fs::exists(tmp.path / "out" / "log.txt"));
  CHECK(fs::exists(tmp.path / "out" / "report.csv"));
  CHECK(fs::exists(tmp.path / "out" / "snapshot_0000.bin"));
  CHECK(fs::exists(tmp.path / "out" / "snapshot_0002.bin"));

  const json summary = json::parse(slurp(tmp.path / "out" / "summary.json"));
  CHECK(summary.at("task") == "evolve");
  CHECK(summary.at("all_pass") == true);
  for (const auto& row : summary.at("checks")) {
    CHECK(row.contains("name"));
    CHECK(row.contains("value"));
    CHECK(row.contains("tolerance"));
    CHECK(row.contains("pass"));
  }
}

TEST_CASE("tolerance failure writes the summary and exits 1") {
  TempDir tmp;
  // an absurdly tight custom tolerance forces a clean failure path
  const json cfg{{"task", "evolve"},
                 {"box", {{"grid", {8, 8, 8}}}},
                 {"packet", {{"type", "mode"}, {"n", {1, 0, 0}}}},
                 {"tolerances", {{"energy_drift", 1e-300}}}};
  photonwave::runner::RunOptions opts;
  opts.config_path = write_config(tmp.path, cfg).string();
  opts.out_dir = (tmp.path / "out").string();
  CHECK(photonwave::runner::run(opts) == 1);
  const json summary = json::parse(slurp(tmp.path / "out" / "summary.json"));
  CHECK(summary.at("all_pass") == false);
}

TEST_CASE("remaining tasks run clean on small parameters") {
  TempDir tmp;
  photonwave::runner::RunOptions opts;

  opts.config_path =
      write_config(tmp.path, json{{"task", "modes"},
                                  {"box", {{"grid", {8, 8, 8}}}},
                                  {"max_n", 2}})
          .string();
  opts.out_dir = (tmp.path / "out_modes").string();
  CHECK(photonwave::runner::run(opts) == 0);
  CHECK(fs::exists(tmp.path / "out_modes" / "dispersion.csv"));

  opts.config_path =
      write_config(tmp.path, json{{"task", "quantize"}, {"n_max", 3}}).string();
  opts.out_dir = (tmp.path / "out_quantize").string();
  opts.task = "quantize";
  CHECK(photonwave::runner::run(opts) == 0);
  CHECK(fs::exists(tmp.path / "out_quantize" / "spectrum.csv"));

  opts.config_path = write_config(tmp.path, json{{"task", "propagator"}}).string();
  opts.out_dir = (tmp.path / "out_prop").string();
  opts.task = "propagator";
  CHECK(photonwave::runner::run(opts) == 0);
  CHECK(fs::exists(tmp.path / "out_prop" / "propagator.csv"));
}

TEST_CASE("tol-scale override tightens every tolerance") {
  TempDir tmp;
  const json cfg{{"task", "evolve"},
                 {"box", {{"grid", {8, 8, 8}}}},
                 {"packet", {{"type", "mode"}, {"n", {1, 0, 0}}}}};
  photonwave::runner::RunOptions opts;
  opts.config_path = write_config(tmp.path, cfg).string();
  opts.out_dir = (tmp.path / "out").string();
  opts.has_tol_scale_override = true;
  opts.tol_scale_override = 1e-290;
  CHECK(photonwave::runner::run(opts) == 1);
}
