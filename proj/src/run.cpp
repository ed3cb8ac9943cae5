#include "photonwave/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "photonwave/algebra.hpp"
#include "photonwave/checks.hpp"
#include "photonwave/dirac.hpp"
#include "photonwave/dynamics.hpp"
#include "photonwave/errors.hpp"
#include "photonwave/greens.hpp"
#include "photonwave/lorentz.hpp"
#include "photonwave/modes.hpp"
#include "photonwave/observables.hpp"
#include "photonwave/quantization.hpp"
#include "photonwave/rng.hpp"

namespace photonwave::runner {

namespace {

using json = nlohmann::ordered_json;
using checks::CheckRow;

constexpr int kMaxGridAxis = 64;

struct TaskContext {
  std::string task;
  json params;              // echo of the validated parameters
  std::uint64_t seed = 1;
  double tol_scale = 1.0;
  std::filesystem::path out;
  bool out_created = false;
  std::vector<CheckRow> rows;
  std::ostringstream log;

  // Artifacts appear only after validation: tasks call this right before
  // their first file write, so a ConfigError leaves nothing behind.
  const std::filesystem::path& ensure_out() {
    if (!out_created) {
      std::filesystem::create_directories(out);
      out_created = true;
    }
    return out;
  }

  void note(const std::string& line) { log << line << "\n"; }
  void add(CheckRow r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-58s value=%.3e tol=%.3e %s", r.name.c_str(),
                  r.value, r.tolerance, r.pass ? "pass" : "FAIL");
    note(buf);
    rows.push_back(std::move(r));
  }
};

BoxSpec box_from_config(const json& cfg) {
  BoxSpec box;
  if (cfg.contains("box")) {
    const auto& b = cfg.at("box");
    if (b.contains("lengths")) {
      const auto l = b.at("lengths");
      if (!l.is_array() || l.size() != 3) throw ConfigError("box.lengths must have 3 entries");
      for (int d = 0; d < 3; ++d) box.lengths[std::size_t(d)] = l.at(std::size_t(d)).get<double>();
    }
    if (b.contains("grid")) {
      const auto g = b.at("grid");
      if (!g.is_array() || g.size() != 3) throw ConfigError("box.grid must have 3 entries");
      for (int d = 0; d < 3; ++d) box.grid_points[std::size_t(d)] = g.at(std::size_t(d)).get<int>();
    }
  }
  for (int d = 0; d < 3; ++d)
    if (box.grid_points[std::size_t(d)] > kMaxGridAxis)
      throw BudgetExceeded("grid axis beyond the desk-scale cap of 64");
  box.validate();
  return box;
}

void validate_tolerances(const json& cfg) {
  if (!cfg.contains("tolerances")) return;
  const auto& t = cfg.at("tolerances");
  if (!t.is_object()) throw ConfigError("tolerances must be an object");
  for (const auto& [name, value] : t.items()) {
    if (!value.is_number() || !(value.get<double>() > 0))
      throw ConfigError("tolerance '" + name + "' must be a positive number");
  }
}

double tol(const TaskContext& ctx, const json& cfg, const std::string& name,
           double fallback) {
  double t = fallback;
  if (cfg.contains("tolerances") && cfg.at("tolerances").contains(name))
    t = cfg.at("tolerances").at(name).get<double>();
  return t * ctx.tol_scale;
}

// ---- tasks -----------------------------------------------------------------

void task_check(TaskContext& ctx, const json& cfg) {
  checks::Params p;
  p.grid_n = cfg.value("grid_n", 16);
  if (p.grid_n > kMaxGridAxis) throw BudgetExceeded("grid_n beyond the desk-scale cap");
  if (p.grid_n < 8 || p.grid_n % 2 != 0) throw ConfigError("grid_n must be even and >= 8");
  p.seed = ctx.seed;
  p.tol_scale = ctx.tol_scale;
  ctx.params["grid_n"] = p.grid_n;

  for (const auto& crit : checks::run_all_criteria(p)) {
    ctx.note("criterion " + std::to_string(crit.index) + ": " + crit.title);
    for (const auto& r : crit.rows) ctx.add(r);
  }
}

void task_evolve(TaskContext& ctx, const json& cfg) {
  const BoxSpec box = box_from_config(cfg);
  const json packet = cfg.value("packet", json::object());
  const std::string type = packet.value("type", "mode");
  const double duration = cfg.value("duration_box_crossings", 1.0) * box.lengths[0];
  const int snapshots = cfg.value("snapshots", 4);
  if (snapshots < 1 || snapshots > 64) throw ConfigError("snapshots must be in [1, 64]");
  if (!(duration > 0)) throw ConfigError("duration must be positive");

  ctx.params["box"] = {{"lengths", box.lengths}, {"grid", box.grid_points}};
  ctx.params["packet_type"] = type;
  ctx.params["duration"] = duration;
  ctx.params["snapshots"] = snapshots;

  SpectralGrid grid(box);
  observables::ModeAmplitudes amps;
  if (type == "mode") {
    std::array<int, 3> n{1, 0, 0};
    if (packet.contains("n")) {
      const auto& nn = packet.at("n");
      if (!nn.is_array() || nn.size() != 3) throw ConfigError("packet.n must have 3 entries");
      for (int d = 0; d < 3; ++d) n[std::size_t(d)] = nn.at(std::size_t(d)).get<int>();
    }
    if (!box.alias_free(n) || n == std::array<int, 3>{0, 0, 0})
      throw ConfigError("packet.n must be a nonzero alias-free mode index");
    const int lambda = packet.value("lambda", 1);
    if (lambda != 1 && lambda != -1) throw ConfigError("packet.lambda must be +-1");
    amps.box = box;
    amps.a[{n, lambda}] = packet.value("amplitude", 1.0);
  } else if (type == "gaussian") {
    std::array<int, 3> n{0, 0, 3};
    if (packet.contains("carrier_n")) {
      const auto& nn = packet.at("carrier_n");
      for (int d = 0; d < 3; ++d) n[std::size_t(d)] = nn.at(std::size_t(d)).get<int>();
    }
    const double sigma_frac = packet.value("sigma_frac", 1.0 / 12.0);
    if (!(sigma_frac > 0) || sigma_frac > 0.5)
      throw ConfigError("packet.sigma_frac must lie in (0, 0.5]");
    const int lambda = packet.value("lambda", 1);
    if (lambda != 1 && lambda != -1) throw ConfigError("packet.lambda must be +-1");
    amps = observables::gaussian_packet_amplitudes(
        box, box.wave_vector(n), box.lengths[0] * sigma_frac, box.center(), lambda);
  } else {
    throw ConfigError("packet.type must be 'mode' or 'gaussian'");
  }

  dynamics::FieldState state = observables::reconstruct(grid, amps);
  dynamics::EvolutionReport series;
  series.rows.push_back(dynamics::conserved_quantities(grid, state));
  const dynamics::ConservedRow row0 = series.rows.front();

  char buf[512];
  dynamics::write_snapshot_file((ctx.ensure_out() / "snapshot_0000.bin").string(), state);

  double max_energy_drift = 0, max_transversality = row0.transversality;
  dynamics::FieldState cur = state;
  for (int s = 1; s <= snapshots; ++s) {
    cur = dynamics::evolve_spectral(grid, cur, duration / snapshots);
    series.rows.push_back(dynamics::conserved_quantities(grid, cur));
    const auto& r = series.rows.back();
    std::snprintf(buf, sizeof buf, "snapshot_%04d.bin", s);
    dynamics::write_snapshot_file((ctx.out / buf).string(), cur);
    max_energy_drift =
        std::max(max_energy_drift, std::abs(r.energy - row0.energy) / row0.energy);
    max_transversality = std::max(max_transversality, r.transversality);
  }

  std::ofstream report(ctx.out / "report.csv");
  report << "time,energy,px,py,pz,jx,jy,jz,transversality,boundary_mass\n";
  for (const auto& r : series.rows) {
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.time,
                  r.energy, r.momentum[0], r.momentum[1], r.momentum[2],
                  r.angular_momentum[0], r.angular_momentum[1], r.angular_momentum[2],
                  r.transversality, r.boundary_mass);
    report << buf;
  }

  ctx.add(checks::row("evolve.energy_drift", max_energy_drift,
                      tol(ctx, cfg, "energy_drift", 1e-12)));
  ctx.add(checks::row("evolve.transversality", max_transversality,
                      tol(ctx, cfg, "transversality", 1e-10)));
  const auto amps_after = observables::decompose(grid, cur);
  double amp_drift = 0;
  for (const auto& [key, a] : amps.a) {
    const auto it = amps_after.a.find(key);
    amp_drift = std::max(amp_drift, it == amps_after.a.end()
                                        ? std::abs(a)
                                        : std::abs(std::abs(it->second) - std::abs(a)));
  }
  ctx.add(checks::row("evolve.amplitude_modulus_drift", amp_drift,
                      tol(ctx, cfg, "amplitude_drift", 1e-10)));
}

void task_modes(TaskContext& ctx, const json& cfg) {
  const BoxSpec box = box_from_config(cfg);
  const int max_n = cfg.value("max_n", 2);
  if (max_n < 1 || 2 * max_n >= *std::min_element(box.grid_points.begin(),
                                                  box.grid_points.end()))
    throw ConfigError("max_n must be >= 1 and alias-free on the grid");
  ctx.params["box"] = {{"lengths", box.lengths}, {"grid", box.grid_points}};
  ctx.params["max_n"] = max_n;

  std::vector<modes::ModeSpec> list;
  std::ofstream disp(ctx.ensure_out() / "dispersion.csv");
  disp << "n1,n2,n3,kx,ky,kz,omega,eig1,eig2,eig3,eig4,eig5,eig6\n";
  char buf[512];
  double eq_res = 0, disp_res = 0;
  for (int n0 = -max_n; n0 <= max_n; ++n0)
    for (int n1 = -max_n; n1 <= max_n; ++n1)
      for (int n2 = -max_n; n2 <= max_n; ++n2) {
        const std::array<int, 3> n{n0, n1, n2};
        if (n == std::array<int, 3>{0, 0, 0}) continue;
        const Vec3 k = box.wave_vector(n);
        const auto eig = algebra::dispersion_spectrum(k);
        std::snprintf(buf, sizeof buf,
                      "%d,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      n0, n1, n2, k[0], k[1], k[2], k.norm(), eig[0], eig[1], eig[2], eig[3],
                      eig[4], eig[5]);
        disp << buf;
        const double w = k.norm();
        const double expect[6] = {w, w, 0, 0, -w, -w};
        for (int i = 0; i < 6; ++i)
          disp_res = std::max(disp_res, std::abs(eig[std::size_t(i)] - expect[i]));
        for (int lambda : {1, -1}) {
          modes::ModeSpec m;
          m.box = box;
          m.n = n;
          m.lambda = lambda;
          if (int(list.size()) < 24) list.push_back(m);
          eq_res = std::max(eq_res, modes::dirac_equation_residual(m));
        }
      }

  const auto rep = modes::orthonormality_check(box, list);
  double wmax = 0;
  for (const auto& m : list) wmax = std::max(wmax, m.omega());

  double sym = 0, defect = 0;
  for (const auto& m : list) {
    const auto c = modes::completeness_check(m.wave_vector());
    sym = std::max(sym, c.symmetrized_residual / m.omega());
    defect = std::max(defect, c.single_k_offdiag_defect_residual);
  }

  ctx.add(checks::row("modes.orthonormality", rep.max_residual(),
                      tol(ctx, cfg, "orthonormality", 1e-13) * std::max(1.0, wmax)));
  ctx.add(checks::row("modes.equation_residual", eq_res,
                      tol(ctx, cfg, "equation_residual", 1e-12)));
  ctx.add(checks::row("modes.dispersion", disp_res, tol(ctx, cfg, "dispersion", 1e-12)));
  ctx.add(checks::row("modes.completeness_symmetrized", sym,
                      tol(ctx, cfg, "completeness", 1e-12)));
  ctx.add(checks::row("modes.completeness_offdiag_defect", defect,
                      tol(ctx, cfg, "completeness", 1e-12)));
}

void task_quantize(TaskContext& ctx, const json& cfg) {
  const BoxSpec box = box_from_config(cfg);
  const int n_max = cfg.value("n_max", 3);
  if (n_max < 1 || n_max > 16) throw ConfigError("n_max must be in [1, 16]");
  std::vector<std::pair<std::array<int, 3>, int>> mode_list;
  if (cfg.contains("modes")) {
    for (const auto& m : cfg.at("modes")) {
      std::array<int, 3> n{};
      const auto& nn = m.at("n");
      for (int d = 0; d < 3; ++d) n[std::size_t(d)] = nn.at(std::size_t(d)).get<int>();
      mode_list.push_back({n, m.at("lambda").get<int>()});
    }
  } else {
    mode_list = {{{0, 0, 1}, 1}, {{0, 0, 1}, -1}, {{0, 1, 0}, 1}};
  }
  ctx.params["n_max"] = n_max;
  ctx.params["mode_count"] = mode_list.size();

  const auto model = quantization::make_fock_model(box, mode_list, n_max);
  quantization::export_spectrum((ctx.ensure_out() / "spectrum.csv").string(), model);

  const auto ladders = quantization::ladder_operators(model);
  double diag_err = 0, offdiag = 0;
  for (std::size_t i = 0; i < ladders.size(); ++i) {
    const Eigen::MatrixXcd comm =
        ladders[i].a * ladders[i].a_dagger - ladders[i].a_dagger * ladders[i].a;
    Eigen::MatrixXcd od = comm;
    od.diagonal().setZero();
    offdiag = std::max(offdiag, od.cwiseAbs().maxCoeff());
    // diagonal along this mode's axis: 1 below the top level
    diag_err = std::max(diag_err, std::abs(comm(0, 0) - cd(1)));
  }
  ctx.add(checks::row("quantize.ladder_commutator_diag", diag_err,
                      tol(ctx, cfg, "ladder", 1e-13)));
  ctx.add(checks::row("quantize.ladder_commutator_offdiag", offdiag, 0.0));

  const auto spec = quantization::spectrum(model);
  double half_sum = 0;
  for (const auto& m : model.fock_modes) half_sum += 0.5 * m.omega();
  ctx.add(checks::row("quantize.ground_state_zero_point",
                      std::abs(spec.front().energy - half_sum),
                      tol(ctx, cfg, "spectrum", 1e-12)));

  const int cutoff = cfg.value("commutator_cutoff", 2);
  if (cutoff >= 1) {
    const auto res = quantization::field_commutator_check(box, cutoff);
    ctx.add(checks::row("quantize.field_commutator", res.max_deviation / res.delta_scale,
                        tol(ctx, cfg, "commutator", 1e-10)));
  }
  const std::vector<Vec3> pts{box.coord(1, 2, 3), box.coord(0, 1, 0)};
  ctx.add(checks::row("quantize.heisenberg", quantization::heisenberg_evolution_check(model, pts),
                      tol(ctx, cfg, "heisenberg", 1e-12)));
}

void task_lorentz(TaskContext& ctx, const json& cfg) {
  const BoxSpec box = box_from_config(cfg);
  ctx.params["box"] = {{"lengths", box.lengths}, {"grid", box.grid_points}};

  checks::Params p;
  p.grid_n = box.grid_points[0];
  p.seed = ctx.seed;
  p.tol_scale = ctx.tol_scale;
  const auto crit = checks::criterion_lorentz(p);
  for (const auto& r : crit.rows) ctx.add(r);

  // scaling table artifact
  modes::ModeSuperposition sup;
  Rng rng(ctx.seed + 21);
  for (int t = 0; t < 6; ++t) {
    modes::ModeSpec m;
    m.box = box;
    do {
      for (int d = 0; d < 3; ++d) m.n[std::size_t(d)] = rng.uniform_int(-2, 2);
    } while (m.n == std::array<int, 3>{0, 0, 0});
    m.lambda = rng.uniform() < 0.5 ? 1 : -1;
    m.freq_sign = rng.uniform() < 0.5 ? 1 : -1;
    sup.terms.push_back({m, cd(rng.normal(), rng.normal())});
  }
  std::ofstream scal(ctx.ensure_out() / "scaling.csv");
  scal << "epsilon,delta_L_max\n";
  char buf[128];
  for (const double e : {1e-2, 1e-3, 1e-4}) {
    const double d = lorentz::delta_L_magnitude(
        sup, box, 0.0, lorentz::InfinitesimalLorentz::boost(0, e));
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", e, d);
    scal << buf;
  }
}

void task_dirac(TaskContext& ctx, const json& cfg) {
  (void)cfg;
  checks::Params p;
  p.seed = ctx.seed;
  p.tol_scale = ctx.tol_scale;
  const auto crit = checks::criterion_dirac(p);
  for (const auto& r : crit.rows) ctx.add(r);
}

void task_propagator(TaskContext& ctx, const json& cfg) {
  greens::PropagatorLattice lat;
  lat.n_t = cfg.value("n_t", 8);
  const auto nx = cfg.value("n_x", std::vector<int>{8, 8, 8});
  if (nx.size() != 3) throw ConfigError("n_x must have 3 entries");
  for (int d = 0; d < 3; ++d) lat.n_x[std::size_t(d)] = nx[std::size_t(d)];
  lat.t_extent = cfg.value("t_extent", 5.483);
  const auto ls = cfg.value("lengths", std::vector<double>{7.635, 4.518, 4.509});
  if (ls.size() != 3) throw ConfigError("lengths must have 3 entries");
  for (int d = 0; d < 3; ++d) lat.lengths[std::size_t(d)] = ls[std::size_t(d)];
  lat.epsilon = cfg.value("epsilon", 1e-12);
  lat.validate();

  ctx.params["n_t"] = lat.n_t;
  ctx.params["n_x"] = lat.n_x;
  ctx.params["t_extent"] = lat.t_extent;
  ctx.params["lengths"] = lat.lengths;
  ctx.params["epsilon"] = lat.epsilon;
  ctx.params["min_abs_k2"] = lat.min_abs_k2();

  const auto prop = greens::position_space_propagator(lat);
  greens::export_propagator((ctx.ensure_out() / "propagator.csv").string(), prop);
  ctx.add(checks::row("propagator.dalembert_residual", prop.dalembert_residual,
                      tol(ctx, cfg, "dalembert", 1e-10)));
  ctx.add(checks::row("propagator.parity", prop.parity_residual,
                      tol(ctx, cfg, "parity", 1e-12)));
  ctx.note("zero modes excluded: " + std::to_string(prop.zero_modes_excluded));

  Rng rng(ctx.seed + 30);
  double def = 0;
  for (int t = 0; t < 20; ++t) {
    const greens::FourVector k4{rng.normal() * 2,
                                Vec3{rng.normal(), rng.normal(), rng.normal()}};
    if (k4.k.norm() < 1e-3) continue;
    def = std::max(def, greens::green_defining_residual(k4, 1e-6));
  }
  ctx.add(checks::row("propagator.defining_property", def,
                      tol(ctx, cfg, "defining", 1e-12)));
}

// ---- driver ----------------------------------------------------------------

void write_summary(TaskContext& ctx, bool all_pass) {
  json summary;
  summary["task"] = ctx.task;
  summary["seed"] = ctx.seed;
  summary["tol_scale"] = ctx.tol_scale;
  summary["parameters"] = ctx.params;
  json rows = json::array();
  for (const auto& r : ctx.rows)
    rows.push_back(json{{"name", r.name},
                        {"value", r.value},
                        {"tolerance", r.tolerance},
                        {"pass", r.pass}});
  summary["checks"] = rows;
  summary["all_pass"] = all_pass;
  std::ofstream os(ctx.ensure_out() / "summary.json");
  os << summary.dump(2) << "\n";
}

}  // namespace

int run(const RunOptions& opts) {
  TaskContext ctx;
  json cfg;
  try {
    std::ifstream is(opts.config_path);
    if (!is) throw ConfigError("cannot open config file: " + opts.config_path);
    try {
      cfg = json::parse(is);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (cfg.contains("task"))
      ctx.task = cfg.at("task").get<std::string>();
    if (!opts.task.empty()) {
      if (!ctx.task.empty() && ctx.task != opts.task)
        throw ConfigError("config task '" + ctx.task + "' does not match the command '" +
                          opts.task + "'");
      ctx.task = opts.task;
    }
    if (ctx.task.empty()) throw ConfigError("config must name a task");
    ctx.seed = opts.has_seed_override ? opts.seed_override
                                      : cfg.value("seed", std::uint64_t(1));
    ctx.tol_scale = opts.has_tol_scale_override ? opts.tol_scale_override
                                                : cfg.value("tol_scale", 1.0);
    if (!(ctx.tol_scale > 0)) throw ConfigError("tol_scale must be positive");
    validate_tolerances(cfg);

    const std::string outdir =
        opts.out_dir.empty() ? ("out-" + ctx.task) : opts.out_dir;

    // Validate the task-specific configuration before creating any artifact.
    // Tasks throw ConfigError/BudgetExceeded during their parameter setup,
    // which happens before their first file write because each task parses
    // everything up front.
    ctx.out = outdir;

    if (ctx.task == "check")
      task_check(ctx, cfg);
    else if (ctx.task == "evolve")
      task_evolve(ctx, cfg);
    else if (ctx.task == "modes")
      task_modes(ctx, cfg);
    else if (ctx.task == "quantize")
      task_quantize(ctx, cfg);
    else if (ctx.task == "lorentz")
      task_lorentz(ctx, cfg);
    else if (ctx.task == "dirac")
      task_dirac(ctx, cfg);
    else if (ctx.task == "propagator")
      task_propagator(ctx, cfg);
    else
      throw ConfigError("unknown task: " + ctx.task);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  bool all_pass = true;
  for (const auto& r : ctx.rows) all_pass = all_pass && r.pass;

  write_summary(ctx, all_pass);
  {
    std::ofstream log(ctx.ensure_out() / "log.txt");
    log << "task: " << ctx.task << "\nseed: " << ctx.seed
        << "\ntol_scale: " << ctx.tol_scale << "\n\n"
        << ctx.log.str() << "\nresult: " << (all_pass ? "pass" : "FAIL") << "\n";
  }
  std::cout << (all_pass ? "pass" : "FAIL") << " (" << ctx.rows.size()
            << " checks) -> " << (ctx.out / "summary.json").string() << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace photonwave::runner
