#include "sheetlimit/cli/commands.hpp"

#include "sheetlimit/identities.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <random>

namespace sheetlimit::cli {

namespace fs = std::filesystem;
using io::json;

Curve make_curve(const GeometryConfig& g, double filter_threshold) {
  Curve c;
  if (g.shape == "circle") {
    c = circle(g.radius, g.M);
  } else if (g.shape == "ellipse") {
    c = ellipse(g.a, g.b, g.M);
  } else {
    c = perturbed_circle(g.radius, g.mode, g.amplitude, g.M);
  }
  FilterOptions f;
  f.threshold = filter_threshold;
  return Curve::from_nodes(c.nodes(), f);
}

Vec make_potential(const Curve& c, int mode, cplx amplitude) {
  Vec phi(c.size());
  const cplx zc = c.centroid();
  for (Eigen::Index j = 0; j < c.size(); ++j) phi(j) = std::real(amplitude * std::pow(c.nodes()(j) - zc, mode));
  return phi;
}

CVec make_tracers(const Curve& c, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const cplx zc = c.centroid();
  const double rmin = (c.nodes().array() - zc).abs().minCoeff();
  CVec t(count);
  for (int i = 0; i < count; ++i) {
    const double r = 0.6 * rmin * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double a = 2.0 * M_PI * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    t(i) = zc + std::polar(r, a);
  }
  return t;
}

SheetState initial_sheet(const RunConfig& cfg, double rho_minus) {
  Curve c = make_curve(cfg.geometry, cfg.numerics.filter_threshold);
  LayerPotentials lp(c);
  Vec phi = make_potential(c, cfg.physics.potential_mode, cfg.physics.potential_amplitude);
  Vec gamma = sheet_strength_from_potential(lp, phi, cfg.physics.circulation);
  FluidParams p{cfg.physics.rho_plus, rho_minus, cfg.physics.epsilon};
  return make_sheet_state(c, gamma, p, make_tracers(c, cfg.geometry.tracers, cfg.seed));
}

BlobState initial_blob(const RunConfig& cfg) {
  Curve c = make_curve(cfg.geometry, cfg.numerics.filter_threshold);
  Vec phi = make_potential(c, cfg.physics.potential_mode, cfg.physics.potential_amplitude);
  return make_blob_state(c, phi, cfg.physics.rho_plus, cfg.physics.epsilon,
                         make_tracers(c, cfg.geometry.tracers, cfg.seed));
}

fs::path output_root(const RunConfig& cfg, const GlobalOptions& g) {
  if (const char* env = std::getenv("SHEETLIMIT_OUT"); env && *env) return env;
  if (g.out) return *g.out;
  return cfg.outputs.directory;
}

namespace {

struct RunDir {
  fs::path dir;
  bool csv = true, json_out = true;

  void table(const std::string& name, const io::CsvTable& t) const {
    if (csv) io::write_csv(dir / (name + ".csv"), t);
  }
  void report(const std::string& name, const json& j) const {
    if (json_out) io::write_json(dir / (name + ".json"), j);
  }
};

EvolveOptions evolve_options(const RunConfig& cfg) {
  EvolveOptions o;
  o.c_stab = cfg.numerics.c_stab;
  o.c_adv = cfg.numerics.c_adv;
  o.record_every = cfg.numerics.record_every;
  if (cfg.numerics.lambda0) {
    Lambda0Params l;
    l.reference = make_curve(cfg.geometry, cfg.numerics.filter_threshold);
    l.l = cfg.l();
    l.delta = cfg.numerics.lambda0_delta;
    l.L = cfg.numerics.lambda0_L;
    o.lambda0 = l;
  }
  return o;
}

int horizon_mode(const RunConfig& cfg) {
  if (cfg.geometry.shape == "perturbed_circle" && cfg.geometry.mode >= 2) return cfg.geometry.mode;
  return std::max(2, cfg.physics.potential_mode);
}

double horizon(const RunConfig& cfg) {
  if (cfg.numerics.T) return *cfg.numerics.T;
  return default_horizon(horizon_mode(cfg), cfg.geometry.radius, cfg.physics.rho_plus, cfg.physics.epsilon);
}

/// dt and step count from (dt, steps, T) with the stability bound as fallback.
std::pair<double, int> time_grid(const RunConfig& cfg, double stable_dt, int default_steps) {
  const auto& n = cfg.numerics;
  if (n.dt && n.steps) return {*n.dt, *n.steps};
  if (n.dt) return {*n.dt, n.T ? std::max(1, static_cast<int>(std::ceil(*n.T / *n.dt - 1e-9))) : default_steps};
  if (n.steps && n.T) return {*n.T / *n.steps, *n.steps};
  if (n.T) {
    const int steps = std::max(1, static_cast<int>(std::ceil(*n.T / (0.9 * stable_dt))));
    return {*n.T / steps, steps};
  }
  return {0.9 * stable_dt, n.steps ? *n.steps : default_steps};
}

json run_meta(double dt, int steps, const std::string& termination) {
  return {{"dt", dt}, {"steps", steps}, {"termination", termination}};
}

int simulate(const RunConfig& cfg, const RunDir& out, std::ostream& log) {
  if (cfg.sweep()) throw Error(ErrorKind::SchemaViolation, "simulate takes a single rho_minus");
  if (cfg.physics.model == "onefluid") {
    BlobState s0 = initial_blob(cfg);
    auto [dt, steps] = time_grid(cfg, max_stable_dt(s0, cfg.numerics.c_stab, cfg.numerics.c_adv), 100);
    BlobTrajectory traj;
    int code = 0;
    try {
      traj = evolve_onefluid(s0, dt, steps, evolve_options(cfg));
    } catch (const BlobEvolutionStopped& e) {
      traj = e.partial();
      code = exit_code(e.kind());
      log << "run stopped: " << e.what() << "\n";
    }
    out.table("trajectory", io::blob_trajectory_table(traj));
    out.table("curve_initial", io::curve_table(traj.states.front().curve));
    out.table("curve_final", io::curve_table(traj.states.back().curve));
    json rep = run_meta(dt, steps, traj.termination);
    rep["final_curve"] = io::curve_json(traj.states.back().curve);
    out.report("trajectory", rep);
    return code;
  }
  SheetState s0 = initial_sheet(cfg, cfg.physics.rho_minus.front());
  auto [dt, steps] = time_grid(cfg, max_stable_dt(s0, cfg.numerics.c_stab, cfg.numerics.c_adv), 100);
  EvolveOptions eo = evolve_options(cfg);
  eo.pressure_diagnostics = true;
  Trajectory traj;
  int code = 0;
  try {
    traj = evolve(s0, dt, steps, eo);
  } catch (const SheetEvolutionStopped& e) {
    traj = e.partial();
    code = exit_code(e.kind());
    log << "run stopped: " << e.what() << "\n";
  }
  out.table("trajectory", io::trajectory_table(traj));
  out.table("curve_initial", io::curve_table(traj.states.front().curve));
  out.table("curve_final", io::curve_table(traj.states.back().curve));
  json rep = run_meta(dt, steps, traj.termination);
  double drift = 0.0;
  for (const auto& st : traj.states) drift = std::max(drift, (st.curve.nodes() - s0.curve.nodes()).cwiseAbs().maxCoeff());
  rep["max_marker_drift"] = drift;
  rep["final_curve"] = io::curve_json(traj.states.back().curve);
  out.report("trajectory", rep);
  return code;
}

int sweep(const RunConfig& cfg, const GlobalOptions& g, const RunDir& out) {
  if (!cfg.sweep()) throw Error(ErrorKind::SchemaViolation, "sweep needs a rho_minus list");
  SweepConfig sc;
  BlobState b0 = initial_blob(cfg);
  sc.curve = b0.curve;
  sc.phi = b0.phi;
  sc.tracers = b0.tracers;
  sc.rho_plus = cfg.physics.rho_plus;
  sc.epsilon = cfg.physics.epsilon;
  sc.rho_sequence = cfg.physics.rho_minus;
  sc.T = horizon(cfg);
  const int steps = cfg.numerics.steps ? *cfg.numerics.steps : 40;
  sc.dt = cfg.numerics.dt ? *cfg.numerics.dt : sc.T / steps;
  sc.k = cfg.physics.k;
  sc.compare.l = cfg.l();
  sc.compare.l_prime = cfg.l() - 0.5;
  sc.evolve = evolve_options(cfg);
  sc.jobs = g.jobs;
  ConvergenceReport rep = rho_sweep(sc);
  out.table("convergence", io::convergence_table(rep));
  out.report("convergence", io::convergence_json(rep));
  return 0;
}

int dispersion(const RunConfig& cfg, const GlobalOptions& g, const RunDir& out) {
  const double rp = cfg.physics.rho_plus, rm = cfg.physics.rho_minus.front();
  out.table("dispersion", io::kh_table(g.kmax, rp, rm, cfg.physics.shear, cfg.physics.epsilon));
  json rep = {{"rho_plus", rp}, {"rho_minus", rm}, {"shear", cfg.physics.shear}, {"epsilon", cfg.physics.epsilon},
              {"kmax", g.kmax}};
  if (cfg.physics.epsilon > 0.0) rep["k_cutoff"] = kh_cutoff(rp, rm, cfg.physics.shear, cfg.physics.epsilon);
  out.report("dispersion", rep);
  return 0;
}

int curvature(const RunConfig& cfg, const RunDir& out) {
  Curve c = make_curve(cfg.geometry, cfg.numerics.filter_threshold);
  LayerPotentials lp(c);
  Vec gv = sheet_strength_from_potential(lp, make_potential(c, cfg.physics.probe_modes[0], 1.0), 0.0);
  Vec gw = sheet_strength_from_potential(lp, make_potential(c, cfg.physics.probe_modes[1], cplx(0.3, 1.0)), 0.0);
  std::vector<double> seq = cfg.physics.rho_minus;
  if (!cfg.sweep()) {
    seq.clear();
    for (int m = 1; m <= 8; ++m) seq.push_back(cfg.physics.rho_plus * std::ldexp(1.0, -m));
  }
  QuadratureOptions q;
  q.r_inf = cfg.numerics.r_inf;
  LimitTable t = limit_check(c, cfg.physics.rho_plus, gv, gw, seq, q);
  out.table("curvature", io::curvature_table(t));
  const double rvv = sectional_form(c, cfg.physics.rho_plus, seq.front(), gv, gv, q).R_m;
  out.report("curvature", {{"RT_form", t.RT_form},
                           {"slope", t.slope},
                           {"monotone", t.monotone},
                           {"residual_ratio_spread", t.residual_ratio_spread},
                           {"R_vv", rvv}});
  return 0;
}

int identities(const RunConfig& cfg, const RunDir& out) {
  SheetState s0 = initial_sheet(cfg, cfg.physics.rho_minus.front());
  auto [dt, steps] = time_grid(cfg, max_stable_dt(s0, cfg.numerics.c_stab, cfg.numerics.c_adv), 8);
  if (steps < 4) throw Error(ErrorKind::InsufficientSlices, "identities need at least 5 slices");
  EvolveOptions eo = evolve_options(cfg);
  eo.record_every = 1;
  Trajectory traj = evolve(s0, dt, steps, eo);
  std::vector<IdentitySlice> slices;
  for (const auto& st : traj.states) slices.push_back({st.curve, velocities(st).trace(Side::Interior)});
  IdentityResidualReport r = verify_geometric_identities(slices, dt);
  out.table("trajectory", io::trajectory_table(traj));
  out.report("identities", {{"dt", dt},
                            {"slices", slices.size()},
                            {"stencil", r.stencil},
                            {"normal_residual", r.normal_residual},
                            {"curvature_residual", r.curvature_residual},
                            {"laplacian_residual", r.laplacian_residual}});
  return 0;
}

int energy_audit(const RunConfig& cfg, const RunDir& out) {
  if (!cfg.sweep()) throw Error(ErrorKind::SchemaViolation, "energy-audit needs a rho_minus list");
  double stable = std::numeric_limits<double>::infinity();
  std::vector<SheetState> starts;
  for (double rm : cfg.physics.rho_minus) {
    starts.push_back(initial_sheet(cfg, rm));
    stable = std::min(stable, max_stable_dt(starts.back(), cfg.numerics.c_stab, cfg.numerics.c_adv));
  }
  RunConfig c2 = cfg;
  if (!c2.numerics.T && !(c2.numerics.dt && c2.numerics.steps)) c2.numerics.T = horizon(cfg);
  auto [dt, steps] = time_grid(c2, stable, 40);
  EvolveOptions eo = evolve_options(cfg);
  eo.energy_diagnostics = false;
  std::vector<EnergyRun> runs;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    runs.push_back(energy_run(evolve(starts[i], dt, steps, eo), cfg.physics.k));
    out.table("energy_" + std::to_string(i), io::energy_table(runs.back()));
  }
  json rep = io::energy_audit_json(audit_energy(runs));
  rep["dt"] = dt;
  rep["steps"] = steps;
  out.report("energy_audit", rep);
  return 0;
}

}  // namespace

int run_command(const std::string& command, RunConfig cfg, const GlobalOptions& g, std::ostream& log) {
  if (g.seed) cfg.seed = *g.seed;
  if (g.jobs < 1) throw Error(ErrorKind::InvalidArgument, "--jobs must be >= 1");
  RunDir out;
  out.dir = output_root(cfg, g) / command;
  out.csv = std::find(cfg.outputs.formats.begin(), cfg.outputs.formats.end(), "csv") != cfg.outputs.formats.end();
  out.json_out = std::find(cfg.outputs.formats.begin(), cfg.outputs.formats.end(), "json") != cfg.outputs.formats.end();
  std::error_code ec;
  fs::remove_all(out.dir, ec);
  fs::create_directories(out.dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + out.dir.string() + ": " + ec.message());
  io::write_json(out.dir / "config.json", to_json(cfg));

  int code = 0;
  if (command == "simulate") {
    code = simulate(cfg, out, log);
  } else if (command == "sweep") {
    code = sweep(cfg, g, out);
  } else if (command == "dispersion") {
    code = dispersion(cfg, g, out);
  } else if (command == "curvature") {
    code = curvature(cfg, out);
  } else if (command == "identities") {
    code = identities(cfg, out);
  } else if (command == "energy-audit") {
    code = energy_audit(cfg, out);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + command + "'");
  }
  io::write_manifest(out.dir);
  log << "wrote " << out.dir.string() << "\n";
  return code;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Two-fluid vortex sheets with surface tension and their one-fluid limit"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  std::string config_path;
  GlobalOptions g;
  std::string out;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out, "output root directory");
  app.add_option("--jobs", g.jobs, "concurrent sweep members")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomized fixtures");
  const std::vector<std::string> names{"simulate", "sweep", "dispersion", "curvature", "identities", "energy-audit"};
  for (const auto& n : names) {
    auto* sub = app.add_subcommand(n);
    if (n == "dispersion") sub->add_option("--kmax", g.kmax, "largest wavenumber")->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? 0 : 2;
  }
  if (!out.empty()) g.out = out;
  if (seed_opt->count()) g.seed = seed;
  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : parse_config(config_path);
    return run_command(app.get_subcommands().front()->get_name(), cfg, g, std::cout);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace sheetlimit::cli
