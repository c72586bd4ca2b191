#include "sheetlimit/limits.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace sheetlimit {

void ErrorRecord::absorb(const ErrorRecord& o) {
  marker_l2 = std::max(marker_l2, o.marker_l2);
  marker_h = std::max(marker_h, o.marker_h);
  tracer = std::max(tracer, o.tracer);
  velocity = std::max(velocity, o.velocity);
  interface = std::max(interface, o.interface);
  pressure_minus = std::max(pressure_minus, o.pressure_minus);
  normal = std::max(normal, o.normal);
  curvature = std::max(curvature, o.curvature);
  pressure_plus = std::max(pressure_plus, o.pressure_plus);
}

const std::vector<std::string>& error_columns() {
  static const std::vector<std::string> cols{"marker_l2", "marker_h", "tracer",   "velocity",     "interface",
                                             "pressure_minus", "normal", "curvature", "pressure_plus"};
  return cols;
}

std::vector<double> error_values(const ErrorRecord& r) {
  return {r.marker_l2, r.marker_h, r.tracer, r.velocity, r.interface, r.pressure_minus, r.normal, r.curvature,
          r.pressure_plus};
}

double interface_distance(const CVec& a, const CVec& b, double s) {
  if (a.size() != b.size()) throw Error(ErrorKind::LayoutMismatch, "marker counts differ");
  const Eigen::Index M = a.size();
  CVec c = spectral::forward(CVec(a - b));
  double acc = 0.0;
  for (Eigen::Index j = 0; j < M; ++j) {
    const double k = spectral::wavenumber(j, M);
    acc += std::pow(1.0 + k * k, s) * std::norm(c(j));
  }
  return std::sqrt(2.0 * M_PI * acc);
}

namespace {

double param_l2(const CVec& d) { return std::sqrt(2.0 * M_PI / d.size() * d.squaredNorm()); }
double param_l2(const Vec& d) { return std::sqrt(2.0 * M_PI / d.size() * d.squaredNorm()); }

void check_layout(const Curve& a, const CVec& ta, const Curve& b, const CVec& tb) {
  if (a.size() != b.size()) throw Error(ErrorKind::LayoutMismatch, "marker counts differ");
  if (ta.size() != tb.size()) throw Error(ErrorKind::LayoutMismatch, "tracer counts differ");
}

ErrorRecord geometric_errors(const Curve& a, const CVec& ta, const Curve& b, const CVec& tb,
                             const CompareOptions& opts) {
  ErrorRecord r;
  r.marker_l2 = param_l2(CVec(a.nodes() - b.nodes()));
  r.marker_h = interface_distance(a.nodes(), b.nodes(), opts.l_prime);
  r.tracer = ta.size() ? (ta - tb).cwiseAbs().maxCoeff() : 0.0;
  r.interface = interface_distance(a.nodes(), b.nodes(), opts.l - 0.5);
  r.normal = param_l2(CVec(a.normal() - b.normal()));
  r.curvature = param_l2(Vec(a.curvature() - b.curvature()));
  return r;
}

double velocity_error(const CVec& va, const CVec& vb, const std::vector<cplx>& pa, const std::vector<cplx>& pb) {
  double e = param_l2(CVec(va - vb));
  for (std::size_t i = 0; i < pa.size(); ++i) e = std::max(e, std::abs(pa[i] - pb[i]));
  return e;
}

}  // namespace

ErrorRecord compare_states(const SheetState& two, const BlobState& one, const CompareOptions& opts) {
  check_layout(two.curve, two.tracers, one.curve, one.tracers);
  ErrorRecord r = geometric_errors(two.curve, two.tracers, one.curve, one.tracers, opts);
  LayerPotentials lp(two.curve);
  WeightedOperators ops = weighted_operators(lp, two.params.rho_plus, two.params.rho_minus);
  SheetField f(two.curve, two.gamma);
  PhaseVelocity vb = blob_velocity(one);
  std::vector<cplx> pa, pb;
  for (Eigen::Index i = 0; i < two.tracers.size(); ++i) {
    pa.push_back(f.velocity(two.tracers(i)));
    pb.push_back(vb.velocity(one.tracers(i)));
  }
  r.velocity = velocity_error(f.trace(Side::Interior), vb.trace(), pa, pb);

  PressureSolution p = solve_pressure(two, lp, ops, f);
  const double eps2 = two.params.epsilon * two.params.epsilon;
  Vec pplus = p.trace_plus.array() + p.offset_plus;
  r.pressure_plus = param_l2(Vec(pplus - eps2 * one.curve.curvature()));

  const cplx zc = two.curve.centroid();
  const double rmax = (two.curve.nodes().array() - zc).abs().maxCoeff();
  double acc = 0.0;
  for (double radius : opts.probe_radii) {
    CVec ring(opts.probe_nodes);
    for (int j = 0; j < opts.probe_nodes; ++j) {
      ring(j) = p.minus.value(zc + radius * rmax * std::polar(1.0, 2.0 * M_PI * j / opts.probe_nodes));
    }
    const double n = interface_distance(ring, CVec::Zero(ring.size()), opts.l - 0.5);
    acc += n * n;
  }
  r.pressure_minus = std::sqrt(acc);
  return r;
}

ErrorRecord compare_states(const BlobState& a, const BlobState& b, const CompareOptions& opts) {
  check_layout(a.curve, a.tracers, b.curve, b.tracers);
  ErrorRecord r = geometric_errors(a.curve, a.tracers, b.curve, b.tracers, opts);
  PhaseVelocity va = blob_velocity(a), vb = blob_velocity(b);
  std::vector<cplx> pa, pb;
  for (Eigen::Index i = 0; i < a.tracers.size(); ++i) {
    pa.push_back(va.velocity(a.tracers(i)));
    pb.push_back(vb.velocity(b.tracers(i)));
  }
  r.velocity = velocity_error(va.trace(), vb.trace(), pa, pb);
  r.pressure_plus = param_l2(Vec(a.epsilon * a.epsilon * a.curve.curvature() - b.epsilon * b.epsilon * b.curve.curvature()));
  return r;
}

double default_horizon(int mode, double radius, double rho_plus, double epsilon) {
  const double n = mode;
  const double w2 = epsilon * epsilon * n * (n * n - 1.0) / (rho_plus * radius * radius * radius);
  if (!(w2 > 0.0)) throw Error(ErrorKind::InvalidArgument, "horizon needs mode >= 2 and positive surface tension");
  return 0.1 * 2.0 * M_PI / std::sqrt(w2);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(y[i] > 0.0) || !(x[i] > 0.0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return 0.0;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

SweepRow run_member(const SweepConfig& cfg, double rho_minus, int steps, const BlobTrajectory& ref) {
  FluidParams p{cfg.rho_plus, rho_minus, cfg.epsilon};
  LayerPotentials lp(cfg.curve);
  Vec gamma = sheet_strength_from_potential(lp, cfg.phi, 0.0);
  SheetState s0 = make_sheet_state(cfg.curve, gamma, p, cfg.tracers);
  EvolveOptions eo = cfg.evolve;
  eo.record_every = 1;
  eo.energy_diagnostics = false;
  Trajectory traj;
  try {
    traj = evolve(s0, cfg.dt, steps, eo);
  } catch (const SheetEvolutionStopped& e) {
    const int step = static_cast<int>(e.partial().states.size());
    throw SweepFailure("run with rho_minus " + std::to_string(rho_minus) + " stopped at step " + std::to_string(step) +
                           ": " + e.what(),
                       rho_minus, step);
  }
  SweepRow row;
  row.rho_minus = rho_minus;
  for (std::size_t i = 0; i < traj.states.size(); ++i) row.sup.absorb(compare_states(traj.states[i], ref.states[i], cfg.compare));
  return row;
}

}  // namespace

ConvergenceReport rho_sweep(const SweepConfig& cfg) {
  if (cfg.rho_sequence.empty()) throw Error(ErrorKind::InconsistentSweep, "empty density sequence");
  for (std::size_t i = 0; i < cfg.rho_sequence.size(); ++i) {
    if (!(cfg.rho_sequence[i] > 0.0) || (i > 0 && !(cfg.rho_sequence[i] < cfg.rho_sequence[i - 1]))) {
      throw Error(ErrorKind::InconsistentSweep, "density sequence must be positive and strictly decreasing");
    }
  }
  if (!(cfg.dt > 0.0) || !(cfg.T > 0.0)) throw Error(ErrorKind::InvalidArgument, "sweep needs positive T and dt");
  const int steps = static_cast<int>(std::lround(cfg.T / cfg.dt));
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "T shorter than one step");

  BlobState b0 = make_blob_state(cfg.curve, cfg.phi, cfg.rho_plus, cfg.epsilon, cfg.tracers);
  EvolveOptions eo = cfg.evolve;
  eo.record_every = 1;
  BlobTrajectory ref, fine;
  try {
    ref = evolve_onefluid(b0, cfg.dt, steps, eo);
    eo.record_every = 2;
    fine = evolve_onefluid(b0, 0.5 * cfg.dt, 2 * steps, eo);
  } catch (const BlobEvolutionStopped& e) {
    throw SweepFailure(std::string("one-fluid reference stopped: ") + e.what(), 0.0,
                       static_cast<int>(e.partial().states.size()));
  }

  ConvergenceReport rep;
  rep.rho_sequence = cfg.rho_sequence;
  rep.T = steps * cfg.dt;
  rep.dt = cfg.dt;
  rep.steps = steps;
  rep.k = cfg.k;
  rep.l = cfg.compare.l;
  rep.l_prime = cfg.compare.l_prime;
  for (std::size_t i = 0; i < ref.states.size() && i < fine.states.size(); ++i) {
    rep.noise_floor.absorb(compare_states(ref.states[i], fine.states[i], cfg.compare));
  }

  const std::size_t n = cfg.rho_sequence.size();
  rep.rows.resize(n);
  const std::size_t jobs = static_cast<std::size_t>(std::max(1, cfg.jobs));
  for (std::size_t start = 0; start < n; start += jobs) {
    std::vector<std::future<SweepRow>> batch;
    for (std::size_t i = start; i < std::min(n, start + jobs); ++i) {
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, run_member, std::cref(cfg),
                                 cfg.rho_sequence[i], steps, std::cref(ref)));
    }
    for (std::size_t i = 0; i < batch.size(); ++i) rep.rows[start + i] = batch[i].get();
  }

  const std::size_t ncol = error_columns().size();
  for (std::size_t c = 0; c < ncol; ++c) {
    std::vector<double> y;
    bool mono = true;
    for (std::size_t i = 0; i < n; ++i) {
      y.push_back(error_values(rep.rows[i].sup)[c]);
      if (i > 0 && !(y[i] < y[i - 1])) mono = false;
    }
    rep.slopes.push_back(loglog_slope(cfg.rho_sequence, y));
    rep.monotone.push_back(mono);
  }
  return rep;
}

}  // namespace sheetlimit
