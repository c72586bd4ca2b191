#include "sheetlimit/onefluid.hpp"

#include <cmath>

namespace sheetlimit {

BlobState make_blob_state(const Curve& c, const Vec& phi, double rho_plus, double epsilon, const CVec& tracers) {
  if (!(rho_plus > 0.0) || !(epsilon >= 0.0)) throw Error(ErrorKind::InvalidArgument, "invalid blob parameters");
  if (phi.size() != c.size()) throw Error(ErrorKind::ResolutionMismatch, "potential and curve node counts differ");
  BlobState s;
  s.curve = c;
  s.phi = phi;
  s.rho_plus = rho_plus;
  s.epsilon = epsilon;
  s.tracers = tracers;
  for (Eigen::Index i = 0; i < tracers.size(); ++i) {
    if (locate(c, tracers(i)) != Side::Interior) throw Error(ErrorKind::InvalidArgument, "blob tracers must be interior");
  }
  return s;
}

namespace {

CVec velocity_trace(const Curve& c, const LayerPotentials& lp, const Vec& phi) {
  Vec theta = lp.dtn(Side::Interior, phi);
  Vec u = c.d_ds(phi);
  return u.cast<cplx>().cwiseProduct(c.tangent()) + theta.cast<cplx>().cwiseProduct(c.normal());
}

}  // namespace

PhaseVelocity blob_velocity(const BlobState& s, const LayerPotentials& lp) {
  return PhaseVelocity(s.curve, Side::Interior, velocity_trace(s.curve, lp, s.phi));
}

PhaseVelocity blob_velocity(const BlobState& s) { return blob_velocity(s, LayerPotentials(s.curve)); }

double blob_energy(const BlobState& s) {
  LayerPotentials lp(s.curve);
  Vec theta = lp.dtn(Side::Interior, s.phi);
  return 0.5 * s.rho_plus * s.curve.integrate(s.phi.cwiseProduct(theta)) + s.epsilon * s.epsilon * s.curve.length();
}

PressureSolution solve_pressure_star(const LayerPotentials& lp, const PhaseVelocity& v, const PhaseVelocity& w) {
  BernoulliParticular bp = bernoulli_particular(lp, Side::Interior, v, w);
  const Eigen::Index M = lp.curve().size();
  PressureSolution sol;
  sol.trace_plus = Vec::Zero(M);
  sol.dn_plus = -bp.normal_derivative;
  sol.jump = Vec::Zero(M);
  sol.plus = PhasePressure(1.0, 0.0, HarmonicField(lp, Side::Interior, bp.particular_trace), std::make_pair(v, w));
  return sol;
}

PressureSolution solve_pressure_star(const Curve& c, const PhaseVelocity& v) {
  return solve_pressure_star(LayerPotentials(c), v, v);
}

PressureSolution solve_blob_pressure(const BlobState& s) {
  LayerPotentials lp(s.curve);
  PhaseVelocity v = blob_velocity(s, lp);
  BernoulliParticular bp = bernoulli_particular(lp, Side::Interior, v, v);
  const double eps2 = s.epsilon * s.epsilon;
  const Vec& kappa = s.curve.curvature();
  PressureSolution sol;
  sol.offset_plus = eps2 * s.curve.mean(kappa);
  sol.trace_plus = s.curve.remove_mean(eps2 * kappa);
  sol.jump = eps2 * kappa;
  sol.dn_plus = eps2 * lp.dtn(Side::Interior, kappa) - s.rho_plus * bp.normal_derivative;
  sol.plus = PhasePressure(s.rho_plus, 0.0,
                           HarmonicField(lp, Side::Interior, eps2 * kappa / s.rho_plus + bp.particular_trace),
                           std::make_pair(v, v));
  return sol;
}

double rayleigh_taylor_indicator(const BlobState& s) {
  LayerPotentials lp(s.curve);
  PhaseVelocity v = blob_velocity(s, lp);
  PressureSolution p = solve_pressure_star(lp, v, v);
  return (-s.rho_plus * p.dn_plus).minCoeff();
}

double max_stable_dt(const BlobState& s, double c_stab, double c_adv) {
  const Curve& c = s.curve;
  const double ds = c.speed().minCoeff() * c.h();
  double dt = std::numeric_limits<double>::infinity();
  const double eps2 = s.epsilon * s.epsilon;
  if (eps2 > 0.0) dt = c_stab * std::pow(ds, 1.5) * std::sqrt(s.rho_plus / eps2);
  LayerPotentials lp(c);
  double vmax = velocity_trace(c, lp, s.phi).cwiseAbs().maxCoeff();
  if (vmax > 0.0) dt = std::min(dt, c_adv * ds / vmax);
  return dt;
}

namespace {

struct Packed {
  CVec z;
  Vec phi;
  CVec tracers;
  Packed operator+(const Packed& o) const { return {z + o.z, phi + o.phi, tracers + o.tracers}; }
  Packed operator*(double a) const { return {z * a, phi * a, tracers * a}; }
};

struct BlobRhs {
  double rho_plus, epsilon;
  FilterOptions filter;

  Packed operator()(const Packed& y) const {
    Curve c = Curve::from_nodes(y.z, filter, CurveCheck::SkipSimplicity);
    LayerPotentials lp(c);
    CVec v = velocity_trace(c, lp, y.phi);
    const Eigen::Index kd = c.dealias_index();
    Vec dphi = 0.5 * v.cwiseAbs2() - epsilon * epsilon * c.curvature() / rho_plus;
    Packed d;
    d.z = spectral::filter(v, kd, filter.threshold);
    d.phi = spectral::filter(dphi, kd, filter.threshold);
    d.tracers.resize(y.tracers.size());
    if (y.tracers.size() > 0) {
      HarmonicField hf(lp, Side::Interior, y.phi);
      for (Eigen::Index i = 0; i < y.tracers.size(); ++i) d.tracers(i) = hf.gradient(y.tracers(i));
    }
    return d;
  }
};

BlobDiagnostics diagnose(const BlobState& s, const EvolveOptions& opts) {
  BlobDiagnostics d;
  d.time = s.time;
  d.area = s.curve.area();
  if (opts.energy_diagnostics) d.energy = blob_energy(s);
  if (opts.pressure_diagnostics) d.rt_indicator = rayleigh_taylor_indicator(s);
  return d;
}

}  // namespace

BlobTrajectory evolve_onefluid(const BlobState& s0, double dt, int steps, const EvolveOptions& opts) {
  if (!(dt > 0.0) || steps < 0) throw Error(ErrorKind::InvalidArgument, "dt must be positive and steps non-negative");
  if (opts.record_every < 1) throw Error(ErrorKind::InvalidArgument, "record_every must be >= 1");
  if (opts.lambda0) validate(*opts.lambda0);
  BlobTrajectory traj;
  traj.states.push_back(s0);
  traj.diagnostics.push_back(diagnose(s0, opts));
  BlobRhs rhs{s0.rho_plus, s0.epsilon, s0.curve.filter_options()};
  Packed y{s0.curve.nodes(), s0.phi, s0.tracers};
  BlobState cur = s0;
  const Eigen::Index kd = s0.curve.dealias_index();
  const double thr = s0.curve.filter_options().threshold;
  auto stop = [&](ErrorKind kind, const std::string& msg) {
    traj.termination = to_string(kind);
    throw BlobEvolutionStopped(Error(kind, msg), traj);
  };
  for (int n = 0; n < steps; ++n) {
    const double bound = max_stable_dt(cur, opts.c_stab, opts.c_adv);
    if (dt > bound * (1.0 + 1e-12)) {
      stop(ErrorKind::StepRejected, "dt " + std::to_string(dt) + " exceeds stability bound " + std::to_string(bound));
    }
    Packed k1 = rhs(y);
    Packed k2 = rhs(y + k1 * (0.5 * dt));
    Packed k3 = rhs(y + k2 * (0.5 * dt));
    Packed k4 = rhs(y + k3 * dt);
    y = y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
    y.z = spectral::filter(y.z, kd, thr);
    y.phi = spectral::filter(y.phi, kd, thr);
    Curve c;
    try {
      c = Curve::from_nodes(y.z, s0.curve.filter_options(), CurveCheck::SkipSimplicity);
    } catch (const Error& e) {
      stop(e.kind(), e.what());
    }
    if (opts.check_simplicity && !is_simple(c.nodes())) stop(ErrorKind::CurveNotSimple, "interface self-intersected");
    cur.curve = c;
    cur.phi = y.phi;
    cur.tracers = y.tracers;
    cur.time = s0.time + (n + 1) * dt;
    if (opts.lambda0) {
      Lambda0Report r = lambda0_check(c, *opts.lambda0);
      if (!r.member) stop(ErrorKind::Lambda0Exit, r.reason);
    }
    if ((n + 1) % opts.record_every == 0 || n + 1 == steps) {
      traj.states.push_back(cur);
      traj.diagnostics.push_back(diagnose(cur, opts));
    }
  }
  return traj;
}

}  // namespace sheetlimit
