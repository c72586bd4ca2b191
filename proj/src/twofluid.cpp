#include "sheetlimit/twofluid.hpp"

#include "sheetlimit/error.hpp"

#include <cmath>

namespace sheetlimit {

void validate(const FluidParams& p) {
  if (!(p.rho_plus > 0.0) || !(p.rho_minus > 0.0)) throw Error(ErrorKind::InvalidArgument, "densities must be positive");
  if (!(p.epsilon >= 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be non-negative");
}

SheetState make_sheet_state(const Curve& c, const Vec& gamma, const FluidParams& p, const CVec& tracers) {
  validate(p);
  if (gamma.size() != c.size()) throw Error(ErrorKind::ResolutionMismatch, "sheet strength and curve node counts differ");
  SheetState s;
  s.curve = c;
  s.gamma = gamma;
  s.params = p;
  s.tracers = tracers;
  return s;
}

SheetField velocities(const SheetState& s) { return SheetField(s.curve, s.gamma); }

namespace {

struct Kinematics {
  Vec gamma;
  CVec W, plus, minus;
};

Mat momentum_coupling(const Curve& c, const CMat& B) {
  const Eigen::Index M = c.size();
  Mat T(M, M);
  for (Eigen::Index j = 0; j < M; ++j) {
    cplx zc = std::conj(c.z_theta()(j));
    for (Eigen::Index k = 0; k < M; ++k) T(j, k) = std::real(zc * B(j, k));
  }
  return T;
}

Kinematics kinematics_from_momentum(const Curve& c, const Vec& m, const FluidParams& p) {
  Kinematics k;
  CMat B = birkhoff_rott_matrix(c);
  const double sigma = p.rho_plus + p.rho_minus;
  if (p.rho_plus == p.rho_minus) {
    k.gamma = m / p.rho_plus;
  } else {
    Mat A = (p.rho_plus - p.rho_minus) * momentum_coupling(c, B);
    A.diagonal().array() += 0.5 * sigma;
    k.gamma = A.partialPivLu().solve(m);
  }
  k.W = B * k.gamma.cast<cplx>();
  CVec jump = k.gamma.cwiseQuotient(c.speed()).cast<cplx>().cwiseProduct(c.tangent()) * 0.5;
  k.plus = k.W + jump;
  k.minus = k.W - jump;
  return k;
}

double dot(cplx a, cplx b) { return std::real(std::conj(a) * b); }

}  // namespace

Vec sheet_momentum(const Curve& c, const Vec& gamma, const FluidParams& p) {
  CVec W = birkhoff_rott_matrix(c) * gamma.cast<cplx>();
  Vec m(c.size());
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    m(j) = (p.rho_plus - p.rho_minus) * dot(c.z_theta()(j), W(j)) + 0.5 * (p.rho_plus + p.rho_minus) * gamma(j);
  }
  return m;
}

Vec sheet_strength_from_momentum(const Curve& c, const Vec& m, const FluidParams& p) {
  return kinematics_from_momentum(c, m, p).gamma;
}

double sheet_circulation(const SheetState& s) { return s.gamma.sum() * s.curve.h(); }

EnergyParts two_fluid_energy(const SheetState& s, const LayerPotentials& lp) {
  const Curve& c = s.curve;
  const Eigen::Index M = c.size();
  SheetField f(c, s.gamma);
  Vec theta = f.normal_velocity();
  Vec tan_plus(M);
  for (Eigen::Index j = 0; j < M; ++j) tan_plus(j) = dot(c.z_theta()(j), f.trace(Side::Interior)(j));
  Vec phi_plus = spectral::antiderivative(tan_plus);
  EnergyParts e;
  e.kinetic_plus = 0.5 * s.params.rho_plus * c.integrate(phi_plus.cwiseProduct(theta));
  Vec psi = spectral::antiderivative(theta.cwiseProduct(c.speed()));
  Vec u_minus = f.tangential_velocity(Side::Exterior);
  const double gamma_ext = c.integrate(u_minus);
  Vec h(M);
  for (Eigen::Index j = 0; j < M; ++j) {
    h(j) = psi(j) + gamma_ext / (2.0 * M_PI) * std::log(std::abs(c.nodes()(j) - c.centroid()));
  }
  const double psi_inf = lp.value_at_infinity(h);
  e.kinetic_minus = 0.5 * s.params.rho_minus * (c.integrate(psi.cwiseProduct(u_minus)) - gamma_ext * psi_inf);
  e.surface = s.params.epsilon * s.params.epsilon * c.length();
  return e;
}

EnergyParts two_fluid_energy(const SheetState& s) { return two_fluid_energy(s, LayerPotentials(s.curve)); }

double max_stable_dt(const SheetState& s, double c_stab, double c_adv) {
  const Curve& c = s.curve;
  const double ds = c.speed().minCoeff() * c.h();
  double dt = std::numeric_limits<double>::infinity();
  const double eps2 = s.params.epsilon * s.params.epsilon;
  if (eps2 > 0.0) dt = c_stab * std::pow(ds, 1.5) * std::sqrt((s.params.rho_plus + s.params.rho_minus) / eps2);
  SheetField f(c, s.gamma);
  double vmax = std::max(f.trace(Side::Interior).cwiseAbs().maxCoeff(), f.trace(Side::Exterior).cwiseAbs().maxCoeff());
  if (vmax > 0.0) dt = std::min(dt, c_adv * ds / vmax);
  return dt;
}

namespace {

struct Packed {
  CVec z;
  Vec m;
  CVec tracers;

  Packed operator+(const Packed& o) const { return {z + o.z, m + o.m, tracers + o.tracers}; }
  Packed operator*(double a) const { return {z * a, m * a, tracers * a}; }
};

struct Rhs {
  FluidParams params;
  FilterOptions filter;
  std::vector<Side> tracer_sides;

  Packed operator()(const Packed& y) const {
    Curve c = Curve::from_nodes(y.z, filter, CurveCheck::SkipSimplicity);
    Kinematics k = kinematics_from_momentum(c, y.m, params);
    const Eigen::Index M = c.size();
    const Eigen::Index kd = c.dealias_index();
    Vec phi(M);
    const double eps2 = params.epsilon * params.epsilon;
    for (Eigen::Index j = 0; j < M; ++j) {
      phi(j) = 0.5 * params.rho_plus * std::norm(k.plus(j)) -
               params.rho_minus * (dot(k.plus(j), k.minus(j)) - 0.5 * std::norm(k.minus(j))) - eps2 * c.curvature()(j);
    }
    Packed d;
    d.z = spectral::filter(k.plus, kd, filter.threshold);
    d.m = spectral::filter(Vec(spectral::derivative(phi)), kd, filter.threshold);
    d.tracers.resize(y.tracers.size());
    if (y.tracers.size() > 0) {
      PhaseVelocity vp(c, Side::Interior, k.plus), vm(c, Side::Exterior, k.minus);
      for (Eigen::Index i = 0; i < y.tracers.size(); ++i) {
        d.tracers(i) = tracer_sides[static_cast<std::size_t>(i)] == Side::Interior ? vp.velocity(y.tracers(i))
                                                                                   : vm.velocity(y.tracers(i));
      }
    }
    return d;
  }
};

StepDiagnostics diagnose(const SheetState& s, const EvolveOptions& opts) {
  StepDiagnostics d;
  d.time = s.time;
  d.area = s.curve.area();
  d.circulation = sheet_circulation(s);
  if (opts.energy_diagnostics || opts.pressure_diagnostics) {
    LayerPotentials lp(s.curve);
    if (opts.energy_diagnostics) d.energy = two_fluid_energy(s, lp).total();
    if (opts.pressure_diagnostics) {
      WeightedOperators ops = weighted_operators(lp, s.params.rho_plus, s.params.rho_minus);
      d.jump_residual = solve_pressure(s, lp, ops, SheetField(s.curve, s.gamma)).jump_residual;
    }
  }
  return d;
}

}  // namespace

Trajectory evolve(const SheetState& s0, double dt, int steps, const EvolveOptions& opts) {
  validate(s0.params);
  if (!(dt > 0.0) || steps < 0) throw Error(ErrorKind::InvalidArgument, "dt must be positive and steps non-negative");
  if (opts.record_every < 1) throw Error(ErrorKind::InvalidArgument, "record_every must be >= 1");
  if (opts.lambda0) validate(*opts.lambda0);
  Trajectory traj;
  traj.states.push_back(s0);
  traj.diagnostics.push_back(diagnose(s0, opts));

  Rhs rhs{s0.params, s0.curve.filter_options(), {}};
  for (Eigen::Index i = 0; i < s0.tracers.size(); ++i) rhs.tracer_sides.push_back(locate(s0.curve, s0.tracers(i)));
  Packed y{s0.curve.nodes(), sheet_momentum(s0.curve, s0.gamma, s0.params), s0.tracers};
  SheetState cur = s0;
  const Eigen::Index kd = s0.curve.dealias_index();
  const double thr = s0.curve.filter_options().threshold;
  auto stop = [&](ErrorKind kind, const std::string& msg) {
    traj.termination = to_string(kind);
    throw SheetEvolutionStopped(Error(kind, msg), traj);
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
    y.m = spectral::filter(y.m, kd, thr);

    Curve c;
    try {
      c = Curve::from_nodes(y.z, s0.curve.filter_options(), CurveCheck::SkipSimplicity);
    } catch (const Error& e) {
      stop(e.kind(), e.what());
    }
    if (opts.check_simplicity && !is_simple(c.nodes())) stop(ErrorKind::CurveNotSimple, "interface self-intersected");
    cur.curve = c;
    cur.gamma = sheet_strength_from_momentum(c, y.m, s0.params);
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
