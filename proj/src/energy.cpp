#include "sheetlimit/energy.hpp"

#include "sheetlimit/error.hpp"

#include <algorithm>
#include <cmath>

namespace sheetlimit {

EnergyOperators energy_operators(const Curve& c, double rho_plus, double rho_minus) {
  EnergyOperators ops;
  ops.laplacian = surface_laplacian_matrix(c);
  ops.n_bar = weighted_operators(c, rho_plus, rho_minus).N_bar.matrix;
  ops.weights = c.ds_weights();
  return ops;
}

namespace {

void check_k(int k) {
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "energy level k must be >= 2");
}

// (-Lap Nbar)^p x
Vec power_apply(const EnergyOperators& ops, Vec x, int p) {
  for (int i = 0; i < p; ++i) x = -ops.laplacian * (ops.n_bar * x);
  return x;
}

Vec e1_operator_apply(const EnergyOperators& ops, const Vec& theta, int k) {
  return power_apply(ops, Vec(-ops.laplacian * theta), k - 1);
}

Vec e2_operator_apply(const EnergyOperators& ops, const Vec& kappa, int k) {
  return ops.n_bar * power_apply(ops, kappa, k - 1);
}

Vec mode_breakdown(const EnergyOperators& ops, const Vec& x, const Vec& Ax) {
  const Eigen::Index M = x.size();
  CVec c = spectral::forward(x);
  Vec out = Vec::Zero(M / 2 + 1);
  for (Eigen::Index kk = 0; kk <= M / 2; ++kk) {
    CVec ck = CVec::Zero(M);
    ck(kk) = c(kk);
    if (kk > 0 && kk < M / 2) ck(M - kk) = c(M - kk);
    Vec xk = spectral::inverse(ck).real();
    out(kk) = 0.5 * xk.dot(ops.weights.cwiseProduct(Ax));
  }
  return out;
}

void check_sizes(const Curve& c, const Vec& f) {
  if (f.size() != c.size()) throw Error(ErrorKind::ResolutionMismatch, "field and curve node counts differ");
}

}  // namespace

double energy_form_e1(const EnergyOperators& ops, const Vec& theta, int k) {
  check_k(k);
  return 0.5 * theta.dot(ops.weights.cwiseProduct(e1_operator_apply(ops, theta, k)));
}

double energy_form_e2(const EnergyOperators& ops, const Vec& kappa, int k) {
  check_k(k);
  return 0.5 * kappa.dot(ops.weights.cwiseProduct(e2_operator_apply(ops, kappa, k)));
}

double vorticity_term(const SheetField& field) {
  if (!field.irrotational()) {
    throw Error(ErrorKind::NotIrrotational, "vorticity norm is only available for irrotational phases");
  }
  return 0.0;
}

EnergyReport compute_energy(const SheetState& s, int k) {
  check_k(k);
  check_sizes(s.curve, s.gamma);
  const Curve& c = s.curve;
  LayerPotentials lp(c);
  EnergyOperators ops;
  ops.laplacian = surface_laplacian_matrix(c);
  ops.n_bar = weighted_operators(lp, s.params.rho_plus, s.params.rho_minus).N_bar.matrix;
  ops.weights = c.ds_weights();
  SheetField field(c, s.gamma);
  Vec theta = field.normal_velocity();
  EnergyReport r;
  r.k = k;
  Vec A1 = e1_operator_apply(ops, theta, k);
  Vec A2 = e2_operator_apply(ops, c.curvature(), k);
  r.E1 = 0.5 * theta.dot(ops.weights.cwiseProduct(A1));
  r.E2 = 0.5 * c.curvature().dot(ops.weights.cwiseProduct(A2));
  r.E1_modes = mode_breakdown(ops, theta, A1);
  r.E2_modes = mode_breakdown(ops, c.curvature(), A2);
  r.vorticity_term = vorticity_term(field);
  r.E_total = r.E1 + r.E2 + r.vorticity_term;
  r.E0 = two_fluid_energy(s, lp).total();
  const double sigma = s.params.rho_plus + s.params.rho_minus;
  Vec dk = c.d_ds(c.curvature());
  Vec gp = field.tangential_velocity(Side::Interior).cwiseProduct(dk);
  Vec gm = field.tangential_velocity(Side::Exterior).cwiseProduct(dk);
  auto form = [&](const Vec& g) { return g.dot(ops.weights.cwiseProduct(ops.n_bar * power_apply(ops, g, k - 2))); };
  r.E_ex = s.params.rho_plus / (2.0 * sigma) * form(gp) - s.params.rho_minus / (2.0 * sigma) * form(gm);
  return r;
}

double compute_extra_energy(const SheetState& s, int k) { return compute_energy(s, k).E_ex; }

double EnergyRun::sup_energy() const {
  double m = 0.0;
  for (const auto& r : reports) m = std::max(m, r.E_total);
  return m;
}

EnergyRun energy_run(const Trajectory& traj, int k) {
  if (traj.states.empty()) throw Error(ErrorKind::InvalidArgument, "empty trajectory");
  EnergyRun run;
  run.k = k;
  const SheetState& s0 = traj.states.front();
  run.rho_minus = s0.params.rho_minus;
  run.initial_nodes = s0.curve.nodes();
  run.initial_velocity = velocities(s0).trace(Side::Interior);
  const double l = 1.5 * k;
  for (const auto& s : traj.states) {
    EnergyReport r = compute_energy(s, k);
    SheetField f = velocities(s);
    double kn = boundary_sobolev_norm(s.curve, s.curve.curvature(), l - 1.0);
    double vp = boundary_sobolev_norm(s.curve, f.trace(Side::Interior), l - 0.5);
    double vm = boundary_sobolev_norm(s.curve, f.trace(Side::Exterior), l - 0.5);
    run.times.push_back(s.time);
    run.curvature_ratio.push_back(kn * kn / (1.0 + r.E_total));
    run.velocity_ratio.push_back((vp * vp + vm * vm) / std::pow(1.0 + r.E_total + r.E0, 2));
    run.reports.push_back(std::move(r));
  }
  return run;
}

EnergyAudit audit_energy(const std::vector<EnergyRun>& runs) {
  if (runs.empty()) throw Error(ErrorKind::InvalidArgument, "no runs to audit");
  const EnergyRun& ref = runs.front();
  for (const auto& r : runs) {
    if (r.k != ref.k || r.initial_nodes.size() != ref.initial_nodes.size() ||
        (r.initial_nodes - ref.initial_nodes).cwiseAbs().maxCoeff() > 1e-12 ||
        (r.initial_velocity - ref.initial_velocity).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + ref.initial_velocity.cwiseAbs().maxCoeff())) {
      throw Error(ErrorKind::InconsistentSweep, "runs do not share initial data and k");
    }
  }
  std::vector<std::size_t> order(runs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return runs[a].rho_minus > runs[b].rho_minus; });
  EnergyAudit a;
  std::vector<double> cr, vr;
  for (std::size_t i : order) {
    a.rho_minus.push_back(runs[i].rho_minus);
    a.sup_energy.push_back(runs[i].sup_energy());
    cr.push_back(*std::max_element(runs[i].curvature_ratio.begin(), runs[i].curvature_ratio.end()));
    vr.push_back(*std::max_element(runs[i].velocity_ratio.begin(), runs[i].velocity_ratio.end()));
  }
  auto spread = [](const std::vector<double>& v) {
    double lo = *std::min_element(v.begin(), v.end()), hi = *std::max_element(v.begin(), v.end());
    return lo > 0.0 ? hi / lo : (hi > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
  };
  a.max_over_min = spread(a.sup_energy);
  std::vector<double> sorted = a.sup_energy;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  double median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  a.max_over_median = median > 0.0 ? sorted.back() / median : 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    if (a.sup_energy[i] > a.sup_energy[i - 1] * (1.0 + 1e-9) + 1e-14) a.monotone_nonincreasing = false;
  }
  for (std::size_t i = 2; i < n; ++i) {
    double d1 = a.sup_energy[i - 1] - a.sup_energy[i - 2], d2 = a.sup_energy[i] - a.sup_energy[i - 1];
    if (d2 > 0.0 && d2 > d1 * (1.0 + 1e-6) + 1e-14) a.saturating = false;
  }
  a.curvature_ratio_spread = spread(cr);
  a.velocity_ratio_spread = spread(vr);
  return a;
}

}  // namespace sheetlimit
