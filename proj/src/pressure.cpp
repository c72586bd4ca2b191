#include "sheetlimit/error.hpp"
#include "sheetlimit/twofluid.hpp"

#include <cmath>

namespace sheetlimit {

PhasePressure::PhasePressure(double scale, double offset, HarmonicField h,
                             std::optional<std::pair<PhaseVelocity, PhaseVelocity>> vw)
    : scale_(scale), offset_(offset), h_(std::move(h)), vw_(std::move(vw)) {}

double PhasePressure::value(cplx x) const {
  double q = 0.0;
  if (vw_) q = 0.5 * std::real(vw_->first.velocity(x) * std::conj(vw_->second.velocity(x)));
  return scale_ * (h_.value(x) - q) + offset_;
}

cplx PhasePressure::gradient(cplx x) const {
  cplx g = h_.gradient(x);
  if (vw_) {
    cplx fv = std::conj(vw_->first.velocity(x)), fw = std::conj(vw_->second.velocity(x));
    g -= half_dot_gradient(fv, vw_->first.complex_derivative(x), fw, vw_->second.complex_derivative(x));
  }
  return scale_ * g;
}

namespace {

double max_abs_zero_mean(const Curve& c, const Vec& r) { return c.remove_mean(r).cwiseAbs().maxCoeff(); }

double rms(const Curve& c, const Vec& f) { return std::sqrt(c.mean(f.cwiseAbs2())); }

/// Brackets are compatible analytically; their discrete mean is truncation error.
Vec project_mean(const BoundaryOperator& op, const Vec& f) {
  return (f.array() - op.weights.dot(f) / op.weights.sum()).matrix();
}

}  // namespace

PressureSolution solve_pressure(const SheetState& s, const LayerPotentials& lp, const WeightedOperators& ops,
                                const SheetField& field) {
  const Curve& c = s.curve;
  const double rp = s.params.rho_plus, rm = s.params.rho_minus;
  const double eps2 = s.params.epsilon * s.params.epsilon;
  PhaseVelocity vp = field.phase(Side::Interior), vm = field.phase(Side::Exterior);
  BernoulliParticular bp = bernoulli_particular(lp, Side::Interior, vp, vp);
  BernoulliParticular bm = bernoulli_particular(lp, Side::Exterior, vm, vm);
  Vec theta = field.normal_velocity();
  Vec up = field.tangential_velocity(Side::Interior), um = field.tangential_velocity(Side::Exterior);
  const Vec& kappa = c.curvature();
  Vec shear = -2.0 * (up - um).cwiseProduct(c.d_ds(theta));
  Vec centripetal = kappa.cwiseProduct(up.cwiseAbs2() - um.cwiseAbs2());
  Vec velocity_part = shear + centripetal + bp.normal_derivative + bm.normal_derivative;
  Vec Bp = eps2 * (ops.N_minus.matrix * kappa) / rm + velocity_part;
  Vec Bm = -eps2 * (ops.N_plus.matrix * kappa) / rp + velocity_part;
  PressureSolution sol;
  sol.trace_plus = ops.N_inverse.apply(project_mean(ops.N_inverse, Bp));
  sol.trace_minus = ops.N_inverse.apply(project_mean(ops.N_inverse, Bm));
  sol.jump_residual = max_abs_zero_mean(c, sol.trace_plus - sol.trace_minus - eps2 * kappa);
  sol.jump = (sol.trace_plus - sol.trace_minus).array() + eps2 * c.mean(kappa);
  sol.dn_plus = ops.N_plus.matrix * sol.trace_plus - rp * bp.normal_derivative;
  sol.dn_minus = ops.N_minus.matrix * sol.trace_minus - rm * bm.normal_derivative;
  sol.offset_minus = -lp.value_at_infinity(sol.trace_minus + rm * bm.particular_trace);
  sol.offset_plus = sol.offset_minus + eps2 * c.mean(kappa);
  sol.plus = PhasePressure(rp, sol.offset_plus,
                           HarmonicField(lp, Side::Interior, sol.trace_plus / rp + bp.particular_trace),
                           std::make_pair(vp, vp));
  sol.minus = PhasePressure(rm, sol.offset_minus,
                            HarmonicField(lp, Side::Exterior, sol.trace_minus / rm + bm.particular_trace),
                            std::make_pair(vm, vm));
  return sol;
}

PressureSolution solve_pressure(const SheetState& s) {
  validate(s.params);
  LayerPotentials lp(s.curve);
  WeightedOperators ops = weighted_operators(lp, s.params.rho_plus, s.params.rho_minus);
  return solve_pressure(s, lp, ops, velocities(s));
}

PressureSolution solve_p_vw(const LayerPotentials& lp, const WeightedOperators& ops, const SheetField& v,
                            const SheetField& w) {
  const Curve& c = lp.curve();
  if (v.curve().size() != c.size() || w.curve().size() != c.size()) {
    throw Error(ErrorKind::ResolutionMismatch, "fields and curve node counts differ");
  }
  const double rp = ops.rho_plus, rm = ops.rho_minus;
  PhaseVelocity vp = v.phase(Side::Interior), vm = v.phase(Side::Exterior);
  PhaseVelocity wp = w.phase(Side::Interior), wm = w.phase(Side::Exterior);
  BernoulliParticular bp = bernoulli_particular(lp, Side::Interior, vp, wp);
  BernoulliParticular bm = bernoulli_particular(lp, Side::Exterior, vm, wm);
  Vec tv = v.normal_velocity(), tw = w.normal_velocity();
  Vec uvp = v.tangential_velocity(Side::Interior), uvm = v.tangential_velocity(Side::Exterior);
  Vec uwp = w.tangential_velocity(Side::Interior), uwm = w.tangential_velocity(Side::Exterior);
  Vec shear = -((uvp - uvm).cwiseProduct(c.d_ds(tw)) + (uwp - uwm).cwiseProduct(c.d_ds(tv)));
  Vec centripetal = c.curvature().cwiseProduct(uvp.cwiseProduct(uwp) - uvm.cwiseProduct(uwm));
  Vec bracket = shear + centripetal + bp.normal_derivative + bm.normal_derivative;
  Vec pS = ops.N_inverse.apply(project_mean(ops.N_inverse, bracket));
  PressureSolution sol;
  sol.trace_plus = pS / rp;
  sol.trace_minus = pS / rm;
  sol.jump = sol.trace_plus - sol.trace_minus;
  sol.dn_plus = ops.N_plus.matrix * sol.trace_plus - bp.normal_derivative;
  sol.dn_minus = ops.N_minus.matrix * sol.trace_minus - bm.normal_derivative;
  sol.plus = PhasePressure(1.0, 0.0, HarmonicField(lp, Side::Interior, sol.trace_plus + bp.particular_trace),
                           std::make_pair(vp, wp));
  sol.minus = PhasePressure(1.0, 0.0, HarmonicField(lp, Side::Exterior, sol.trace_minus + bm.particular_trace),
                            std::make_pair(vm, wm));
  return sol;
}

PressureSolution solve_p_vw(const SheetField& v, const SheetField& w, double rho_plus, double rho_minus) {
  LayerPotentials lp(v.curve());
  return solve_p_vw(lp, weighted_operators(lp, rho_plus, rho_minus), v, w);
}

PressureSolution solve_p_kappa(const LayerPotentials& lp, const WeightedOperators& ops) {
  const Curve& c = lp.curve();
  const double rp = ops.rho_plus, rm = ops.rho_minus;
  const Vec& kappa = c.curvature();
  PressureSolution sol;
  const double scale = rms(c, kappa) / c.mean_radius();
  sol.trace_plus = ops.N_inverse.apply(ops.N_minus.matrix * kappa, scale) / (rp * rm);
  sol.trace_minus = -ops.N_inverse.apply(ops.N_plus.matrix * kappa, scale) / (rp * rm);
  Vec weighted_jump = rp * sol.trace_plus - rm * sol.trace_minus;
  sol.jump_residual = max_abs_zero_mean(c, weighted_jump - kappa);
  sol.jump = weighted_jump.array() + c.mean(kappa);
  sol.dn_plus = ops.N_plus.matrix * sol.trace_plus;
  sol.dn_minus = ops.N_minus.matrix * sol.trace_minus;
  sol.plus = PhasePressure(1.0, 0.0, HarmonicField(lp, Side::Interior, sol.trace_plus), std::nullopt);
  sol.minus = PhasePressure(1.0, 0.0, HarmonicField(lp, Side::Exterior, sol.trace_minus), std::nullopt);
  return sol;
}

PressureSolution solve_p_kappa(const Curve& c, double rho_plus, double rho_minus) {
  LayerPotentials lp(c);
  return solve_p_kappa(lp, weighted_operators(lp, rho_plus, rho_minus));
}

}  // namespace sheetlimit
