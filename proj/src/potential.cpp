#include "sheetlimit/potential.hpp"

#include "sheetlimit/error.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace sheetlimit {

namespace {

const cplx I(0.0, 1.0);

Mat inverse_of(const Eigen::PartialPivLU<Mat>& lu, Eigen::Index M) { return lu.solve(Mat::Identity(M, M)); }

CVec theta_derivative_over_zt(const Curve& c, const CVec& F) {
  return spectral::derivative(F).cwiseQuotient(c.z_theta());
}

}  // namespace

Side locate(const Curve& c, cplx x) {
  CVec z = spectral::resample(c.nodes(), 4 * c.size());
  double winding = 0.0;
  const Eigen::Index n = z.size();
  for (Eigen::Index j = 0; j < n; ++j) {
    cplx a = z(j) - x, b = z((j + 1) % n) - x;
    winding += std::arg(b / a);
  }
  return std::abs(winding) > M_PI ? Side::Interior : Side::Exterior;
}

cplx cauchy_evaluate(const Curve& c, Side side, const CVec& Fb, cplx x) {
  const Eigen::Index M = c.size();
  const double h = c.h();
  const double tol = 1e-12 * c.mean_radius();
  cplx num = 0.0, den = 0.0;
  for (Eigen::Index j = 0; j < M; ++j) {
    cplx d = c.nodes()(j) - x;
    if (std::abs(d) < tol) throw Error(ErrorKind::QuadratureBreakdown, "evaluation point lies on the curve");
    cplx w = c.z_theta()(j) * h / d;
    num += w * Fb(j);
    den += w;
  }
  if (side == Side::Exterior) den -= 2.0 * M_PI * I;
  return num / den;
}

LayerPotentials::LayerPotentials(const Curve& c) : curve_(c) {
  const Eigen::Index M = c.size();
  const double h = c.h();
  K_ = Mat::Zero(M, M);
  J_ = Mat::Zero(M, M);
  P_.resize(M, M);
  const CVec& z = c.nodes();
  const CVec& zt = c.z_theta();
  for (Eigen::Index j = 0; j < M; ++j) {
    for (Eigen::Index k = 0; k < M; ++k) {
      if (j == k) {
        K_(j, j) = c.curvature()(j) * c.speed()(j) * h / (4.0 * M_PI);
        continue;
      }
      cplx a = zt(k) / (z(k) - z(j)) / (2.0 * M_PI * I);
      K_(j, k) = a.real() * h;
      if ((j - k) % 2 != 0) J_(j, k) = 2.0 * h * a.imag();
    }
  }
  for (Eigen::Index k = 0; k < M; ++k) P_.col(k).setConstant(c.speed()(k) * h / c.length());
  Mat Id = Mat::Identity(M, M);
  interior_lu_.compute(0.5 * Id + K_);
  exterior_lu_.compute(-0.5 * Id + K_ + P_);
}

Vec LayerPotentials::interior_density(const Vec& f) const { return interior_lu_.solve(f); }

Vec LayerPotentials::exterior_density(const Vec& f) const { return exterior_lu_.solve(f); }

double LayerPotentials::value_at_infinity(const Vec& f) const { return P_.row(0).dot(exterior_density(f)); }

Vec LayerPotentials::value_at_infinity_row() const {
  // row of P (exterior_lu)^{-1}
  Vec r = P_.row(0).transpose();
  return exterior_lu_.transpose().solve(r);
}

Vec LayerPotentials::dtn(Side side, const Vec& f) const {
  if (f.size() != curve_.size()) throw Error(ErrorKind::ResolutionMismatch, "field and curve node counts differ");
  Vec mu = side == Side::Interior ? interior_density(f) : exterior_density(f);
  Vec d = spectral::derivative(Vec(J_ * mu)).cwiseQuotient(curve_.speed());
  return side == Side::Interior ? d : Vec(-d);
}

Mat LayerPotentials::dtn_matrix(Side side) const {
  const Eigen::Index M = curve_.size();
  Mat inv = side == Side::Interior ? inverse_of(interior_lu_, M) : inverse_of(exterior_lu_, M);
  Mat D = spectral::derivative_matrix(M);
  Mat out = curve_.speed().cwiseInverse().asDiagonal() * (D * (J_ * inv));
  return side == Side::Interior ? out : Mat(-out);
}

CVec LayerPotentials::analytic_trace(Side side, const Vec& f, double* c_inf) const {
  if (side == Side::Interior) {
    Vec mu = interior_density(f);
    if (c_inf) *c_inf = 0.0;
    return f.cast<cplx>() + I * (J_ * mu).cast<cplx>();
  }
  Vec mu = exterior_density(f);
  double c = P_.row(0).dot(mu);
  if (c_inf) *c_inf = c;
  return (f.array() - c).matrix().cast<cplx>() + I * (J_ * mu).cast<cplx>();
}

const char* to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::DtnInterior: return "dtn_interior";
    case OperatorKind::DtnExterior: return "dtn_exterior";
    case OperatorKind::Weighted: return "weighted";
    case OperatorKind::WeightedInverse: return "weighted_inverse";
    case OperatorKind::WeightedBar: return "weighted_bar";
    case OperatorKind::SurfaceLaplacian: return "surface_laplacian";
    case OperatorKind::Other: return "other";
  }
  return "other";
}

Vec BoundaryOperator::apply(const Vec& f, double scale) const {
  if (f.size() != matrix.cols()) throw Error(ErrorKind::ResolutionMismatch, "operator and field sizes differ");
  if (!zero_mean_domain) return matrix * f;
  const double W = weights.sum();
  const double mean = weights.dot(f) / W;
  const double rms = std::sqrt(weights.dot(f.cwiseAbs2()) / W);
  if (std::abs(mean) > mean_tolerance * std::max(rms, scale) + 1e-300) {
    throw Error(ErrorKind::NonZeroMeanInput, "input mean " + std::to_string(mean) + " outside the zero-mean domain");
  }
  return matrix * (f.array() - mean).matrix();
}

double BoundaryOperator::asymmetry() const {
  Mat A = weights.asDiagonal() * matrix;
  return (A - A.transpose()).norm() / A.norm();
}

Vec BoundaryOperator::symmetric_eigenvalues() const {
  Vec sq = weights.cwiseSqrt();
  Mat B = sq.asDiagonal() * matrix * sq.cwiseInverse().asDiagonal();
  Mat S = 0.5 * (B + B.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Mat null_space_projector(const Curve& c) {
  const Eigen::Index M = c.size();
  Vec nyq(M);
  for (Eigen::Index j = 0; j < M; ++j) nyq(j) = (j % 2 == 0) ? 1.0 : -1.0;
  return Vec::Ones(M) * (c.ds_weights() / c.length()).transpose() + nyq * nyq.transpose() / static_cast<double>(M);
}

Mat pseudo_inverse(const BoundaryOperator& op, const Curve& c) {
  const Eigen::Index M = c.size();
  return (op.matrix + null_space_projector(c)).partialPivLu().solve(Mat::Identity(M, M));
}

BoundaryOperator dtn(const LayerPotentials& lp, Side side) {
  BoundaryOperator op;
  op.matrix = lp.dtn_matrix(side);
  op.kind = side == Side::Interior ? OperatorKind::DtnInterior : OperatorKind::DtnExterior;
  op.order = 1.0;
  op.weights = lp.curve().ds_weights();
  return op;
}

BoundaryOperator dtn(const Curve& c, Side side) { return dtn(LayerPotentials(c), side); }

WeightedOperators weighted_operators(const LayerPotentials& lp, double rho_plus, double rho_minus,
                                     const WeightedOptions& opts) {
  if (!(rho_plus > 0.0) || !(rho_minus > 0.0)) throw Error(ErrorKind::InvalidArgument, "densities must be positive");
  const Curve& c = lp.curve();
  const Eigen::Index M = c.size();
  WeightedOperators w;
  w.rho_plus = rho_plus;
  w.rho_minus = rho_minus;
  w.N_plus = dtn(lp, Side::Interior);
  w.N_minus = dtn(lp, Side::Exterior);
  const Vec wts = c.ds_weights();
  const Mat rank1 = null_space_projector(c);

  w.N.matrix = w.N_plus.matrix / rho_plus + w.N_minus.matrix / rho_minus;
  w.N.kind = OperatorKind::Weighted;
  w.N.order = 1.0;
  w.N.weights = wts;

  Mat inv;
  if (opts.method == InverseMethod::Direct) {
    inv = (w.N.matrix + rank1).partialPivLu().solve(Mat::Identity(M, M));
  } else {
    Mat Nm_inv = (w.N_minus.matrix + rank1).partialPivLu().solve(Mat::Identity(M, M));
    Mat B = (w.N_plus.matrix / rho_plus) * (rho_minus * Nm_inv);
    Mat projector = Mat::Identity(M, M) - Vec::Ones(M) * (wts / c.length()).transpose();
    Mat term = projector;
    Mat sum = term;
    double prev = term.norm();
    int n = 1;
    for (; n < opts.neumann_max_terms; ++n) {
      term = -B * term;
      sum += term;
      double tn = term.norm();
      if (tn < opts.neumann_tolerance * sum.norm()) break;
      if (n > 20 && tn > prev) {
        throw Error(ErrorKind::InvalidArgument, "Neumann series for the weighted inverse diverges");
      }
      prev = tn;
    }
    if (n == opts.neumann_max_terms) {
      throw Error(ErrorKind::InvalidArgument, "Neumann series did not converge within the term limit");
    }
    inv = rho_minus * Nm_inv * sum;
  }
  w.N_inverse.matrix = inv;
  w.N_inverse.kind = OperatorKind::WeightedInverse;
  w.N_inverse.order = -1.0;
  w.N_inverse.zero_mean_domain = true;
  w.N_inverse.weights = wts;

  w.N_bar.matrix = (w.N_plus.matrix / rho_plus) * inv * (w.N_minus.matrix / rho_minus);
  w.N_bar.kind = OperatorKind::WeightedBar;
  w.N_bar.order = 1.0;
  w.N_bar.weights = wts;
  return w;
}

WeightedOperators weighted_operators(const Curve& c, double rho_plus, double rho_minus, const WeightedOptions& opts) {
  return weighted_operators(LayerPotentials(c), rho_plus, rho_minus, opts);
}

HarmonicField::HarmonicField(const LayerPotentials& lp, Side side, const Vec& trace)
    : curve_(lp.curve()), side_(side), trace_(trace) {
  if (trace.size() != curve_.size()) throw Error(ErrorKind::ResolutionMismatch, "trace and curve node counts differ");
  F_ = lp.analytic_trace(side, trace, &c_inf_);
  dF_ = theta_derivative_over_zt(curve_, F_);
  ddF_ = theta_derivative_over_zt(curve_, dF_);
  const Eigen::Index M = curve_.size();
  dn_.resize(M);
  for (Eigen::Index j = 0; j < M; ++j) {
    double d = std::real(curve_.normal()(j) * dF_(j));
    dn_(j) = side == Side::Interior ? d : -d;
  }
}

double HarmonicField::value(cplx x) const { return cauchy_evaluate(curve_, side_, F_, x).real() + c_inf_; }

cplx HarmonicField::derivative(cplx x) const { return cauchy_evaluate(curve_, side_, dF_, x); }

cplx HarmonicField::gradient(cplx x) const { return std::conj(derivative(x)); }

cplx HarmonicField::second_derivative(cplx x) const { return cauchy_evaluate(curve_, side_, ddF_, x); }

HarmonicField harmonic_extension(const Curve& c, Side side, const Vec& f) {
  return HarmonicField(LayerPotentials(c), side, f);
}

PhaseVelocity::PhaseVelocity(const Curve& c, Side side, const CVec& velocity_trace, std::vector<PointVortex> vortices)
    : curve_(c), side_(side), f_(velocity_trace.conjugate()), vortices_(std::move(vortices)) {
  if (velocity_trace.size() != c.size()) {
    throw Error(ErrorKind::ResolutionMismatch, "velocity trace and curve node counts differ");
  }
  df_ = theta_derivative_over_zt(curve_, f_);
  const double tol = 1e-10 * c.mean_radius();
  for (const auto& pv : vortices_) {
    for (Eigen::Index j = 0; j < c.size(); ++j) {
      if (std::abs(c.nodes()(j) - pv.position) < tol) {
        throw Error(ErrorKind::VortexOnBoundary, "point vortex coincides with a boundary node");
      }
    }
  }
}

CVec PhaseVelocity::complex_trace() const {
  CVec f = f_;
  for (const auto& pv : vortices_) {
    for (Eigen::Index j = 0; j < f.size(); ++j) {
      f(j) += pv.strength / (2.0 * M_PI * I * (curve_.nodes()(j) - pv.position));
    }
  }
  return f;
}

CVec PhaseVelocity::trace() const { return complex_trace().conjugate(); }

CVec PhaseVelocity::complex_derivative_trace() const {
  CVec df = df_;
  for (const auto& pv : vortices_) {
    for (Eigen::Index j = 0; j < df.size(); ++j) {
      cplx d = curve_.nodes()(j) - pv.position;
      df(j) += -pv.strength / (2.0 * M_PI * I * d * d);
    }
  }
  return df;
}

cplx PhaseVelocity::velocity(cplx x) const {
  cplx f = cauchy_evaluate(curve_, side_, f_, x);
  for (const auto& pv : vortices_) f += pv.strength / (2.0 * M_PI * I * (x - pv.position));
  return std::conj(f);
}

cplx PhaseVelocity::complex_derivative(cplx x) const {
  cplx df = cauchy_evaluate(curve_, side_, df_, x);
  for (const auto& pv : vortices_) {
    cplx d = x - pv.position;
    df += -pv.strength / (2.0 * M_PI * I * d * d);
  }
  return df;
}

cplx half_dot_gradient(cplx fv, cplx dfv, cplx fw, cplx dfw) {
  return 0.5 * (std::conj(dfv) * fw + fv * std::conj(dfw));
}

BernoulliParticular bernoulli_particular(const LayerPotentials& lp, Side side, const PhaseVelocity& v,
                                         const PhaseVelocity& w) {
  if (!v.irrotational() || !w.irrotational()) {
    throw Error(ErrorKind::NotIrrotational, "particular solution requires irrotational fields");
  }
  const Curve& c = lp.curve();
  CVec fv = v.complex_trace(), fw = w.complex_trace();
  CVec dfv = v.complex_derivative_trace(), dfw = w.complex_derivative_trace();
  const Eigen::Index M = c.size();
  BernoulliParticular out;
  out.particular_trace.resize(M);
  Vec dn(M);
  for (Eigen::Index j = 0; j < M; ++j) {
    out.particular_trace(j) = 0.5 * std::real(fv(j) * std::conj(fw(j)));
    cplx G = half_dot_gradient(fv(j), dfv(j), fw(j), dfw(j));
    double d = std::real(std::conj(c.normal()(j)) * G);
    dn(j) = side == Side::Interior ? d : -d;
  }
  out.normal_derivative = dn - lp.dtn(side, out.particular_trace);
  return out;
}

BernoulliParticular bernoulli_particular(const Curve& c, Side side, const PhaseVelocity& v, const PhaseVelocity& w) {
  return bernoulli_particular(LayerPotentials(c), side, v, w);
}

namespace {

double commutator_norm(const Curve& c, const CVec& velocity, double s, CommutatorOperator op) {
  const Eigen::Index M = c.size();
  Mat A;
  double order = 1.0;
  if (op == CommutatorOperator::DtnInterior) {
    A = LayerPotentials(c).dtn_matrix(Side::Interior);
  } else {
    A = surface_laplacian_matrix(c);
    order = 2.0;
  }
  Vec vt(M);
  for (Eigen::Index j = 0; j < M; ++j) vt(j) = std::real(std::conj(c.tangent()(j)) * velocity(j)) / c.speed()(j);
  Mat T = vt.asDiagonal() * spectral::derivative_matrix(M);
  Mat C = T * A - A * T;
  return sobolev_operator_norm(c, C, s, s - order, c.dealias_index());
}

}  // namespace

CommutatorReport commutator_order_check(const Curve& c, const CVec& velocity, double s, CommutatorOperator op) {
  if (velocity.size() != c.size()) throw Error(ErrorKind::ResolutionMismatch, "velocity and curve node counts differ");
  CommutatorReport r;
  r.order = op == CommutatorOperator::DtnInterior ? 1.0 : 2.0;
  r.norm_coarse = commutator_norm(c, velocity, s, op);
  const Eigen::Index M2 = 2 * c.size();
  Curve fine = Curve::from_nodes(spectral::resample(c.nodes(), M2));
  r.norm_fine = commutator_norm(fine, spectral::resample(velocity, M2), s, op);
  r.plateau_ratio = r.norm_fine / r.norm_coarse;
  r.norm_doubled_velocity = commutator_norm(c, CVec(2.0 * velocity), s, op);
  r.linearity_ratio = r.norm_doubled_velocity / r.norm_coarse;
  return r;
}

}  // namespace sheetlimit
