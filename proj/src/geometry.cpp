#include "sheetlimit/geometry.hpp"

#include "sheetlimit/error.hpp"

#include <algorithm>
#include <cmath>

namespace sheetlimit {

namespace {

void require_power_of_two(Eigen::Index M) {
  if (M < 16 || (M & (M - 1)) != 0) {
    throw Error(ErrorKind::InvalidArgument, "node count must be a power of two >= 16, got " + std::to_string(M));
  }
}

double orient(cplx a, cplx b, cplx c) { return std::imag(std::conj(b - a) * (c - a)); }

bool on_segment(cplx a, cplx b, cplx p) {
  return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

bool segments_intersect(cplx p1, cplx p2, cplx p3, cplx p4) {
  double d1 = orient(p3, p4, p1), d2 = orient(p3, p4, p2);
  double d3 = orient(p1, p2, p3), d4 = orient(p1, p2, p4);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_segment(p3, p4, p1)) return true;
  if (d2 == 0 && on_segment(p3, p4, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, p3)) return true;
  if (d4 == 0 && on_segment(p1, p2, p4)) return true;
  return false;
}

CVec multiply_ik(const CVec& c, int order) {
  const Eigen::Index M = c.size();
  CVec out = c;
  for (Eigen::Index j = 0; j < M; ++j) {
    int k = spectral::wavenumber(j, M);
    if (2 * std::abs(k) == M && order % 2 == 1) {
      out(j) = 0.0;
    } else {
      out(j) *= std::pow(cplx(0.0, k), order);
    }
  }
  return out;
}

// Parameter values of equal-arclength points sigma_j = L j / M.
Vec arclength_nodes(const Curve& c) {
  const Eigen::Index M = c.size();
  const double L = c.length();
  Vec cum_periodic = spectral::antiderivative(c.speed() - Vec::Constant(M, L / (2.0 * M_PI)));
  CVec cum_c = spectral::forward(cum_periodic);
  CVec sp_c = spectral::forward(c.speed());
  cplx shift = 0.0;
  for (Eigen::Index j = 0; j < M; ++j) shift += cum_c(j);  // value at theta = 0
  auto eval = [&](const CVec& coef, double t) {
    cplx acc = 0.0;
    for (Eigen::Index j = 0; j < M; ++j) {
      int k = spectral::wavenumber(j, M);
      acc += (2 * std::abs(k) == M) ? coef(j) * std::cos(0.5 * M * t) : coef(j) * std::exp(cplx(0.0, k * t));
    }
    return acc.real();
  };
  Vec theta(M);
  for (Eigen::Index j = 0; j < M; ++j) {
    double sigma = L * static_cast<double>(j) / static_cast<double>(M);
    double t = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(M);
    for (int it = 0; it < 50; ++it) {
      double S = L * t / (2.0 * M_PI) + eval(cum_c, t) - shift.real();
      double ds = eval(sp_c, t);
      double step = (S - sigma) / ds;
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    theta(j) = t;
  }
  return theta;
}

}  // namespace

Eigen::Index Curve::dealias_index() const {
  return filter_.dealias_index < 0 ? size() / 3 : filter_.dealias_index;
}

Curve Curve::from_nodes(const CVec& z, const FilterOptions& filter, CurveCheck check) {
  const Eigen::Index M = z.size();
  require_power_of_two(M);
  Curve c;
  c.filter_ = filter;
  const Eigen::Index kd = filter.dealias_index < 0 ? M / 3 : filter.dealias_index;
  c.coeffs_ = spectral::filter_coefficients(spectral::forward(z), kd, filter.threshold);
  c.z_ = spectral::inverse(c.coeffs_);
  c.z_t_ = spectral::inverse(multiply_ik(c.coeffs_, 1));
  c.z_tt_ = spectral::inverse(multiply_ik(c.coeffs_, 2));
  c.speed_ = c.z_t_.cwiseAbs();
  const double mean_speed = c.speed_.mean();
  if (!(c.speed_.minCoeff() > 1e-10 * mean_speed) || !std::isfinite(mean_speed)) {
    throw Error(ErrorKind::DegenerateImmersion, "s_theta vanishes at some node");
  }
  c.tangent_ = c.z_t_.cwiseQuotient(c.speed_.cast<cplx>());
  c.normal_ = -cplx(0.0, 1.0) * c.tangent_;
  c.kappa_.resize(M);
  for (Eigen::Index j = 0; j < M; ++j) {
    c.kappa_(j) = std::imag(std::conj(c.z_t_(j)) * c.z_tt_(j)) / std::pow(c.speed_(j), 3);
  }
  const double h = c.h();
  c.length_ = c.speed_.sum() * h;
  double area = 0.0, mx = 0.0, my = 0.0;
  for (Eigen::Index j = 0; j < M; ++j) {
    const cplx zj = c.z_(j), zt = c.z_t_(j);
    area += 0.5 * std::imag(std::conj(zj) * zt) * h;
    mx += 0.5 * zj.real() * zj.real() * zt.imag() * h;
    my += -0.5 * zj.imag() * zj.imag() * zt.real() * h;
  }
  c.area_ = area;
  if (check == CurveCheck::Full) {
    if (!is_simple(c.z_)) throw Error(ErrorKind::CurveNotSimple, "curve self-intersects");
    if (area <= 0.0) throw Error(ErrorKind::WrongOrientation, "curve must be counterclockwise");
  }
  c.centroid_ = area != 0.0 ? cplx(mx / area, my / area) : cplx(0.0);
  return c;
}

Curve build_curve(const CVec& points, const FilterOptions& filter) {
  return Curve::from_nodes(points, filter, CurveCheck::Full);
}

Curve circle(double radius, Eigen::Index M, cplx center) {
  Vec t = spectral::nodes(M);
  CVec z(M);
  for (Eigen::Index j = 0; j < M; ++j) z(j) = center + radius * std::exp(cplx(0.0, t(j)));
  return build_curve(z);
}

Curve ellipse(double a, double b, Eigen::Index M) {
  Vec t = spectral::nodes(M);
  CVec z(M);
  for (Eigen::Index j = 0; j < M; ++j) z(j) = cplx(a * std::cos(t(j)), b * std::sin(t(j)));
  return build_curve(z);
}

Curve perturbed_circle(double radius, int mode, double amplitude, Eigen::Index M) {
  Vec t = spectral::nodes(M);
  CVec z(M);
  for (Eigen::Index j = 0; j < M; ++j) {
    z(j) = radius * (1.0 + amplitude * std::cos(mode * t(j))) * std::exp(cplx(0.0, t(j)));
  }
  return build_curve(z);
}

bool is_simple(const CVec& z) {
  const Eigen::Index M = z.size();
  for (Eigen::Index i = 0; i < M; ++i) {
    cplx a = z(i), b = z((i + 1) % M);
    for (Eigen::Index j = i + 2; j < M; ++j) {
      if (i == 0 && j == M - 1) continue;
      if (segments_intersect(a, b, z(j), z((j + 1) % M))) return false;
    }
  }
  return true;
}

Vec Curve::d_ds(const Vec& f) const { return spectral::derivative(f).cwiseQuotient(speed_); }

CVec Curve::d_ds(const CVec& f) const { return spectral::derivative(f).cwiseQuotient(speed_.cast<cplx>()); }

double Curve::integrate(const Vec& f) const { return f.dot(speed_) * h(); }

double Curve::mean(const Vec& f) const { return integrate(f) / length_; }

Vec Curve::remove_mean(const Vec& f) const { return f - Vec::Constant(f.size(), mean(f)); }

NormalCurvature normal_curvature(const Curve& c) { return {c.normal(), BoundaryScalar(c.curvature())}; }

BoundaryScalar surface_laplacian(const Curve& c, const BoundaryScalar& f) {
  if (f.size() != c.size()) throw Error(ErrorKind::ResolutionMismatch, "field and curve node counts differ");
  Vec inner = spectral::derivative(f.values).cwiseQuotient(c.speed());
  Vec out = spectral::derivative(inner).cwiseQuotient(c.speed());
  return BoundaryScalar(out, true);
}

Mat surface_laplacian_matrix(const Curve& c) {
  Mat D = spectral::derivative_matrix(c.size());
  Vec inv = c.speed().cwiseInverse();
  return inv.asDiagonal() * D * inv.asDiagonal() * D;
}

CMat arclength_fourier_matrix(const Curve& c) {
  const Eigen::Index M = c.size();
  Vec theta = arclength_nodes(c);
  // interpolation at theta_i composed with the FFT on nodes
  CMat E(M, M);
  for (Eigen::Index i = 0; i < M; ++i) {
    for (Eigen::Index k = 0; k < M; ++k) {
      int w = spectral::wavenumber(k, M);
      E(i, k) = (2 * std::abs(w) == M) ? cplx(std::cos(0.5 * M * theta(i))) : std::exp(cplx(0.0, w * theta(i)));
    }
  }
  CMat F(M, M);
  for (Eigen::Index j = 0; j < M; ++j) {
    CVec e = CVec::Zero(M);
    e(j) = 1.0;
    F.col(j) = spectral::forward(e);
  }
  CMat interp = E * F;
  CMat out(M, M);
  for (Eigen::Index j = 0; j < M; ++j) out.col(j) = spectral::forward(CVec(interp.col(j)));
  return out;
}

Vec sobolev_multipliers(const Curve& c, double s) {
  const Eigen::Index M = c.size();
  const double Lbar = c.mean_radius();
  Vec m(M);
  for (Eigen::Index j = 0; j < M; ++j) {
    double k = spectral::wavenumber(j, M) / Lbar;
    m(j) = std::pow(1.0 + k * k, 0.5 * s);
  }
  return m;
}

double boundary_sobolev_norm(const Curve& c, const CVec& f, double s) {
  if (f.size() != c.size()) throw Error(ErrorKind::ResolutionMismatch, "field and curve node counts differ");
  Vec theta = arclength_nodes(c);
  CVec fr = spectral::forward(CVec(spectral::interpolate(CVec(f.real().cast<cplx>()), theta)));
  CVec fi = spectral::forward(CVec(spectral::interpolate(CVec(f.imag().cast<cplx>()), theta)));
  Vec m = sobolev_multipliers(c, s);
  double acc = 0.0;
  for (Eigen::Index j = 0; j < f.size(); ++j) acc += m(j) * m(j) * (std::norm(fr(j)) + std::norm(fi(j)));
  return std::sqrt(acc * c.length());
}

double boundary_sobolev_norm(const Curve& c, const Vec& f, double s) {
  return boundary_sobolev_norm(c, CVec(f.cast<cplx>()), s);
}

double sobolev_operator_norm(const Curve& c, const Mat& A, double s_in, double s_out, Eigen::Index max_mode) {
  const Eigen::Index M = c.size();
  CMat P = arclength_fourier_matrix(c);
  Eigen::PartialPivLU<CMat> Plu(P);
  // real-valued input space spanned by cos/sin of retained arclength modes
  std::vector<CVec> basis;
  for (Eigen::Index j = 0; j < M; ++j) {
    int k = spectral::wavenumber(j, M);
    if (std::abs(k) > max_mode || 2 * std::abs(k) == M) continue;
    CVec e = CVec::Zero(M);
    e(j) = 1.0;
    basis.push_back(e);
  }
  Vec m_in = sobolev_multipliers(c, s_in), m_out = sobolev_multipliers(c, s_out);
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  CMat B(M, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    // coefficient vector scaled so the input has unit H^s_in norm
    CVec coef = basis[static_cast<std::size_t>(b)].cwiseQuotient(m_in.cast<cplx>());
    CVec nodes_in = Plu.solve(coef);
    CVec out_coef = P * (A.cast<cplx>() * nodes_in);
    B.col(b) = out_coef.cwiseProduct(m_out.cast<cplx>());
  }
  Eigen::JacobiSVD<CMat> svd(B);
  return svd.singularValues()(0);
}

void validate(const Lambda0Params& p) {
  if (!(p.l > 1.5)) throw Error(ErrorKind::InvalidArgument, "Lambda0 requires l > 3/2");
  if (!(p.delta > 0.0) || !(p.L > 0.0)) throw Error(ErrorKind::InvalidArgument, "Lambda0 requires delta, L > 0");
  if (p.reference.size() == 0) throw Error(ErrorKind::InvalidArgument, "Lambda0 reference curve missing");
}

Lambda0Report lambda0_check(const Curve& c, const Lambda0Params& p) {
  validate(p);
  if (c.size() != p.reference.size()) throw Error(ErrorKind::ResolutionMismatch, "reference and curve node counts differ");
  Lambda0Report r;
  CVec disp = c.nodes() - p.reference.nodes();
  r.displacement_norm = boundary_sobolev_norm(p.reference, disp, p.l - 0.5);
  r.curvature_norm = boundary_sobolev_norm(c, c.curvature(), p.l - 1.0);
  r.member = r.displacement_norm < p.delta && r.curvature_norm < p.L;
  if (!r.member) {
    r.reason = r.displacement_norm >= p.delta ? "displacement norm exceeds delta" : "curvature norm exceeds L";
  }
  return r;
}

}  // namespace sheetlimit
