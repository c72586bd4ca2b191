#include "sheetlimit/curvature.hpp"

#include "sheetlimit/error.hpp"
#include "sheetlimit/onefluid.hpp"

#include <cmath>

namespace sheetlimit {

void gauss_legendre(int n, Vec& nodes, Vec& weights) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "need at least one Gauss node");
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes(n - 1 - i) = x;
    weights(n - 1 - i) = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

VolumeQuadrature volume_quadrature(const Curve& c, Side side, const QuadratureOptions& opts) {
  const Eigen::Index Nt = opts.angular_factor * c.size();
  CVec z = spectral::resample(c.nodes(), Nt);
  CVec zt = spectral::derivative(z);
  const cplx zc = c.centroid();
  const double ht = 2.0 * M_PI / static_cast<double>(Nt);
  Vec jac(Nt);
  double rmax = 0.0;
  for (Eigen::Index j = 0; j < Nt; ++j) {
    jac(j) = std::imag(std::conj(z(j) - zc) * zt(j));
    if (!(jac(j) > 0.0)) throw Error(ErrorKind::QuadratureBreakdown, "curve is not star-shaped about its centroid");
    rmax = std::max(rmax, std::abs(z(j) - zc));
  }
  VolumeQuadrature q;
  q.side = side;
  Vec x, w;
  if (side == Side::Interior) {
    gauss_legendre(opts.radial_nodes, x, w);
    for (int i = 0; i < x.size(); ++i) {
      const double r = 0.5 * (x(i) + 1.0), wr = 0.5 * w(i);
      for (Eigen::Index j = 0; j < Nt; ++j) {
        q.points.push_back(zc + r * (z(j) - zc));
        q.weights.push_back(wr * ht * r * jac(j));
      }
    }
    return q;
  }
  double diameter = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    for (Eigen::Index j = i + 1; j < c.size(); ++j) diameter = std::max(diameter, std::abs(c.nodes()(i) - c.nodes()(j)));
  }
  const double r_inf = opts.r_inf < 0.0 ? 8.0 * diameter : opts.r_inf;
  const double scale = r_inf / rmax;
  if (scale < 1.5) throw Error(ErrorKind::ExteriorTruncationTooSmall, "split radius too close to the curve");
  gauss_legendre(opts.radial_nodes, x, w);
  for (int i = 0; i < x.size(); ++i) {
    const double u = 0.5 * std::log(scale) * (x(i) + 1.0);
    const double r = std::exp(u), wr = 0.5 * std::log(scale) * w(i) * r;
    for (Eigen::Index j = 0; j < Nt; ++j) {
      q.points.push_back(zc + r * (z(j) - zc));
      q.weights.push_back(wr * ht * r * jac(j));
    }
  }
  gauss_legendre(opts.tail_nodes, x, w);
  for (int i = 0; i < x.size(); ++i) {
    const double t = 0.5 * (x(i) + 1.0);
    const double r = scale / t, wr = 0.5 * w(i) * scale / (t * t);
    for (Eigen::Index j = 0; j < Nt; ++j) {
      q.points.push_back(zc + r * (z(j) - zc));
      q.weights.push_back(wr * ht * r * jac(j));
    }
  }
  return q;
}

namespace {

double gauss_term(const VolumeQuadrature& q, const PhasePressure& a, const PhasePressure& b, const PhasePressure& c,
                  const PhasePressure& d) {
  // sum w (grad a . grad b - grad c . grad d)
  double acc = 0.0;
  for (std::size_t i = 0; i < q.points.size(); ++i) {
    const cplx x = q.points[i];
    cplx ga = a.gradient(x), gb = b.gradient(x), gc = c.gradient(x), gd = d.gradient(x);
    acc += q.weights[i] * (std::real(std::conj(ga) * gb) - std::real(std::conj(gc) * gd));
  }
  return acc;
}

double sectional_phase(const VolumeQuadrature& q, const PhasePressure& pvv, const PhasePressure& pww,
                       const PhasePressure& pvw) {
  double acc = 0.0;
  for (std::size_t i = 0; i < q.points.size(); ++i) {
    const cplx x = q.points[i];
    cplx g1 = pvv.gradient(x), g2 = pww.gradient(x), g3 = pvw.gradient(x);
    acc += q.weights[i] * (std::real(std::conj(g1) * g2) - std::norm(g3));
  }
  return acc;
}

double velocity_l2(const VolumeQuadrature& q, const PhaseVelocity& v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < q.points.size(); ++i) acc += q.weights[i] * std::norm(v.velocity(q.points[i]));
  return acc;
}

}  // namespace

double rt_form(const Curve& c, double rho_plus, const PhaseVelocity& v_plus, const PhaseVelocity& w_plus) {
  LayerPotentials lp(c);
  BernoulliParticular bp = bernoulli_particular(lp, Side::Interior, v_plus, v_plus);
  CVec wt = w_plus.trace();
  Vec wperp(c.size());
  for (Eigen::Index j = 0; j < c.size(); ++j) wperp(j) = std::real(std::conj(c.normal()(j)) * wt(j));
  return -rho_plus * c.integrate(bp.normal_derivative.cwiseProduct(wperp.cwiseAbs2()));
}

CurvatureReport sectional_form(const Curve& c, double rho_plus, double rho_minus, const Vec& gamma_v,
                               const Vec& gamma_w, const QuadratureOptions& opts) {
  LayerPotentials lp(c);
  WeightedOperators ops = weighted_operators(lp, rho_plus, rho_minus);
  SheetField V(c, gamma_v), W(c, gamma_w);
  PressureSolution pvv = solve_p_vw(lp, ops, V, V);
  PressureSolution pww = solve_p_vw(lp, ops, W, W);
  PressureSolution pvw = solve_p_vw(lp, ops, V, W);
  VolumeQuadrature qi = volume_quadrature(c, Side::Interior, opts);
  VolumeQuadrature qe = volume_quadrature(c, Side::Exterior, opts);
  CurvatureReport r;
  r.rho_plus = rho_plus;
  r.rho_minus = rho_minus;
  r.R_m_plus = rho_plus * sectional_phase(qi, pvv.plus, pww.plus, pvw.plus);
  r.R_m_minus = rho_minus * sectional_phase(qe, pvv.minus, pww.minus, pvw.minus);
  r.R_m = r.R_m_plus + r.R_m_minus;
  PhaseVelocity vp = V.phase(Side::Interior), wp = W.phase(Side::Interior);
  PressureSolution svv = solve_pressure_star(lp, vp, vp);
  PressureSolution sww = solve_pressure_star(lp, wp, wp);
  PressureSolution svw = solve_pressure_star(lp, vp, wp);
  r.R_star = rho_plus * sectional_phase(qi, svv.plus, sww.plus, svw.plus);
  r.RT_form = rt_form(c, rho_plus, vp, wp);
  r.residual = std::abs(r.R_m - r.RT_form);
  r.w_l2 = velocity_l2(qi, wp) + velocity_l2(qe, W.phase(Side::Exterior));
  r.residual_ratio = r.w_l2 > 0.0 ? r.residual / r.w_l2 : 0.0;
  return r;
}

double curvature_tensor(const Curve& c, double rho_plus, double rho_minus, const Vec& gx, const Vec& gy,
                        const Vec& gz, const Vec& gw, const QuadratureOptions& opts) {
  auto K = [&](const Vec& a, const Vec& b) { return sectional_form(c, rho_plus, rho_minus, a, b, opts).R_m; };
  auto mixed = [&](const Vec& a, const Vec& da, const Vec& b, const Vec& db) {
    return 0.25 * (K(a + da, b + db) - K(a + da, b - db) - K(a - da, b + db) + K(a - da, b - db));
  };
  return (mixed(gx, gz, gy, gw) - mixed(gx, gw, gy, gz)) / 6.0;
}

double curvature_tensor_gauss(const Curve& c, double rho_plus, double rho_minus, const Vec& gx, const Vec& gy,
                              const Vec& gz, const Vec& gw, const QuadratureOptions& opts) {
  LayerPotentials lp(c);
  WeightedOperators ops = weighted_operators(lp, rho_plus, rho_minus);
  SheetField X(c, gx), Y(c, gy), Z(c, gz), W(c, gw);
  PressureSolution xz = solve_p_vw(lp, ops, X, Z), yw = solve_p_vw(lp, ops, Y, W);
  PressureSolution xw = solve_p_vw(lp, ops, X, W), yz = solve_p_vw(lp, ops, Y, Z);
  VolumeQuadrature qi = volume_quadrature(c, Side::Interior, opts);
  VolumeQuadrature qe = volume_quadrature(c, Side::Exterior, opts);
  return rho_plus * gauss_term(qi, xz.plus, yw.plus, xw.plus, yz.plus) +
         rho_minus * gauss_term(qe, xz.minus, yw.minus, xw.minus, yz.minus);
}

LimitTable limit_check(const Curve& c, double rho_plus, const Vec& gamma_v, const Vec& gamma_w,
                       const std::vector<double>& rho_minus, const QuadratureOptions& opts) {
  if (rho_minus.empty()) throw Error(ErrorKind::InvalidArgument, "empty density sequence");
  for (std::size_t i = 0; i < rho_minus.size(); ++i) {
    if (!(rho_minus[i] > 0.0) || (i > 0 && !(rho_minus[i] < rho_minus[i - 1]))) {
      throw Error(ErrorKind::InvalidArgument, "density sequence must be positive and strictly decreasing");
    }
  }
  LimitTable t;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
  for (double rm : rho_minus) {
    CurvatureReport r = sectional_form(c, rho_plus, rm, gamma_v, gamma_w, opts);
    LimitRow row{rm, r.R_m, r.R_star, std::abs(r.R_m - r.R_star), r.residual_ratio};
    t.RT_form = r.RT_form;
    if (!t.rows.empty() && !(row.difference < t.rows.back().difference)) t.monotone = false;
    if (row.difference > 0.0) {
      double lx = std::log(rm), ly = std::log(row.difference);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++n;
    }
    rmin = std::min(rmin, row.residual_ratio);
    rmax = std::max(rmax, row.residual_ratio);
    t.rows.push_back(row);
  }
  t.slope = n > 1 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
  t.residual_ratio_spread = rmin > 0.0 ? rmax / rmin : 1.0;
  return t;
}

double surface_tension_form(const Curve& c, const Vec& w_perp) {
  Vec lap = surface_laplacian(c, BoundaryScalar(w_perp)).values;
  return -c.integrate(w_perp.cwiseProduct(lap));
}

KhSymbol kh_symbol(double k, double rho_plus, double rho_minus, double V, double epsilon) {
  if (!(k > 0.0)) throw Error(ErrorKind::InvalidArgument, "wavenumber must be positive");
  const double sigma = rho_plus + rho_minus;
  KhSymbol s;
  s.a_sym = k * k * k / sigma;
  s.r_sym = -rho_plus * rho_minus * V * V * k * k / (sigma * sigma);
  s.sigma = std::sqrt(std::max(0.0, -s.r_sym - epsilon * epsilon * s.a_sym));
  return s;
}

double kh_cutoff(double rho_plus, double rho_minus, double V, double epsilon) {
  return rho_plus * rho_minus * V * V / (epsilon * epsilon * (rho_plus + rho_minus));
}

}  // namespace sheetlimit
