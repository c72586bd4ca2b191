/// @file curvature.hpp
/// @brief Sectional-curvature forms of the configuration manifold, their
/// small-density limit and the flat-interface Kelvin-Helmholtz symbols.
#pragma once

#include "sheetlimit/twofluid.hpp"

#include <vector>

namespace sheetlimit {

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, Vec& nodes, Vec& weights);

struct QuadratureOptions {
  int radial_nodes = 40;     ///< interior and annulus
  int tail_nodes = 24;       ///< inverted coordinate beyond r_inf
  int angular_factor = 2;    ///< angular nodes = factor * M
  double r_inf = -1.0;       ///< split radius; negative selects 8 x diameter
};

/// Quadrature on one side of a curve star-shaped about its centroid.
/// The exterior rule covers the annulus up to r_inf and the remaining
/// tail through t = r_inf / r, so no truncation is involved.
struct VolumeQuadrature {
  Side side = Side::Interior;
  std::vector<cplx> points;
  std::vector<double> weights;
};

VolumeQuadrature volume_quadrature(const Curve& c, Side side, const QuadratureOptions& opts = {});

struct CurvatureReport {
  double rho_plus = 1.0, rho_minus = 1.0;
  double R_m = 0.0;
  double R_m_plus = 0.0, R_m_minus = 0.0;  ///< phase contributions
  double R_star = 0.0;
  double RT_form = 0.0;
  double residual = 0.0;  ///< |R_m - RT_form|
  double w_l2 = 0.0;      ///< ||w||^2 over both phases
  double residual_ratio = 0.0;
};

/// <II(v,v), II(w,w)> - |II(v,w)|^2 in L^2(rho dx) for sheet fields v, w on c.
CurvatureReport sectional_form(const Curve& c, double rho_plus, double rho_minus, const Vec& gamma_v,
                               const Vec& gamma_w, const QuadratureOptions& opts = {});

/// -int rho+ d_N(Lap^-1 tr(Dv)^2) |w_perp|^2 dS (boundary integral only).
double rt_form(const Curve& c, double rho_plus, const PhaseVelocity& v_plus, const PhaseVelocity& w_plus);

/// <R(X,Y)Z,W> from sectional values by polarization.
double curvature_tensor(const Curve& c, double rho_plus, double rho_minus, const Vec& gx, const Vec& gy,
                        const Vec& gz, const Vec& gw, const QuadratureOptions& opts = {});
/// Same tensor from the Gauss equation with II(a, b) = -grad p_{a,b}.
double curvature_tensor_gauss(const Curve& c, double rho_plus, double rho_minus, const Vec& gx, const Vec& gy,
                              const Vec& gz, const Vec& gw, const QuadratureOptions& opts = {});

struct LimitRow {
  double rho_minus = 0.0;
  double R_m = 0.0;
  double R_star = 0.0;
  double difference = 0.0;  ///< |R_m - R_star|
  double residual_ratio = 0.0;
};

struct LimitTable {
  std::vector<LimitRow> rows;
  double RT_form = 0.0;
  double slope = 0.0;  ///< log-log fit of difference against rho_minus
  bool monotone = true;
  double residual_ratio_spread = 1.0;
};

/// rho_minus must be strictly decreasing and positive.
LimitTable limit_check(const Curve& c, double rho_plus, const Vec& gamma_v, const Vec& gamma_w,
                       const std::vector<double>& rho_minus, const QuadratureOptions& opts = {});

/// Quadratic form <theta, -Lap theta> of the surface-tension operator.
double surface_tension_form(const Curve& c, const Vec& w_perp);

struct KhSymbol {
  double a_sym = 0.0;
  double r_sym = 0.0;
  double sigma = 0.0;
};

KhSymbol kh_symbol(double k_wave, double rho_plus, double rho_minus, double V, double epsilon);
double kh_cutoff(double rho_plus, double rho_minus, double V, double epsilon);

}  // namespace sheetlimit
