/// @file geometry.hpp
/// @brief Spectrally represented closed curves and boundary scalar fields.
#pragma once

#include "sheetlimit/spectral.hpp"

#include <string>

namespace sheetlimit {

struct FilterOptions {
  /// Highest retained |k|; negative selects M/3.
  Eigen::Index dealias_index = -1;
  /// Coefficients with modulus below this are zeroed.
  double threshold = 1e-13;
};

enum class CurveCheck { Full, SkipSimplicity };

/// Closed counterclockwise curve sampled at theta_j = 2 pi j / M.
/// Stores nodes, Fourier data and the usual differential quantities.
class Curve {
 public:
  Curve() = default;

  static Curve from_nodes(const CVec& z, const FilterOptions& filter = {}, CurveCheck check = CurveCheck::Full);

  Eigen::Index size() const { return z_.size(); }
  double h() const { return 2.0 * M_PI / static_cast<double>(size()); }
  const CVec& nodes() const { return z_; }
  const CVec& coefficients() const { return coeffs_; }
  const CVec& z_theta() const { return z_t_; }
  const CVec& z_theta_theta() const { return z_tt_; }
  /// s_theta = |z_theta|.
  const Vec& speed() const { return speed_; }
  const CVec& tangent() const { return tangent_; }
  /// Outward normal of the interior region.
  const CVec& normal() const { return normal_; }
  /// Curvature, +1/R on a circle of radius R.
  const Vec& curvature() const { return kappa_; }
  /// Quadrature weights for dS: s_theta * h.
  Vec ds_weights() const { return speed_ * h(); }
  double length() const { return length_; }
  /// L / (2 pi).
  double mean_radius() const { return length_ / (2.0 * M_PI); }
  double area() const { return area_; }
  cplx centroid() const { return centroid_; }
  const FilterOptions& filter_options() const { return filter_; }
  Eigen::Index dealias_index() const;

  /// Arclength derivative of a node field.
  Vec d_ds(const Vec& f) const;
  CVec d_ds(const CVec& f) const;
  /// dS-weighted integral and mean.
  double integrate(const Vec& f) const;
  double mean(const Vec& f) const;
  Vec remove_mean(const Vec& f) const;

 private:
  CVec z_, coeffs_, z_t_, z_tt_, tangent_, normal_;
  Vec speed_, kappa_;
  double length_ = 0.0, area_ = 0.0;
  cplx centroid_ = 0.0;
  FilterOptions filter_;
};

/// Builds a validated curve from sampled points.
Curve build_curve(const CVec& points, const FilterOptions& filter = {});

Curve circle(double radius, Eigen::Index M, cplx center = 0.0);
Curve ellipse(double a, double b, Eigen::Index M);
/// r(theta) = R (1 + amplitude cos(mode theta)).
Curve perturbed_circle(double radius, int mode, double amplitude, Eigen::Index M);

/// Checks for non-adjacent polygon segment intersections.
bool is_simple(const CVec& z);

/// Scalar field on the boundary nodes.
struct BoundaryScalar {
  Vec values;
  bool zero_mean = false;

  BoundaryScalar() = default;
  explicit BoundaryScalar(Vec v, bool zm = false) : values(std::move(v)), zero_mean(zm) {}
  Eigen::Index size() const { return values.size(); }
  CVec coefficients() const { return spectral::forward(values); }
};

struct NormalCurvature {
  CVec normal;
  BoundaryScalar curvature;
};

NormalCurvature normal_curvature(const Curve& c);

/// Laplace-Beltrami operator on S.
BoundaryScalar surface_laplacian(const Curve& c, const BoundaryScalar& f);
Mat surface_laplacian_matrix(const Curve& c);

/// Map from node values to arclength-normalized Fourier coefficients.
CMat arclength_fourier_matrix(const Curve& c);
/// Multipliers (1 + (k/Lbar)^2)^(s/2) in FFT slot order.
Vec sobolev_multipliers(const Curve& c, double s);

double boundary_sobolev_norm(const Curve& c, const Vec& f, double s);
double boundary_sobolev_norm(const Curve& c, const CVec& f, double s);
inline double boundary_sobolev_norm(const Curve& c, const BoundaryScalar& f, double s) {
  return boundary_sobolev_norm(c, f.values, s);
}

/// Operator norm of A : H^s_in -> H^s_out restricted to modes |k| <= max_mode.
double sobolev_operator_norm(const Curve& c, const Mat& A, double s_in, double s_out, Eigen::Index max_mode);

struct Lambda0Params {
  Curve reference;
  double l = 3.0;
  double delta = 0.1;
  double L = 10.0;
};

void validate(const Lambda0Params& p);

struct Lambda0Report {
  bool member = false;
  double displacement_norm = 0.0;
  double curvature_norm = 0.0;
  std::string reason;
};

Lambda0Report lambda0_check(const Curve& c, const Lambda0Params& p);

}  // namespace sheetlimit
