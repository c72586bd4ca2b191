/// @file potential.hpp
/// @brief Layer potentials, Dirichlet-to-Neumann maps, harmonic extensions
/// and near-boundary evaluation of analytic fields.
#pragma once

#include "sheetlimit/geometry.hpp"

#include <memory>
#include <string>
#include <vector>

namespace sheetlimit {

/// Interior is the bounded phase (plus), exterior the unbounded one (minus).
enum class Side { Interior, Exterior };

/// Point classification using an upsampled polygon winding number.
Side locate(const Curve& c, cplx x);

/// Barycentric Cauchy evaluation of a function analytic on one side
/// (decaying at infinity on the exterior) from its boundary values.
cplx cauchy_evaluate(const Curve& c, Side side, const CVec& boundary_values, cplx x);

/// Double layer and conjugate operators assembled for one curve.
class LayerPotentials {
 public:
  explicit LayerPotentials(const Curve& c);

  const Curve& curve() const { return curve_; }
  /// Smooth part (real) of the boundary Cauchy operator.
  const Mat& K() const { return K_; }
  /// Principal value imaginary part, alternating-point rule.
  const Mat& J() const { return J_; }

  Vec interior_density(const Vec& f) const;
  Vec exterior_density(const Vec& f) const;
  /// Value at infinity of the bounded exterior harmonic extension of f.
  double value_at_infinity(const Vec& f) const;
  /// Row vector of the functional f -> value_at_infinity(f).
  Vec value_at_infinity_row() const;

  Vec dtn(Side side, const Vec& f) const;
  Mat dtn_matrix(Side side) const;

  /// Boundary values of the analytic function F with Re F + c = f.
  /// On the exterior F decays and c is returned through c_inf.
  CVec analytic_trace(Side side, const Vec& f, double* c_inf = nullptr) const;

 private:
  Curve curve_;
  Mat K_, J_, P_;
  Eigen::PartialPivLU<Mat> interior_lu_, exterior_lu_;
};

enum class OperatorKind { DtnInterior, DtnExterior, Weighted, WeightedInverse, WeightedBar, SurfaceLaplacian, Other };

const char* to_string(OperatorKind kind);

/// Dense discretized operator acting on node values.
struct BoundaryOperator {
  Mat matrix;
  OperatorKind kind = OperatorKind::Other;
  double order = 0.0;
  bool zero_mean_domain = false;
  Vec weights;  ///< dS quadrature weights
  double mean_tolerance = 1e-8;

  /// Applies the operator; domain-restricted operators reject inputs
  /// whose dS-mean exceeds mean_tolerance times max(rms(f), scale).
  Vec apply(const Vec& f, double scale = 0.0) const;
  /// Relative asymmetry of W A in the dS-weighted inner product.
  double asymmetry() const;
  /// Eigenvalues of the dS-symmetrized operator, ascending.
  Vec symmetric_eigenvalues() const;
};

BoundaryOperator dtn(const Curve& c, Side side);

/// Rank-two term spanning the kernel of the discrete DtN maps (constants and
/// the Nyquist mode); adding it makes the maps invertible.
Mat null_space_projector(const Curve& c);
/// Inverse on dS-mean-zero, dealiased data; constants map to constants.
Mat pseudo_inverse(const BoundaryOperator& op, const Curve& c);
BoundaryOperator dtn(const LayerPotentials& lp, Side side);

enum class InverseMethod { Direct, NeumannSeries };

struct WeightedOptions {
  InverseMethod method = InverseMethod::Direct;
  int neumann_max_terms = 400;
  double neumann_tolerance = 1e-13;
};

struct WeightedOperators {
  BoundaryOperator N, N_inverse, N_bar;
  BoundaryOperator N_plus, N_minus;
  double rho_plus = 1.0, rho_minus = 1.0;
};

WeightedOperators weighted_operators(const Curve& c, double rho_plus, double rho_minus,
                                     const WeightedOptions& opts = {});
WeightedOperators weighted_operators(const LayerPotentials& lp, double rho_plus, double rho_minus,
                                     const WeightedOptions& opts = {});

/// Harmonic function on one side with prescribed Dirichlet trace.
class HarmonicField {
 public:
  HarmonicField() = default;
  HarmonicField(const LayerPotentials& lp, Side side, const Vec& trace);

  Side side() const { return side_; }
  const Vec& trace() const { return trace_; }
  /// Derivative along the outward normal of this side's region.
  const Vec& normal_derivative() const { return dn_; }
  double value_at_infinity() const { return c_inf_; }

  double value(cplx x) const;
  /// Gradient as x + i y components.
  cplx gradient(cplx x) const;
  /// Complex derivative F'(x); gradient = conj(F').
  cplx derivative(cplx x) const;
  /// F'' at x, used for velocity gradients of potential flows.
  cplx second_derivative(cplx x) const;
  /// Boundary values of F' and F''.
  const CVec& boundary_derivative() const { return dF_; }
  const CVec& boundary_second_derivative() const { return ddF_; }

 private:
  Curve curve_;
  Side side_ = Side::Interior;
  Vec trace_, dn_;
  CVec F_, dF_, ddF_;
  double c_inf_ = 0.0;
};

HarmonicField harmonic_extension(const Curve& c, Side side, const Vec& f);

struct PointVortex {
  cplx position;
  double strength;  ///< counterclockwise circulation
};

/// Velocity field of one phase: an analytic part known through its
/// boundary trace plus optional point vortices.
class PhaseVelocity {
 public:
  PhaseVelocity() = default;
  /// velocity_trace holds the analytic part only (x + i y components).
  PhaseVelocity(const Curve& c, Side side, const CVec& velocity_trace, std::vector<PointVortex> vortices = {});

  Side side() const { return side_; }
  bool irrotational() const { return vortices_.empty(); }
  const std::vector<PointVortex>& vortices() const { return vortices_; }
  const Curve& curve() const { return curve_; }
  /// Full velocity trace at the markers.
  CVec trace() const;
  /// Complex velocity f = u - i v and its derivative along the boundary.
  CVec complex_trace() const;
  CVec complex_derivative_trace() const;

  /// Velocity (x + i y) at an off-boundary point on this side.
  cplx velocity(cplx x) const;
  /// Complex derivative of u - i v at x (analytic part plus vortices).
  cplx complex_derivative(cplx x) const;

 private:
  Curve curve_;
  Side side_ = Side::Interior;
  CVec f_, df_;
  std::vector<PointVortex> vortices_;
};

/// Dirichlet-inverse particular solution of Delta q = tr(Dv Dw) on one side.
/// The solution vanishes on S; particular_trace is the trace of v.w/2 that the
/// harmonic correction removes.
struct BernoulliParticular {
  Vec particular_trace;
  Vec normal_derivative;  ///< along the outward normal of this side's region
};

BernoulliParticular bernoulli_particular(const LayerPotentials& lp, Side side, const PhaseVelocity& v,
                                         const PhaseVelocity& w);
BernoulliParticular bernoulli_particular(const Curve& c, Side side, const PhaseVelocity& v, const PhaseVelocity& w);

/// Gradient (x + i y) of v.w/2 from complex velocities and derivatives.
cplx half_dot_gradient(cplx fv, cplx dfv, cplx fw, cplx dfw);

enum class CommutatorOperator { DtnInterior, SurfaceLaplacian };

struct CommutatorReport {
  double order = 1.0;
  double norm_coarse = 0.0;
  double norm_fine = 0.0;
  double plateau_ratio = 0.0;  ///< norm_fine / norm_coarse
  double norm_doubled_velocity = 0.0;
  double linearity_ratio = 0.0;  ///< norm with 2v over norm with v
};

/// Operator norm H^s -> H^(s - order) of [v_tan d_s, A] at M and 2M nodes.
CommutatorReport commutator_order_check(const Curve& c, const CVec& velocity, double s,
                                        CommutatorOperator op = CommutatorOperator::DtnInterior);

}  // namespace sheetlimit
