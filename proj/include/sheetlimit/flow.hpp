/// @file flow.hpp
/// @brief Velocity fields induced by a vortex sheet on S and point vortices.
#pragma once

#include "sheetlimit/potential.hpp"

#include <vector>

namespace sheetlimit {

/// Principal-value sheet velocity W = B gamma (x + i y), alternating-point rule.
CMat birkhoff_rott_matrix(const Curve& c);

/// Sheet of strength gamma (per unit theta) with v_plus - v_minus = (gamma / s_theta) tau.
class SheetField {
 public:
  SheetField() = default;
  SheetField(const Curve& c, const Vec& gamma, std::vector<PointVortex> vortices = {});

  const Curve& curve() const { return curve_; }
  const Vec& gamma() const { return gamma_; }
  const std::vector<PointVortex>& vortices() const { return vortices_; }
  bool irrotational() const { return vortices_.empty(); }

  /// Principal value average of the two traces.
  const CVec& average() const { return W_; }
  CVec trace(Side side) const;
  /// v . N (continuous across S).
  Vec normal_velocity() const;
  /// v . tau on one side.
  Vec tangential_velocity(Side side) const;

  PhaseVelocity phase(Side side) const;
  /// Velocity at an off-curve point; the side is located automatically.
  cplx velocity(cplx x) const;

 private:
  Curve curve_;
  Vec gamma_;
  CVec W_, plus_, minus_;
  std::vector<PointVortex> vortices_;
  std::vector<Side> vortex_sides_;
  PhaseVelocity phase_plus_, phase_minus_;
};

/// v = v_ir + v_r with v_ir a sheet field carrying the full normal trace and
/// the full exterior flow; v_r is tangent to S and vanishes outside.
struct FieldDecomposition {
  SheetField full;
  SheetField irrotational;
  std::vector<PointVortex> vortices;
  bool has_vorticity = false;

  cplx rotational(cplx x) const { return full.velocity(x) - irrotational.velocity(x); }
};

/// Splits a sheet-plus-vortex field; vortices must lie strictly inside.
FieldDecomposition decompose_field(const Curve& c, const Vec& gamma, const std::vector<PointVortex>& vortices);

/// Sheet strength whose interior flow has potential phi_plus (on S) and
/// whose exterior flow has the given counterclockwise circulation.
Vec sheet_strength_from_potential(const LayerPotentials& lp, const Vec& phi_plus, double exterior_circulation);

}  // namespace sheetlimit
