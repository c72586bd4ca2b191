/// @file identities.hpp
/// @brief Finite-difference checks of the moving-boundary transport identities.
#pragma once

#include "sheetlimit/geometry.hpp"

#include <vector>

namespace sheetlimit {

/// One time slice: marker positions and the velocity trace moving them.
struct IdentitySlice {
  Curve curve;
  CVec velocity;  ///< x + i y components at the markers
};

struct IdentityResidualReport {
  int stencil = 5;
  double sobolev_index = 0.0;
  /// D_t N + (N . d_s v) tau, maximum over central slices.
  double normal_residual = 0.0;
  /// D_t kappa + Lap v_perp + kappa^2 v_perp - v_tan d_s kappa.
  double curvature_residual = 0.0;
  /// Lap N - (d_s kappa) tau + kappa^2 N on every slice.
  double laplacian_residual = 0.0;
  std::vector<double> normal_per_slice, curvature_per_slice;
};

/// stencil is 3 or 5 (central differences of order 2 or 4).
IdentityResidualReport verify_geometric_identities(const std::vector<IdentitySlice>& slices, double dt,
                                                   double s = 0.0, int stencil = 5);

}  // namespace sheetlimit
