#include "sheetlimit/identities.hpp"

#include "sheetlimit/error.hpp"

#include <algorithm>

namespace sheetlimit {

namespace {

template <class V>
V central_difference(const std::vector<V>& f, std::size_t i, double dt, int stencil) {
  if (stencil == 3) return (f[i + 1] - f[i - 1]) / (2.0 * dt);
  return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * dt);
}

}  // namespace

IdentityResidualReport verify_geometric_identities(const std::vector<IdentitySlice>& slices, double dt, double s,
                                                   int stencil) {
  if (stencil != 3 && stencil != 5) throw Error(ErrorKind::InvalidArgument, "stencil must be 3 or 5");
  if (slices.size() < static_cast<std::size_t>(stencil)) {
    throw Error(ErrorKind::InsufficientSlices, "need at least " + std::to_string(stencil) + " slices");
  }
  const Eigen::Index M = slices.front().curve.size();
  for (const auto& sl : slices) {
    if (sl.curve.size() != M || sl.velocity.size() != M) {
      throw Error(ErrorKind::ResolutionMismatch, "slices have inconsistent node counts");
    }
  }
  IdentityResidualReport rep;
  rep.stencil = stencil;
  rep.sobolev_index = s;
  std::vector<CVec> normals;
  std::vector<Vec> kappas;
  for (const auto& sl : slices) {
    normals.push_back(sl.curve.normal());
    kappas.push_back(sl.curve.curvature());
    const Curve& c = sl.curve;
    CVec lapN = spectral::derivative(c.d_ds(c.normal())).cwiseQuotient(c.speed().cast<cplx>());
    CVec rhs = c.d_ds(c.curvature()).cast<cplx>().cwiseProduct(c.tangent()) -
               c.curvature().cwiseAbs2().cast<cplx>().cwiseProduct(c.normal());
    rep.laplacian_residual = std::max(rep.laplacian_residual, boundary_sobolev_norm(c, CVec(lapN - rhs), s));
  }
  const std::size_t half = static_cast<std::size_t>(stencil / 2);
  for (std::size_t i = half; i + half < slices.size(); ++i) {
    const Curve& c = slices[i].curve;
    const CVec& v = slices[i].velocity;
    CVec dNdt = central_difference(normals, i, dt, stencil);
    Vec dkdt = central_difference(kappas, i, dt, stencil);
    CVec dv = c.d_ds(v);
    Vec v_perp(M), v_tan(M), n_dv(M);
    for (Eigen::Index j = 0; j < M; ++j) {
      v_perp(j) = std::real(std::conj(c.normal()(j)) * v(j));
      v_tan(j) = std::real(std::conj(c.tangent()(j)) * v(j));
      n_dv(j) = std::real(std::conj(c.normal()(j)) * dv(j));
    }
    CVec rN = dNdt + n_dv.cast<cplx>().cwiseProduct(c.tangent());
    Vec lap = surface_laplacian(c, BoundaryScalar(v_perp)).values;
    Vec rk = dkdt + lap + c.curvature().cwiseAbs2().cwiseProduct(v_perp) - v_tan.cwiseProduct(c.d_ds(c.curvature()));
    double nN = boundary_sobolev_norm(c, rN, s), nK = boundary_sobolev_norm(c, rk, s);
    rep.normal_per_slice.push_back(nN);
    rep.curvature_per_slice.push_back(nK);
    rep.normal_residual = std::max(rep.normal_residual, nN);
    rep.curvature_residual = std::max(rep.curvature_residual, nK);
  }
  return rep;
}

}  // namespace sheetlimit
