#include "sheetlimit/flow.hpp"

#include "sheetlimit/error.hpp"

#include <cmath>

namespace sheetlimit {

namespace {
const cplx I(0.0, 1.0);
}

CMat birkhoff_rott_matrix(const Curve& c) {
  const Eigen::Index M = c.size();
  const double h = c.h();
  CMat B = CMat::Zero(M, M);
  for (Eigen::Index j = 0; j < M; ++j) {
    for (Eigen::Index k = 0; k < M; ++k) {
      if ((j - k) % 2 == 0) continue;
      B(j, k) = std::conj(2.0 * h / (2.0 * M_PI * I * (c.nodes()(k) - c.nodes()(j))));
    }
  }
  return B;
}

SheetField::SheetField(const Curve& c, const Vec& gamma, std::vector<PointVortex> vortices)
    : curve_(c), gamma_(gamma), vortices_(std::move(vortices)) {
  const Eigen::Index M = c.size();
  if (gamma.size() != M) throw Error(ErrorKind::ResolutionMismatch, "sheet strength and curve node counts differ");
  W_ = birkhoff_rott_matrix(c) * gamma.cast<cplx>();
  CVec jump = gamma.cwiseQuotient(c.speed()).cast<cplx>().cwiseProduct(c.tangent()) * 0.5;
  CVec sheet_plus = W_ + jump, sheet_minus = W_ - jump;
  CVec analytic_plus = sheet_plus, analytic_minus = sheet_minus;
  std::vector<PointVortex> inside, outside;
  const double tol = 1e-10 * c.mean_radius();
  for (const auto& pv : vortices_) {
    for (Eigen::Index j = 0; j < M; ++j) {
      if (std::abs(c.nodes()(j) - pv.position) < tol) {
        throw Error(ErrorKind::VortexOnBoundary, "point vortex lies on the curve");
      }
    }
    Side sd = locate(c, pv.position);
    vortex_sides_.push_back(sd);
    CVec induced(M);
    for (Eigen::Index j = 0; j < M; ++j) {
      induced(j) = std::conj(pv.strength / (2.0 * M_PI * I * (c.nodes()(j) - pv.position)));
    }
    if (sd == Side::Interior) {
      inside.push_back(pv);
      analytic_minus += induced;
    } else {
      outside.push_back(pv);
      analytic_plus += induced;
    }
    sheet_plus += induced;
    sheet_minus += induced;
  }
  plus_ = sheet_plus;
  minus_ = sheet_minus;
  phase_plus_ = PhaseVelocity(c, Side::Interior, analytic_plus, inside);
  phase_minus_ = PhaseVelocity(c, Side::Exterior, analytic_minus, outside);
}

CVec SheetField::trace(Side side) const { return side == Side::Interior ? plus_ : minus_; }

Vec SheetField::normal_velocity() const {
  const Eigen::Index M = curve_.size();
  Vec th(M);
  for (Eigen::Index j = 0; j < M; ++j) th(j) = std::real(std::conj(curve_.normal()(j)) * W_(j));
  for (Eigen::Index j = 0; j < M; ++j) {
    for (const auto& pv : vortices_) {
      cplx v = std::conj(pv.strength / (2.0 * M_PI * I * (curve_.nodes()(j) - pv.position)));
      th(j) += std::real(std::conj(curve_.normal()(j)) * v);
    }
  }
  return th;
}

Vec SheetField::tangential_velocity(Side side) const {
  const CVec& v = side == Side::Interior ? plus_ : minus_;
  Vec u(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) u(j) = std::real(std::conj(curve_.tangent()(j)) * v(j));
  return u;
}

PhaseVelocity SheetField::phase(Side side) const { return side == Side::Interior ? phase_plus_ : phase_minus_; }

cplx SheetField::velocity(cplx x) const {
  return locate(curve_, x) == Side::Interior ? phase_plus_.velocity(x) : phase_minus_.velocity(x);
}

FieldDecomposition decompose_field(const Curve& c, const Vec& gamma, const std::vector<PointVortex>& vortices) {
  FieldDecomposition d;
  d.full = SheetField(c, gamma, vortices);
  d.vortices = vortices;
  d.has_vorticity = !vortices.empty();
  if (!d.has_vorticity) {
    d.irrotational = d.full;
    return d;
  }
  for (const auto& pv : vortices) {
    if (locate(c, pv.position) != Side::Interior) {
      throw Error(ErrorKind::InvalidArgument, "point vortices must lie inside the bounded phase");
    }
  }
  LayerPotentials lp(c);
  Vec theta = d.full.normal_velocity();
  const Vec w = c.ds_weights();
  theta.array() -= w.dot(theta) / w.sum();
  Vec g = pseudo_inverse(dtn(lp, Side::Interior), c) * theta;
  Vec u_plus = c.d_ds(g);
  d.irrotational = SheetField(c, c.speed().cwiseProduct(u_plus - d.full.tangential_velocity(Side::Exterior)));
  return d;
}

Vec sheet_strength_from_potential(const LayerPotentials& lp, const Vec& phi_plus, double exterior_circulation) {
  const Curve& c = lp.curve();
  const Eigen::Index M = c.size();
  Vec theta = lp.dtn(Side::Interior, phi_plus);
  // circulating exterior field: grad of (G / 2 pi) arg(x - z_c) plus a Neumann correction
  Vec circ_n(M), circ_t(M);
  const cplx zc = c.centroid();
  for (Eigen::Index j = 0; j < M; ++j) {
    cplx d = c.nodes()(j) - zc;
    cplx g = exterior_circulation / (2.0 * M_PI) * I * d / std::norm(d);
    circ_n(j) = std::real(std::conj(c.normal()(j)) * g);
    circ_t(j) = std::real(std::conj(c.tangent()(j)) * g);
  }
  // exterior potential: d/dN_minus phi_minus = -(theta - circ_n)
  BoundaryOperator nm = dtn(lp, Side::Exterior);
  Mat inv = pseudo_inverse(nm, c);
  Vec phi_minus = inv * Vec(-(theta - circ_n));
  Vec u_plus = c.d_ds(phi_plus);
  Vec u_minus = c.d_ds(phi_minus) + circ_t;
  return c.speed().cwiseProduct(u_plus - u_minus);
}

}  // namespace sheetlimit
