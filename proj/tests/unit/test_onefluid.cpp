/// @file test_onefluid.cpp
/// @brief Single-blob capillary dynamics and the Dirichlet-zero velocity pressure.
#include "oracles.hpp"
#include "sheetlimit/onefluid.hpp"

#include <gtest/gtest.h>

using namespace sheetlimit;

namespace {

Vec re_of(const CVec& z, const std::function<cplx(cplx)>& F) {
  Vec f(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) f(j) = std::real(F(z(j)));
  return f;
}

}  // namespace

TEST(PressureStar, ZeroAndUniformFlows) {
  Curve c = ellipse(1.2, 0.8, 64);
  PressureSolution zero = solve_pressure_star(c, PhaseVelocity(c, Side::Interior, CVec::Zero(64)));
  EXPECT_LT(zero.dn_plus.cwiseAbs().maxCoeff(), 1e-14);
  PressureSolution uni = solve_pressure_star(c, PhaseVelocity(c, Side::Interior, CVec::Constant(64, cplx(0.3, -0.2))));
  EXPECT_LT(uni.dn_plus.cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT(uni.trace_plus.cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(std::abs(uni.plus.value(cplx(0.1, 0.2))), 1e-10);
}

TEST(PressureStar, DiskQuadraticFlowClosedForm) {
  // phi = Re z^2: p* = 2 (1 - r^2)
  Curve c = circle(1.0, 64);
  BlobState s = make_blob_state(c, re_of(c.nodes(), [](cplx z) { return z * z; }), 1.0, 1.0);
  PressureSolution p = solve_pressure_star(c, blob_velocity(s));
  for (Eigen::Index j = 0; j < 64; ++j) EXPECT_NEAR(p.dn_plus(j), -4.0, 1e-9);
  EXPECT_NEAR(p.plus.value(cplx(0.3, 0.4)), 2.0 * (1.0 - 0.25), 1e-9);
}

TEST(PressureStar, DiskMatchesPoissonOracle) {
  const int M = 64;
  Curve c = circle(1.0, M);
  auto F = [](cplx z) { return z * z + cplx(0.0, 0.3) * z * z * z; };
  auto d2F = [](cplx z) { return 2.0 + cplx(0.0, 1.8) * z; };
  BlobState s = make_blob_state(c, re_of(c.nodes(), F), 1.0, 1.0);
  PressureSolution p = solve_pressure_star(c, blob_velocity(s));
  // tr(Dv Dv) = 2 |F''|^2 for v = conj(F')
  auto source = [&](cplx x) { return 2.0 * std::norm(d2F(x)); };
  Vec grid = oracle::disk_poisson_dn(source, M);
  for (Eigen::Index j = 0; j < M; ++j) EXPECT_NEAR(p.dn_plus(j), -grid(j), 1e-5);
}

TEST(EvolveOneFluid, StaticCircle) {
  BlobState s = make_blob_state(circle(1.0, 32), Vec::Zero(32), 1.0, 1.0);
  const int steps = int(std::ceil(1.0 / max_stable_dt(s)));
  EvolveOptions opts;
  opts.record_every = steps;
  BlobTrajectory tr = evolve_onefluid(s, 1.0 / steps, steps, opts);
  EXPECT_LT((tr.states.back().curve.nodes() - s.curve.nodes()).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(EvolveOneFluid, CapillaryFrequencyAndEnergy) {
  const int n = 2;
  const double a = 1e-3, eps = 1.0, rho = 1.0, R = 1.0;
  const double omega = std::sqrt(eps * eps * n * (n * n - 1) / (rho * R * R * R));
  const double period = 2.0 * M_PI / omega;
  BlobState s = make_blob_state(perturbed_circle(R, n, a, 128), Vec::Zero(128), rho, eps);
  const int every = 4;
  int steps = int(std::ceil(period / max_stable_dt(s)));
  steps += (every - steps % every) % every;
  const double dt = period / steps;
  EvolveOptions opts;
  opts.record_every = every;
  BlobTrajectory tr = evolve_onefluid(s, dt, steps, opts);
  CVec amp(tr.states.size());
  for (size_t i = 0; i < tr.states.size(); ++i) {
    const Curve& c = tr.states[i].curve;
    Vec r = c.nodes().cwiseAbs();
    amp(Eigen::Index(i)) = oracle::mode_coefficient(r, n) + oracle::mode_coefficient(r, -n);
  }
  std::vector<cplx> ex = oracle::prony(amp, 2, dt * every);
  const double measured = std::max(std::abs(ex[0].imag()), std::abs(ex[1].imag()));
  EXPECT_NEAR(measured / omega, 1.0, 0.01);
  const double e0 = tr.diagnostics.front().energy;
  double worst = 0.0;
  for (const auto& d : tr.diagnostics) worst = std::max(worst, std::abs(d.energy - e0) / e0);
  EXPECT_LT(worst, 1e-6);
  EXPECT_LT(std::abs(tr.diagnostics.back().area - tr.diagnostics.front().area), 1e-6);
}

TEST(EvolveOneFluid, RayleighTaylorIndicatorReported) {
  Curve c = circle(1.0, 64);
  BlobState s = make_blob_state(c, re_of(c.nodes(), [](cplx z) { return z * z; }), 1.0, 1.0);
  // -rho d_N p* = 4 on the unit circle for phi = Re z^2
  EXPECT_NEAR(rayleigh_taylor_indicator(s), 4.0, 1e-9);
}
