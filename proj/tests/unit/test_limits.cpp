/// @file test_limits.cpp
/// @brief State comparison metrics and small-density sweeps.
#include "sheetlimit/error.hpp"
#include "sheetlimit/limits.hpp"

#include <gtest/gtest.h>

using namespace sheetlimit;

namespace {

Vec quadratic_phi(const Curve& c, double amp) {
  Vec phi(c.size());
  for (Eigen::Index j = 0; j < c.size(); ++j) phi(j) = amp * std::real(c.nodes()(j) * c.nodes()(j));
  return phi;
}

CVec two_tracers() {
  CVec t(2);
  t << cplx(0.3, 0.1), cplx(-0.2, -0.4);
  return t;
}

SweepConfig small_sweep(const Curve& c, const Vec& phi, std::vector<double> rho) {
  SweepConfig cfg;
  cfg.curve = c;
  cfg.phi = phi;
  cfg.tracers = two_tracers();
  cfg.rho_sequence = std::move(rho);
  cfg.T = 0.05;
  cfg.dt = 0.05 / 8;
  return cfg;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Io;
}

}  // namespace

TEST(CompareStates, MatchingInitialData) {
  Curve c = perturbed_circle(1.0, 2, 0.05, 64);
  Vec phi = quadratic_phi(c, 0.2);
  BlobState one = make_blob_state(c, phi, 1.0, 1.0, two_tracers());
  FluidParams p;
  p.rho_minus = 1e-3;
  SheetState two = make_sheet_state(c, sheet_strength_from_potential(LayerPotentials(c), phi, 0.0), p, two_tracers());
  ErrorRecord e = compare_states(two, one);
  EXPECT_EQ(e.marker_l2, 0.0);
  EXPECT_EQ(e.tracer, 0.0);
  EXPECT_EQ(e.interface, 0.0);
  EXPECT_EQ(e.normal, 0.0);
  EXPECT_EQ(e.curvature, 0.0);
  EXPECT_LT(e.velocity, 1e-8);
  EXPECT_EQ(compare_states(one, one).pressure_minus, 0.0);
  for (double v : error_values(compare_states(one, one))) EXPECT_LT(v, 1e-12);
}

TEST(CompareStates, RigidRotationClosedForm) {
  const double R = 1.3, alpha = 0.01;
  Curve c = circle(R, 64);
  CVec tracers = two_tracers();
  BlobState a = make_blob_state(c, Vec::Zero(64), 1.0, 1.0, tracers);
  const cplx rot = std::exp(cplx(0, alpha));
  BlobState b = make_blob_state(build_curve(CVec(c.nodes() * rot)), Vec::Zero(64), 1.0, 1.0, CVec(tracers * rot));
  ErrorRecord e = compare_states(a, b);
  const double chord = 2.0 * std::sin(alpha / 2.0);
  EXPECT_NEAR(e.marker_l2, std::sqrt(2.0 * M_PI) * R * chord, 1e-12);
  EXPECT_NEAR(e.tracer, tracers.cwiseAbs().maxCoeff() * chord, 1e-12);
  EXPECT_NEAR(e.curvature, 0.0, 1e-10);
}

TEST(InterfaceDistance, NormProperties) {
  Curve a = perturbed_circle(1.0, 3, 0.05, 64), b = ellipse(1.1, 0.95, 64);
  for (double s : {0.0, 1.5, 4.0}) {
    EXPECT_NEAR(interface_distance(a.nodes(), b.nodes(), s), interface_distance(b.nodes(), a.nodes(), s), 1e-14);
    EXPECT_EQ(interface_distance(a.nodes(), a.nodes(), s), 0.0);
  }
  CVec d = a.nodes() - b.nodes();
  EXPECT_NEAR(interface_distance(a.nodes(), b.nodes(), 0.0), std::sqrt(2.0 * M_PI * d.squaredNorm() / 64.0), 1e-12);
  EXPECT_LE(interface_distance(a.nodes(), b.nodes(), 1.0), interface_distance(a.nodes(), b.nodes(), 2.0));
  EXPECT_EQ(kind_of([&] { interface_distance(a.nodes(), circle(1.0, 32).nodes(), 1.0); }), ErrorKind::LayoutMismatch);
}

TEST(CompareStates, LayoutMismatch) {
  BlobState a = make_blob_state(circle(1.0, 64), Vec::Zero(64), 1.0, 1.0, two_tracers());
  BlobState b = make_blob_state(circle(1.0, 64), Vec::Zero(64), 1.0, 1.0, CVec(CVec::Zero(3)));
  EXPECT_EQ(kind_of([&] { compare_states(a, b); }), ErrorKind::LayoutMismatch);
}

TEST(DefaultHorizon, TenthOfCapillaryPeriod) {
  const double omega = std::sqrt(2.0 * 3.0 / (1.0 * 8.0));
  EXPECT_NEAR(default_horizon(2, 2.0, 1.0, 1.0), 0.1 * 2.0 * M_PI / omega, 1e-14);
}

TEST(LoglogSlope, PowerLaw) {
  std::vector<double> x{1.0, 0.5, 0.25, 0.125}, y;
  for (double v : x) y.push_back(3.0 * v * v);
  EXPECT_NEAR(loglog_slope(x, y), 2.0, 1e-12);
  y[1] = 0.0;
  EXPECT_NEAR(loglog_slope(x, y), 2.0, 1e-12);
}

TEST(RhoSweep, StaticCircleStaysAtRest) {
  Curve c = circle(1.0, 32);
  ConvergenceReport r = rho_sweep(small_sweep(c, Vec::Zero(32), {0.5, 0.25}));
  ASSERT_EQ(r.rows.size(), 2u);
  for (const auto& row : r.rows) {
    EXPECT_LE(row.sup.marker_l2, 1e-8);
    EXPECT_LE(row.sup.tracer, 1e-8);
    EXPECT_LE(row.sup.velocity, 1e-8);
    EXPECT_LE(row.sup.curvature, 1e-8);
  }
  for (double v : error_values(r.noise_floor)) EXPECT_LE(v, 1e-8);
}

TEST(RhoSweep, ErrorsShrinkWithLighterPhase) {
  Curve c = perturbed_circle(1.0, 2, 0.05, 32);
  SweepConfig cfg = small_sweep(c, quadratic_phi(c, 0.2), {0.25, 0.125, 0.0625});
  cfg.jobs = 2;
  ConvergenceReport r = rho_sweep(cfg);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.steps, 8);
  EXPECT_TRUE(r.monotone[0]);
  EXPECT_TRUE(r.monotone[2]);
  EXPECT_GT(r.rows.back().sup.marker_l2, 10.0 * r.noise_floor.marker_l2);
  EXPECT_GT(r.slopes[0], 0.5);
}

TEST(RhoSweep, InconsistentSequences) {
  Curve c = circle(1.0, 32);
  EXPECT_EQ(kind_of([&] { rho_sweep(small_sweep(c, Vec::Zero(32), {0.25, 0.5})); }), ErrorKind::InconsistentSweep);
  EXPECT_EQ(kind_of([&] { rho_sweep(small_sweep(c, Vec::Zero(32), {})); }), ErrorKind::InconsistentSweep);
}
