/// @file test_potential.cpp
/// @brief DtN maps, weighted operators, harmonic extensions, particular solutions, commutators.
#include "oracles.hpp"
#include "sheetlimit/error.hpp"
#include "sheetlimit/flow.hpp"
#include "sheetlimit/potential.hpp"

#include <gtest/gtest.h>

using namespace sheetlimit;

namespace {

Vec cos_mode(const Curve& c, int n) {
  Vec f(c.size());
  for (Eigen::Index j = 0; j < c.size(); ++j) f(j) = std::cos(n * c.h() * j);
  return f;
}

Vec re_of(const CVec& z, const std::function<cplx(cplx)>& F) {
  Vec f(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) f(j) = std::real(F(z(j)));
  return f;
}

}  // namespace

TEST(Dtn, CircleEigenvaluesBothSides) {
  for (double R : {1.0, 2.5}) {
    Curve c = circle(R, 128);
    LayerPotentials lp(c);
    for (Side side : {Side::Interior, Side::Exterior}) {
      for (int n = 1; n <= 32; ++n) {
        Vec f = cos_mode(c, n);
        Vec g = lp.dtn(side, f);
        EXPECT_LT((g - (n / R) * f).cwiseAbs().maxCoeff(), 1e-8 * n / R) << "n=" << n;
      }
      EXPECT_LT(lp.dtn(side, Vec::Ones(128)).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(Dtn, CircleAccurateAtAllResolutions) {
  for (Eigen::Index M : {32, 64, 128}) {
    Curve c = circle(1.0, M);
    BoundaryOperator op = dtn(c, Side::Interior);
    Vec f = cos_mode(c, 5);
    EXPECT_LT((op.apply(f) - 5.0 * f).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Dtn, EllipseHarmonicPolynomials) {
  Curve c = ellipse(1.4, 0.8, 128);
  LayerPotentials lp(c);
  const CVec& z = c.nodes();
  const CVec& N = c.normal();
  for (int n : {1, 2, 3, 4}) {
    Vec f = re_of(z, [n](cplx x) { return std::pow(x, n); });
    Vec expect(z.size());
    for (Eigen::Index j = 0; j < z.size(); ++j) expect(j) = std::real(double(n) * std::pow(z(j), n - 1) * N(j));
    EXPECT_LT((lp.dtn(Side::Interior, f) - expect).cwiseAbs().maxCoeff(), 1e-8);

    Vec g = re_of(z, [n](cplx x) { return std::pow(x, -n); });
    Vec expect_ext(z.size());
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      expect_ext(j) = -std::real(-double(n) * std::pow(z(j), -n - 1) * N(j));
    }
    EXPECT_LT((lp.dtn(Side::Exterior, g) - expect_ext).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Dtn, SymmetricAndPositive) {
  for (const Curve& c : {circle(1.0, 128), ellipse(1.5, 0.7, 128)}) {
    BoundaryOperator ip = dtn(c, Side::Interior), ep = dtn(c, Side::Exterior);
    EXPECT_LT(ip.asymmetry(), 1e-8);
    EXPECT_LT(ep.asymmetry(), 1e-8);
    BoundaryOperator sum = ip;
    sum.matrix += ep.matrix;
    Vec ev = sum.symmetric_eigenvalues();
    // two null directions: constants and the unresolved Nyquist mode
    EXPECT_LT(std::abs(ev(0)), 1e-8);
    EXPECT_GT(ev(2), 0.1);
  }
}

TEST(WeightedOperators, CircleEigenvalues) {
  const double R = 1.5, rp = 1.0, rm = 0.25;
  Curve c = circle(R, 64);
  WeightedOperators ops = weighted_operators(c, rp, rm);
  for (int n = 1; n <= 16; ++n) {
    Vec f = cos_mode(c, n);
    EXPECT_LT((ops.N.apply(f) - (n / R) * (1 / rp + 1 / rm) * f).cwiseAbs().maxCoeff(), 1e-8 * n);
    EXPECT_LT((ops.N_bar.apply(f) - n / (R * (rp + rm)) * f).cwiseAbs().maxCoeff(), 1e-8 * n);
    EXPECT_LT((ops.N_inverse.apply(ops.N.apply(f)) - f).cwiseAbs().maxCoeff(), 1e-8);
  }
  EXPECT_LT(ops.N_bar.asymmetry(), 1e-8);
}

TEST(WeightedOperators, BarIndependentOfDensityRatio) {
  Curve c = circle(1.0, 64);
  Vec ref;
  for (double rp : {0.5, 1.0, 1.7}) {
    WeightedOperators ops = weighted_operators(c, rp, 2.0 - rp);
    Vec ev = ops.N_bar.symmetric_eigenvalues();
    if (ref.size() == 0) ref = ev;
    EXPECT_LT((ev - ref).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(WeightedOperators, InverseRejectsNonZeroMean) {
  Curve c = ellipse(1.3, 0.9, 64);
  WeightedOperators ops = weighted_operators(c, 1.0, 0.5);
  try {
    ops.N_inverse.apply(Vec::Ones(64));
    FAIL() << "expected NonZeroMeanInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonZeroMeanInput);
  }
  EXPECT_THROW(weighted_operators(c, 0.0, 1.0), Error);
}

TEST(WeightedOperators, NeumannSeriesMatchesDirect) {
  Curve c = perturbed_circle(1.0, 3, 0.1, 64);
  WeightedOptions opts;
  opts.method = InverseMethod::NeumannSeries;
  WeightedOperators direct = weighted_operators(c, 1.0, 0.3);
  WeightedOperators series = weighted_operators(c, 1.0, 0.3, opts);
  Vec f = c.remove_mean(c.curvature());
  Vec a = direct.N_inverse.apply(f), b = series.N_inverse.apply(f);
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-9 * a.cwiseAbs().maxCoeff());
}

TEST(WeightedOperators, InverseScalesWithLighterDensity) {
  Curve c = ellipse(1.3, 0.9, 64);
  std::vector<double> rho, top;
  for (double rm : {1e-1, 1e-2, 1e-3, 1e-4}) {
    rho.push_back(rm);
    top.push_back(oracle::zero_mean_top_eigenvalue(c, weighted_operators(c, 1.0, rm).N_inverse.matrix));
  }
  EXPECT_NEAR(oracle::loglog_slope(rho, top), 1.0, 0.05);
}

TEST(HarmonicExtension, CircleSeparableHarmonics) {
  Curve c = circle(1.0, 64);
  for (int n : {1, 2, 5}) {
    Vec f = cos_mode(c, n);
    HarmonicField in = harmonic_extension(c, Side::Interior, f);
    HarmonicField out = harmonic_extension(c, Side::Exterior, f);
    for (double t : {0.0, 0.7, 2.9}) {
      EXPECT_NEAR(in.value(0.5 * std::exp(cplx(0, t))), std::pow(0.5, n) * std::cos(n * t), 1e-8);
      EXPECT_NEAR(out.value(2.0 * std::exp(cplx(0, t))), std::pow(2.0, -n) * std::cos(n * t), 1e-8);
    }
  }
}

TEST(HarmonicExtension, EllipseMatchesHarmonicPolynomial) {
  Curve c = ellipse(1.5, 0.8, 128);
  auto Fin = [](cplx x) { return x * x * x + cplx(0.2, 0.5) * x; };
  auto Fout = [](cplx x) { return 1.0 / (x * x) + cplx(0.0, 0.3) / x; };
  HarmonicField in = harmonic_extension(c, Side::Interior, re_of(c.nodes(), Fin));
  HarmonicField out = harmonic_extension(c, Side::Exterior, re_of(c.nodes(), Fout));
  for (cplx x : {cplx(0.1, 0.2), cplx(1.2, 0.1), cplx(-0.4, -0.7), cplx(1.48, 0.0)}) {
    EXPECT_NEAR(in.value(x), std::real(Fin(x)), 1e-8);
  }
  for (cplx x : {cplx(1.52, 0.0), cplx(0.3, 0.9), cplx(-3.0, 2.0), cplx(10.0, 0.0)}) {
    EXPECT_NEAR(out.value(x), std::real(Fout(x)), 1e-8);
  }
  EXPECT_NEAR(out.value_at_infinity(), 0.0, 1e-10);
}

TEST(HarmonicExtension, LaplacianResidualAndTrace) {
  Curve c = perturbed_circle(1.0, 3, 0.1, 128);
  Vec f = c.curvature().cwiseProduct(cos_mode(c, 2));
  HarmonicField in = harmonic_extension(c, Side::Interior, f);
  EXPECT_LT((in.trace() - f).cwiseAbs().maxCoeff(), 1e-8);
  const double h = 1e-3;
  for (cplx x : {cplx(0.2, 0.1), cplx(-0.5, 0.3), cplx(0.0, -0.7)}) {
    const double lap = (in.value(x + h) + in.value(x - h) + in.value(x + cplx(0, h)) + in.value(x - cplx(0, h)) -
                        4.0 * in.value(x)) /
                       (h * h);
    EXPECT_LT(std::abs(lap), 1e-5);
  }
}

TEST(HarmonicExtension, EvaluationOnNodeBreaksDown) {
  Curve c = circle(1.0, 64);
  HarmonicField in = harmonic_extension(c, Side::Interior, cos_mode(c, 2));
  try {
    in.value(c.nodes()(5));
    FAIL() << "expected QuadratureBreakdown";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::QuadratureBreakdown);
  }
}

TEST(BernoulliParticular, ZeroAndUniformFields) {
  Curve c = ellipse(1.2, 0.9, 64);
  LayerPotentials lp(c);
  PhaseVelocity zero(c, Side::Interior, CVec::Zero(64));
  BernoulliParticular a = bernoulli_particular(lp, Side::Interior, zero, zero);
  EXPECT_LT(a.normal_derivative.cwiseAbs().maxCoeff(), 1e-14);
  PhaseVelocity uniform(c, Side::Interior, CVec::Constant(64, cplx(0.7, -0.4)));
  BernoulliParticular b = bernoulli_particular(lp, Side::Interior, uniform, uniform);
  EXPECT_LT(b.normal_derivative.cwiseAbs().maxCoeff(), 1e-10);
}

TEST(BernoulliParticular, VortexShellMatchesPoissonOracle) {
  const Eigen::Index M = 64;
  Curve c = circle(1.0, M);
  const double gamma0 = 0.8, Gamma = 2.0 * M_PI * gamma0;
  SheetField field(c, Vec::Constant(M, gamma0));
  LayerPotentials lp(c);
  PhaseVelocity vm = field.phase(Side::Exterior);
  BernoulliParticular bm = bernoulli_particular(lp, Side::Exterior, vm, vm);
  const double closed = Gamma * Gamma / (4.0 * M_PI * M_PI);
  auto source = [&](cplx x) { return Gamma * Gamma / (2.0 * M_PI * M_PI * std::pow(std::abs(x), 4)); };
  Vec grid = oracle::exterior_poisson_dn(source, int(M));
  for (Eigen::Index j = 0; j < M; ++j) {
    EXPECT_NEAR(bm.normal_derivative(j), closed, 1e-8);
    EXPECT_NEAR(bm.normal_derivative(j), grid(j), 1e-5);
  }
}

TEST(BernoulliParticular, RejectsVorticity) {
  Curve c = circle(1.0, 64);
  LayerPotentials lp(c);
  PhaseVelocity v(c, Side::Interior, CVec::Zero(64), {PointVortex{cplx(0.2, 0.1), 1.0}});
  try {
    bernoulli_particular(lp, Side::Interior, v, v);
    FAIL() << "expected NotIrrotational";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotIrrotational);
  }
}

TEST(Commutator, ZeroTransport) {
  Curve c = circle(1.0, 64);
  CommutatorReport r = commutator_order_check(c, CVec::Zero(64), 1.0);
  EXPECT_EQ(r.norm_coarse, 0.0);
}

TEST(Commutator, LinearAndResolutionPlateau) {
  Curve c = circle(1.0, 64);
  CVec v(64);
  for (Eigen::Index j = 0; j < 64; ++j) {
    const double t = c.h() * j;
    v(j) = cplx(std::cos(2 * t), 0.5 * std::sin(3 * t));
  }
  for (CommutatorOperator op : {CommutatorOperator::DtnInterior, CommutatorOperator::SurfaceLaplacian}) {
    CommutatorReport r = commutator_order_check(c, v, 1.0, op);
    EXPECT_NEAR(r.linearity_ratio, 2.0, 2e-10);
    EXPECT_GE(r.plateau_ratio, 0.8);
    EXPECT_LE(r.plateau_ratio, 1.25);
  }
  EXPECT_THROW(commutator_order_check(c, CVec::Zero(32), 1.0), Error);
}
