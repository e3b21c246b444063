#include <gtest/gtest.h>

#include <numbers>

#include "hill/errors.hpp"
#include "hill/oracle.hpp"
#include "hill/spectrum.hpp"

using namespace hill;
using std::numbers::pi;

TEST(Discriminant, FreeOperatorIsTwoCosSqrtLambda) {
  const PotentialSpec zero = PotentialSpec::trig({});
  for (cplx lambda : {cplx(1.0), cplx(50.0), cplx(-20.0), cplx(30.0, 10.0)}) {
    const Discriminant d = discriminant(zero, lambda, 4096);
    const cplx ref = 2.0 * std::cos(std::sqrt(lambda));
    EXPECT_LT(std::abs(d.delta - ref), 1e-10 * std::max(1.0, std::abs(ref))) << lambda;
    EXPECT_GE(d.error_estimate, 0.0);
  }
}

TEST(Discriminant, RichardsonRatioIsFourthOrder) {
  const PotentialSpec mathieu = PotentialSpec::trig({{2, 1.0}, {-2, 1.0}});
  const cplx lambda(200.0, 3.0);
  const cplx d1 = discriminant(mathieu, lambda, 128).delta;
  const cplx d2 = discriminant(mathieu, lambda, 256).delta;
  const cplx d3 = discriminant(mathieu, lambda, 512).delta;
  const double ratio = std::abs(d1 - d2) / std::abs(d2 - d3);
  EXPECT_GE(ratio, 12.0);
  EXPECT_LE(ratio, 20.0);
}

TEST(Discriminant, ErrorEstimateBoundsTheError) {
  const PotentialSpec mathieu = PotentialSpec::trig({{2, 1.0}, {-2, 1.0}});
  const cplx lambda(90.0, -1.0);
  const Discriminant coarse = discriminant(mathieu, lambda, 256);
  const cplx fine = discriminant(mathieu, lambda, 8192).delta;
  EXPECT_LE(std::abs(coarse.delta - fine), 2.0 * coarse.error_estimate);
}

TEST(Discriminant, StepCountPrecondition) {
  const PotentialSpec zero = PotentialSpec::trig({});
  EXPECT_THROW(discriminant(zero, 1.0, 62), Error);
  EXPECT_THROW(discriminant(zero, 1.0, 65), Error);
  EXPECT_NO_THROW(discriminant(zero, 1.0, 64));
}

TEST(OraclePairs, FreeDoubles) {
  const PotentialSpec zero = PotentialSpec::trig({});
  const OraclePair p = find_pair(zero, BoundaryClass::periodic(), 3);
  EXPECT_TRUE(p.double_root);
  EXPECT_EQ(p.winding, 2);
  EXPECT_NEAR(std::abs(p.first - std::pow(6 * pi, 2)), 0.0, 1e-8);
  const OraclePair a = find_pair(zero, BoundaryClass::antiperiodic(), 0);
  EXPECT_NEAR(std::abs(a.first - pi * pi), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(a.second - pi * pi), 0.0, 1e-8);
}

TEST(OraclePairs, MathieuMatchesGalerkin) {
  const PotentialSpec spec = PotentialSpec::trig({{2, 1.0}, {-2, 1.0}});
  SpectrumRequest rq;
  rq.N = 32;
  const NormalSystem ns = compute_normal_system(fourier_coefficients(spec, 64), rq);
  const DiscriminantOracle oracle(spec);
  for (int n : {1, 2, 5}) {
    const OraclePair o = oracle.find_pair(BoundaryClass::periodic(), n);
    const NormalEigenPair* p = ns.find(n);
    ASSERT_NE(p, nullptr);
    EXPECT_EQ(o.winding, 2);
    EXPECT_LT(std::abs(o.first - p->lambda_plus), 1e-7) << n;
    EXPECT_LT(std::abs(o.second - p->lambda_minus), 1e-7) << n;
  }
}

TEST(OraclePairs, MeanIsCarried) {
  const PotentialSpec spec = PotentialSpec::trig({{0, 3.0}, {1, 1.0}});
  const DiscriminantOracle oracle(spec);
  EXPECT_NEAR(std::abs(oracle.mean() - 3.0), 0.0, 1e-14);
  const OraclePair p = oracle.find_pair(BoundaryClass::periodic(), 2);
  EXPECT_NEAR(std::abs(p.first - (std::pow(4 * pi, 2) + 3.0)), 0.0, 1e-6);
}
