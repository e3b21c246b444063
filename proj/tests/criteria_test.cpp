#include <gtest/gtest.h>

#include <numbers>

#include "hill/criteria.hpp"
#include "test_support.hpp"

using namespace hill;
using std::numbers::pi;

namespace {

FourierSeries sawtooth(int degree) {
  FourierSeries q(degree);
  for (int k = 1; k <= degree; ++k) {
    q.set(k, cplx(0, 1 / (2 * pi * k)));
    q.set(-k, cplx(0, -1 / (2 * pi * k)));
  }
  return q;
}

FourierSeries gasymov() {
  FourierSeries q(1);
  q.set(1, 1.0);
  return q;
}

NormalSystem system(const FourierSeries& q, int N, BoundaryClass bc = {}) {
  SpectrumRequest rq;
  rq.N = N;
  rq.bc = bc;
  return compute_normal_system(q, rq);
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

}  // namespace

TEST(AsympEquiv, ConstantRatio) {
  std::vector<cplx> a, b;
  for (int n : range(5, 20)) {
    a.push_back(1.0 / n);
    b.push_back(cplx(0, 3.0) / double(n));
  }
  const EquivWindow e = asymp_equiv(range(5, 20), a, b);
  EXPECT_TRUE(e.applicable);
  EXPECT_TRUE(e.equivalent);
  EXPECT_NEAR(e.c1, 3.0, 1e-12);
  EXPECT_NEAR(e.c2, 3.0, 1e-12);
}

TEST(AsympEquiv, DriftingRatioIsNotEquivalent) {
  std::vector<cplx> a, b;
  for (int n : range(5, 40)) {
    a.push_back(1.0 / n);
    b.push_back(1.0 / (double(n) * n));
  }
  EXPECT_FALSE(asymp_equiv(range(5, 40), a, b).equivalent);
}

TEST(AsympEquiv, ZeroPatterns) {
  std::vector<cplx> a(10, 1.0), z(10, 0.0);
  const EquivWindow one = asymp_equiv(range(1, 10), a, z);
  EXPECT_TRUE(one.one_sided_zero);
  EXPECT_FALSE(one.equivalent);
  const EquivWindow both = asymp_equiv(range(1, 10), z, z);
  EXPECT_FALSE(both.applicable);
}

TEST(Theorem1, ZeroPotentialInconclusive) {
  const auto r = theorem1_check(system(FourierSeries(0), 64), default_window(64));
  EXPECT_EQ(r.verdict, Verdict::inconclusive);
}

TEST(Theorem1, GasymovNoBasis) {
  const auto r = theorem1_check(system(gasymov(), 64), default_window(64));
  EXPECT_EQ(r.verdict, Verdict::no_basis);
  EXPECT_TRUE(r.applicable);
}

TEST(Theorem1, SawtoothBasis) {
  const auto r = theorem1_check(system(sawtooth(64), 128), Window{5, 32});
  EXPECT_EQ(r.verdict, Verdict::basis);
}

TEST(Theorem2, SawtoothBasis) {
  const FourierSeries q = sawtooth(64);
  const auto r = theorem2_check(system(q, 128), q, Window{5, 32}, 2);
  EXPECT_EQ(r.verdict, Verdict::basis);
  ASSERT_TRUE(r.m.has_value());
  EXPECT_EQ(*r.m, 2);
}

TEST(Theorem3, SawtoothBasisAndGasymovInapplicable) {
  const auto r = theorem3_check(derive_Q_S(sawtooth(64)), Window{5, 32}, 0);
  EXPECT_TRUE(r.applicable);
  EXPECT_EQ(r.verdict, Verdict::basis);
  const auto g = theorem3_check(derive_Q_S(gasymov()), Window{5, 16}, 0);
  EXPECT_FALSE(g.applicable);
  EXPECT_EQ(g.verdict, Verdict::inconclusive);
}

TEST(Corollary1, OneSidedCoefficientsAreNoBasis) {
  FourierSeries q(40);
  for (int k = 1; k <= 40; ++k) q.set(k, 1.0 / k);
  const auto r = corollary1_check(q, Window{5, 16}, 0);
  EXPECT_EQ(r.verdict, Verdict::no_basis);
  const auto b = corollary1_check(sawtooth(64), Window{5, 16}, 0);
  EXPECT_EQ(b.verdict, Verdict::basis);
}

TEST(Corollary2, JumpProfileMatchesQuadrature) {
  // x - 1/2: jump 1 at s = 0; x^2 - x + 1/6: jump of q' equal to 2 at s = 1
  for (int k = 1; k <= 12; ++k) {
    const cplx q1 = hill_test::fourier_quadrature([](double x) { return cplx(x - 0.5); }, k);
    const cplx q2 =
        hill_test::fourier_quadrature([](double x) { return cplx(x * x - x + 1.0 / 6.0); }, k);
    EXPECT_LT(std::abs(jump_leading_term({0, 1.0}, k) - q1), 1e-13);
    EXPECT_LT(std::abs(jump_leading_term({1, 2.0}, k) - q2), 1e-13);
  }
  const auto r = corollary2_check(sawtooth(64), {0, 1.0}, Window{5, 32});
  EXPECT_EQ(r.verdict, Verdict::basis);
  EXPECT_TRUE(r.flags.empty());
}

TEST(Corollary2, VanishingJumpIsSilent) {
  const auto r = corollary2_check(sawtooth(64), {0, 0.0}, Window{5, 32});
  EXPECT_EQ(r.verdict, Verdict::inconclusive);
  EXPECT_FALSE(r.applicable);
}

TEST(Theorem4, OddIndicesOfSawtooth) {
  const DerivedFunctions d = derive_Q_S(sawtooth(128));
  EXPECT_EQ(theorem4_check(d, Window{5, 32}, 0, Theorem4Part::b).verdict, Verdict::basis);
  EXPECT_EQ(theorem4_check(d, Window{5, 32}, 0, Theorem4Part::a).verdict, Verdict::basis);
  const auto c = theorem4_check(d, Window{5, 32}, 0, Theorem4Part::c, {}, JumpMeta{0, 1.0});
  EXPECT_EQ(c.verdict, Verdict::basis);
}

TEST(Windows, DefaultTracksTruncation) {
  EXPECT_EQ(default_window(64).lo, 5);
  EXPECT_EQ(default_window(64).hi, 16);
  EXPECT_EQ(default_window(128).hi, 32);
}
