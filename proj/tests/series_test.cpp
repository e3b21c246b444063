#include <gtest/gtest.h>

#include <numbers>

#include "hill/errors.hpp"
#include "hill/series.hpp"

using namespace hill;
using std::numbers::pi;

namespace {

FourierSeries sample_trig() {
  FourierSeries q(3);
  q.set(1, {1.0, 0.2});
  q.set(-1, {0.4, 0.0});
  q.set(2, {0.0, -0.7});
  q.set(-3, {0.25, 0.25});
  return q;
}

cplx den(cplx lambda, int n, int sigma) {
  const double w = 2 * pi * (n - sigma);
  return lambda - w * w;
}

// explicit double loop, independent of the series walker
cplx brute_b2(const FourierSeries& q, cplx lambda, int n) {
  const int d = q.bound();
  cplx s{};
  for (int n1 = -d; n1 <= d; ++n1) {
    if (n1 == 0 || n1 == 2 * n) continue;
    for (int n2 = -d; n2 <= d; ++n2) {
      const int s2 = n1 + n2;
      if (n2 == 0 || s2 == 0 || s2 == 2 * n) continue;
      s += q[n1] * q[n2] * q[2 * n - s2] / (den(lambda, n, n1) * den(lambda, n, s2));
    }
  }
  return s;
}

}  // namespace

TEST(Series, ZeroPotential) {
  const SeriesBundle b = eval_bundle(FourierSeries(0), 100.0, 3, 3);
  EXPECT_EQ(b.A, cplx{});
  EXPECT_EQ(b.B, cplx{});
  EXPECT_EQ(b.A_primed, cplx{});
  EXPECT_EQ(b.B_primed, cplx{});
}

TEST(Series, FirstOrderMatchesDirectSum) {
  const FourierSeries q = sample_trig();
  const int n = 4;
  const cplx lambda = std::pow(2 * pi * n, 2) + cplx(0.3, -0.1);
  cplx a1{}, b1{};
  for (int j = -3; j <= 3; ++j) {
    if (j == 0 || j == 2 * n) continue;
    a1 += q[j] * q[-j] / den(lambda, n, j);
    b1 += q[j] * q[2 * n - j] / den(lambda, n, j);
  }
  const auto va = eval_series_term(q, lambda, n, 1, SeriesTerm::a, SeriesVariant::plain);
  const auto vb = eval_series_term(q, lambda, n, 1, SeriesTerm::b, SeriesVariant::plain);
  EXPECT_NEAR(std::abs(va.value - a1), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(vb.value - b1), 0.0, 1e-15);
}

TEST(Series, SecondOrderMatchesBruteForce) {
  FourierSeries q(8);
  for (int k = 1; k <= 8; ++k) {
    q.set(k, cplx(0.0, 1.0 / (2 * pi * k)));
    q.set(-k, cplx(0.0, -1.0 / (2 * pi * k)));
  }
  for (int n : {2, 3, 5}) {
    const cplx lambda = std::pow(2 * pi * n, 2) + cplx(0.05, 0.01);
    const auto v = eval_series_term(q, lambda, n, 2, SeriesTerm::b, SeriesVariant::plain);
    const cplx ref = brute_b2(q, lambda, n);
    EXPECT_LT(std::abs(v.value - ref), 1e-14 * std::max(1.0, v.magnitude)) << n;
  }
}

TEST(Series, PlainAndPrimedASumsAgree) {
  const FourierSeries q = sample_trig();
  for (int n = 1; n <= 6; ++n) {
    const cplx lambda = std::pow(2 * pi * n, 2) + cplx(0.11, 0.07);
    const SeriesBundle b = eval_bundle(q, lambda, n, 4);
    for (int k = 0; k < 4; ++k) {
      const double scale = std::max(1e-300, b.a[k].magnitude);
      EXPECT_LT(std::abs(b.a[k].value - b.a_primed[k].value) / scale, 1e-13) << n << " " << k;
    }
  }
}

TEST(Series, CutoffBeyondDegreeChangesNothing) {
  const FourierSeries q = sample_trig();
  const cplx lambda = std::pow(2 * pi * 3, 2) + 0.5;
  for (int k = 1; k <= 3; ++k) {
    const auto a = eval_series_term(q, lambda, 3, k, SeriesTerm::b, SeriesVariant::plain, 3);
    const auto b = eval_series_term(q, lambda, 3, k, SeriesTerm::b, SeriesVariant::plain, 9);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.tail_bound, 0.0);
  }
}

TEST(Series, TailBoundShrinksWithCutoff) {
  FourierSeries q(12);
  for (int k = 1; k <= 12; ++k) q.set(k, 1.0 / (k * k));
  const cplx lambda = std::pow(2 * pi * 20, 2);
  double prev = INFINITY;
  for (int c = 2; c <= 12; c += 2) {
    const auto v = eval_series_term(q, lambda, 20, 2, SeriesTerm::a, SeriesVariant::plain, c);
    EXPECT_LE(v.tail_bound, prev);
    prev = v.tail_bound;
  }
  EXPECT_EQ(prev, 0.0);
}

TEST(Series, ResonanceIsReported) {
  FourierSeries q(1);
  q.set(1, 1.0);
  q.set(-1, 1.0);
  const cplx lambda = std::pow(2 * pi * 2, 2);  // n - sigma = 2 with n = 3, sigma = 1
  try {
    eval_series_term(q, lambda, 3, 1, SeriesTerm::a, SeriesVariant::plain);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::resonance);
  }
}

TEST(Series, OrderLimit) {
  EXPECT_THROW(eval_bundle(sample_trig(), 10.0, 1, max_series_order + 1), Error);
  EXPECT_NO_THROW(eval_bundle(sample_trig(), 10.0, 1, 0));
}

TEST(Series, ClosedFormForSingleExponential) {
  FourierSeries q(1);
  q.set(1, 1.0);
  const DerivedFunctions d = derive_Q_S(q);
  // S_{2n} = 0 and Q_{2n} = 0 for n >= 2
  EXPECT_EQ(b1_closed_form(d, 2, SeriesVariant::plain), cplx{});
  // n = 1: -S_2 + 2 Q0 Q_2 with Q_2 = 0
  EXPECT_NEAR(std::abs(b1_closed_form(d, 1, SeriesVariant::plain) - 1.0 / (4 * pi * pi)), 0.0,
              1e-16);
}

TEST(Series, ResidualVanishesForZeroPotential) {
  NormalEigenPair p;
  p.n = 3;
  p.u_plus = 1.0;
  const SeriesBundle b = eval_bundle(FourierSeries(0), std::pow(6 * pi, 2), 3, 2);
  EXPECT_EQ(residual_eq15(p, b, FourierSeries(0)), cplx{});
}
