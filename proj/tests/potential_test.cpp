#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>

#include "hill/errors.hpp"
#include "hill/potential.hpp"
#include "test_support.hpp"

using namespace hill;
using std::numbers::pi;

TEST(FourierSeries, ZeroPotentialHasZeroCoefficients) {
  const FourierSeries q = fourier_coefficients(PotentialSpec::trig({}), 8);
  for (int k = -8; k <= 8; ++k) EXPECT_EQ(q[k], cplx{});
  EXPECT_EQ(q.support_bound(), -1);
}

TEST(FourierSeries, SingleModePassesThrough) {
  const FourierSeries q = fourier_coefficients(PotentialSpec::trig({{1, 1.0}}), 4);
  EXPECT_EQ(q[1], cplx(1.0));
  for (int k = -4; k <= 4; ++k) {
    if (k != 1) { EXPECT_EQ(q[k], cplx{}); }
  }
  EXPECT_EQ(q[9], cplx{});  // outside storage reads as zero
}

TEST(FourierSeries, SampledSawtoothMatchesQuadrature) {
  const int M = 1024;
  const auto spec = PotentialSpec::sample([](double x) { return cplx(x - 0.5); }, M);
  const FourierSeries q = fourier_coefficients(spec, 16);
  for (int k = 1; k <= 16; ++k) {
    const cplx ref = hill_test::fourier_quadrature([](double x) { return cplx(x - 0.5); }, k);
    EXPECT_NEAR(std::abs(ref - cplx(0.0, 1.0 / (2 * pi * k))), 0.0, 1e-13);
    EXPECT_LT(std::abs(q[k] - ref), 2.0 / M) << "k=" << k;
    EXPECT_LT(std::abs(q[-k] - std::conj(ref)), 2.0 / M);
  }
}

TEST(FourierSeries, SampledGridNeedsOversampling) {
  const auto spec = PotentialSpec::sample([](double x) { return cplx(std::cos(2 * pi * x)); }, 32);
  EXPECT_NO_THROW(fourier_coefficients(spec, 8));
  try {
    fourier_coefficients(spec, 9);
    FAIL() << "expected truncation risk";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::truncation_risk);
  }
}

TEST(FourierSeries, EmptySampledSpecRejected) {
  EXPECT_THROW(PotentialSpec::sampled({}), Error);
}

TEST(FourierSeries, ConvolutionIdentityAndCommutativity) {
  FourierSeries a(3), b(2), delta(0);
  a.set(1, {1, 2});
  a.set(-3, {0.5, -1});
  b.set(2, {0, 1});
  b.set(-1, {3, 0});
  delta.set(0, 1.0);
  const FourierSeries ad = convolve(a, delta), ab = convolve(a, b), ba = convolve(b, a);
  for (int k = -5; k <= 5; ++k) {
    EXPECT_EQ(ad[k], a[k]);
    EXPECT_NEAR(std::abs(ab[k] - ba[k]), 0.0, 1e-15);
  }
  EXPECT_NEAR(std::abs(ab[3] - a[1] * b[2]), 0.0, 1e-15);
}

TEST(FourierSeries, ParsevalForSamples) {
  const int M = 256;
  auto f = [](double x) { return cplx(std::exp(std::sin(2 * pi * x)), x * (1 - x)); };
  const auto spec = PotentialSpec::sample(f, M);
  const FourierSeries q = fourier_coefficients(spec, M / 4);
  double coeff = 0.0, samples = 0.0;
  for (int k = -M / 4; k <= M / 4; ++k) coeff += std::norm(q[k]);
  for (cplx v : spec.samples) samples += std::norm(v);
  EXPECT_LE(coeff, samples / M + 1e-12);
}

TEST(NormalizeMean, Examples) {
  FourierSeries q(1);
  q.set(1, 1.0);
  auto r = normalize_mean(q);
  EXPECT_EQ(r.mean_shift, cplx{});
  EXPECT_EQ(r.q[1], cplx(1.0));

  FourierSeries c(0);
  c.set(0, {2.5, -1});
  r = normalize_mean(c);
  EXPECT_EQ(r.mean_shift, cplx(2.5, -1));
  EXPECT_EQ(r.q.support_bound(), -1);

  q.set(0, 3.0);
  r = normalize_mean(q);
  EXPECT_EQ(r.mean_shift, cplx(3.0));
  EXPECT_EQ(r.q[0], cplx{});
  EXPECT_EQ(r.q[1], cplx(1.0));
}

TEST(DeriveQS, ZeroPotential) {
  const DerivedFunctions d = derive_Q_S(FourierSeries(2));
  EXPECT_EQ(d.Q0, cplx{});
  EXPECT_EQ(d.S.support_bound(), -1);
}

TEST(DeriveQS, SingleExponential) {
  FourierSeries q(1);
  q.set(1, 1.0);
  const DerivedFunctions d = derive_Q_S(q);
  const cplx tpi(0.0, 2 * pi);
  EXPECT_NEAR(std::abs(d.Q[1] - 1.0 / tpi), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(d.Q0 + 1.0 / tpi), 0.0, 1e-16);
  // ((e^{2 pi i x} - 1) / (2 pi i))^2 expanded by hand
  EXPECT_NEAR(std::abs(d.S[2] - (-1.0 / (4 * pi * pi))), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(d.S[1] - (1.0 / (2 * pi * pi))), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(d.S[0] - (-1.0 / (4 * pi * pi))), 0.0, 1e-16);
  EXPECT_EQ(d.S[-1], cplx{});
}

TEST(DeriveQS, QSumsToZeroAndEvenSymmetry) {
  FourierSeries q(3);
  q.set(2, 0.7);
  q.set(-2, 0.7);
  q.set(3, -0.2);
  q.set(-3, -0.2);
  const DerivedFunctions d = derive_Q_S(q);
  cplx sum{};
  for (int k = -3; k <= 3; ++k) sum += d.Q[k];
  EXPECT_NEAR(std::abs(sum), 0.0, 1e-16);
  EXPECT_NEAR(d.Q0.real(), 0.0, 1e-17);
  for (int k = 1; k <= 6; ++k) EXPECT_NEAR(std::abs(d.S[k] - d.S[-k]), 0.0, 1e-16);
}

TEST(DeriveQS, RejectsNonzeroMean) {
  FourierSeries q(1);
  q.set(0, 1.0);
  try {
    derive_Q_S(q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::precondition);
  }
}

TEST(PotentialJson, TrigDocument) {
  const auto spec = parse_potential_spec(
      R"({"kind":"trig","coeffs":[{"n":2,"re":1.0},{"n":-2,"re":1.0,"im":0.5}]})", ".");
  ASSERT_EQ(spec.terms.size(), 2u);
  EXPECT_EQ(spec.terms[1].value, cplx(1.0, 0.5));
}

TEST(PotentialJson, MalformedNamesByteOffset) {
  try {
    parse_potential_spec(R"({"kind":"trig", "coeffs": [}])", ".");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
    EXPECT_NE(std::string(e.what()).find("byte 28"), std::string::npos) << e.what();
  }
}

TEST(PotentialJson, SampledCsvMustBeUniform) {
  const auto dir = std::filesystem::temp_directory_path() / "hill_potential_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "ok.csv");
    for (int j = 0; j < 8; ++j) f << j / 8.0 << "," << j << ",0\n";
    std::ofstream g(dir / "bad.csv");
    for (int j = 0; j < 8; ++j) g << (j == 3 ? 0.4 : j / 8.0) << "," << j << ",0\n";
  }
  const auto ok = parse_potential_spec(R"({"kind":"sampled","samples_file":"ok.csv"})", dir);
  EXPECT_EQ(ok.samples.size(), 8u);
  EXPECT_THROW(parse_potential_spec(R"({"kind":"sampled","samples_file":"bad.csv"})", dir), Error);
  EXPECT_THROW(load_potential_spec(dir / "missing.json"), Error);
}
