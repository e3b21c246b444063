#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

namespace hill_test {

using cplx = std::complex<double>;

// Gauss-Legendre nodes and weights on [-1, 1] by Newton on P_n
inline std::vector<std::pair<double, double>> gauss_legendre(int n) {
  std::vector<std::pair<double, double>> out(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    out[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
  }
  return out;
}

// composite Gauss-Legendre for int_0^1 f(x) e^{-2 pi i k x} dx
inline cplx fourier_quadrature(const std::function<cplx(double)>& f, int k, int panels = 64,
                               int order = 16) {
  static const auto rule = gauss_legendre(order);
  cplx s{};
  const double h = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = p * h;
    for (const auto& [x, w] : rule) {
      const double t = a + 0.5 * h * (x + 1.0);
      s += 0.5 * h * w * f(t) * std::exp(cplx(0.0, -2.0 * std::numbers::pi * k * t));
    }
  }
  return s;
}

}  // namespace hill_test
