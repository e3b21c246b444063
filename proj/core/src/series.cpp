#include "hill/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hill/errors.hpp"

namespace hill {

using std::numbers::pi;

namespace {

// Neumaier summation on each component
struct CompensatedSum {
  double re = 0, re_c = 0, im = 0, im_c = 0;
  static void add(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  void operator+=(cplx z) {
    add(re, re_c, z.real());
    add(im, im_c, z.imag());
  }
  cplx value() const { return {re + re_c, im + im_c}; }
};

struct Walker {
  const FourierSeries& q;
  std::vector<std::pair<int, cplx>> support;
  cplx lambda;
  int n;
  int k;
  SeriesTerm term;
  SeriesVariant variant;
  double resonance_floor;
  CompensatedSum sum;
  double magnitude = 0.0;
  long long count = 0;

  bool forbidden(int sigma) const {
    return sigma == 0 || sigma == (variant == SeriesVariant::plain ? 2 * n : -2 * n);
  }
  cplx denominator(int sigma) const {
    const double w = 2.0 * pi * (variant == SeriesVariant::plain ? n - sigma : n + sigma);
    return lambda - w * w;
  }
  int final_index(int sigma) const {
    if (term == SeriesTerm::a) return -sigma;
    return variant == SeriesVariant::plain ? 2 * n - sigma : -2 * n - sigma;
  }

  void walk(int level, int sigma, cplx prod) {
    for (const auto& [j, qj] : support) {
      const int s = sigma + j;
      if (forbidden(s)) continue;
      const cplx den = denominator(s);
      if (std::abs(den) < resonance_floor)
        throw Error(ErrorKind::resonance,
                    "series denominator vanishes at partial sum " + std::to_string(s) +
                        " for n=" + std::to_string(n));
      const cplx p = prod * qj / den;
      if (level == k) {
        const cplx last = q[final_index(s)];
        if (last == cplx{}) continue;
        const cplx t = p * last;
        sum += t;
        magnitude += std::abs(t);
        ++count;
      } else {
        walk(level + 1, s, p);
      }
    }
  }
};

double max_inverse_denominator(cplx lambda, int n) {
  double best = std::numeric_limits<double>::infinity();
  const int m0 = static_cast<int>(std::lround(std::sqrt(std::abs(lambda.real())) / (2.0 * pi)));
  auto scan = [&](int c) {
    for (int m = c - 3; m <= c + 3; ++m) {
      if (m == n || m == -n) continue;
      const double w = 2.0 * pi * m;
      best = std::min(best, std::abs(lambda - w * w));
    }
  };
  scan(n);
  scan(-n);
  scan(m0);
  scan(-m0);
  return best > 0.0 ? 1.0 / best : std::numeric_limits<double>::infinity();
}

}  // namespace

SeriesValue eval_series_term(const FourierSeries& q, cplx lambda, int n, int k,
                             SeriesTerm term, SeriesVariant variant, int cutoff) {
  if (k < 1) throw Error(ErrorKind::invalid_input, "series order must be >= 1");
  if (k > max_series_order)
    throw Error(ErrorKind::precondition,
                "series order " + std::to_string(k) + " exceeds the supported maximum of " +
                    std::to_string(max_series_order));
  if (n < 1) throw Error(ErrorKind::invalid_input, "series index n must be >= 1");
  const int sb = q.support_bound();
  const int cut = cutoff < 0 ? std::max(sb, 0) : cutoff;

  Walker w{q, {}, lambda, n, k, term, variant, 1e-12 * std::pow(2.0 * pi * n, 2), {}};
  for (int j = -cut; j <= cut; ++j)
    if (j != 0 && q[j] != cplx{}) w.support.emplace_back(j, q[j]);
  w.walk(1, 0, cplx{1.0});

  SeriesValue v;
  v.value = w.sum.value();
  v.order = k;
  v.cutoff = cut;
  v.magnitude = w.magnitude;
  v.terms = w.count;
  if (cut < sb) {
    double tail = 0.0;
    for (int j = cut + 1; j <= sb; ++j) tail += std::abs(q[j]) + std::abs(q[-j]);
    const double g = q.l1_norm() * max_inverse_denominator(lambda, n);
    v.tail_bound = k * tail * q.l1_norm() * std::pow(g, k - 1) * max_inverse_denominator(lambda, n);
  }
  return v;
}

SeriesBundle eval_bundle(const FourierSeries& q, cplx lambda, int n, int m, int cutoff) {
  if (m < 0) throw Error(ErrorKind::invalid_input, "series order must be >= 0");
  if (m > max_series_order)
    throw Error(ErrorKind::precondition,
                "series order " + std::to_string(m) + " exceeds the supported maximum of " +
                    std::to_string(max_series_order));
  SeriesBundle b;
  b.n = n;
  b.m = m;
  b.lambda = lambda;
  for (int k = 1; k <= m; ++k) {
    b.a.push_back(eval_series_term(q, lambda, n, k, SeriesTerm::a, SeriesVariant::plain, cutoff));
    b.b.push_back(eval_series_term(q, lambda, n, k, SeriesTerm::b, SeriesVariant::plain, cutoff));
    b.a_primed.push_back(
        eval_series_term(q, lambda, n, k, SeriesTerm::a, SeriesVariant::primed, cutoff));
    b.b_primed.push_back(
        eval_series_term(q, lambda, n, k, SeriesTerm::b, SeriesVariant::primed, cutoff));
    b.A += b.a.back().value;
    b.B += b.b.back().value;
    b.A_primed += b.a_primed.back().value;
    b.B_primed += b.b_primed.back().value;
    b.tail_bound += b.a.back().tail_bound + b.b.back().tail_bound +
                    b.a_primed.back().tail_bound + b.b_primed.back().tail_bound;
  }
  return b;
}

cplx b1_closed_form(const DerivedFunctions& d, int n, SeriesVariant variant) {
  const int k = variant == SeriesVariant::plain ? 2 * n : -2 * n;
  return -d.S[k] + 2.0 * d.Q0 * d.Q[k];
}

cplx residual_eq15(const NormalEigenPair& pair, const SeriesBundle& bundle,
                   const FourierSeries& q) {
  if (pair.bc.alpha != 0)
    throw Error(ErrorKind::precondition, "series relations are stated for periodic pairs");
  if (pair.n != bundle.n)
    throw Error(ErrorKind::invalid_input, "pair and series bundle refer to different n");
  const int n = pair.n;
  const cplx u = pair.u_plus, v = pair.v_plus;
  return (q[2 * n] + bundle.B) * v * v - (q[-2 * n] + bundle.B_primed) * u * u;
}

}  // namespace hill
