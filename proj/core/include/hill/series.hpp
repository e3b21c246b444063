#pragma once

#include <array>
#include <vector>

#include "hill/potential.hpp"
#include "hill/spectrum.hpp"

namespace hill {

enum class SeriesTerm { a, b };
enum class SeriesVariant { plain, primed };

struct SeriesValue {
  cplx value;
  int order = 0;
  int cutoff = 0;
  double tail_bound = 0.0;  // bound on the terms with some |n_j| > cutoff
  double magnitude = 0.0;   // sum of |term|
  long long terms = 0;
};

inline constexpr int max_series_order = 4;

// k-fold sums over n_1..n_k with n_j != 0, partial sums avoiding 0 and 2n
// (plain) or 0 and -2n (primed), |n_j| <= cutoff. cutoff < 0 selects the
// support bound of q, which makes the sum exact for trig polynomials.
SeriesValue eval_series_term(const FourierSeries& q, cplx lambda, int n, int k,
                             SeriesTerm term, SeriesVariant variant, int cutoff = -1);

struct SeriesBundle {
  int n = 0;
  int m = 0;
  cplx lambda;
  cplx A, B, A_primed, B_primed;  // partial sums k = 1..m
  std::vector<SeriesValue> a, b, a_primed, b_primed;  // index k-1
  double tail_bound = 0.0;
};

SeriesBundle eval_bundle(const FourierSeries& q, cplx lambda, int n, int m, int cutoff = -1);

// b_1 at lambda = (2 pi n)^2 in terms of Q and S
cplx b1_closed_form(const DerivedFunctions& d, int n, SeriesVariant variant);

// (q_{2n} + B_m) v^2 - (q_{-2n} + B'_m) u^2 for the eigenfunction phi_n
cplx residual_eq15(const NormalEigenPair& pair, const SeriesBundle& bundle,
                   const FourierSeries& q);

}  // namespace hill
