#pragma once

#include <vector>

#include "hill/spectrum.hpp"

namespace hill {

// least squares of log|value| against log n
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points = 0;
};
inline constexpr int min_fit_points = 6;
SlopeFit fit_decay(const std::vector<int>& n, const std::vector<double>& values);

struct GramReport {
  int lo = 0, hi = 0;
  double cond = 0.0;        // may be +inf when it exceeds double range
  double log10_cond = 0.0;
  bool effectively_dependent = false;  // cond > 1e14
  std::vector<std::pair<int, double>> growth;  // (upper end, log10 cond) over nested windows
  double growth_ratio = 0.0;  // cond(window) / cond(half window)
  bool bounded = false;
};
inline constexpr double dependent_cond = 1e14;
inline constexpr double flat_growth_ratio = 1.5;

// Gram matrix of {phi_n, phi_-n} (psi_n for Jordan pairs) with lo <= n <= hi
GramReport gram_condition(const std::vector<NormalEigenPair>& pairs, int lo, int hi);

double pair_angle(const NormalEigenPair& p);

struct MinimalityEntry {
  int n = 0;
  double inv_alpha = 0.0;  // 1/|alpha_n|, worst of the two members for simple pairs
  bool degenerate = false; // |alpha_n| < 1e-12
};
inline constexpr double degenerate_alpha = 1e-12;
std::vector<MinimalityEntry> uniform_minimality(const std::vector<NormalEigenPair>& pairs);
bool uniformly_minimal(const std::vector<MinimalityEntry>& entries, double cap = 1e3);

}  // namespace hill
