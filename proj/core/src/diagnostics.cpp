#include "hill/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hill/errors.hpp"

namespace hill {

using Eigen::MatrixXcd;

SlopeFit fit_decay(const std::vector<int>& n, const std::vector<double>& values) {
  if (n.size() != values.size())
    throw Error(ErrorKind::invalid_input, "fit_decay: index and value lengths differ");
  if (static_cast<int>(n.size()) < min_fit_points)
    throw Error(ErrorKind::precondition, "fit_decay needs at least " +
                                             std::to_string(min_fit_points) + " points, got " +
                                             std::to_string(n.size()));
  std::vector<double> x, y;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i]) || n[i] <= 0)
      throw Error(ErrorKind::invalid_input,
                  "fit_decay: non-positive or non-finite entry at n=" + std::to_string(n[i]));
    x.push_back(std::log(double(n[i])));
    y.push_back(std::log(values[i]));
  }
  const double m = double(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  SlopeFit f;
  f.points = static_cast<int>(x.size());
  f.slope = sxx > 0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

namespace {

// log10 cond of V^H V for the columns of V, robust to widely varying column norms
double log10_gram_cond(const MatrixXcd& V) {
  const Eigen::Index m = V.cols();
  if (m == 0) return 0.0;
  Eigen::VectorXd norms(m);
  for (Eigen::Index j = 0; j < m; ++j) norms(j) = V.col(j).norm();
  const double s = norms.maxCoeff(), t = norms.minCoeff();
  if (!(t > 0.0) || !std::isfinite(s)) return std::numeric_limits<double>::infinity();
  MatrixXcd B = V;
  for (Eigen::Index j = 0; j < m; ++j) B.col(j) /= norms(j);
  const MatrixXcd C = B.adjoint() * B;
  Eigen::LDLT<MatrixXcd> ldlt(C);
  MatrixXcd Ci = ldlt.solve(MatrixXcd::Identity(m, m));
  if (!Ci.allFinite()) return std::numeric_limits<double>::infinity();
  Ci = 0.5 * (Ci + Ci.adjoint());
  MatrixXcd Cs = C, Ct = Ci;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      Cs(i, j) *= (norms(i) / s) * (norms(j) / s);
      Ct(i, j) *= (t / norms(i)) * (t / norms(j));
    }
  const double a = hermitian_eigenvalues(Cs).back();
  const double b = hermitian_eigenvalues(Ct).back();
  if (!(a > 0.0) || !(b > 0.0)) return std::numeric_limits<double>::infinity();
  return 2.0 * std::log10(s / t) + std::log10(a) + std::log10(b);
}

MatrixXcd window_columns(const std::vector<NormalEigenPair>& pairs, int lo, int hi) {
  std::vector<const NormalEigenPair*> sel;
  for (const auto& p : pairs)
    if (p.n >= lo && p.n <= hi) sel.push_back(&p);
  if (sel.empty()) return {};
  MatrixXcd V(sel.front()->phi_plus.size(), 2 * static_cast<Eigen::Index>(sel.size()));
  for (std::size_t i = 0; i < sel.size(); ++i) {
    V.col(2 * static_cast<Eigen::Index>(i)) = sel[i]->phi_plus;
    V.col(2 * static_cast<Eigen::Index>(i) + 1) = sel[i]->phi_minus;
  }
  return V;
}

}  // namespace

GramReport gram_condition(const std::vector<NormalEigenPair>& pairs, int lo, int hi) {
  if (hi < lo) throw Error(ErrorKind::invalid_input, "empty Gram window");
  for (int n = lo; n <= hi; ++n) {
    const bool present = std::any_of(pairs.begin(), pairs.end(), [&](const auto& p) { return p.n == n; });
    if (!present)
      throw Error(ErrorKind::precondition,
                  "Gram window [" + std::to_string(lo) + "," + std::to_string(hi) +
                      "] reaches beyond the computed normal system at n=" + std::to_string(n));
  }
  GramReport g;
  g.lo = lo;
  g.hi = hi;
  for (int h = lo; h <= hi; ++h) g.growth.emplace_back(h, log10_gram_cond(window_columns(pairs, lo, h)));
  g.log10_cond = g.growth.back().second;
  g.cond = g.log10_cond > 308.0 ? std::numeric_limits<double>::infinity()
                                : std::pow(10.0, g.log10_cond);
  g.effectively_dependent = !(g.log10_cond <= std::log10(dependent_cond));
  const int half = lo + (hi - lo) / 2;
  const double lh = g.growth[static_cast<std::size_t>(half - lo)].second;
  g.growth_ratio = std::isfinite(g.log10_cond) && std::isfinite(lh)
                       ? std::pow(10.0, std::min(g.log10_cond - lh, 308.0))
                       : std::numeric_limits<double>::infinity();
  g.bounded = !g.effectively_dependent && g.growth_ratio <= flat_growth_ratio;
  return g;
}

double pair_angle(const NormalEigenPair& p) {
  const double a = p.phi_plus.norm(), b = p.phi_minus.norm();
  if (!(a > 0.0) || !(b > 0.0)) return 0.0;
  return std::acos(std::min(1.0, std::abs(p.phi_plus.dot(p.phi_minus)) / (a * b)));
}

std::vector<MinimalityEntry> uniform_minimality(const std::vector<NormalEigenPair>& pairs) {
  std::vector<MinimalityEntry> out;
  for (const auto& p : pairs) {
    MinimalityEntry e;
    e.n = p.n;
    double amin = std::abs(p.alpha_plus);
    if (p.cls == PairClass::simple) amin = std::min(amin, std::abs(p.alpha_minus));
    e.degenerate = amin < degenerate_alpha;
    e.inv_alpha = e.degenerate ? std::numeric_limits<double>::infinity() : 1.0 / amin;
    out.push_back(e);
  }
  return out;
}

bool uniformly_minimal(const std::vector<MinimalityEntry>& entries, double cap) {
  return std::all_of(entries.begin(), entries.end(),
                     [&](const MinimalityEntry& e) { return !e.degenerate && e.inv_alpha <= cap; });
}

}  // namespace hill
