#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hill/diagnostics.hpp"
#include "hill/potential.hpp"
#include "hill/series.hpp"
#include "hill/spectrum.hpp"

namespace hill {

enum class Verdict { basis, no_basis, inconclusive };
const char* to_string(Verdict v) noexcept;

struct Window {
  int lo = 5;
  int hi = 16;
  int size() const noexcept { return hi - lo + 1; }
};
Window default_window(int N);

// numerical a_n ~ b_n: the ratio |b_n|/|a_n| stays inside a bounded band
// with no trend over the window
struct EquivWindow {
  int lo = 0, hi = 0;
  std::vector<int> n;
  std::vector<double> ratios;  // |b_n| / |a_n|
  double c1 = 0.0, c2 = 0.0;
  double trend_slope = 0.0;
  bool applicable = true;
  bool one_sided_zero = false;  // one sequence vanishes where the other does not
  int zero_index = 0;
  bool equivalent = false;
  std::string reason;
};
inline constexpr double equiv_ratio_cap = 50.0;
inline constexpr double equiv_slope_cap = 0.15;
EquivWindow asymp_equiv(const std::vector<int>& n, const std::vector<cplx>& a,
                        const std::vector<cplx>& b, double ratio_cap = equiv_ratio_cap,
                        double slope_cap = equiv_slope_cap);

struct CriterionReport {
  std::string name;
  Verdict verdict = Verdict::inconclusive;  // always inconclusive when not applicable
  bool applicable = false;
  std::vector<std::string> hypotheses;  // which alternative held
  Window window;
  std::optional<int> m, s;
  std::vector<EquivWindow> evidence;
  std::vector<std::string> flags;
  std::string reason;
  std::optional<double> epsilon;
  std::optional<SlopeFit> slope;  // auxiliary fit, when one applies
};

CriterionReport theorem1_check(const NormalSystem& ns, Window w);

struct ConditionO {
  int m = 0;
  SeriesVariant variant = SeriesVariant::plain;
  std::vector<int> n;
  std::vector<double> values;  // ln^{m+1} n / (n^{m+1} |q_{+-2n} + B_m|)
  double slope = 0.0;
  bool holds = false;
  std::string reason;
};
ConditionO condition_o_check(const std::vector<SeriesBundle>& bundles, const FourierSeries& q,
                             SeriesVariant variant);

// bundles at lambda_n for every pair in the window
std::vector<SeriesBundle> window_bundles(const NormalSystem& ns, const FourierSeries& q, Window w,
                                         int m, int cutoff = -1);

CriterionReport theorem2_check(const NormalSystem& ns, const FourierSeries& q, Window w, int m,
                               int cutoff = -1);
CriterionReport theorem3_check(const DerivedFunctions& d, Window w, int s,
                               std::optional<double> epsilon = {});
CriterionReport corollary1_check(const FourierSeries& q, Window w, int s,
                                 std::optional<double> epsilon = {});

// smoothness metadata: q^(s) has a jump of size `jump` at the period boundary
struct JumpMeta {
  int s = 0;
  cplx jump;
};
// leading coefficient behaviour implied by the jump, q_k ~ -jump/(2 pi i k)^{s+1}
cplx jump_leading_term(const JumpMeta& meta, int k);
CriterionReport corollary2_check(const FourierSeries& q, const JumpMeta& meta, Window w);

enum class Theorem4Part { a, b, c };
CriterionReport theorem4_check(const DerivedFunctions& d, Window w, int s, Theorem4Part part,
                               std::optional<double> epsilon = {},
                               std::optional<JumpMeta> meta = {});

}  // namespace hill
