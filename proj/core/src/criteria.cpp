#include "hill/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hill/errors.hpp"

namespace hill {

using std::numbers::pi;

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::basis: return "basis";
    case Verdict::no_basis: return "no-basis";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

Window default_window(int N) { return {5, N / 4}; }

namespace {

std::vector<int> window_indices(Window w) {
  if (w.hi < w.lo) throw Error(ErrorKind::invalid_input, "empty window");
  std::vector<int> n;
  for (int k = w.lo; k <= w.hi; ++k) n.push_back(k);
  return n;
}

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace

EquivWindow asymp_equiv(const std::vector<int>& n, const std::vector<cplx>& a,
                        const std::vector<cplx>& b, double ratio_cap, double slope_cap) {
  if (n.size() != a.size() || n.size() != b.size())
    throw Error(ErrorKind::invalid_input, "asymp_equiv: sequence lengths differ");
  EquivWindow e;
  e.n = n;
  if (!n.empty()) {
    e.lo = n.front();
    e.hi = n.back();
  }
  if (static_cast<int>(n.size()) < min_fit_points) {
    e.applicable = false;
    e.reason = "window holds " + std::to_string(n.size()) + " points, need " +
               std::to_string(min_fit_points);
    return e;
  }
  double scale = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
  const double zero = 1e-14 * scale;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const bool az = !(std::abs(a[i]) > zero), bz = !(std::abs(b[i]) > zero);
    if (az && bz) {
      e.applicable = false;
      e.zero_index = n[i];
      e.reason = "both sequences vanish at n=" + std::to_string(n[i]);
      return e;
    }
    if (az || bz) {
      e.one_sided_zero = true;
      e.zero_index = n[i];
      e.equivalent = false;
      e.reason = std::string(az ? "first" : "second") + " sequence vanishes at n=" +
                 std::to_string(n[i]) + " while the other does not";
      return e;
    }
  }
  for (std::size_t i = 0; i < n.size(); ++i) e.ratios.push_back(std::abs(b[i]) / std::abs(a[i]));
  e.c1 = *std::min_element(e.ratios.begin(), e.ratios.end());
  e.c2 = *std::max_element(e.ratios.begin(), e.ratios.end());
  e.trend_slope = fit_decay(n, e.ratios).slope;
  const bool band = e.c2 / e.c1 <= ratio_cap;
  const bool flat = std::abs(e.trend_slope) <= slope_cap;
  e.equivalent = band && flat;
  std::ostringstream os;
  os << "ratio band [" << e.c1 << ", " << e.c2 << "], trend slope " << e.trend_slope;
  if (!band) os << "; band wider than " << ratio_cap;
  if (!flat) os << "; trend exceeds " << slope_cap;
  e.reason = os.str();
  return e;
}

CriterionReport theorem1_check(const NormalSystem& ns, Window w) {
  CriterionReport r;
  r.name = "theorem1";
  r.window = w;
  r.applicable = true;
  const int upper = w.lo + (w.hi - w.lo + 1) / 2;
  std::vector<int> simple_n, defective_upper;
  std::vector<cplx> up, vp, um, vm;
  for (int n : window_indices(w)) {
    const NormalEigenPair* p = ns.find(n);
    if (!p)
      throw Error(ErrorKind::truncation_risk,
                  "window reaches n=" + std::to_string(n) + " beyond the computed pairs");
    if (p->cls == PairClass::defective_double && n >= upper) defective_upper.push_back(n);
    if (p->cls == PairClass::simple) {
      simple_n.push_back(n);
      up.push_back(p->u_plus);
      vp.push_back(p->v_plus);
      um.push_back(p->u_minus);
      vm.push_back(p->v_minus);
    }
  }
  if (!defective_upper.empty()) {
    r.verdict = Verdict::no_basis;
    r.reason = "Jordan chains persist in the upper half of the window (n=" +
               join_ints(defective_upper) + ")";
    return r;
  }
  if (simple_n.empty()) {
    r.verdict = Verdict::inconclusive;
    r.reason = "no simple pairs in the window";
    return r;
  }
  if (simple_n.size() < 8) {
    r.flags.push_back("underpowered");
    r.verdict = Verdict::inconclusive;
    r.reason = "only " + std::to_string(simple_n.size()) + " simple pairs in the window";
    return r;
  }
  EquivWindow e10 = asymp_equiv(simple_n, up, vp);
  EquivWindow e11 = asymp_equiv(simple_n, um, vm);
  r.evidence = {e10, e11};
  if (e10.equivalent || e11.equivalent) {
    r.verdict = Verdict::basis;
    r.hypotheses.push_back(e10.equivalent ? "u_n ~ v_n" : "u_-n ~ v_-n");
    r.reason = "simple pairs satisfy " + r.hypotheses.back();
  } else {
    r.verdict = Verdict::no_basis;
    r.reason = "u ~ v fails for both members: " + e10.reason;
  }
  return r;
}

std::vector<SeriesBundle> window_bundles(const NormalSystem& ns, const FourierSeries& q, Window w,
                                         int m, int cutoff) {
  std::vector<SeriesBundle> out;
  for (int n : window_indices(w)) {
    const NormalEigenPair* p = ns.find(n);
    if (!p)
      throw Error(ErrorKind::truncation_risk,
                  "window reaches n=" + std::to_string(n) + " beyond the computed pairs");
    if (p->bc.alpha != 0)
      throw Error(ErrorKind::precondition, "series criteria apply to periodic pairs");
    out.push_back(eval_bundle(q, p->lambda_plus, n, m, cutoff));
  }
  return out;
}

ConditionO condition_o_check(const std::vector<SeriesBundle>& bundles, const FourierSeries& q,
                             SeriesVariant variant) {
  ConditionO c;
  c.variant = variant;
  if (bundles.empty()) {
    c.reason = "no bundles";
    return c;
  }
  c.m = bundles.front().m;
  for (const auto& b : bundles) {
    const int n = b.n;
    const cplx t = variant == SeriesVariant::plain ? q[2 * n] + b.B : q[-2 * n] + b.B_primed;
    if (std::abs(t) == 0.0) {
      c.reason = "q_{2n} + B_m vanishes at n=" + std::to_string(n);
      return c;
    }
    const double ln = std::log(double(n));
    c.n.push_back(n);
    c.values.push_back(std::pow(ln, c.m + 1) / (std::pow(double(n), c.m + 1) * std::abs(t)));
  }
  if (static_cast<int>(c.n.size()) < min_fit_points) {
    c.reason = "window too short for a trend";
    return c;
  }
  c.slope = fit_decay(c.n, c.values).slope;
  c.holds = c.slope < 0.0;
  std::ostringstream os;
  os << "trend slope " << c.slope;
  c.reason = os.str();
  return c;
}

namespace {

CriterionReport verdict_from_equivalence(CriterionReport r, const EquivWindow& e) {
  r.evidence.push_back(e);
  if (!e.applicable) {
    r.applicable = false;
    r.verdict = Verdict::inconclusive;
    r.reason = e.reason;
  } else if (e.one_sided_zero) {
    r.verdict = Verdict::no_basis;
    r.reason = e.reason;
  } else {
    r.verdict = e.equivalent ? Verdict::basis : Verdict::no_basis;
    r.reason = e.reason;
  }
  return r;
}

// alternatives |plus_n| >= eps n^{-power} or |minus_n| >= eps n^{-power}
CriterionReport two_sided(const std::string& name, Window w, const std::vector<cplx>& plus,
                          const std::vector<cplx>& minus, int power,
                          std::optional<double> epsilon) {
  CriterionReport r;
  r.name = name;
  r.window = w;
  const std::vector<int> n = window_indices(w);
  double mp = std::numeric_limits<double>::infinity(), mm = mp;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double s = std::pow(double(n[i]), power);
    mp = std::min(mp, std::abs(plus[i]) * s);
    mm = std::min(mm, std::abs(minus[i]) * s);
  }
  const double eps = epsilon ? *epsilon : 0.5 * std::max(mp, mm);
  r.epsilon = eps;
  if (eps > 0.0 && mp >= eps) r.hypotheses.push_back("+ side bounded below");
  if (eps > 0.0 && mm >= eps) r.hypotheses.push_back("- side bounded below");
  r.applicable = !r.hypotheses.empty();
  if (!r.applicable) {
    r.verdict = Verdict::inconclusive;
    std::ostringstream os;
    os << "neither side stays above eps n^-" << power << " (eps=" << eps << ")";
    r.reason = os.str();
    return r;
  }
  return verdict_from_equivalence(r, asymp_equiv(n, plus, minus));
}

CriterionReport jump_check(const std::string& name, const FourierSeries& q, const JumpMeta& meta,
                           Window w, int shift) {
  CriterionReport r;
  r.name = name;
  r.window = w;
  r.s = meta.s;
  if (std::abs(meta.jump) == 0.0) {
    r.verdict = Verdict::inconclusive;
    r.reason = "jump of q^(s) vanishes";
    return r;
  }
  r.applicable = true;
  r.hypotheses.push_back("jump of q^(" + std::to_string(meta.s) + ") is nonzero");
  std::vector<int> n;
  std::vector<double> resid;
  double worst = 0.0;
  bool exact = true;
  for (int k : window_indices(w)) {
    const int idx = 2 * k + shift;
    const cplx lead = jump_leading_term(meta, idx);
    const double d = std::abs(q[idx] - lead);
    worst = std::max(worst, d / std::abs(lead));
    n.push_back(k);
    resid.push_back(d);
    if (d > 1e-14 * std::abs(lead)) exact = false;
  }
  r.verdict = Verdict::basis;
  std::ostringstream os;
  if (exact) {
    os << "coefficients equal the jump profile";
  } else if (static_cast<int>(n.size()) >= min_fit_points &&
             std::all_of(resid.begin(), resid.end(), [](double v) { return v > 0.0; })) {
    r.slope = fit_decay(n, resid);
    const double bound = -(meta.s + 1);
    if (!(r.slope->slope < bound)) r.flags.push_back("profile-mismatch");
    os << "profile residual slope " << r.slope->slope << " vs " << bound
       << ", max relative deviation " << worst;
  } else {
    r.flags.push_back("profile-unchecked");
    os << "profile residual not fittable, max relative deviation " << worst;
  }
  r.reason = os.str();
  return r;
}

}  // namespace

CriterionReport theorem2_check(const NormalSystem& ns, const FourierSeries& q, Window w, int m,
                               int cutoff) {
  const std::vector<SeriesBundle> bundles = window_bundles(ns, q, w, m, cutoff);
  const ConditionO cp = condition_o_check(bundles, q, SeriesVariant::plain);
  const ConditionO cq = condition_o_check(bundles, q, SeriesVariant::primed);
  CriterionReport r;
  r.name = "theorem2";
  r.window = w;
  r.m = m;
  if (cp.holds) r.hypotheses.push_back("condition (o) on q_2n + B_" + std::to_string(m));
  if (cq.holds) r.hypotheses.push_back("condition (o) on q_-2n + B'_" + std::to_string(m));
  r.applicable = cp.holds || cq.holds;
  if (!r.applicable) {
    r.verdict = Verdict::inconclusive;
    r.reason = "condition (o) fails at m=" + std::to_string(m) + ": " + cp.reason;
    return r;
  }
  std::vector<int> n;
  std::vector<cplx> a, b;
  for (const auto& bd : bundles) {
    n.push_back(bd.n);
    a.push_back(q[2 * bd.n] + bd.B);
    b.push_back(q[-2 * bd.n] + bd.B_primed);
  }
  return verdict_from_equivalence(r, asymp_equiv(n, a, b));
}

CriterionReport theorem3_check(const DerivedFunctions& d, Window w, int s,
                               std::optional<double> epsilon) {
  std::vector<cplx> plus, minus;
  for (int n : window_indices(w)) {
    plus.push_back(d.q[2 * n] - d.S[2 * n] + 2.0 * d.Q0 * d.Q[2 * n]);
    minus.push_back(d.q[-2 * n] - d.S[-2 * n] + 2.0 * d.Q0 * d.Q[-2 * n]);
  }
  auto r = two_sided("theorem3", w, plus, minus, s + 2, epsilon);
  r.s = s;
  return r;
}

CriterionReport corollary1_check(const FourierSeries& q, Window w, int s,
                                 std::optional<double> epsilon) {
  std::vector<cplx> plus, minus;
  for (int n : window_indices(w)) {
    plus.push_back(q[2 * n]);
    minus.push_back(q[-2 * n]);
  }
  auto r = two_sided("corollary1", w, plus, minus, s + 1, epsilon);
  r.s = s;
  return r;
}

cplx jump_leading_term(const JumpMeta& meta, int k) {
  return -meta.jump / std::pow(cplx(0.0, 2.0 * pi * k), meta.s + 1);
}

CriterionReport corollary2_check(const FourierSeries& q, const JumpMeta& meta, Window w) {
  return jump_check("corollary2", q, meta, w, 0);
}

CriterionReport theorem4_check(const DerivedFunctions& d, Window w, int s, Theorem4Part part,
                               std::optional<double> epsilon, std::optional<JumpMeta> meta) {
  std::vector<cplx> plus, minus;
  switch (part) {
    case Theorem4Part::a:
      for (int n : window_indices(w)) {
        const int k = 2 * n + 1;
        plus.push_back(d.q[k] - d.S[k] + d.Q0 * d.Q[k]);
        minus.push_back(d.q[-k] - d.S[-k] + d.Q0 * d.Q[-k]);
      }
      {
        auto r = two_sided("theorem4a", w, plus, minus, s + 2, epsilon);
        r.s = s;
        return r;
      }
    case Theorem4Part::b:
      for (int n : window_indices(w)) {
        plus.push_back(d.q[2 * n + 1]);
        minus.push_back(d.q[-2 * n - 1]);
      }
      {
        auto r = two_sided("theorem4b", w, plus, minus, s + 1, epsilon);
        r.s = s;
        return r;
      }
    case Theorem4Part::c:
      if (!meta) throw Error(ErrorKind::precondition, "theorem4c needs jump metadata");
      return jump_check("theorem4c", d.q, *meta, w, 1);
  }
  throw Error(ErrorKind::invalid_input, "unknown part");
}

}  // namespace hill
