#include "hill/report.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace hill {

using ojson = nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

struct Cell {
  std::string name;
  std::string value;
  bool numeric = true;
};
using Row = std::vector<Cell>;

Cell num(std::string name, double v) { return {std::move(name), fmt_double(v), true}; }
Cell integer(std::string name, long long v) { return {std::move(name), std::to_string(v), true}; }
Cell text(std::string name, std::string v) { return {std::move(name), std::move(v), false}; }

// Gnuplot layout: numeric columns first, header commented out.
class CsvTable {
 public:
  CsvTable(std::ostream& os, const std::string& hash, bool gnuplot)
      : os_(os), gnuplot_(gnuplot) {
    os_ << "# config_hash=" << hash << '\n';
  }

  void add(Row r) {
    if (gnuplot_)
      std::stable_partition(r.begin(), r.end(), [](const Cell& c) { return c.numeric; });
    if (!header_done_) {
      if (gnuplot_) os_ << "# ";
      for (std::size_t i = 0; i < r.size(); ++i) os_ << (i ? "," : "") << r[i].name;
      os_ << '\n';
      header_done_ = true;
    }
    for (std::size_t i = 0; i < r.size(); ++i) os_ << (i ? "," : "") << r[i].value;
    os_ << '\n';
  }

  // header for tables that may have no rows
  void header(Row r) {
    if (header_done_) return;
    if (gnuplot_)
      std::stable_partition(r.begin(), r.end(), [](const Cell& c) { return c.numeric; });
    if (gnuplot_) os_ << "# ";
    for (std::size_t i = 0; i < r.size(); ++i) os_ << (i ? "," : "") << r[i].name;
    os_ << '\n';
    header_done_ = true;
  }

 private:
  std::ostream& os_;
  bool gnuplot_;
  bool header_done_ = false;
};

ojson jnum(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

Row spectrum_row(int n, const std::string& kind, const std::string& cls, int member, cplx lambda,
                 double gap, double angle, cplx u, cplx v, double rem, double inv_alpha) {
  return {integer("n", n),
          text("kind", kind),
          text("class", cls),
          integer("member", member),
          num("lambda_re", lambda.real()),
          num("lambda_im", lambda.imag()),
          num("gap", gap),
          num("angle", angle),
          num("u_re", u.real()),
          num("u_im", u.imag()),
          num("v_re", v.real()),
          num("v_im", v.imag()),
          num("remainder_l2", rem),
          num("inv_alpha", inv_alpha)};
}

double inv_abs(cplx a) { return std::abs(a) > 0.0 ? 1.0 / std::abs(a) : INFINITY; }

}  // namespace

void write_spectrum_csv(std::ostream& os, const std::string& hash, const NormalSystem& ns,
                        bool gnuplot) {
  CsvTable t(os, hash, gnuplot);
  const double nan = NAN;
  t.header(spectrum_row(0, "", "", 0, {}, 0, 0, {}, {}, 0, 0));
  const cplx shift = ns.mean_shift;
  for (cplx h : ns.paired.head)
    t.add(spectrum_row(-1, "head", "", 0, h + shift, nan, nan, {nan, nan}, {nan, nan}, nan, nan));
  for (const auto& p : ns.pairs) {
    const std::string cls = to_string(p.cls);
    t.add(spectrum_row(p.n, "pair", cls, 0, p.lambda_plus + shift, p.gap, p.angle, p.u_plus,
                       p.v_plus, p.remainder_l2_plus, inv_abs(p.alpha_plus)));
    t.add(spectrum_row(p.n, "pair", cls, 1, p.lambda_minus + shift, p.gap, p.angle, p.u_minus,
                       p.v_minus, p.remainder_l2_minus, inv_abs(p.alpha_minus)));
  }
  for (cplx u : ns.paired.untrusted)
    t.add(spectrum_row(-1, "untrusted", "", 0, u + shift, nan, nan, {nan, nan}, {nan, nan}, nan,
                       nan));
}

void write_oracle_csv(std::ostream& os, const std::string& hash,
                      const std::vector<OraclePair>& pairs, bool gnuplot) {
  CsvTable t(os, hash, gnuplot);
  auto row = [](const OraclePair& p, int member, cplx l) {
    return Row{integer("n", p.n),
               integer("alpha", p.bc.alpha),
               integer("member", member),
               num("lambda_re", l.real()),
               num("lambda_im", l.imag()),
               integer("double_root", p.double_root ? 1 : 0),
               integer("steps", p.steps),
               integer("winding", p.winding),
               num("noise", p.noise)};
  };
  t.header(row(OraclePair{}, 0, {}));
  for (const auto& p : pairs) {
    t.add(row(p, 0, p.first));
    t.add(row(p, 1, p.second));
  }
}

void write_discriminant_csv(std::ostream& os, const std::string& hash,
                            const std::vector<Discriminant>& scan, bool gnuplot) {
  CsvTable t(os, hash, gnuplot);
  for (const auto& d : scan)
    t.add(Row{num("lambda_re", d.lambda.real()), num("lambda_im", d.lambda.imag()),
              num("delta_re", d.delta.real()), num("delta_im", d.delta.imag())});
}

std::vector<AgreementRow> agreement_rows(const NormalSystem& ns,
                                         const std::vector<OraclePair>& oracle) {
  std::vector<AgreementRow> rows;
  for (const auto& o : oracle) {
    const NormalEigenPair* p = ns.find(o.n);
    if (!p) continue;
    cplx g[2] = {p->lambda_plus + ns.mean_shift, p->lambda_minus + ns.mean_shift};
    auto less = [](cplx a, cplx b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    };
    if (less(g[1], g[0])) std::swap(g[0], g[1]);
    rows.push_back({o.n, 0, g[0], o.first});
    rows.push_back({o.n, 1, g[1], o.second});
  }
  return rows;
}

void write_agreement_csv(std::ostream& os, const std::string& hash,
                         const std::vector<AgreementRow>& rows, bool gnuplot) {
  CsvTable t(os, hash, gnuplot);
  auto row = [](const AgreementRow& r) {
    return Row{integer("n", r.n),
               integer("member", r.member),
               num("galerkin_re", r.galerkin.real()),
               num("galerkin_im", r.galerkin.imag()),
               num("oracle_re", r.oracle.real()),
               num("oracle_im", r.oracle.imag()),
               num("abs_diff", std::abs(r.galerkin - r.oracle))};
  };
  t.header(row(AgreementRow{}));
  for (const auto& r : rows) t.add(row(r));
}

void write_series_csv(std::ostream& os, const std::string& hash,
                      const std::vector<SeriesRow>& rows, bool gnuplot) {
  CsvTable t(os, hash, gnuplot);
  auto row = [](const SeriesRow& r) {
    const SeriesBundle& b = r.bundle;
    return Row{integer("n", b.n),
               integer("m", b.m),
               num("lambda_re", b.lambda.real()),
               num("lambda_im", b.lambda.imag()),
               num("A_re", b.A.real()),
               num("A_im", b.A.imag()),
               num("B_re", b.B.real()),
               num("B_im", b.B.imag()),
               num("A_primed_re", b.A_primed.real()),
               num("A_primed_im", b.A_primed.imag()),
               num("B_primed_re", b.B_primed.real()),
               num("B_primed_im", b.B_primed.imag()),
               num("tail_bound", b.tail_bound),
               num("residual_abs", r.has_residual ? std::abs(r.residual) : NAN)};
  };
  t.header(row(SeriesRow{}));
  for (const auto& r : rows) t.add(row(r));
}

namespace {

ojson equiv_json(const EquivWindow& e) {
  ojson j;
  j["lo"] = e.lo;
  j["hi"] = e.hi;
  j["applicable"] = e.applicable;
  j["equivalent"] = e.equivalent;
  j["c1"] = jnum(e.c1);
  j["c2"] = jnum(e.c2);
  j["trend_slope"] = jnum(e.trend_slope);
  if (e.one_sided_zero) j["one_sided_zero_at"] = e.zero_index;
  j["reason"] = e.reason;
  ojson ratios = ojson::array();
  for (std::size_t i = 0; i < e.n.size(); ++i)
    ratios.push_back(ojson{{"n", e.n[i]}, {"ratio", jnum(i < e.ratios.size() ? e.ratios[i] : NAN)}});
  j["ratios"] = std::move(ratios);
  return j;
}

ojson report_json(const CriterionReport& r) {
  ojson j;
  j["name"] = r.name;
  j["verdict"] = to_string(r.verdict);
  j["applicable"] = r.applicable;
  j["window"] = ojson::array({r.window.lo, r.window.hi});
  j["m"] = r.m ? ojson(*r.m) : ojson(nullptr);
  j["s"] = r.s ? ojson(*r.s) : ojson(nullptr);
  j["epsilon"] = r.epsilon ? jnum(*r.epsilon) : ojson(nullptr);
  j["hypotheses"] = r.hypotheses;
  j["flags"] = r.flags;
  j["reason"] = r.reason;
  if (r.slope) {
    j["slope"] = ojson{{"slope", jnum(r.slope->slope)},
                       {"intercept", jnum(r.slope->intercept)},
                       {"r_squared", jnum(r.slope->r_squared)},
                       {"points", r.slope->points}};
  } else {
    j["slope"] = nullptr;
  }
  ojson ev = ojson::array();
  for (const auto& e : r.evidence) ev.push_back(equiv_json(e));
  j["evidence"] = std::move(ev);
  return j;
}

}  // namespace

void write_criteria_json(std::ostream& os, const std::string& hash,
                         const std::vector<CriterionReport>& reports) {
  ojson j;
  j["config_hash"] = hash;
  ojson arr = ojson::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  j["reports"] = std::move(arr);
  os << j.dump(2) << '\n';
}

void write_diagnostics_csv(std::ostream& os, const std::string& hash,
                           const std::vector<NormalEigenPair>& pairs, Window w, bool gnuplot) {
  CsvTable t(os, hash, gnuplot);
  const auto minimality = uniform_minimality(pairs);
  auto row = [](int n, const std::string& cls, double angle, const MinimalityEntry& m) {
    return Row{integer("n", n), text("class", cls), num("angle", angle),
               num("inv_alpha", m.inv_alpha), integer("degenerate", m.degenerate ? 1 : 0)};
  };
  t.header(row(0, "", 0, MinimalityEntry{}));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    if (p.n < w.lo || p.n > w.hi) continue;
    const MinimalityEntry m = i < minimality.size() ? minimality[i] : MinimalityEntry{};
    t.add(row(p.n, to_string(p.cls), pair_angle(p), m));
  }
}

void write_gram_json(std::ostream& os, const std::string& hash, const GramReport& g) {
  ojson j;
  j["config_hash"] = hash;
  j["window"] = ojson::array({g.lo, g.hi});
  j["cond"] = jnum(g.cond);
  j["log10_cond"] = jnum(g.log10_cond);
  j["effectively_dependent"] = g.effectively_dependent;
  j["growth_ratio"] = jnum(g.growth_ratio);
  j["bounded"] = g.bounded;
  ojson growth = ojson::array();
  for (const auto& [hi, lc] : g.growth) growth.push_back(ojson{{"hi", hi}, {"log10_cond", jnum(lc)}});
  j["growth"] = std::move(growth);
  j["note"] = "finite-section evidence, not a proof of basis property";
  os << j.dump(2) << '\n';
}

}  // namespace hill
