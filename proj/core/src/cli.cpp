#include "hill/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "hill/acceptance.hpp"
#include "hill/errors.hpp"
#include "hill/oracle.hpp"
#include "hill/report.hpp"
#include "json.hpp"

namespace hill {

namespace fs = std::filesystem;

PotentialDocument load_potential_document(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::invalid_input, "cannot open potential file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  PotentialDocument doc;
  doc.spec = parse_potential_spec(text, path.parent_path());
  const auto j = nlohmann::json::parse(text);  // already validated
  if (j.contains("smoothness")) {
    try {
      const auto& sm = j.at("smoothness");
      if (sm.contains("s")) doc.s = sm.at("s").get<int>();
      if (sm.contains("jump")) {
        const auto& jp = sm.at("jump");
        doc.jump = JumpMeta{doc.s.value_or(0), cplx(jp.value("re", 0.0), jp.value("im", 0.0))};
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::invalid_input, std::string("smoothness metadata: ") + e.what());
    }
  }
  return doc;
}

Window parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw Error(ErrorKind::invalid_input, "window must look like LO:HI, got \"" + text + "\"");
  try {
    std::size_t a = 0, b = 0;
    const std::string lo = text.substr(0, colon), hi = text.substr(colon + 1);
    Window w{std::stoi(lo, &a), std::stoi(hi, &b)};
    if (a != lo.size() || b != hi.size()) throw std::invalid_argument("trailing characters");
    return w;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::invalid_input, "window must look like LO:HI, got \"" + text + "\"");
  }
}

namespace {

std::string canonical_spec(const PotentialSpec& spec) {
  std::string s;
  if (spec.kind == PotentialSpec::Kind::trig_polynomial) {
    s = "trig";
    for (const auto& t : spec.terms)
      s += ";" + std::to_string(t.n) + ":" + fmt_double(t.value.real()) + ":" +
           fmt_double(t.value.imag());
  } else {
    s = "sampled;" + std::to_string(spec.samples.size());
    for (cplx v : spec.samples) s += ";" + fmt_double(v.real()) + ":" + fmt_double(v.imag());
  }
  return s;
}

bool config_error(ErrorKind k) {
  return k == ErrorKind::invalid_input || k == ErrorKind::truncation_risk ||
         k == ErrorKind::precondition;
}

// window issues against the truncation-trust limit N/4
std::vector<std::string> window_issues(const RunConfig& cfg, Window w) {
  std::vector<std::string> out;
  if (cfg.alpha != 0 && cfg.alpha != 1) out.push_back("alpha must be 0 or 1");
  if (cfg.N < 4) out.push_back("truncation N must be at least 4");
  if (cfg.m < 0 || cfg.m > max_series_order)
    out.push_back("series order must lie in [0, " + std::to_string(max_series_order) + "]");
  const int first = first_pair_index(BoundaryClass{cfg.alpha == 1 ? 1 : 0});
  if (w.lo < first || w.hi < w.lo)
    out.push_back("window " + std::to_string(w.lo) + ":" + std::to_string(w.hi) + " is empty or starts below " +
                  std::to_string(first));
  if (w.hi > trusted_pair_limit(cfg.N))
    out.push_back("truncation-trust violation: window upper end " + std::to_string(w.hi) +
                  " exceeds N/4 = " + std::to_string(trusted_pair_limit(cfg.N)) + " at N = " +
                  std::to_string(cfg.N));
  return out;
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  std::ofstream f(cfg.out_dir / name, std::ios::binary);
  if (!f) throw Error(ErrorKind::invalid_input, "cannot write " + (cfg.out_dir / name).string());
  return f;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return config_error(e.kind()) ? exit_config : exit_numerical;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_numerical;
  }
}

struct Prepared {
  PotentialDocument doc;
  Window window;
  BoundaryClass bc;
  std::string hash;
};

// nullopt after printing the config problems
std::optional<Prepared> prepare(const RunConfig& cfg, Window fallback, const std::string& command,
                                std::ostream& err) {
  if (cfg.potential.empty()) throw Error(ErrorKind::invalid_input, "--config is required");
  Prepared p{load_potential_document(cfg.potential), cfg.window.value_or(fallback),
             BoundaryClass{cfg.alpha}, ""};
  const auto issues = window_issues(cfg, p.window);
  if (!issues.empty()) {
    for (const auto& i : issues) err << "config error: " << i << '\n';
    return std::nullopt;
  }
  p.hash = config_hash(cfg, &p.doc.spec, command);
  return p;
}

}  // namespace

std::string config_hash(const RunConfig& cfg, const PotentialSpec* spec,
                        const std::string& command) {
  std::ostringstream os;
  os << "command=" << command << "\nalpha=" << cfg.alpha << "\nN=" << cfg.N << "\nwindow=";
  if (cfg.window)
    os << cfg.window->lo << ":" << cfg.window->hi;
  else
    os << "default";
  os << "\nm=" << cfg.m << "\ns=" << (cfg.s ? std::to_string(*cfg.s) : "default")
     << "\nepsilon=" << (cfg.epsilon ? fmt_double(*cfg.epsilon) : "auto")
     << "\ngnuplot=" << cfg.gnuplot << "\npotential=" << (spec ? canonical_spec(*spec) : "none")
     << '\n';
  return hex64(fnv1a64(os.str()));
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BoundaryClass bc{cfg.alpha};
    const Window fallback{first_pair_index(bc), std::min(10, trusted_pair_limit(cfg.N))};
    const auto p = prepare(cfg, fallback, "spectrum", err);
    if (!p) return int(exit_config);

    const FourierSeries q = fourier_coefficients(p->doc.spec, 2 * cfg.N);
    SpectrumRequest rq;
    rq.bc = p->bc;
    rq.N = cfg.N;
    const NormalSystem ns = compute_normal_system(q, rq);

    const DiscriminantOracle oracle(p->doc.spec);
    std::vector<OraclePair> op;
    for (int n = p->window.lo; n <= p->window.hi; ++n) op.push_back(oracle.find_pair(p->bc, n));
    const auto rows = agreement_rows(ns, op);

    std::vector<Discriminant> scan;
    if (!op.empty()) {
      const double a = op.front().center.real() - op.front().radius;
      const double b = op.back().center.real() + op.back().radius;
      constexpr int points = 257;
      for (int j = 0; j < points; ++j)
        scan.push_back(oracle.discriminant(a + (b - a) * j / (points - 1), op.back().steps));
    }

    auto f1 = open_out(cfg, "spectrum.csv");
    write_spectrum_csv(f1, p->hash, ns, cfg.gnuplot);
    auto f2 = open_out(cfg, "oracle.csv");
    write_oracle_csv(f2, p->hash, op, cfg.gnuplot);
    auto f3 = open_out(cfg, "agreement.csv");
    write_agreement_csv(f3, p->hash, rows, cfg.gnuplot);
    auto f4 = open_out(cfg, "discriminant.csv");
    write_discriminant_csv(f4, p->hash, scan, cfg.gnuplot);

    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, std::abs(r.galerkin - r.oracle));
    out << "pairs " << ns.pairs.size() << " (trusted to n = " << ns.paired.n_max
        << "), oracle window " << p->window.lo << ":" << p->window.hi
        << ", worst |galerkin - oracle| " << fmt_double(worst) << '\n';
    return int(exit_ok);
  });
}

int cmd_criteria(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto p = prepare(cfg, default_window(cfg.N), "criteria", err);
    if (!p) return int(exit_config);
    const int s = cfg.s ? *cfg.s : p->doc.s.value_or(0);
    std::optional<JumpMeta> jump = p->doc.jump;
    if (jump) jump->s = s;

    const NormalizedPotential np = normalize_mean(fourier_coefficients(p->doc.spec, 2 * cfg.N));
    const FourierSeries& q = np.q;
    const DerivedFunctions d = derive_Q_S(q);
    SpectrumRequest rq;
    rq.bc = p->bc;
    rq.N = cfg.N;
    const NormalSystem ns = compute_normal_system(q, rq);
    const Window w = p->window;

    auto no_jump = [&](const std::string& name) {
      CriterionReport r;
      r.name = name;
      r.window = w;
      r.reason = "no jump metadata in the potential document";
      return r;
    };

    std::vector<CriterionReport> reports;
    reports.push_back(theorem1_check(ns, w));
    std::vector<SeriesRow> series;
    if (p->bc.alpha == 0) {
      reports.push_back(theorem2_check(ns, q, w, cfg.m));
      reports.push_back(theorem3_check(d, w, s, cfg.epsilon));
      reports.push_back(corollary1_check(q, w, s, cfg.epsilon));
      reports.push_back(jump ? corollary2_check(q, *jump, w) : no_jump("corollary2"));
      for (auto& b : window_bundles(ns, q, w, cfg.m)) {
        SeriesRow row;
        const NormalEigenPair* pair = ns.find(b.n);
        if (pair && pair->cls == PairClass::simple) {
          row.has_residual = true;
          row.residual = residual_eq15(*pair, b, q);
        }
        row.bundle = std::move(b);
        series.push_back(std::move(row));
      }
    } else {
      reports.push_back(theorem4_check(d, w, s, Theorem4Part::a, cfg.epsilon));
      reports.push_back(theorem4_check(d, w, s, Theorem4Part::b, cfg.epsilon));
      reports.push_back(jump ? theorem4_check(d, w, s, Theorem4Part::c, cfg.epsilon, jump)
                             : no_jump("theorem4c"));
    }
    const GramReport g = gram_condition(ns.pairs, w.lo, w.hi);

    auto f1 = open_out(cfg, "criteria.json");
    write_criteria_json(f1, p->hash, reports);
    auto f2 = open_out(cfg, "series.csv");
    write_series_csv(f2, p->hash, series, cfg.gnuplot);
    auto f3 = open_out(cfg, "diagnostics.csv");
    write_diagnostics_csv(f3, p->hash, ns.pairs, w, cfg.gnuplot);
    auto f4 = open_out(cfg, "gram.json");
    write_gram_json(f4, p->hash, g);

    for (const auto& r : reports) {
      out << r.name << ": " << to_string(r.verdict) << (r.applicable ? "" : " (not applicable)")
          << " - " << r.reason;
      for (const auto& f : r.flags) out << " [" << f << "]";
      out << '\n';
    }
    out << "gram: log10 cond " << fmt_double(g.log10_cond) << ", "
        << (g.bounded ? "bounded" : "growing") << " (evidence, not proof)\n";
    return int(exit_ok);
  });
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::optional<PotentialDocument> doc;
    if (!cfg.potential.empty()) doc = load_potential_document(cfg.potential);
    const Window w = cfg.window.value_or(default_window(cfg.N));
    const std::vector<std::string> preflight = window_issues(cfg, w);
    const std::string hash = config_hash(cfg, doc ? &doc->spec : nullptr, "verify");

    std::vector<AcceptanceItem> items;
    if (preflight.empty()) items = run_acceptance(true).items;
    for (const auto& i : preflight) out << "FAIL  preflight: " << i << '\n';
    print_summary(out, items);

    const std::string json = verify_json(hash, items, preflight);
    auto f = open_out(cfg, "verify.json");
    f << json;
    const bool ok =
        preflight.empty() && std::all_of(items.begin(), items.end(),
                                         [](const AcceptanceItem& i) { return i.passed; });
    out << (ok ? "verify: all items passed" : "verify: FAILED") << '\n';
    return int(ok ? exit_ok : exit_verify);
  });
}

}  // namespace hill
