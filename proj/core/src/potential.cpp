#include "hill/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "hill/errors.hpp"
#include "json.hpp"

namespace hill {

using std::numbers::pi;

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::truncation_risk: return "truncation-risk";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::numerical_failure: return "numerical-failure";
    case ErrorKind::pairing_ambiguity: return "pairing-ambiguity";
    case ErrorKind::resonance: return "resonance";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::root_isolation: return "root-isolation";
    case ErrorKind::jordan_solve: return "jordan-solve";
  }
  return "unknown";
}

FourierSeries::FourierSeries(int bound)
    : bound_(std::max(bound, 0)),
      c_(static_cast<std::size_t>(2 * std::max(bound, 0) + 1)) {}

void FourierSeries::set(int k, cplx v) {
  if (std::abs(k) > bound_) {
    const int nb = std::abs(k);
    std::vector<cplx> c(static_cast<std::size_t>(2 * nb + 1));
    for (int j = -bound_; j <= bound_; ++j)
      c[static_cast<std::size_t>(j + nb)] = c_[static_cast<std::size_t>(j + bound_)];
    c_.swap(c);
    bound_ = nb;
  }
  c_[static_cast<std::size_t>(k + bound_)] = v;
}

int FourierSeries::support_bound() const noexcept {
  for (int k = bound_; k >= 0; --k)
    if ((*this)[k] != cplx{} || (*this)[-k] != cplx{}) return k;
  return -1;
}

std::vector<int> FourierSeries::support() const {
  std::vector<int> s;
  for (int k = -bound_; k <= bound_; ++k)
    if ((*this)[k] != cplx{}) s.push_back(k);
  return s;
}

double FourierSeries::l1_norm() const noexcept {
  double s = 0.0;
  for (const auto& c : c_) s += std::abs(c);
  return s;
}

FourierSeries FourierSeries::truncated(int bound) const {
  FourierSeries r(bound);
  for (int k = -bound; k <= bound; ++k) r.set(k, (*this)[k]);
  return r;
}

FourierSeries operator+(const FourierSeries& a, const FourierSeries& b) {
  FourierSeries r(std::max(a.bound(), b.bound()));
  for (int k = -r.bound(); k <= r.bound(); ++k) r.set(k, a[k] + b[k]);
  return r;
}

FourierSeries operator-(const FourierSeries& a, const FourierSeries& b) {
  return a + cplx{-1.0} * b;
}

FourierSeries operator*(cplx s, const FourierSeries& a) {
  FourierSeries r(a.bound());
  for (int k = -a.bound(); k <= a.bound(); ++k) r.set(k, s * a[k]);
  return r;
}

FourierSeries convolve(const FourierSeries& a, const FourierSeries& b) {
  const int ba = std::max(a.support_bound(), 0);
  const int bb = std::max(b.support_bound(), 0);
  FourierSeries r(ba + bb);
  for (int i = -ba; i <= ba; ++i) {
    const cplx ai = a[i];
    if (ai == cplx{}) continue;
    for (int j = -bb; j <= bb; ++j) {
      const cplx bj = b[j];
      if (bj != cplx{}) r.set(i + j, r[i + j] + ai * bj);
    }
  }
  return r;
}

PotentialSpec PotentialSpec::trig(std::vector<TrigTerm> terms) {
  PotentialSpec s;
  s.kind = Kind::trig_polynomial;
  s.terms = std::move(terms);
  return s;
}

PotentialSpec PotentialSpec::sampled(std::vector<cplx> samples) {
  if (samples.size() < 2 || samples.size() % 2 != 0)
    throw Error(ErrorKind::invalid_input,
                "sampled potential needs an even number of samples, got " +
                    std::to_string(samples.size()));
  PotentialSpec s;
  s.kind = Kind::sampled_grid;
  s.samples = std::move(samples);
  return s;
}

PotentialSpec PotentialSpec::sample(const std::function<cplx(double)>& f, int M) {
  std::vector<cplx> v(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) v[static_cast<std::size_t>(j)] = f(double(j) / M);
  return sampled(std::move(v));
}

namespace {

// DFT of the sample vector, c_k = (1/M) sum_j f_j e^{-2 pi i j k/M}
cplx dft_coefficient(const std::vector<cplx>& f, int k) {
  const std::size_t M = f.size();
  cplx s{};
  const long long kk = ((k % (long long)M) + (long long)M) % (long long)M;
  for (std::size_t j = 0; j < M; ++j) {
    const long long r = (kk * (long long)j) % (long long)M;
    s += f[j] * std::polar(1.0, -2.0 * pi * double(r) / double(M));
  }
  return s / double(M);
}

}  // namespace

cplx PotentialSpec::evaluate(double x) const {
  if (kind == Kind::trig_polynomial) {
    cplx s{};
    for (const auto& t : terms) s += t.value * std::polar(1.0, 2.0 * pi * t.n * x);
    return s;
  }
  const int M = static_cast<int>(samples.size());
  cplx s{};
  for (int k = -M / 2 + 1; k < M / 2; ++k)
    s += dft_coefficient(samples, k) * std::polar(1.0, 2.0 * pi * k * x);
  s += dft_coefficient(samples, M / 2) * std::cos(pi * M * x);
  return s;
}

FourierSeries fourier_coefficients(const PotentialSpec& spec, int N) {
  if (N < 0) throw Error(ErrorKind::invalid_input, "negative coefficient bound");
  FourierSeries q(N);
  if (spec.kind == PotentialSpec::Kind::trig_polynomial) {
    for (const auto& t : spec.terms) {
      if (!std::isfinite(t.value.real()) || !std::isfinite(t.value.imag()))
        throw Error(ErrorKind::invalid_input,
                    "non-finite coefficient at n=" + std::to_string(t.n));
      if (std::abs(t.n) <= N) q.set(t.n, q[t.n] + t.value);
    }
    return q;
  }
  const int M = static_cast<int>(spec.samples.size());
  for (std::size_t j = 0; j < spec.samples.size(); ++j) {
    const cplx v = spec.samples[j];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorKind::invalid_input,
                  "non-finite sample at j=" + std::to_string(j));
  }
  if (M < 4 * N)
    throw Error(ErrorKind::truncation_risk,
                "sampled grid of " + std::to_string(M) +
                    " points cannot resolve coefficients up to |k|=" +
                    std::to_string(N) + " (need M >= 4N)");
  for (int k = -N; k <= N; ++k) q.set(k, dft_coefficient(spec.samples, k));
  return q;
}

NormalizedPotential normalize_mean(const FourierSeries& q) {
  NormalizedPotential r{q, q[0]};
  r.q.set(0, cplx{});
  return r;
}

DerivedFunctions derive_Q_S(const FourierSeries& q) {
  const double scale = std::max(1.0, q.l1_norm());
  if (std::abs(q[0]) > 1e-14 * scale)
    throw Error(ErrorKind::precondition, "derive_Q_S expects a mean-free potential");
  DerivedFunctions d;
  d.q = q;
  d.q.set(0, cplx{});
  const int b = std::max(q.support_bound(), 0);
  d.Q = FourierSeries(b);
  cplx sum{};
  for (int k = -b; k <= b; ++k) {
    if (k == 0) continue;
    const cplx Qk = q[k] / (cplx(0.0, 2.0 * pi * k));
    d.Q.set(k, Qk);
    sum += Qk;
  }
  d.Q0 = -sum;
  d.Q.set(0, d.Q0);
  d.S = convolve(d.Q, d.Q);
  return d;
}

// ---------------------------------------------------------------- parsing

namespace {

std::vector<cplx> read_samples_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::invalid_input, "cannot open samples file " + path.string());
  std::vector<cplx> v;
  std::vector<double> xs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double x, re, im;
    if (!(ls >> x >> re >> im)) {
      if (v.empty() && lineno == 1) continue;  // header row
      throw Error(ErrorKind::invalid_input, path.string() + ":" +
                                                std::to_string(lineno) +
                                                ": expected x,re,im");
    }
    xs.push_back(x);
    v.emplace_back(re, im);
  }
  const std::size_t M = v.size();
  for (std::size_t j = 0; j < M; ++j)
    if (std::abs(xs[j] - double(j) / double(M)) > 1e-9)
      throw Error(ErrorKind::invalid_input,
                  path.string() + ": sample " + std::to_string(j) +
                      " is not on the uniform grid x_j = j/M");
  return v;
}

}  // namespace

PotentialSpec parse_potential_spec(std::string_view text,
                                   const std::filesystem::path& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::invalid_input, "malformed potential JSON at byte " +
                                              std::to_string(e.byte) + ": " +
                                              e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw Error(ErrorKind::invalid_input, "potential JSON needs a string field \"kind\"");
  const std::string kind = j["kind"];
  try {
    if (kind == "trig") {
      std::vector<TrigTerm> terms;
      for (const auto& c : j.at("coeffs"))
        terms.push_back({c.at("n").get<int>(),
                         cplx(c.value("re", 0.0), c.value("im", 0.0))});
      return PotentialSpec::trig(std::move(terms));
    }
    if (kind == "sampled") {
      const std::filesystem::path p = j.at("samples_file").get<std::string>();
      return PotentialSpec::sampled(read_samples_csv(p.is_absolute() ? p : base_dir / p));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::invalid_input, std::string("potential JSON: ") + e.what());
  }
  throw Error(ErrorKind::invalid_input, "unknown potential kind \"" + kind + "\"");
}

PotentialSpec load_potential_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_input, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_potential_spec(ss.str(), path.parent_path());
}

}  // namespace hill
