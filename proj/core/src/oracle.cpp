#include "hill/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "hill/errors.hpp"

namespace hill {

namespace {

using ld = long double;
using cld = std::complex<long double>;
constexpr ld pi_l = std::numbers::pi_v<long double>;

std::vector<cld> roots_of_unity(int m, int sign) {
  std::vector<cld> w(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) w[static_cast<std::size_t>(r)] = std::polar<ld>(1.0L, sign * 2.0L * pi_l * r / m);
  return w;
}

int mod(long long a, int m) {
  const long long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

// monodromy data at x = 1, with lambda-derivatives up to the requested level
struct Monodromy {
  cld y1, z1, y2, z2;
  cld Y1, Z1, Y2, Z2;
  cld W1, V1, W2, V2;

  cld trace() const { return y1 + z2; }
  cld det() const { return y1 * z2 - y2 * z1; }
  cld dtrace() const { return Y1 + Z2; }
  cld ddet() const { return Y1 * z2 + y1 * Z2 - Y2 * z1 - y2 * Z1; }
  cld d2trace() const { return W1 + V2; }
  cld d2det() const {
    return W1 * z2 + 2.0L * Y1 * Z2 + y1 * V2 - W2 * z1 - 2.0L * Y2 * Z1 - y2 * V1;
  }
};

// one fundamental solution and its lambda-variations
template <int Level>
struct State {
  static constexpr int size = 2 * (Level + 1);
  std::array<cld, size> u{};
};

template <int Level>
inline void rhs(const State<Level>& s, cld qm, State<Level>& out) {
  // (y, z, Y, Z, W, V)
  out.u[0] = s.u[1];
  out.u[1] = qm * s.u[0];
  if constexpr (Level >= 1) {
    out.u[2] = s.u[3];
    out.u[3] = qm * s.u[2] - s.u[0];
  }
  if constexpr (Level >= 2) {
    out.u[4] = s.u[5];
    out.u[5] = qm * s.u[4] - 2.0L * s.u[2];
  }
}

template <int Level>
void integrate(const std::vector<cld>& qh, int stride, int steps, cld lambda,
               State<Level>& a, State<Level>& b) {
  const ld h = 1.0L / steps;
  State<Level> k1, k2, k3, k4, t;
  auto step = [&](State<Level>& s, cld q0, cld qm, cld q1) {
    rhs(s, q0, k1);
    for (int i = 0; i < State<Level>::size; ++i) t.u[i] = s.u[i] + 0.5L * h * k1.u[i];
    rhs(t, qm, k2);
    for (int i = 0; i < State<Level>::size; ++i) t.u[i] = s.u[i] + 0.5L * h * k2.u[i];
    rhs(t, qm, k3);
    for (int i = 0; i < State<Level>::size; ++i) t.u[i] = s.u[i] + h * k3.u[i];
    rhs(t, q1, k4);
    for (int i = 0; i < State<Level>::size; ++i)
      s.u[i] += (h / 6.0L) * (k1.u[i] + 2.0L * (k2.u[i] + k3.u[i]) + k4.u[i]);
  };
  for (int i = 0; i < steps; ++i) {
    const std::size_t j = static_cast<std::size_t>(2 * i * stride);
    const cld q0 = qh[j] - lambda;
    const cld qm = qh[j + static_cast<std::size_t>(stride)] - lambda;
    const cld q1 = qh[j + static_cast<std::size_t>(2 * stride)] - lambda;
    step(a, q0, qm, q1);
    step(b, q0, qm, q1);
  }
}

}  // namespace

struct DiscriminantOracle::Impl {
  PotentialSpec spec;
  OracleOptions opts;
  std::vector<cld> dft;  // sampled grids: c_k, k = -M/2+1 .. M/2 (last is Nyquist)
  mutable std::map<int, std::vector<cld>> tables;
  cld mean_value;
  ld l1 = 0.0L;

  explicit Impl(PotentialSpec ps, OracleOptions o) : spec(std::move(ps)), opts(o) {
    if (spec.kind == PotentialSpec::Kind::sampled_grid) {
      const int M = static_cast<int>(spec.samples.size());
      if (M < 2 || M % 2)
        throw Error(ErrorKind::invalid_input, "sampled potential needs an even number of samples");
      const auto w = roots_of_unity(M, -1);
      dft.resize(static_cast<std::size_t>(M));
      for (int k = -M / 2 + 1; k <= M / 2; ++k) {
        cld s{};
        for (int j = 0; j < M; ++j)
          s += cld(spec.samples[static_cast<std::size_t>(j)]) *
               w[static_cast<std::size_t>(mod(static_cast<long long>(k) * j, M))];
        dft[static_cast<std::size_t>(k + M / 2 - 1)] = s / ld(M);
      }
    }
    const auto& t = table(4096);
    cld s{};
    for (std::size_t j = 0; j + 1 < t.size(); ++j) s += t[j];
    mean_value = s / ld(t.size() - 1);
    ld a = 0.0L;
    for (std::size_t j = 0; j + 1 < t.size(); ++j) a += std::abs(t[j] - mean_value);
    l1 = a / ld(t.size() - 1);
  }

  // potential at x_j = j / (2 S), j = 0 .. 2S
  const std::vector<cld>& table(int S) const {
    auto it = tables.find(S);
    if (it != tables.end()) return it->second;
    const int G = 2 * S;
    const auto w = roots_of_unity(G, +1);
    std::vector<cld> v(static_cast<std::size_t>(G + 1));
    if (spec.kind == PotentialSpec::Kind::trig_polynomial) {
      for (int j = 0; j <= G; ++j) {
        cld s{};
        for (const auto& term : spec.terms)
          s += cld(term.value) * w[static_cast<std::size_t>(mod(static_cast<long long>(term.n) * j, G))];
        v[static_cast<std::size_t>(j)] = s;
      }
    } else {
      const int M = static_cast<int>(spec.samples.size());
      for (int j = 0; j <= G; ++j) {
        cld s{};
        for (int k = -M / 2 + 1; k < M / 2; ++k)
          s += dft[static_cast<std::size_t>(k + M / 2 - 1)] *
               w[static_cast<std::size_t>(mod(static_cast<long long>(k) * j, G))];
        const cld nyq = dft[static_cast<std::size_t>(M - 1)];
        s += nyq * w[static_cast<std::size_t>(mod(static_cast<long long>(M / 2) * j, G))].real();
        v[static_cast<std::size_t>(j)] = s;
      }
    }
    return tables.emplace(S, std::move(v)).first->second;
  }

  template <int Level>
  Monodromy run(cld lambda, int S, int stride) const {
    const auto& t = table(S);
    State<Level> a, b;
    a.u[0] = 1.0L;
    b.u[1] = 1.0L;
    integrate<Level>(t, stride, S / stride, lambda, a, b);
    Monodromy m{};
    m.y1 = a.u[0]; m.z1 = a.u[1];
    m.y2 = b.u[0]; m.z2 = b.u[1];
    if constexpr (Level >= 1) {
      m.Y1 = a.u[2]; m.Z1 = a.u[3];
      m.Y2 = b.u[2]; m.Z2 = b.u[3];
    }
    if constexpr (Level >= 2) {
      m.W1 = a.u[4]; m.V1 = a.u[5];
      m.W2 = b.u[4]; m.V2 = b.u[5];
    }
    return m;
  }
};

DiscriminantOracle::DiscriminantOracle(PotentialSpec spec, OracleOptions opts)
    : impl_(std::make_unique<Impl>(std::move(spec), opts)) {}
DiscriminantOracle::~DiscriminantOracle() = default;
DiscriminantOracle::DiscriminantOracle(DiscriminantOracle&&) noexcept = default;
DiscriminantOracle& DiscriminantOracle::operator=(DiscriminantOracle&&) noexcept = default;

cplx DiscriminantOracle::mean() const { return cplx(impl_->mean_value); }
double DiscriminantOracle::l1_norm() const { return static_cast<double>(impl_->l1); }

namespace {

cplx to_double_checked(cld z, const char* what) {
  const cplx r(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
    throw Error(ErrorKind::overflow, std::string(what) + " overflows double precision");
  return r;
}

}  // namespace

Discriminant DiscriminantOracle::discriminant(cplx lambda, int steps) const {
  if (steps < 64 || steps % 2)
    throw Error(ErrorKind::invalid_input, "step count must be even and >= 64");
  const Monodromy fine = impl_->run<0>(cld(lambda), steps, 1);
  const Monodromy coarse = impl_->run<0>(cld(lambda), steps, 2);
  Discriminant d;
  d.lambda = lambda;
  d.step_count = steps;
  d.delta = to_double_checked(fine.trace(), "discriminant");
  const cplx dc = to_double_checked(coarse.trace(), "discriminant");
  d.error_estimate = std::abs(d.delta - dc) / 15.0 +
                     4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(d.delta));
  return d;
}

namespace {

bool re_im_less(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

OraclePair DiscriminantOracle::find_pair(BoundaryClass bc, int n) const {
  if (bc.alpha != 0 && bc.alpha != 1)
    throw Error(ErrorKind::invalid_input, "boundary class must be periodic or antiperiodic");
  if (n < 0) throw Error(ErrorKind::invalid_input, "pair index must be >= 0");
  const OracleOptions& o = impl_->opts;
  int S = std::max(o.min_steps, o.steps_per_index * (n + 1));
  int p2 = 2;
  while (p2 < S) p2 *= 2;
  S = p2;
  const ld sgn = bc.alpha == 0 ? -1.0L : 1.0L;

  // characteristic function det(M - I) (periodic) or det(M + I) (antiperiodic)
  struct Val {
    cld f, df, d2f;
  };
  auto eval = [&](cld lam, int level, int stride = 1) {
    Monodromy m;
    if (level == 0) m = impl_->run<0>(lam, S, stride);
    else if (level == 1) m = impl_->run<1>(lam, S, stride);
    else m = impl_->run<2>(lam, S, stride);
    Val v{m.det() + sgn * m.trace() + 1.0L, {}, {}};
    if (level >= 1) v.df = m.ddet() + sgn * m.dtrace();
    if (level >= 2) v.d2f = m.d2det() + sgn * m.d2trace();
    const ld scale = 1.0L + std::abs(m.trace());
    if (!std::isfinite(static_cast<double>(scale)))
      throw Error(ErrorKind::overflow, "monodromy overflows");
    return v;
  };

  OraclePair out;
  out.n = n;
  out.bc = bc;
  out.steps = S;
  const cld c = cld(pair_center(bc, n)) + impl_->mean_value;
  out.center = cplx(c);
  const ld R = std::max(1.0L, 2.0L * impl_->l1);
  out.radius = static_cast<double>(R);

  auto inside = [&](cld z) { return std::abs(z - c) <= R; };
  auto newton = [&](cld z, const std::vector<cld>& deflate, bool& ok) {
    ok = false;
    for (int it = 0; it < o.max_newton; ++it) {
      const Val v = eval(z, 1);
      if (v.f == cld{}) {
        ok = true;
        return z;
      }
      cld r = v.df / v.f;
      for (const auto& w : deflate) r -= 1.0L / (z - w);
      if (r == cld{}) return z;
      const cld step = 1.0L / r;
      z -= step;
      if (!inside(z)) return z;
      if (std::abs(step) <= 1e-16L * (1.0L + std::abs(z))) {
        ok = true;
        return z;
      }
    }
    ok = true;  // budget spent; accept the last iterate, checked by the caller
    return z;
  };

  std::vector<cld> roots;
  bool located = false;

  // critical point of the characteristic function between the two roots
  cld mu = c;
  bool mu_ok = false;
  for (int it = 0; it < o.max_newton; ++it) {
    const Val v = eval(mu, 2);
    if (v.d2f == cld{}) break;
    const cld step = v.df / v.d2f;
    mu -= step;
    if (!inside(mu)) break;
    if (std::abs(step) <= 1e-16L * (1.0L + std::abs(mu))) {
      mu_ok = true;
      break;
    }
  }
  if (mu_ok) {
    const Val v = eval(mu, 2);
    const Val vc = eval(mu, 0, 2);
    const ld noise = std::abs(v.f - vc.f) + 1e-18L;
    out.noise = static_cast<double>(noise);
    if (std::abs(v.f) <= noise) {
      roots = {mu, mu};
      out.double_root = true;
      located = true;
    } else if (v.d2f != cld{}) {
      const cld d = std::sqrt(-2.0L * v.f / v.d2f);
      bool ok1 = false, ok2 = false;
      const cld r1 = newton(mu + d, {}, ok1);
      const cld r2 = ok1 ? newton(mu - d, {r1}, ok2) : cld{};
      if (ok1 && ok2 && inside(r1) && inside(r2) && r1 != r2) {
        roots = {r1, r2};
        located = true;
      }
    }
  }
  if (!located) {
    roots.clear();
    for (int s = 0; s < 8 && roots.size() < 2; ++s) {
      const cld z0 = c + std::polar<ld>(0.5L * R, 2.0L * pi_l * s / 8.0L);
      bool ok = false;
      const cld z = newton(z0, roots, ok);
      if (!ok || !inside(z)) continue;
      roots.push_back(z);
    }
    if (roots.size() != 2)
      throw Error(ErrorKind::root_isolation,
                  "found " + std::to_string(roots.size()) + " roots near pair n=" +
                      std::to_string(n) + ", expected 2");
  }

  // argument principle on the disk boundary, coarse steps suffice for a count
  {
    const int K = o.count_points;
    const int Sc = std::min(S, o.count_steps);
    const int stride = S / Sc;
    ld total = 0.0L;
    cld prev = eval(c + R, 0, stride).f;
    for (int k = 1; k <= K; ++k) {
      const cld z = c + std::polar<ld>(R, 2.0L * pi_l * k / K);
      const cld f = eval(z, 0, stride).f;
      total += std::arg(f / prev);
      prev = f;
    }
    out.winding = static_cast<int>(std::lround(static_cast<double>(total / (2.0L * pi_l))));
  }
  if (out.winding != 2)
    throw Error(ErrorKind::root_isolation,
                "winding number " + std::to_string(out.winding) + " on the disk of pair n=" +
                    std::to_string(n) + ", expected 2");

  cplx a = cplx(roots[0]), b = cplx(roots[1]);
  if (re_im_less(b, a)) std::swap(a, b);
  out.first = a;
  out.second = b;
  return out;
}

Discriminant discriminant(const PotentialSpec& q, cplx lambda, int steps) {
  OracleOptions o;
  return DiscriminantOracle(q, o).discriminant(lambda, steps);
}

OraclePair find_pair(const PotentialSpec& q, BoundaryClass bc, int n, const OracleOptions& opts) {
  return DiscriminantOracle(q, opts).find_pair(bc, n);
}

}  // namespace hill
