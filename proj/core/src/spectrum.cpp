#include "hill/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hill/errors.hpp"

namespace hill {

using Eigen::VectorXcd;

const char* to_string(PairClass c) noexcept {
  switch (c) {
    case PairClass::simple: return "simple";
    case PairClass::semisimple_double: return "semisimple-double";
    case PairClass::defective_double: return "defective-double";
  }
  return "unknown";
}

namespace {

bool re_im_less(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// multiply by a unit scalar so the largest entry is real and positive
cplx phase_of_largest(const VectorXcd& v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  const double a = std::abs(v(k));
  return a > 0.0 ? std::conj(v(k)) / a : cplx{1.0};
}

using lcplx = std::complex<long double>;
using VectorXcl = Eigen::Matrix<lcplx, Eigen::Dynamic, 1>;

// Rayleigh-Ritz on span{x, y} in extended precision. Close pairs of a
// well separated cluster lose digits to in-pair mixing in the double solve.
void refine_simple_pair(const Eigen::MatrixXcd& M, VectorXcd& x, VectorXcd& y, cplx& lx,
                        cplx& ly) {
  const Eigen::Index dim = M.rows();
  VectorXcl q1 = x.cast<lcplx>(), q2 = y.cast<lcplx>();
  q1 /= q1.norm();
  for (int pass = 0; pass < 2; ++pass) q2 -= q1.dot(q2) * q1;
  const long double n2 = q2.norm();
  if (!(n2 > 1e-6L)) return;
  q2 /= n2;
  auto apply = [&](const VectorXcl& v) {
    VectorXcl r = VectorXcl::Zero(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (v(j) == lcplx{}) continue;
      for (Eigen::Index i = 0; i < dim; ++i) r(i) += lcplx(M(i, j)) * v(j);
    }
    return r;
  };
  const VectorXcl m1 = apply(q1), m2 = apply(q2);
  const lcplx a = q1.dot(m1), b = q1.dot(m2), c = q2.dot(m1), e = q2.dot(m2);
  const lcplx half_tr = 0.5L * (a + e);
  const lcplx root = std::sqrt(0.25L * (a - e) * (a - e) + b * c);
  lcplx mu[2] = {half_tr + root, half_tr - root};
  // match to the double eigenvalues
  if (std::abs(mu[0] - lcplx(lx)) + std::abs(mu[1] - lcplx(ly)) >
      std::abs(mu[1] - lcplx(lx)) + std::abs(mu[0] - lcplx(ly)))
    std::swap(mu[0], mu[1]);
  auto vec = [&](lcplx l) {
    lcplx w1 = b, w2 = l - a;
    const lcplx z1 = l - e, z2 = c;
    if (std::norm(z1) + std::norm(z2) > std::norm(w1) + std::norm(w2)) {
      w1 = z1;
      w2 = z2;
    }
    VectorXcl v = w1 * q1 + w2 * q2;
    return VectorXcd((v / v.norm()).cast<cplx>());
  };
  const VectorXcd rx = vec(mu[0]), ry = vec(mu[1]);
  if (!rx.allFinite() || !ry.allFinite()) return;
  x = rx;
  y = ry;
  lx = cplx(mu[0]);
  ly = cplx(mu[1]);
}

}  // namespace

PairedSpectrum pair_spectrum(const EigenDecomposition& d, BoundaryClass bc, int n_max) {
  if (!(d.bc == bc))
    throw Error(ErrorKind::invalid_input, "boundary class differs from the decomposition");
  const int n0 = first_pair_index(bc);
  if (n_max > trusted_pair_limit(d.N))
    throw Error(ErrorKind::truncation_risk,
                "pair n=" + std::to_string(n_max) + " exceeds the trusted range N/4 = " +
                    std::to_string(trusted_pair_limit(d.N)) + " at N=" + std::to_string(d.N));
  PairedSpectrum ps;
  ps.bc = bc;
  ps.n_max = n_max;
  const int dim = d.dim();
  std::vector<bool> used(static_cast<std::size_t>(dim), false);
  const double cap = std::max(1.0, 2.0 * d.coupling_l1);

  for (int n = n0; n <= n_max; ++n) {
    const double c = pair_center(bc, n);
    double dist = std::abs(pair_center(bc, n + 1) - c);
    if (n >= 1) dist = std::min(dist, std::abs(c - pair_center(bc, n - 1)));
    PairSlot slot;
    slot.n = n;
    slot.center = c;
    slot.radius = std::min(0.5 * dist, cap);
    std::vector<int> inside;
    for (int i = 0; i < dim; ++i)
      if (std::abs(d.eigenvalues(i) - c) <= slot.radius) inside.push_back(i);
    if (inside.size() != 2)
      throw PairingError(n, "disk around pair n=" + std::to_string(n) + " holds " +
                                std::to_string(inside.size()) + " eigenvalues, expected 2");
    if (re_im_less(d.eigenvalues(inside[1]), d.eigenvalues(inside[0])))
      std::swap(inside[0], inside[1]);
    slot.first = inside[0];
    slot.second = inside[1];
    slot.lambda_plus = d.eigenvalues(slot.first);
    slot.lambda_minus = d.eigenvalues(slot.second);
    used[static_cast<std::size_t>(slot.first)] = true;
    used[static_cast<std::size_t>(slot.second)] = true;
    ps.pairs.push_back(slot);
  }

  const double lo = n_max >= n0 ? ps.pairs.front().center - ps.pairs.front().radius
                                : std::numeric_limits<double>::infinity();
  const double hi = n_max >= n0 ? ps.pairs.back().center + ps.pairs.back().radius
                                : -std::numeric_limits<double>::infinity();
  for (int i = 0; i < dim; ++i) {
    if (used[static_cast<std::size_t>(i)]) continue;
    const cplx z = d.eigenvalues(i);
    if (z.real() < lo) {
      ps.head.push_back(z);
    } else if (z.real() > hi) {
      ps.untrusted.push_back(z);
    } else {
      int nearest = n0;
      for (const auto& s : ps.pairs)
        if (std::abs(z - s.center) < std::abs(z - pair_center(bc, nearest))) nearest = s.n;
      throw PairingError(nearest, "eigenvalue " + std::to_string(z.real()) +
                                      " lies between pair disks near n=" +
                                      std::to_string(nearest));
    }
  }
  std::sort(ps.head.begin(), ps.head.end(), re_im_less);
  std::sort(ps.untrusted.begin(), ps.untrusted.end(), re_im_less);
  return ps;
}

Classification classify_pair(const PairSlot& slot, const EigenDecomposition& d,
                             const SpectrumTolerances& tol) {
  Classification c;
  c.gap = std::abs(slot.lambda_plus - slot.lambda_minus);
  const double scale = 1.0 + std::abs(0.5 * (slot.lambda_plus + slot.lambda_minus));
  if (c.gap > tol.gap_rel * scale) {
    c.cls = PairClass::simple;
    c.vec_a = d.right.col(slot.first);
    c.vec_b = d.right.col(slot.second);
    c.angle = std::acos(std::min(1.0, std::abs(c.vec_a.dot(c.vec_b))));
    return c;
  }
  const ClusterAnalysis ca = analyze_cluster(d, slot.first, slot.second);
  c.angle = ca.angle;
  c.coupling = ca.coupling;
  c.coupling_significant = ca.coupling_significant;
  c.vec_a = ca.first;
  c.vec_b = ca.second;
  c.cls = (ca.angle <= tol.angle && ca.coupling_significant) ? PairClass::defective_double
                                                             : PairClass::semisimple_double;
  return c;
}

cplx bilinear_pairing(const VectorXcd& a, const VectorXcd& b, BoundaryClass bc, int N) {
  cplx s{};
  const int dim = static_cast<int>(a.size());
  for (int pos = 0; pos < dim; ++pos) {
    const int k = pos - N;
    const int rp = reflected_index(bc, k) + N;
    if (rp >= 0 && rp < dim) s += a(pos) * b(rp);
  }
  return s;
}

void extract_uv_and_remainder(NormalEigenPair& p) {
  const int up = p.u_position(), vp = p.v_position();
  auto fill = [&](const VectorXcd& f, cplx& u, cplx& v, double& sup, double& l2) {
    u = f(up);
    v = f(vp);
    sup = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < f.size(); ++i) {
      if (i == up || i == vp) continue;
      const double a = std::abs(f(i));
      sup = std::max(sup, a);
      s2 += a * a;
    }
    l2 = std::sqrt(s2);
  };
  fill(p.phi_plus, p.u_plus, p.v_plus, p.remainder_sup_plus, p.remainder_l2_plus);
  fill(p.phi_minus, p.u_minus, p.v_minus, p.remainder_sup_minus, p.remainder_l2_minus);
  p.alpha_plus = bilinear_pairing(p.phi_plus, p.phi_plus, p.bc, p.N);
  p.alpha_minus = bilinear_pairing(p.phi_minus, p.phi_minus, p.bc, p.N);
}

NormalEigenPair build_normal_pair(const PairSlot& slot, const Classification& c,
                                  const EigenDecomposition& d, const SpectrumTolerances& tol) {
  NormalEigenPair p;
  p.n = slot.n;
  p.bc = d.bc;
  p.N = d.N;
  p.cls = c.cls;
  p.lambda_plus = slot.lambda_plus;
  p.lambda_minus = slot.lambda_minus;
  p.gap = c.gap;
  p.angle = c.angle;
  p.coupling = c.coupling;

  switch (c.cls) {
    case PairClass::simple: {
      p.phi_plus = c.vec_a.normalized();
      p.phi_minus = c.vec_b.normalized();
      refine_simple_pair(d.matrix, p.phi_plus, p.phi_minus, p.lambda_plus, p.lambda_minus);
      p.phi_plus *= phase_of_largest(p.phi_plus);
      p.phi_minus *= phase_of_largest(p.phi_minus);
      p.chi_norm_plus = d.left.col(slot.first).norm();
      p.chi_norm_minus = d.left.col(slot.second).norm();
      break;
    }
    case PairClass::semisimple_double: {
      VectorXcd q1 = c.vec_a.normalized();
      VectorXcd q2 = c.vec_b - q1.dot(c.vec_b) * q1;
      if (q2.norm() < 1e-8) {
        // numerically one direction; complete with the reflected exponential
        q2 = VectorXcd::Zero(q1.size());
        q2(p.v_position()) = 1.0;
        q2 -= q1.dot(q2) * q1;
      }
      q2.normalize();
      const int up = p.u_position();
      VectorXcd proj = q1 * std::conj(q1(up)) + q2 * std::conj(q2(up));
      if (proj.norm() < 1e-12) proj = q1;
      p.phi_plus = proj.normalized();
      VectorXcd other = q1 - p.phi_plus.dot(q1) * p.phi_plus;
      VectorXcd alt = q2 - p.phi_plus.dot(q2) * p.phi_plus;
      if (alt.norm() > other.norm()) other = alt;
      p.phi_minus = other.normalized();
      p.phi_plus *= phase_of_largest(p.phi_plus);
      p.phi_minus *= phase_of_largest(p.phi_minus);
      break;
    }
    case PairClass::defective_double: {
      try {
        JordanChain ch = jordan_chain(d, slot.first, slot.second);
        const cplx ph = phase_of_largest(ch.eigenvector);
        p.phi_plus = ph * ch.eigenvector;
        p.phi_minus = ph * ch.associated;
        p.jordan_residual = ch.residual;
        p.lambda_plus = p.lambda_minus = ch.lambda;
        p.jordan_failed = !(ch.residual <= tol.jordan_rel * d.matrix_norm);
      } catch (const Error&) {
        p.phi_plus = c.vec_a.normalized();
        p.phi_minus = VectorXcd::Zero(p.phi_plus.size());
        p.jordan_failed = true;
      }
      break;
    }
  }
  extract_uv_and_remainder(p);
  return p;
}

const NormalEigenPair* NormalSystem::find(int n) const {
  for (const auto& p : pairs)
    if (p.n == n) return &p;
  return nullptr;
}

NormalSystem compute_normal_system(const FourierSeries& q, const SpectrumRequest& req) {
  NormalizedPotential np = normalize_mean(q);
  TruncatedOperator op = assemble(np.q, req.bc, req.N);
  EigenDecomposition d = eigendecompose(op);
  const int n_max = req.n_max < 0 ? trusted_pair_limit(req.N) : req.n_max;
  NormalSystem ns;
  ns.mean_shift = np.mean_shift;
  ns.paired = pair_spectrum(d, req.bc, n_max);
  for (const auto& slot : ns.paired.pairs) {
    const Classification c = classify_pair(slot, d, req.tol);
    ns.pairs.push_back(build_normal_pair(slot, c, d, req.tol));
  }
  return ns;
}

}  // namespace hill
