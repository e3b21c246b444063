#include "hill/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hill/errors.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace hill {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using std::numbers::pi;

namespace {
constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double tiny = std::numeric_limits<double>::min();
}  // namespace

const char* to_string(BoundaryClass bc) noexcept {
  return bc.alpha == 0 ? "periodic" : "antiperiodic";
}

double free_eigenvalue(BoundaryClass bc, int k) noexcept {
  const double w = 2.0 * pi * (k + bc.shift());
  return w * w;
}

TruncatedOperator assemble(const FourierSeries& q, BoundaryClass bc, int N) {
  if (N < 1) throw Error(ErrorKind::invalid_input, "truncation N must be >= 1");
  if (bc.alpha != 0 && bc.alpha != 1)
    throw Error(ErrorKind::invalid_input, "boundary class must be periodic or antiperiodic");
  TruncatedOperator op;
  op.N = N;
  op.bc = bc;
  const int dim = 2 * N + 1 - bc.alpha;
  op.index_map.resize(static_cast<std::size_t>(dim));
  for (int p = 0; p < dim; ++p) op.index_map[static_cast<std::size_t>(p)] = p - N;
  op.matrix.resize(dim, dim);
  for (int a = 0; a < dim; ++a) {
    const int ka = a - N;
    for (int b = 0; b < dim; ++b) {
      const int kb = b - N;
      op.matrix(a, b) = q[ka - kb];
    }
    op.matrix(a, a) += free_eigenvalue(bc, ka);
  }
  for (int k = -(dim - 1); k <= dim - 1; ++k)
    if (k != 0) op.coupling_l1 += std::abs(q[k]);
  return op;
}

VectorXcd EigenDecomposition::from_schur(const VectorXcd& t) const {
  VectorXcd y = schur.Z * t;
  const int n = dim();
  lapack_int info = LAPACKE_zgebak(LAPACK_COL_MAJOR, 'B', 'R', n, schur.ilo, schur.ihi,
                                   schur.scale.data(), 1, y.data(), n);
  if (info != 0) throw Error(ErrorKind::numerical_failure, "zgebak failed");
  return y;
}

EigenDecomposition eigendecompose(const MatrixXcd& M) {
  const int n = static_cast<int>(M.rows());
  if (n == 0 || M.cols() != n)
    throw Error(ErrorKind::invalid_input, "eigendecompose needs a nonempty square matrix");
  if (!M.allFinite())
    throw Error(ErrorKind::invalid_input, "matrix has non-finite entries");

  EigenDecomposition d;
  d.matrix = M;
  d.matrix_norm = M.norm();

  MatrixXcd A = M;
  SchurForm& s = d.schur;
  s.scale.assign(static_cast<std::size_t>(n), 1.0);
  lapack_int ilo = 1, ihi = n;
  lapack_int info = LAPACKE_zgebal(LAPACK_COL_MAJOR, 'B', n, A.data(), n, &ilo, &ihi,
                                   s.scale.data());
  if (info != 0) throw Error(ErrorKind::numerical_failure, "zgebal failed");
  s.ilo = ilo;
  s.ihi = ihi;

  std::vector<cplx> tau(static_cast<std::size_t>(std::max(n - 1, 1)));
  info = LAPACKE_zgehrd(LAPACK_COL_MAJOR, n, ilo, ihi, A.data(), n, tau.data());
  if (info != 0) throw Error(ErrorKind::numerical_failure, "zgehrd failed");
  s.Z = A;
  info = LAPACKE_zunghr(LAPACK_COL_MAJOR, n, ilo, ihi, s.Z.data(), n, tau.data());
  if (info != 0) throw Error(ErrorKind::numerical_failure, "zunghr failed");
  for (int c = 0; c < n; ++c)
    for (int r = c + 2; r < n; ++r) A(r, c) = 0.0;

  VectorXcd w(n);
  info = LAPACKE_zhseqr(LAPACK_COL_MAJOR, 'S', 'V', n, ilo, ihi, A.data(), n, w.data(),
                        s.Z.data(), n);
  if (info > 0) {
    std::vector<cplx> partial;
    for (int i = 0; i < ilo - 1; ++i) partial.push_back(w(i));
    for (int i = static_cast<int>(info); i < n; ++i) partial.push_back(w(i));
    throw ConvergenceError("QR iteration did not converge (" +
                               std::to_string(n - int(partial.size())) +
                               " eigenvalues unresolved)",
                           std::move(partial));
  }
  if (info < 0) throw Error(ErrorKind::numerical_failure, "zhseqr argument error");
  for (int c = 0; c < n; ++c)
    for (int r = c + 1; r < n; ++r) A(r, c) = 0.0;
  s.T = A;
  d.eigenvalues = s.T.diagonal();

  MatrixXcd VL = s.Z, VR = s.Z;
  lapack_int m = 0;
  info = LAPACKE_ztrevc(LAPACK_COL_MAJOR, 'B', 'B', nullptr, n, s.T.data(), n, VL.data(), n,
                        VR.data(), n, n, &m);
  if (info != 0) throw Error(ErrorKind::numerical_failure, "ztrevc failed");
  info = LAPACKE_zgebak(LAPACK_COL_MAJOR, 'B', 'R', n, ilo, ihi, s.scale.data(), n, VR.data(), n);
  if (info != 0) throw Error(ErrorKind::numerical_failure, "zgebak failed");
  info = LAPACKE_zgebak(LAPACK_COL_MAJOR, 'B', 'L', n, ilo, ihi, s.scale.data(), n, VL.data(), n);
  if (info != 0) throw Error(ErrorKind::numerical_failure, "zgebak failed");

  d.residual_norms.resize(static_cast<std::size_t>(n));
  const double mn = std::max(d.matrix_norm, tiny);
  for (int i = 0; i < n; ++i) {
    VR.col(i).normalize();
    VL.col(i).normalize();
    const cplx yx = VL.col(i).dot(VR.col(i));
    if (std::abs(yx) > 1e3 * eps) VL.col(i) /= std::conj(yx);
    d.residual_norms[static_cast<std::size_t>(i)] =
        (M * VR.col(i) - d.eigenvalues(i) * VR.col(i)).norm() / mn;
  }
  d.right = std::move(VR);
  d.left = std::move(VL);
  return d;
}

EigenDecomposition eigendecompose(const TruncatedOperator& op) {
  EigenDecomposition d = eigendecompose(op.matrix);
  d.N = op.N;
  d.bc = op.bc;
  d.coupling_l1 = op.coupling_l1;
  return d;
}

namespace {

// eigenvector of T for position p, support on positions <= p
VectorXcd schur_eigenvector(const MatrixXcd& T, int p, cplx lambda, double smin) {
  VectorXcd x = VectorXcd::Zero(T.rows());
  x(p) = 1.0;
  for (int k = p - 1; k >= 0; --k) {
    cplx s{};
    for (int l = k + 1; l <= p; ++l) s += T(k, l) * x(l);
    cplx piv = T(k, k) - lambda;
    if (std::abs(piv) < smin) piv = smin;
    x(k) = -s / piv;
  }
  return x;
}

bool touches_active_block(const SchurForm& s, int p, int r) {
  if (s.ihi <= s.ilo) return false;  // nothing was transformed
  const int lo = s.ilo - 1, hi = s.ihi - 1;
  return !(r < lo || p > hi);
}

}  // namespace

ClusterAnalysis analyze_cluster(const EigenDecomposition& d, int i, int j) {
  const int n = d.dim();
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw Error(ErrorKind::invalid_input, "analyze_cluster needs two distinct positions");
  const int p = std::min(i, j), r = std::max(i, j);
  const MatrixXcd& T = d.schur.T;
  const double tnorm = std::max(T.norm(), tiny);
  const double smin = std::max(eps * tnorm, tiny);
  const cplx lam = T(r, r);

  ClusterAnalysis c;
  c.gap = std::abs(T(p, p) - T(r, r));

  VectorXcd xr = VectorXcd::Zero(n);
  xr(r) = 1.0;
  bool parallel = false;
  double tail_mag = 0.0;
  for (int k = r - 1; k >= 0; --k) {
    cplx s{};
    double smag = 0.0;
    for (int l = k + 1; l <= r; ++l) {
      s += T(k, l) * xr(l);
      smag += std::abs(T(k, l)) * std::abs(xr(l));
    }
    if (k == p) {
      c.coupling = s;
      c.coupling_bound = 4.0 * n * eps * smag;
      if (touches_active_block(d.schur, p, r))
        c.coupling_bound += 4.0 * n * eps * tnorm * (1.0 + tail_mag);
      c.coupling_significant = std::abs(s) > c.coupling_bound;
      if (!c.coupling_significant) {
        xr(k) = 0.0;
      } else if (c.gap > 0.0) {
        xr(k) = -s / (T(k, k) - lam);
      } else {
        parallel = true;
        break;
      }
      continue;
    }
    cplx piv = T(k, k) - lam;
    if (std::abs(piv) < smin) piv = smin;
    xr(k) = -s / piv;
    if (k > p) tail_mag += std::abs(xr(k));
  }

  c.first = d.from_schur(schur_eigenvector(T, p, T(p, p), smin));
  c.first.normalize();
  if (parallel) {
    c.second = c.first;
    c.angle = 0.0;
    return c;
  }
  c.second = d.from_schur(xr);
  const double nr = c.second.norm();
  if (!std::isfinite(nr) || nr == 0.0)
    throw Error(ErrorKind::overflow, "cluster eigenvector is not representable");
  c.second /= nr;
  c.angle = std::acos(std::min(1.0, std::abs(c.first.dot(c.second))));
  return c;
}

JordanChain jordan_chain(const EigenDecomposition& d, int i, int j) {
  const int n = d.dim();
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw Error(ErrorKind::invalid_input, "jordan_chain needs two distinct positions");
  const int p = std::min(i, j), r = std::max(i, j);
  const MatrixXcd& T = d.schur.T;
  const double smin = std::max(eps * T.norm(), tiny);
  JordanChain ch;
  ch.lambda = 0.5 * (T(p, p) + T(r, r));

  auto pivot = [&](int k) {
    cplx v = T(k, k) - ch.lambda;
    if (std::abs(v) < smin) v = smin;
    return v;
  };

  VectorXcd ph = VectorXcd::Zero(n);
  ph(p) = 1.0;
  for (int k = p - 1; k >= 0; --k) {
    cplx s{};
    for (int l = k + 1; l <= p; ++l) s += T(k, l) * ph(l);
    ph(k) = -s / pivot(k);
  }
  VectorXcd phi = d.from_schur(ph);
  const double nphi = phi.norm();
  phi /= nphi;
  ph /= nphi;

  VectorXcd w = VectorXcd::Zero(n);
  w(r) = 1.0;
  for (int k = r - 1; k > p; --k) {
    cplx s{};
    for (int l = k + 1; l <= r; ++l) s += T(k, l) * w(l);
    w(k) = -s / pivot(k);
  }
  cplx eta{};
  for (int l = p + 1; l <= r; ++l) eta += T(p, l) * w(l);
  if (eta == cplx{} || !std::isfinite(std::abs(eta)))
    throw Error(ErrorKind::jordan_solve, "cluster has no Jordan coupling");

  VectorXcd ps = (ph(p) / eta) * w;
  ps(p) = 0.0;
  for (int k = p - 1; k >= 0; --k) {
    cplx s{};
    for (int l = k + 1; l <= r; ++l) s += T(k, l) * ps(l);
    ps(k) = (ph(k) - s) / pivot(k);
  }
  VectorXcd psi = d.from_schur(ps);
  psi -= phi.dot(psi) * phi;
  const double npsi = psi.norm();
  if (!std::isfinite(npsi))
    throw Error(ErrorKind::overflow, "associated vector overflows double precision");
  VectorXcd res = d.matrix * psi - ch.lambda * psi - phi;
  ch.residual = res.norm() / std::max(1.0, npsi);
  ch.eigenvector = std::move(phi);
  ch.associated = std::move(psi);
  return ch;
}

std::vector<double> hermitian_eigenvalues(const MatrixXcd& H) {
  const int n = static_cast<int>(H.rows());
  if (n == 0) return {};
  MatrixXcd A = H;
  std::vector<double> w(static_cast<std::size_t>(n));
  lapack_int info = LAPACKE_zheev(LAPACK_COL_MAJOR, 'N', 'U', n, A.data(), n, w.data());
  if (info != 0) throw Error(ErrorKind::numerical_failure, "zheev failed");
  return w;
}

}  // namespace hill
