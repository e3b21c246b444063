#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "hill/operator.hpp"

using namespace hill;
using Eigen::MatrixXcd;
using std::numbers::pi;

namespace {

MatrixXcd random_matrix(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> nd;
  MatrixXcd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = cplx(nd(gen), nd(gen));
  return A;
}

// characteristic polynomial by Faddeev-LeVerrier, c[n] = 1
std::vector<cplx> char_poly(const MatrixXcd& A) {
  const int n = static_cast<int>(A.rows());
  std::vector<cplx> c(n + 1);
  c[n] = 1.0;
  MatrixXcd Mk = MatrixXcd::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    Mk = A * Mk + c[n - k + 1] * MatrixXcd::Identity(n, n);
    c[n - k] = -(A * Mk).trace() / double(k);
  }
  return c;
}

// Aberth-Ehrlich simultaneous iteration
std::vector<cplx> aberth_roots(const std::vector<cplx>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<cplx> z(n);
  for (int i = 0; i < n; ++i) z[i] = 3.0 * std::polar(1.0, 2 * pi * i / n + 0.4);
  auto eval = [&](cplx x, cplx& dp) {
    cplx p = c[n];
    dp = 0.0;
    for (int k = n - 1; k >= 0; --k) {
      dp = dp * x + p;
      p = p * x + c[k];
    }
    return p;
  };
  for (int it = 0; it < 500; ++it) {
    double move = 0.0;
    for (int i = 0; i < n; ++i) {
      cplx dp;
      const cplx p = eval(z[i], dp);
      const cplx ratio = p / dp;
      cplx s{};
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      const cplx w = ratio / (1.0 - ratio * s);
      z[i] -= w;
      move = std::max(move, std::abs(w));
    }
    if (move < 1e-15) break;
  }
  return z;
}

}  // namespace

TEST(Assemble, DimensionsAndEntries) {
  FourierSeries q(3);
  q.set(1, {1, 0.5});
  q.set(-3, 2.0);
  const auto p = assemble(q, BoundaryClass::periodic(), 4);
  EXPECT_EQ(p.dim(), 9);
  const auto a = assemble(q, BoundaryClass::antiperiodic(), 4);
  EXPECT_EQ(a.dim(), 8);
  for (const auto* op : {&p, &a}) {
    for (int r = 0; r < op->dim(); ++r) {
      const int kr = op->index_map[r];
      EXPECT_DOUBLE_EQ(op->matrix(r, r).real(), free_eigenvalue(op->bc, kr));
      for (int c = 0; c < op->dim(); ++c) {
        if (r != c) { EXPECT_EQ(op->matrix(r, c), q[kr - op->index_map[c]]); }
      }
    }
  }
  EXPECT_DOUBLE_EQ(free_eigenvalue(BoundaryClass::antiperiodic(), 0), pi * pi);
  EXPECT_EQ(reflected_index(BoundaryClass::antiperiodic(), 0), -1);
}

TEST(Assemble, RealPotentialGivesHermitianMatrix) {
  FourierSeries q(2);
  q.set(1, {0.3, 0.4});
  q.set(-1, {0.3, -0.4});
  q.set(2, 1.0);
  q.set(-2, 1.0);
  const auto op = assemble(q, BoundaryClass::periodic(), 6);
  EXPECT_NEAR((op.matrix - op.matrix.adjoint()).norm(), 0.0, 1e-15);
}

TEST(Eigensolver, RandomMatrixMatchesPolynomialRoots) {
  const MatrixXcd A = random_matrix(6, 7);
  const EigenDecomposition d = eigendecompose(A);
  std::vector<cplx> roots = aberth_roots(char_poly(A));
  ASSERT_EQ(d.dim(), 6);
  for (int i = 0; i < 6; ++i) {
    const cplx l = d.eigenvalues(i);
    double best = 1e300;
    for (cplx r : roots) best = std::min(best, std::abs(r - l));
    EXPECT_LT(best, 1e-9) << "eigenvalue " << l;
  }
}

TEST(Eigensolver, VectorsAreResidualFreeAndBiorthonormal) {
  const MatrixXcd A = random_matrix(12, 11);
  const EigenDecomposition d = eigendecompose(A);
  for (int i = 0; i < d.dim(); ++i) {
    EXPECT_LT(d.residual_norms[i], 1e-13);
    EXPECT_NEAR(d.right.col(i).norm(), 1.0, 1e-14);
    const double r = (A * d.right.col(i) - d.eigenvalues(i) * d.right.col(i)).norm();
    EXPECT_LT(r, 1e-12);
  }
  const MatrixXcd G = d.left.adjoint() * d.right;
  EXPECT_LT((G - MatrixXcd::Identity(12, 12)).norm(), 1e-10);
}

TEST(Cluster, JordanBlockIsCoupled) {
  MatrixXcd A = MatrixXcd::Zero(3, 3);
  A(0, 0) = 2.0;
  A(1, 1) = 2.0;
  A(0, 1) = 1.0;
  A(2, 2) = 7.0;
  const EigenDecomposition d = eigendecompose(A);
  std::vector<int> near;
  for (int i = 0; i < 3; ++i)
    if (std::abs(d.eigenvalues(i) - 2.0) < 1e-6) near.push_back(i);
  ASSERT_EQ(near.size(), 2u);
  const ClusterAnalysis c = analyze_cluster(d, near[0], near[1]);
  EXPECT_TRUE(c.coupling_significant);
  EXPECT_LT(c.angle, 1e-6);

  const JordanChain ch = jordan_chain(d, near[0], near[1]);
  const Eigen::VectorXcd lhs = (A - ch.lambda * MatrixXcd::Identity(3, 3)) * ch.associated;
  EXPECT_LT((lhs - ch.eigenvector).norm(), 1e-12);
  EXPECT_NEAR(std::abs(ch.eigenvector.dot(ch.associated)), 0.0, 1e-12);
}

TEST(Cluster, RepeatedDiagonalIsNotCoupled) {
  MatrixXcd A = MatrixXcd::Zero(3, 3);
  A(0, 0) = A(1, 1) = 2.0;
  A(2, 2) = 7.0;
  const EigenDecomposition d = eigendecompose(A);
  int i = -1, j = -1;
  for (int k = 0; k < 3; ++k)
    if (std::abs(d.eigenvalues(k) - 2.0) < 1e-12) (i < 0 ? i : j) = k;
  const ClusterAnalysis c = analyze_cluster(d, i, j);
  EXPECT_FALSE(c.coupling_significant);
  EXPECT_NEAR(c.angle, pi / 2, 1e-12);
}

TEST(Hermitian, KnownEigenvalues) {
  MatrixXcd H(2, 2);
  H << 2.0, cplx(0, 1), cplx(0, -1), 2.0;
  const auto ev = hermitian_eigenvalues(H);
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0], 1.0, 1e-14);
  EXPECT_NEAR(ev[1], 3.0, 1e-14);
}
