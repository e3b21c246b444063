#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "hill/potential.hpp"

namespace hill {

// alpha = 0 periodic, alpha = 1 antiperiodic; basis e^{2 pi i (k + alpha/2) x}
struct BoundaryClass {
  int alpha = 0;
  static constexpr BoundaryClass periodic() { return {0}; }
  static constexpr BoundaryClass antiperiodic() { return {1}; }
  double shift() const noexcept { return 0.5 * alpha; }
  friend bool operator==(BoundaryClass, BoundaryClass) = default;
};

const char* to_string(BoundaryClass bc) noexcept;

// unperturbed eigenvalue of the k-th exponential
double free_eigenvalue(BoundaryClass bc, int k) noexcept;
// index of the partner exponential with the same free eigenvalue
inline int reflected_index(BoundaryClass bc, int k) noexcept { return -k - bc.alpha; }
// pair centre (2 pi (n + alpha/2))^2
inline double pair_center(BoundaryClass bc, int n) noexcept { return free_eigenvalue(bc, n); }

struct TruncatedOperator {
  int N = 0;
  BoundaryClass bc;
  Eigen::MatrixXcd matrix;
  std::vector<int> index_map;  // position -> k; k runs -N..N (alpha=0) or -N..N-1
  double coupling_l1 = 0.0;    // sum |q_k| over the entries used

  int dim() const noexcept { return static_cast<int>(index_map.size()); }
  int position(int k) const noexcept { return k + N; }
  bool holds(int k) const noexcept { return position(k) >= 0 && position(k) < dim(); }
};

TruncatedOperator assemble(const FourierSeries& q, BoundaryClass bc, int N);

struct SchurForm {
  Eigen::MatrixXcd T;  // upper triangular
  Eigen::MatrixXcd Z;  // unitary, for the balanced matrix
  int ilo = 1, ihi = 1;  // LAPACK 1-based active block
  std::vector<double> scale;
};

struct EigenDecomposition {
  Eigen::VectorXcd eigenvalues;  // eigenvalues(i) == schur.T(i, i)
  Eigen::MatrixXcd right;        // unit columns
  Eigen::MatrixXcd left;         // columns y with y^H M = lambda y^H, y^H x = 1
  std::vector<double> residual_norms;  // |Mx - lambda x| / |M|
  SchurForm schur;
  Eigen::MatrixXcd matrix;
  double matrix_norm = 0.0;  // Frobenius
  // carried from the operator when built from one
  int N = 0;
  BoundaryClass bc;
  double coupling_l1 = 0.0;

  int dim() const noexcept { return static_cast<int>(eigenvalues.size()); }
  // T coordinates -> original coordinates
  Eigen::VectorXcd from_schur(const Eigen::VectorXcd& t) const;
};

EigenDecomposition eigendecompose(const Eigen::MatrixXcd& M);
EigenDecomposition eigendecompose(const TruncatedOperator& op);

// Two Schur positions with (nearly) equal eigenvalues.
struct ClusterAnalysis {
  double gap = 0.0;
  cplx coupling;               // effective off-diagonal T coupling between the two positions
  double coupling_bound = 0.0; // rounding bound on the coupling
  bool coupling_significant = false;
  Eigen::VectorXcd first;      // unit eigenvectors, original coordinates
  Eigen::VectorXcd second;
  double angle = 0.0;          // principal angle between them
};
ClusterAnalysis analyze_cluster(const EigenDecomposition& d, int i, int j);

struct JordanChain {
  cplx lambda;
  Eigen::VectorXcd eigenvector;  // unit
  Eigen::VectorXcd associated;   // (M - lambda) psi = phi, psi orthogonal to phi
  double residual = 0.0;         // |(M - lambda) psi - phi| / max(1, |psi|)
};
JordanChain jordan_chain(const EigenDecomposition& d, int i, int j);

// ascending eigenvalues of a Hermitian matrix
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& H);

}  // namespace hill
