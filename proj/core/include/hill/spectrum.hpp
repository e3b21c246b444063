#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hill/operator.hpp"

namespace hill {

enum class PairClass { simple, semisimple_double, defective_double };
const char* to_string(PairClass c) noexcept;

struct SpectrumTolerances {
  double gap_rel = 1e-8;     // gap <= gap_rel (1 + |lambda|) counts as double
  double angle = 1e-4;       // parallel eigenvectors below this angle
  double jordan_rel = 1e-6;  // chain residual relative to |M|
};

// Two eigenvalues attributed to the centre of pair n.
struct PairSlot {
  int n = 0;
  int first = -1, second = -1;  // eigenvalue indices, ordered by (Re, Im)
  cplx lambda_plus, lambda_minus;
  double center = 0.0;
  double radius = 0.0;
};

struct PairedSpectrum {
  BoundaryClass bc;
  int n_max = 0;
  std::vector<PairSlot> pairs;  // n = first_pair_index(bc) .. n_max
  std::vector<cplx> head;       // low-lying eigenvalues outside the pair disks
  std::vector<cplx> untrusted;  // the truncation tail beyond n_max
};

// periodic pairs start at n = 1 (n = 0 is the head); antiperiodic at n = 0
inline int first_pair_index(BoundaryClass bc) noexcept { return bc.alpha == 0 ? 1 : 0; }
// largest n whose pair is trusted at truncation N
inline int trusted_pair_limit(int N) noexcept { return N / 4; }

PairedSpectrum pair_spectrum(const EigenDecomposition& d, BoundaryClass bc, int n_max);

struct Classification {
  PairClass cls = PairClass::simple;
  double gap = 0.0;
  double angle = 0.0;
  cplx coupling;
  bool coupling_significant = false;
  Eigen::VectorXcd vec_a, vec_b;  // unit eigenvectors of the two slots
};

Classification classify_pair(const PairSlot& slot, const EigenDecomposition& d,
                             const SpectrumTolerances& tol = {});

// Normal system member for pair n. For defective pairs phi_minus holds the
// associated (Jordan) vector psi_n instead of a second eigenvector.
struct NormalEigenPair {
  int n = 0;
  BoundaryClass bc;
  int N = 0;  // coefficient vectors are indexed by position k + N
  PairClass cls = PairClass::simple;
  cplx lambda_plus, lambda_minus;
  double gap = 0.0, angle = 0.0;
  cplx coupling;
  Eigen::VectorXcd phi_plus, phi_minus;
  cplx u_plus, v_plus, u_minus, v_minus;
  double remainder_sup_plus = 0.0, remainder_l2_plus = 0.0;
  double remainder_sup_minus = 0.0, remainder_l2_minus = 0.0;
  cplx alpha_plus, alpha_minus;  // bilinear self-pairing
  double chi_norm_plus = 0.0, chi_norm_minus = 0.0;  // from left eigenvectors, simple pairs
  double jordan_residual = 0.0;
  bool jordan_failed = false;

  int u_position() const noexcept { return n + N; }
  int v_position() const noexcept { return reflected_index(bc, n) + N; }
};

NormalEigenPair build_normal_pair(const PairSlot& slot, const Classification& c,
                                  const EigenDecomposition& d,
                                  const SpectrumTolerances& tol = {});

// sum_k c_k c_{-k-alpha}: the pairing (f, conj f) in coefficient space
cplx bilinear_pairing(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b,
                      BoundaryClass bc, int N);

// fills u, v, remainders and alpha from phi_plus / phi_minus
void extract_uv_and_remainder(NormalEigenPair& p);

struct NormalSystem {
  PairedSpectrum paired;
  std::vector<NormalEigenPair> pairs;
  cplx mean_shift;  // add to every eigenvalue for the original problem

  const NormalEigenPair* find(int n) const;
};

struct SpectrumRequest {
  BoundaryClass bc;
  int N = 64;
  int n_max = -1;  // defaults to N/4
  SpectrumTolerances tol;
};

// coefficients -> normalized potential -> matrix -> eigensystem -> normal system
NormalSystem compute_normal_system(const FourierSeries& q, const SpectrumRequest& req);

}  // namespace hill
