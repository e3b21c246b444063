#pragma once

#include <complex>
#include <map>
#include <memory>
#include <vector>

#include "hill/operator.hpp"
#include "hill/potential.hpp"

namespace hill {

struct Discriminant {
  cplx lambda;
  cplx delta;  // y1(1) + y2'(1)
  int step_count = 0;
  double error_estimate = 0.0;  // Richardson: |delta_S - delta_{S/2}| / 15
};

struct OracleOptions {
  int min_steps = 8192;
  int steps_per_index = 1024;  // steps grow with the oscillation of the pair
  int count_points = 64;       // argument-principle samples on the disk boundary
  int count_steps = 2048;
  int max_newton = 60;
};

struct OraclePair {
  int n = 0;
  BoundaryClass bc;
  cplx first, second;  // ordered by (Re, Im); equal for a double root
  bool double_root = false;
  int steps = 0;
  cplx center;    // free centre plus the mean of q
  double radius = 0.0;
  int winding = 0;
  double noise = 0.0;  // Richardson estimate of the characteristic function
};

// Classical RK4 shooting of -y'' + q y = lambda y over one period, with the
// potential tabulated once per step count.
class DiscriminantOracle {
 public:
  explicit DiscriminantOracle(PotentialSpec spec, OracleOptions opts = {});
  ~DiscriminantOracle();
  DiscriminantOracle(DiscriminantOracle&&) noexcept;
  DiscriminantOracle& operator=(DiscriminantOracle&&) noexcept;

  Discriminant discriminant(cplx lambda, int steps) const;
  OraclePair find_pair(BoundaryClass bc, int n) const;

  cplx mean() const;        // mean of the interpolated potential
  double l1_norm() const;   // integral of |q - mean|

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Discriminant discriminant(const PotentialSpec& q, cplx lambda, int steps);
OraclePair find_pair(const PotentialSpec& q, BoundaryClass bc, int n,
                     const OracleOptions& opts = {});

}  // namespace hill
