#pragma once

#include <complex>
#include <filesystem>
#include <functional>
#include <string_view>
#include <vector>

namespace hill {

using cplx = std::complex<double>;

// Finitely supported Fourier coefficients, q(x) = sum_k q_k e^{2 pi i k x}.
class FourierSeries {
 public:
  FourierSeries() = default;
  explicit FourierSeries(int bound);

  cplx operator[](int k) const noexcept {
    const int b = bound_;
    return (k < -b || k > b) ? cplx{} : c_[static_cast<std::size_t>(k + b)];
  }
  void set(int k, cplx v);

  // storage extent; coefficients outside [-bound, bound] are zero
  int bound() const noexcept { return bound_; }
  // largest |k| with a nonzero coefficient, -1 for the zero series
  int support_bound() const noexcept;
  std::vector<int> support() const;
  double l1_norm() const noexcept;
  FourierSeries truncated(int bound) const;

  friend FourierSeries operator+(const FourierSeries& a, const FourierSeries& b);
  friend FourierSeries operator-(const FourierSeries& a, const FourierSeries& b);
  friend FourierSeries operator*(cplx s, const FourierSeries& a);

 private:
  int bound_ = 0;
  std::vector<cplx> c_ = std::vector<cplx>(1);
};

FourierSeries convolve(const FourierSeries& a, const FourierSeries& b);

struct TrigTerm {
  int n;
  cplx value;
};

struct PotentialSpec {
  enum class Kind { trig_polynomial, sampled_grid };

  Kind kind = Kind::trig_polynomial;
  std::vector<TrigTerm> terms;   // trig_polynomial
  std::vector<cplx> samples;     // sampled_grid, values at x_j = j/M

  static PotentialSpec trig(std::vector<TrigTerm> terms);
  static PotentialSpec sampled(std::vector<cplx> samples);
  static PotentialSpec sample(const std::function<cplx(double)>& f, int M);

  cplx evaluate(double x) const;  // trig interpolant for sampled grids
};

// {"kind":"trig","coeffs":[{"n":..,"re":..,"im":..}]} or
// {"kind":"sampled","samples_file":"q.csv"} with csv rows x,re,im
PotentialSpec parse_potential_spec(std::string_view json,
                                   const std::filesystem::path& base_dir);
PotentialSpec load_potential_spec(const std::filesystem::path& path);

// Trapezoid DFT on sampled grids needs M >= 4N.
FourierSeries fourier_coefficients(const PotentialSpec& spec, int N);

struct NormalizedPotential {
  FourierSeries q;
  cplx mean_shift;
};
NormalizedPotential normalize_mean(const FourierSeries& q);

struct DerivedFunctions {
  FourierSeries q;
  FourierSeries Q;  // Q_k = q_k/(2 pi i k), Q_0 = -sum Q_k
  FourierSeries S;  // S = Q*Q
  cplx Q0;
};
DerivedFunctions derive_Q_S(const FourierSeries& q);

}  // namespace hill
