#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hill {

enum class ErrorKind {
  invalid_input,
  truncation_risk,
  precondition,
  numerical_failure,
  pairing_ambiguity,
  resonance,
  overflow,
  root_isolation,
  jordan_solve,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Eigensolver did not converge; holds whatever eigenvalues were finished.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what,
                   std::vector<std::complex<double>> partial)
      : Error(ErrorKind::numerical_failure, what), partial_(std::move(partial)) {}
  const std::vector<std::complex<double>>& partial() const noexcept {
    return partial_;
  }

 private:
  std::vector<std::complex<double>> partial_;
};

class PairingError : public Error {
 public:
  PairingError(int n, const std::string& what)
      : Error(ErrorKind::pairing_ambiguity, what), n_(n) {}
  int n() const noexcept { return n_; }

 private:
  int n_;
};

}  // namespace hill
