#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace fluxspec {

/// Precondition violation: the arguments are outside the operation's domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation could not reach its accuracy contract (bracketing failure,
/// nonconvergent iteration, singular factorization).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested shift c sits inside the guard band around a Neumann
/// eigenvalue; callers should extrapolate instead of solving.
class NearEigenvalueError : public NumericalError {
 public:
  NearEigenvalueError(const std::string& what, double c, double eigenvalue)
      : NumericalError(what), c_(c), eigenvalue_(eigenvalue) {}
  double c() const noexcept { return c_; }
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double c_;
  double eigenvalue_;
};

/// %.3e, for residuals in error messages.
inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace fluxspec
