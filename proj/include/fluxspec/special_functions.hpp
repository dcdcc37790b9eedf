#pragma once

#include <functional>
#include <optional>

namespace fluxspec::special {

/// Nonnegative, finite order s of J_s.
class BesselOrder {
 public:
  explicit BesselOrder(double s);
  double value() const noexcept { return s_; }

 private:
  double s_;
};

/// Sign-changing interval used by the root finders.
struct RootBracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

// Bessel function of the first kind, z >= 0.
double bessel_j(BesselOrder s, double z);

/// J_s'(z) for z > 0. Uses J_{s-1} - s J_s / z when z >= s (and s >= 1),
/// -J_{s+1} + s J_s / z otherwise.
double bessel_j_derivative(BesselOrder s, double z);

/// lim_{z->0} z J_s'(z) / J_s(z) = s, for s > 0.
double limit_z_jprime_over_j(BesselOrder s);

/// First positive zero j_{s,1} of J_s.
double first_root_j(BesselOrder s);

/// First positive zero j'_{s,1} of J_s', s > 0.
double first_root_j_prime(BesselOrder s);

/// Scan [lo, hi] with a fixed step for the first sign change of f.
std::optional<RootBracket> scan_for_bracket(const std::function<double(double)>& f, double lo,
                                            double hi, double step);

/// Bisection until the bracket is narrower than width. Returns the midpoint.
double bisect(const std::function<double(double)>& f, RootBracket bracket, double width = 1e-12);

}  // namespace fluxspec::special
