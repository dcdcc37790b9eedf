#include "fluxspec/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fluxspec/errors.hpp"

namespace fluxspec::special {

namespace {

constexpr double kScanStep = 0.25;

void require_finite_nonnegative(double z, const char* what) {
  if (!std::isfinite(z) || z < 0.0) {
    throw DomainError(std::string(what) + " must be finite and nonnegative");
  }
}

}  // namespace

BesselOrder::BesselOrder(double s) : s_(s) { require_finite_nonnegative(s, "Bessel order"); }

double bessel_j(BesselOrder s, double z) {
  require_finite_nonnegative(z, "Bessel argument");
  if (z == 0.0) return s.value() == 0.0 ? 1.0 : 0.0;
  return std::cyl_bessel_j(s.value(), z);
}

double bessel_j_derivative(BesselOrder s, double z) {
  if (!std::isfinite(z) || z <= 0.0) {
    throw DomainError("bessel_j_derivative requires z > 0; use limit_z_jprime_over_j near 0");
  }
  const double nu = s.value();
  if (nu == 0.0) return -std::cyl_bessel_j(1.0, z);
  const double j_s = std::cyl_bessel_j(nu, z);
  if (nu >= 1.0 && z >= nu) {
    return std::cyl_bessel_j(nu - 1.0, z) - nu * j_s / z;
  }
  return -std::cyl_bessel_j(nu + 1.0, z) + nu * j_s / z;
}

double limit_z_jprime_over_j(BesselOrder s) {
  if (s.value() <= 0.0) throw DomainError("limit_z_jprime_over_j requires s > 0");
  return s.value();
}

std::optional<RootBracket> scan_for_bracket(const std::function<double(double)>& f, double lo,
                                            double hi, double step) {
  double a = lo;
  double fa = f(a);
  while (a < hi) {
    const double b = std::min(a + step, hi);
    const double fb = f(b);
    if (fa == 0.0) return RootBracket{a, a, fa, fa};
    if ((fa < 0.0) != (fb < 0.0) || fb == 0.0) return RootBracket{a, b, fa, fb};
    a = b;
    fa = fb;
  }
  return std::nullopt;
}

double bisect(const std::function<double(double)>& f, RootBracket bracket, double width) {
  double lo = bracket.lo;
  double hi = bracket.hi;
  double f_lo = bracket.f_lo;
  if (f_lo == 0.0) return lo;
  if (bracket.f_hi == 0.0) return hi;
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double first_root_j(BesselOrder s) {
  const auto f = [s](double z) { return bessel_j(s, z); };
  const double upper = 4.0 * s.value() + 20.0;
  // J_s > 0 on (0, j_{s,1}); start the scan away from the origin where J_s
  // vanishes for s > 0.
  const auto bracket = scan_for_bracket(f, kScanStep, upper, kScanStep);
  if (!bracket) throw NumericalError("first_root_j: no sign change in (0, 4s + 20)");
  return bisect(f, *bracket);
}

double first_root_j_prime(BesselOrder s) {
  if (s.value() <= 0.0) throw DomainError("first_root_j_prime requires s > 0");
  const auto f = [s](double z) { return bessel_j_derivative(s, z); };
  const double upper = 4.0 * s.value() + 20.0;
  // j'_{s,1} ~ sqrt(2s) for small s, so the scan must start below that.
  const double start = std::min(kScanStep, 0.5 * std::sqrt(2.0 * s.value()));
  const auto bracket = scan_for_bracket(f, start, upper, kScanStep);
  if (!bracket) throw NumericalError("first_root_j_prime: no sign change in (0, 4s + 20)");
  return bisect(f, *bracket);
}

}  // namespace fluxspec::special
