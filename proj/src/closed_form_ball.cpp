#include <cmath>
#include <numbers>

#include "fluxspec/closed_form.hpp"
#include "fluxspec/errors.hpp"
#include "fluxspec/extrapolation.hpp"
#include "fluxspec/special_functions.hpp"

namespace fluxspec::closed_form {

using special::BesselOrder;
using special::bessel_j;

namespace {

constexpr double kSingularBand = 1e-8;

void require_below_mu2(double c, double mu2, const char* who) {
  if (!std::isfinite(c) || c <= 0.0 || c >= mu2) {
    throw DomainError(std::string(who) + ": c must lie in (0, mu2)");
  }
  if (mu2 - c <= kSingularBand * mu2) {
    throw DomainError(std::string(who) + ": c is numerically singular (within 1e-8 of mu2)");
  }
}

}  // namespace

BallSpec::BallSpec(int dimension, double radius) : n_(dimension), radius_(radius) {
  if (dimension < 2) throw DomainError("BallSpec: dimension must be at least 2");
  if (!std::isfinite(radius) || radius <= 0.0) throw DomainError("BallSpec: radius must be > 0");
}

double BallSpec::unit_volume() const noexcept {
  return std::pow(std::numbers::pi, 0.5 * n_) / std::tgamma(0.5 * n_ + 1.0);
}

double BallSpec::volume() const noexcept { return unit_volume() * std::pow(radius_, n_); }

double BallSpec::perimeter() const noexcept {
  return n_ * unit_volume() * std::pow(radius_, n_ - 1);
}

RadialProfile::RadialProfile(int dimension, double c, double coefficient)
    : n_(dimension), sqrt_c_(std::sqrt(c)), coefficient_(coefficient) {}

double RadialProfile::operator()(double r) const {
  const double nu = 0.5 * n_ - 1.0;
  if (r == 0.0) {
    return coefficient_ * std::pow(0.5 * sqrt_c_, nu) / std::tgamma(nu + 1.0);
  }
  return coefficient_ * std::pow(r, -nu) * bessel_j(BesselOrder(nu), sqrt_c_ * r);
}

double RadialProfile::derivative(double r) const {
  if (r == 0.0) return 0.0;
  // (r^{-ν} J_ν(√c r))' = -√c r^{-ν} J_{ν+1}(√c r)
  const double nu = 0.5 * n_ - 1.0;
  return -coefficient_ * sqrt_c_ * std::pow(r, -nu) * bessel_j(BesselOrder(nu + 1.0), sqrt_c_ * r);
}

double ball_mu2(const BallSpec& ball) {
  const double s = 0.5 * ball.dimension();
  const BesselOrder order(s);
  const auto radial_condition = [&](double z) {
    return z * special::bessel_j_derivative(order, z) - (s - 1.0) * bessel_j(order, z);
  };
  const auto bracket = special::scan_for_bracket(radial_condition, 0.25, 4.0 * s + 20.0, 0.25);
  if (!bracket) throw NumericalError("ball_mu2: no root of z J'_{n/2} - (n-2)/2 J_{n/2}");
  const double p = special::bisect(radial_condition, *bracket, 1e-13);
  return (p / ball.radius()) * (p / ball.radius());
}

RadialProfile ball_flux_profile(const BallSpec& ball, double c) {
  require_below_mu2(c, ball_mu2(ball), "ball_flux_profile");
  const int n = ball.dimension();
  const double radius = ball.radius();
  const double nu = 0.5 * n - 1.0;
  const double z = std::sqrt(c) * radius;
  const BesselOrder order(nu);
  // a_c [(1 - n/2) R^{-n/2} J_ν(z) + R^{1-n/2} √c J_ν'(z)] = -1
  const double bracket = (1.0 - 0.5 * n) * std::pow(radius, -0.5 * n) * bessel_j(order, z) +
                         std::pow(radius, 1.0 - 0.5 * n) * std::sqrt(c) *
                             special::bessel_j_derivative(order, z);
  return RadialProfile(n, c, -1.0 / bracket);
}

double ball_f(const BallSpec& ball, double c) {
  require_below_mu2(c, ball_mu2(ball), "ball_f");
  const int n = ball.dimension();
  const double s = 0.5 * n;
  const double z = std::sqrt(c) * ball.radius();
  const double ratio =
      z * bessel_j(BesselOrder(s - 1.0), z) / (s * bessel_j(BesselOrder(s), z));
  return 0.5 * n * n * ball.unit_volume() * std::pow(ball.radius(), n - 2) * ratio;
}

double ball_limit_at_mu2(const BallSpec& ball) {
  const double mu2 = ball_mu2(ball);
  return extrapolation::limit_from_below([&](double c) { return ball_f(ball, c); }, mu2, 6, 12);
}

}  // namespace fluxspec::closed_form
