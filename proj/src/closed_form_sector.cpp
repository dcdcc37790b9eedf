#include <cmath>
#include <numbers>

#include "fluxspec/closed_form.hpp"
#include "fluxspec/errors.hpp"
#include "fluxspec/quadrature.hpp"
#include "fluxspec/special_functions.hpp"

namespace fluxspec::closed_form {

using special::BesselOrder;
using special::bessel_j;

namespace {

constexpr double kDoubleModeBand = 1e-9;

double j11() { return special::first_root_j(BesselOrder(1.0)); }

double radial_integral(const std::function<double(double)>& g, double hi) {
  return quadrature::adaptive_simpson(g, 0.0, hi, 1e-13);
}

}  // namespace

SectorSpec::SectorSpec(double alpha) : alpha_(alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > std::numbers::pi) {
    throw DomainError("SectorSpec: alpha must lie in (0, pi]");
  }
}

double SectorSpec::nu() const noexcept { return std::numbers::pi / alpha_; }

SectorLinearization sector_boundary_linearization() {
  const double j = j11();
  const double radial =
      radial_integral([](double r) { return bessel_j(BesselOrder(0.0), r); }, j);
  return {2.0 / j * radial, bessel_j(BesselOrder(0.0), j)};
}

double sector_boundary_integral(const SectorSpec& spec) {
  const auto lin = sector_boundary_linearization();
  return lin.intercept + lin.slope * spec.alpha();
}

double sector_alpha0() {
  const double target = j11();
  const auto g = [&](double alpha) {
    return special::first_root_j_prime(BesselOrder(std::numbers::pi / alpha)) - target;
  };
  const double lo = 0.5;
  const double hi = 2.0;
  const double g_lo = g(lo);
  const double g_hi = g(hi);
  if (!(g_lo * g_hi < 0.0)) throw NumericalError("sector_alpha0: no sign change on (0.5, 2)");
  return special::bisect(g, {lo, hi, g_lo, g_hi}, 1e-13);
}

SectorMu2 sector_mu2(const SectorSpec& spec) {
  const double radial = j11();
  const double angular = special::first_root_j_prime(BesselOrder(spec.nu()));
  if (std::abs(spec.alpha() - sector_alpha0()) <= kDoubleModeBand) {
    return {radial * radial, ModeParity::double_mode};
  }
  if (radial < angular) return {radial * radial, ModeParity::even};
  return {angular * angular, ModeParity::odd};
}

SectorTrialBound sector_trial_bound(const SectorSpec& spec) {
  const double j = j11();
  const double alpha = spec.alpha();
  const BesselOrder zero(0.0);
  const BesselOrder one(1.0);
  const double mean = sector_boundary_integral(spec) / spec.perimeter();
  // Per unit angle: ∫ j^2 J1(jr)^2 r dr, ∫ J0(jr)^2 r dr, ∫ J0(jr) r dr over [0, 1].
  const double grad = radial_integral(
      [&](double r) {
        const double v = bessel_j(one, j * r);
        return j * j * v * v * r;
      },
      1.0);
  const double sq = radial_integral(
      [&](double r) {
        const double v = bessel_j(zero, j * r);
        return v * v * r;
      },
      1.0);
  const double lin = radial_integral([&](double r) { return bessel_j(zero, j * r) * r; }, 1.0);
  const double energy = alpha * grad;
  const double mass = alpha * sq - 2.0 * mean * alpha * lin + mean * mean * spec.area();
  return {energy / mass, energy, mass, mean};
}

}  // namespace fluxspec::closed_form
