#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fluxspec/errors.hpp"
#include "fluxspec/extrapolation.hpp"
#include "fluxspec/quadrature.hpp"
#include "fluxspec/special_functions.hpp"

using namespace fluxspec;
using special::BesselOrder;

namespace {

// Direct power series in long double, independent of the library route.
double series_j(double s, double z) {
  const long double half = 0.5L * z;
  long double term = std::pow(half, static_cast<long double>(s)) / std::tgamma(static_cast<long double>(s) + 1);
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -half * half / (static_cast<long double>(k) * (k + s));
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum)) break;
  }
  return static_cast<double>(sum);
}

double j(double s, double z) { return special::bessel_j(BesselOrder(s), z); }

}  // namespace

TEST_CASE("bessel_j against the power series") {
  for (double s : {0.0, 0.5, 1.0, 2.0, 2.6743, 5.0}) {
    for (double z = 0.0; z <= 20.0; z += 0.37) {
      CHECK(j(s, z) == doctest::Approx(series_j(s, z)).epsilon(1e-10));
    }
  }
}

TEST_CASE("bessel_j special values") {
  CHECK(j(0, 0) == 1.0);
  CHECK(j(1, 0) == 0.0);
  CHECK(std::abs(j(1, 3.8317)) < 1e-4);
  CHECK(std::abs(j(0.5, 1.0) - std::sqrt(2.0 / std::numbers::pi) * std::sin(1.0)) < 1e-12);
  CHECK(std::abs(series_j(0.5, 1.0) - std::sqrt(2.0 / std::numbers::pi) * std::sin(1.0)) < 1e-12);
}

TEST_CASE("three-term recurrence residual") {
  for (double s : {0.5, 1.0, 2.0, 5.0}) {
    for (int i = 0; i < 100; ++i) {
      const double z = 0.1 + (30.0 - 0.1) * i / 99.0;
      // J_{-1/2} is outside the supported orders; use its closed form
      const double below = s == 0.5 ? std::sqrt(2.0 / (std::numbers::pi * z)) * std::cos(z) : j(s - 1, z);
      const double r = below + j(s + 1, z) - 2.0 * s / z * j(s, z);
      CHECK(std::abs(r) <= 1e-10);
    }
  }
}

TEST_CASE("derivative") {
  const double h = 1e-6;
  const double fd = (j(0, 1 + h) - j(0, 1 - h)) / (2 * h);
  CHECK(special::bessel_j_derivative(BesselOrder(0), 1.0) == doctest::Approx(-j(1, 1.0)).epsilon(1e-12));
  CHECK(std::abs(special::bessel_j_derivative(BesselOrder(0), 1.0) - fd) < 1e-8);
  for (double s : {0.5, 1.5, 3.0}) {
    for (double z : {0.3, 1.0, 4.0, 11.0}) {
      const double d = (j(s, z + h) - j(s, z - h)) / (2 * h);
      CHECK(std::abs(special::bessel_j_derivative(BesselOrder(s), z) - d) < 1e-8);
    }
  }
  // both recurrences at s = 2, z = 0.5
  const double d2 = special::bessel_j_derivative(BesselOrder(2), 0.5);
  CHECK(std::abs(d2 - (j(1, 0.5) - 2.0 / 0.5 * j(2, 0.5))) < 1e-11);
  CHECK(std::abs(d2 - (-j(3, 0.5) + 2.0 / 0.5 * j(2, 0.5))) < 1e-11);
  CHECK(std::abs(special::bessel_j_derivative(BesselOrder(1), 1.8411837813406593)) < 1e-6);
}

TEST_CASE("limit of z J'/J") {
  CHECK(special::limit_z_jprime_over_j(BesselOrder(1)) == 1.0);
  CHECK(special::limit_z_jprime_over_j(BesselOrder(0.5)) == 0.5);
  CHECK(special::limit_z_jprime_over_j(BesselOrder(3)) == 3.0);
  const double z = 1e-5;
  CHECK(z * special::bessel_j_derivative(BesselOrder(2.5), z) / j(2.5, z) == doctest::Approx(2.5).epsilon(1e-8));
}

TEST_CASE("roots") {
  const auto j0 = [](double z) { return series_j(0, z); };
  const double oracle0 = special::bisect(j0, {2.0, 3.0, j0(2.0), j0(3.0)}, 1e-13);
  CHECK(special::first_root_j(BesselOrder(0)) == doctest::Approx(oracle0).epsilon(1e-10));
  CHECK(std::abs(special::first_root_j(BesselOrder(0)) - 2.4048) < 1e-3);
  CHECK(std::abs(special::first_root_j(BesselOrder(1)) - 3.8317) < 1e-3);
  CHECK(std::abs(special::first_root_j_prime(BesselOrder(1)) - 1.8412) < 1e-3);
  CHECK(std::abs(special::first_root_j_prime(BesselOrder(std::numbers::pi / 1.1748)) - 3.8317) < 5e-3);
  const double jp2 = special::first_root_j_prime(BesselOrder(2));
  CHECK(jp2 > special::first_root_j_prime(BesselOrder(1)));
  CHECK(jp2 < special::first_root_j(BesselOrder(2)));
  CHECK_THROWS_AS(special::first_root_j_prime(BesselOrder(0)), DomainError);
}

TEST_CASE("order validation") {
  CHECK_THROWS_AS(BesselOrder(-1.0), DomainError);
  CHECK_THROWS_AS(BesselOrder(std::nan("")), DomainError);
  CHECK_THROWS_AS(j(1, -1.0), DomainError);
}

TEST_CASE("scan and bisect") {
  const auto f = [](double x) { return std::cos(x); };
  const auto br = special::scan_for_bracket(f, 0.0, 3.0, 0.1);
  REQUIRE(br.has_value());
  CHECK(special::bisect(f, *br) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
  CHECK_FALSE(special::scan_for_bracket([](double) { return 1.0; }, 0.0, 1.0, 0.1).has_value());
}

TEST_CASE("quadrature") {
  CHECK(quadrature::gauss_legendre_integral([](double x) { return std::pow(x, 9); }, 0, 1, 5) ==
        doctest::Approx(0.1).epsilon(1e-14));
  CHECK(quadrature::adaptive_simpson([](double x) { return std::exp(x); }, 0, 1, 1e-13) ==
        doctest::Approx(std::exp(1.0) - 1).epsilon(1e-12));
  const auto rule = quadrature::gauss_legendre(16);
  double w = 0;
  for (double v : rule.weights) w += v;
  CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("extrapolation") {
  const double t[] = {0.1, 0.2, 0.3, 0.4};
  double y[4];
  for (int i = 0; i < 4; ++i) y[i] = 3.0 - 2.0 * t[i] + 5.0 * t[i] * t[i];
  CHECK(extrapolation::quadratic_intercept(t, y) == doctest::Approx(3.0).epsilon(1e-12));
  // a + C h^2 sampled at h and h/2
  CHECK(extrapolation::richardson(1.0 + 4e-2, 1.0 + 1e-2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(extrapolation::observed_order(4e-2, 1e-2) == doctest::Approx(2.0));
  const double lim = extrapolation::limit_from_below([](double x) { return 1.0 / (1.0 + x); }, 1.0, 6, 12);
  CHECK(lim == doctest::Approx(0.5).epsilon(1e-7));
}
