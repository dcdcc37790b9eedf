#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fluxspec/closed_form.hpp"
#include "fluxspec/errors.hpp"
#include "fluxspec/special_functions.hpp"

using namespace fluxspec;
using namespace fluxspec::closed_form;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("ball geometry and mu2") {
  const BallSpec disk(2, 1.0);
  CHECK(disk.volume() == doctest::Approx(pi));
  CHECK(disk.perimeter() == doctest::Approx(2 * pi));
  CHECK(BallSpec(3, 1.0).volume() == doctest::Approx(4 * pi / 3));
  const double jp = special::first_root_j_prime(special::BesselOrder(1));
  CHECK(ball_mu2(disk) == doctest::Approx(jp * jp).epsilon(1e-12));
  CHECK(std::abs(ball_mu2(disk) - 3.390) < 1e-3);
  CHECK(ball_mu2(BallSpec(2, 2.0)) == doctest::Approx(ball_mu2(disk) / 4).epsilon(1e-12));
  CHECK_THROWS_AS(BallSpec(1, 1.0), DomainError);
  CHECK_THROWS_AS(BallSpec(2, 0.0), DomainError);
}

TEST_CASE("ball f limits") {
  const BallSpec disk(2, 1.0);
  CHECK(std::abs(ball_f(disk, 1e-10) - 4 * pi) < 1e-6);
  CHECK(std::abs(ball_limit_at_mu2(disk) - 2 * pi) < 1e-6);
  CHECK(std::abs(ball_limit_at_mu2(BallSpec(3, 1.0)) - 8 * pi) < 1e-5);
  for (int n = 2; n <= 5; ++n) {
    const BallSpec b(n, 1.3);
    CHECK(std::abs(ball_f(b, 1e-10) - b.isoperimetric_ratio()) < 1e-6 * b.isoperimetric_ratio());
    CHECK(ball_limit_at_mu2(b) ==
          doctest::Approx((n - 1.0) / n * b.isoperimetric_ratio()).epsilon(1e-6));
  }
  CHECK_THROWS_AS(ball_f(disk, ball_mu2(disk)), DomainError);
  CHECK_THROWS_AS(ball_f(disk, -1.0), DomainError);
}

TEST_CASE("ball profile solves the radial problem") {
  const BallSpec b(3, 2.0);
  const double c = 0.5;
  const auto u = ball_flux_profile(b, c);
  CHECK(u.derivative(2.0) == doctest::Approx(-1.0).epsilon(1e-10));
  const double h = 1e-4;
  for (double r : {0.4, 1.0, 1.7, 2.0}) {
    const double d2 = (u(r + h) - 2 * u(r) + u(r - h)) / (h * h);
    const double d1 = (u(r + h) - u(r - h)) / (2 * h);
    const double lap = d2 + 2.0 / r * d1;
    CHECK(std::abs(-lap - c * u(r)) < 1e-6 * std::max(1.0, std::abs(u(r))));
  }
  // nearly flat for small c
  const auto flat = ball_flux_profile(BallSpec(2, 1.0), 1e-4);
  const double lo = flat(1.0), hi = flat(0.0);
  CHECK(std::abs(hi - lo) * 1e-4 <= 1e-2);
}

TEST_CASE("box solution and f") {
  const BoxSpec square({1.0, 1.0});
  const double c = pi * pi / 16;
  const double x0[] = {0.0, 0.0};
  CHECK(box_flux_solution(square, c)(x0) == doctest::Approx(8 * std::sqrt(2.0) / pi).epsilon(1e-12));
  CHECK(std::abs(box_f(square, c) - (2 * pi + 8)) < 1e-10);
  CHECK(std::abs(box_f(square, 1e-10) - 16) < 1e-6);
  CHECK(std::abs(box_limit_at_mu2(square) - 8) < 1e-8);
  CHECK(box_limit_at_mu2(BoxSpec({1.0, 1.0, 1.0})) == doctest::Approx(48).epsilon(1e-12));
  CHECK(square.mu2() == doctest::Approx(pi * pi / 4));
  // Neumann data: gradient on face x1 = a1 is (1, 0) · (-1)
  const auto sol = box_flux_solution(BoxSpec({2.0, 1.0}), 0.3);
  const double face[] = {2.0, 0.4};
  CHECK(sol.gradient(face)[0] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("box limit matches extrapolated f") {
  for (auto a : {std::vector<double>{2.0, 1.0}, std::vector<double>{1.5, 1.0, 0.5}}) {
    const BoxSpec box(a);
    double samples[3];
    for (int i = 0; i < 3; ++i) samples[i] = box_f(box, box.mu2() * (1 - std::pow(2.0, -20 - i)));
    CHECK(std::abs(samples[2] - box_limit_at_mu2(box)) < 1e-5);
  }
}

TEST_CASE("symmetric polynomial inequality") {
  CHECK(std::abs(box_inequality_gap(BoxSpec({1.0, 1.0, 1.0}))) < 1e-9);
  CHECK(box_inequality_gap(BoxSpec({2.0, 1.0})) > 0);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int n = 2; n <= 6; ++n) {
    for (int k = 0; k < 200; ++k) {
      std::vector<double> a(n);
      for (auto& v : a) v = u(rng);
      CHECK(box_inequality_gap(BoxSpec(a)) >= -1e-9);
    }
  }
  const auto bundle = sym_poly_bundle(BoxSpec({3.0, 2.0, 1.0}));
  CHECK(bundle.sigma[1] == doctest::Approx(6));
  CHECK(bundle.sigma[2] == doctest::Approx(11));
  CHECK(bundle.sigma[3] == doctest::Approx(6));
}

TEST_CASE("Lame modes") {
  const EquilateralSpec tri(2.0);
  CHECK(triangle_mode(tri, ModeKind::symmetric, 0, 1).eigenvalue() == doctest::Approx(4 * pi * pi / 9));
  CHECK_THROWS_AS(triangle_mode(tri, ModeKind::symmetric, 0, 0), DomainError);
  const auto v = tri.vertices();
  const double h = 1e-4;
  for (auto kind : {ModeKind::symmetric, ModeKind::antisymmetric}) {
    for (auto [m, n] : {std::pair{0, 1}, std::pair{1, 1}, std::pair{1, 2}}) {
      const auto mode = triangle_mode(tri, kind, m, n);
      for (int i = 1; i <= 7; ++i) {
        for (int k = 1; k <= 7; ++k) {
          const double s = i / 8.0, t = k / 8.0 * (1 - s);
          const double x = v[0][0] + s * (v[1][0] - v[0][0]) + t * (v[2][0] - v[0][0]);
          const double y = v[0][1] + s * (v[1][1] - v[0][1]) + t * (v[2][1] - v[0][1]);
          const double lap = (mode(x + h, y) + mode(x - h, y) + mode(x, y + h) + mode(x, y - h) - 4 * mode(x, y)) / (h * h);
          CHECK(std::abs(-lap - mode.eigenvalue() * mode(x, y)) < 1e-5);
        }
      }
      // zero normal derivative on the bottom side
      for (double x : {-0.7, 0.1, 0.55}) CHECK(std::abs(mode(x, h) - mode(x, -h)) / (2 * h) < 1e-6);
    }
  }
}

TEST_CASE("triangle flux at mu2") {
  const EquilateralSpec tri(2.0);
  const auto u = triangle_flux_solution_at_mu2(tri);
  const auto uc = triangle_flux_solution(tri, tri.mu2());
  const double h = 1e-5;
  CHECK((u(0, h) - u(0, -h)) / (2 * h) == doctest::Approx(1.0).epsilon(1e-6));  // -∂u/∂y = -(-1)
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-1, 1);
  const double cy = tri.height() / 3;
  for (int i = 0; i < 20; ++i) {
    const double x = 0.4 * d(rng), y = cy + 0.3 * d(rng);
    const double c = std::cos(2 * pi / 3), s = std::sin(2 * pi / 3);
    const double xr = c * x - s * (y - cy), yr = cy + s * x + c * (y - cy);
    CHECK(std::abs(u(x, y) - u(xr, yr)) < 1e-9);
    CHECK(std::abs(u(x, y) - uc(x, y)) < 1e-9);
  }
  const double f = triangle_f_at_mu2(tri);
  CHECK(f > 6 * std::sqrt(3.0));
  CHECK(f == doctest::Approx(10.741179).epsilon(1e-6));
  CHECK(std::abs(triangle_f_at_mu2(tri, 32) - f) < 1e-10);
  CHECK(triangle_f_at_mu2(EquilateralSpec(4.0)) == doctest::Approx(f).epsilon(1e-12));
  CHECK(std::abs(triangle_f(tri, 1e-10) - tri.isoperimetric_ratio()) < 1e-6);
  CHECK(triangle_f(tri, tri.mu2()) == doctest::Approx(f).epsilon(1e-9));
}

TEST_CASE("sector") {
  const auto lin = sector_boundary_linearization();
  for (double a = 0.05; a <= pi; a += 0.05) {
    CHECK(std::abs(sector_boundary_integral(SectorSpec(a)) - (0.57009 - 0.40276 * a)) < 1e-4);
  }
  CHECK(sector_boundary_integral(SectorSpec(1.1748)) > 0);
  CHECK(-lin.intercept / lin.slope == doctest::Approx(1.4154).epsilon(1e-4));
  const double a0 = sector_alpha0();
  CHECK(std::abs(a0 - 1.1748) < 1e-3);
  const double j11 = special::first_root_j(special::BesselOrder(1));
  auto m = sector_mu2(SectorSpec(1.0));
  CHECK(m.parity == ModeParity::even);
  CHECK(m.value == doctest::Approx(j11 * j11));
  m = sector_mu2(SectorSpec(1.3));
  CHECK(m.parity == ModeParity::odd);
  const double jp = special::first_root_j_prime(special::BesselOrder(pi / 1.3));
  CHECK(m.value == doctest::Approx(jp * jp));
  CHECK(sector_mu2(SectorSpec(a0)).parity == ModeParity::double_mode);
  const auto trial = sector_trial_bound(SectorSpec(1.0));
  CHECK(trial.value < j11 * j11);
  CHECK(trial.value > 0);
}
