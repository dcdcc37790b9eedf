#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fluxspec/closed_form.hpp"
#include "fluxspec/errors.hpp"
#include "fluxspec/special_functions.hpp"
#include "fluxspec/sweeps.hpp"

using namespace fluxspec;
using sweeps::LimitStatus;
using sweeps::Verdict;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("geometric grid") {
  const auto g = sweeps::geometric_grid(1e-4, 1.0, 50);
  REQUIRE(g.size() == 50);
  CHECK(g.front() == doctest::Approx(1e-4));
  CHECK(g.back() == doctest::Approx(1.0));
  for (std::size_t i = 2; i < g.size(); ++i) CHECK(g[i] / g[i - 1] == doctest::Approx(g[1] / g[0]));
  CHECK_THROWS_AS(sweeps::geometric_grid(0.0, 1.0, 10), DomainError);
}

TEST_CASE("limit detector") {
  std::vector<double> gaps, conv, div;
  for (int k = 4; k <= 9; ++k) {
    const double g = std::pow(2.0, -k);
    gaps.push_back(g);
    conv.push_back(3.0 + g - 2 * g * g);
    div.push_back(-1.0 / g);
  }
  const auto a = sweeps::limit_from_samples(gaps, conv, 1.8);
  CHECK(a.status == LimitStatus::converged);
  CHECK(a.value == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(sweeps::limit_from_samples(gaps, div, 1.8).status == LimitStatus::divergent_negative);
}

TEST_CASE("closed-form sweeps") {
  const auto square = geometry::rectangle(0.5, 0.5);
  const double mu2 = *sweeps::closed_form_mu2(square);
  CHECK(mu2 == doctest::Approx(pi * pi));
  const auto rec = sweeps::sweep_f(square, sweeps::geometric_grid(1e-4 * mu2, 0.999 * mu2, 50));
  for (std::size_t i = 0; i < rec.size(); ++i) {
    CHECK(rec[i].f_value > 0);
    CHECK(rec[i].boundary_min > 0);
    if (i) CHECK(rec[i].f_value < rec[i - 1].f_value);
  }
  const auto disk = sweeps::sweep_f(geometry::disk(), sweeps::geometric_grid(1e-3, 3.38, 50));
  for (const auto& r : disk) CHECK(r.f_value > 0);
  CHECK(sweeps::limit_f_at_mu2(square).value == doctest::Approx(4 * 4.0 / 2).epsilon(1e-6));
  CHECK(sweeps::limit_f_at_mu2(geometry::disk()).value == doctest::Approx(2 * pi).epsilon(0.01));
}

TEST_CASE("classification") {
  const auto sq = sweeps::classify_domain(geometry::rectangle(0.5, 0.5));
  CHECK(sq.verdict == Verdict::equality);
  CHECK(sq.in_class_F == sweeps::Tristate::yes);
  CHECK(*sq.m0 == doctest::Approx(0.5 * 16 / (pi * pi)).epsilon(1e-6));
  const auto big = sweeps::classify_domain(geometry::rectangle(1.0, 1.0));
  CHECK(*big.m0 == doctest::Approx(32 / (pi * pi)).epsilon(1e-6));

  const auto d = sweeps::classify_domain(geometry::disk());
  const double jp = special::first_root_j_prime(special::BesselOrder(1));
  CHECK(d.verdict == Verdict::equality);
  CHECK(*d.m0 == doctest::Approx(2 * pi / (jp * jp)).epsilon(1e-6));
  CHECK(sweeps::ball_threshold_formula(closed_form::BallSpec(2, 1.0)) == doctest::Approx(*d.m0).epsilon(1e-6));

  const auto iso = sweeps::classify_domain(geometry::isosceles(pi / 4));
  CHECK(iso.verdict == Verdict::strict);
  CHECK(iso.sign_change);
  CHECK(iso.c0 == doctest::Approx(iso.kappa1_fem).epsilon(0.02));
  CHECK(iso.c0 < iso.mu2);
  CHECK(sweeps::classify_domain(geometry::isosceles(0.6)).verdict == Verdict::strict);

  const auto tri = sweeps::classify_domain(geometry::equilateral(2.0));
  CHECK(tri.kappa1 == doctest::Approx(4.386).epsilon(1e-3));
  CHECK(tri.verdict == Verdict::equality);
}

TEST_CASE("fem limit on the pentagon") {
  const auto p = sweeps::classify_domain(geometry::regular_polygon(5));
  CHECK(p.limit.status == LimitStatus::converged);
  CHECK(p.limit.value == doctest::Approx(0.5 * p.isoperimetric_ratio).epsilon(0.02));
}

TEST_CASE("sector rows") {
  const auto r = sweeps::sector_row(1.0);
  CHECK(r.parity == "even");
  CHECK(r.strict_by_trial);
  CHECK(r.strict_by_fem);
  const double a1 = sweeps::sector_alpha1_trial();
  CHECK(a1 > closed_form::sector_alpha0());
  CHECK(a1 < closed_form::sector_alpha0() + 0.05);
  const auto study = sweeps::sector_study({1.0});
  CHECK(study.window_confirmed);
  CHECK(study.rows.size() == 1);
}
