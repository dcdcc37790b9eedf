#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "fluxspec/closed_form.hpp"
#include "fluxspec/eigensolver.hpp"
#include "fluxspec/errors.hpp"
#include "fluxspec/fem.hpp"
#include "fluxspec/special_functions.hpp"
#include "fluxspec/sweeps.hpp"

using namespace fluxspec;

namespace {
constexpr double pi = std::numbers::pi;

fem::OperatorPair ops_for(const geometry::DomainSpec& spec, int level) {
  return fem::assemble(mesh::build_at_level(spec, level));
}

const fem::OperatorPair& unit_square() {
  static const auto ops = ops_for(geometry::rectangle(0.5, 0.5), 5);
  return ops;
}
}  // namespace

TEST_CASE("element matrices") {
  geometry::PolygonSpec ref{{{0, 0}, {1, 0}, {0, 1}}};
  const auto ops = fem::assemble(mesh::triangulate(geometry::make_domain({"ref", ref})));
  const Eigen::MatrixXd K = ops.K, M = ops.M;
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(K.row(i).sum()) < 1e-15);
    CHECK(M(i, i) == doctest::Approx(0.5 / 6));
    CHECK(M(i, (i + 1) % 3) == doctest::Approx(0.5 / 12));
  }
  CHECK(K(0, 0) == doctest::Approx(1.0));
  CHECK(ops.b.sum() == doctest::Approx(2 + std::sqrt(2.0)));

  const auto& sq = unit_square();
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(sq.size());
  CHECK(std::abs(one.dot(sq.M * one) - 1.0) < 1e-12);
  CHECK(std::abs(sq.b.sum() - 4.0) < 1e-12);
  CHECK((sq.K * one).norm() < 1e-12);

  mesh::Mesh bad = mesh::triangulate(geometry::make_domain({"ref", ref}));
  bad.nodes[2] = {2.0, 0.0};
  CHECK_THROWS_AS(fem::assemble(bad), DomainError);
}

TEST_CASE("subspace iteration against a dense solver") {
  const int n = 60;
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n), M = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    K(i, i) = 2.0 + 0.01 * i;
    M(i, i) = 1.0 + 0.5 * std::sin(i);
    if (i + 1 < n) K(i, i + 1) = K(i + 1, i) = -1.0, M(i, i + 1) = M(i + 1, i) = 0.1;
  }
  const Eigen::LDLT<Eigen::MatrixXd> shifted(K + 0.1 * M);
  eigen::PencilOperators ops;
  ops.dimension = n;
  ops.stiffness = [&](const eigen::Block& x) -> eigen::Block { return K * x; };
  ops.mass = [&](const eigen::Block& x) -> eigen::Block { return M * x; };
  ops.shift_invert = [&](const eigen::Block& x) -> eigen::Block { return shifted.solve(M * x); };
  const auto pairs = eigen::smallest_eigenpairs(ops, 5, eigen::start_block(n, 13));
  const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> dense(K, M);
  for (int i = 0; i < 5; ++i) {
    CHECK(pairs.values(i) == doctest::Approx(dense.eigenvalues()(i)).epsilon(1e-10));
    CHECK(pairs.residuals(i) <= 1e-8);
  }
  const Eigen::MatrixXd gram = pairs.vectors.transpose() * M * pairs.vectors;
  CHECK((gram - Eigen::MatrixXd::Identity(5, 5)).norm() < 1e-10);
  CHECK(eigen::start_block(n, 13).isApprox(eigen::start_block(n, 13)));
}

TEST_CASE("Neumann spectrum") {
  const auto& sq = unit_square();
  const auto s = fem::neumann_spectrum(sq, 6);
  CHECK(std::abs(s.values[0]) <= 1e-9);
  const Eigen::VectorXd v0 = s.vectors.col(0);
  CHECK((v0.array() - v0.mean()).matrix().norm() <= 1e-8 * v0.norm());
  CHECK(s.values[1] == doctest::Approx(pi * pi).epsilon(0.01));
  CHECK(s.values[2] == doctest::Approx(pi * pi).epsilon(0.01));
  CHECK(s.values[3] == doctest::Approx(2 * pi * pi).epsilon(0.015));
  for (double r : s.residuals) CHECK(r <= 1e-8);
  const Eigen::MatrixXd gram = s.vectors.transpose() * sq.M * s.vectors;
  CHECK((gram - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-10);
  for (std::size_t i = 1; i < s.values.size(); ++i) CHECK(s.values[i] >= s.values[i - 1]);

  const double jp = special::first_root_j_prime(special::BesselOrder(1));
  const auto disk = ops_for(geometry::disk(), 4);
  CHECK(fem::neumann_spectrum(disk, 3).values[1] == doctest::Approx(jp * jp).epsilon(0.01));
  const auto tri = ops_for(geometry::equilateral(2.0), 5);
  CHECK(fem::neumann_spectrum(tri, 3).values[1] == doctest::Approx(4 * pi * pi / 9).epsilon(0.01));
  CHECK_THROWS_AS(fem::neumann_spectrum(sq, 21), DomainError);
}

TEST_CASE("boundary means of eigenfunctions") {
  const auto& sq = unit_square();
  const auto s = fem::neumann_spectrum(sq, 4);
  CHECK(fem::eigenvalue_group(s, 1).size() == 2);
  CHECK(std::abs(fem::eigenfunction_boundary_mean(sq, s, 1)) <= 1e-3 * sq.b.norm());
  const auto tri = ops_for(geometry::equilateral(2.0), 5);
  const auto st = fem::neumann_spectrum(tri, 4);
  CHECK(std::abs(fem::eigenfunction_boundary_mean(tri, st, 1)) <= 1e-3 * tri.b.norm());
  const auto iso = ops_for(geometry::isosceles(pi / 4), 5);
  const auto si = fem::neumann_spectrum(iso, 4);
  CHECK(std::abs(fem::eigenfunction_boundary_mean(iso, si, 1)) > 1e-3 * iso.b.norm());
}

TEST_CASE("constrained spectrum") {
  const auto& sq = unit_square();
  const auto mu = fem::neumann_spectrum(sq, 7);
  const auto kappa = fem::kappa_spectrum(sq, 6);
  for (int i = 0; i < 6; ++i) {
    const Eigen::VectorXd w = kappa.vectors.col(i);
    CHECK(std::abs(sq.b.dot(w)) <= 1e-10 * sq.b.norm() * w.norm());
    CHECK(kappa.values[i] >= mu.values[i] - 0.02 * mu.values[i + 1]);
    CHECK(kappa.values[i] <= mu.values[i + 1] * 1.02);
    CHECK(kappa.residuals[i] <= 1e-8);
  }
  CHECK(kappa.values[0] == doctest::Approx(pi * pi).epsilon(0.01));
  const auto iso = ops_for(geometry::isosceles(pi / 4), 5);
  CHECK(fem::kappa_spectrum(iso, 1).values[0] < fem::neumann_spectrum(iso, 3).values[1] * (1 - 1e-3));
}

TEST_CASE("kappa of m") {
  const auto ops = ops_for(geometry::rectangle(0.5, 0.5), 4);
  CHECK(fem::kappa_of_m(ops, 1e12).value <= 1e-6);
  const double k1 = fem::kappa_spectrum(ops, 1).values[0];
  CHECK(fem::kappa_of_m(ops, 1e-9).value == doctest::Approx(k1).epsilon(1e-3));
  const double v1 = fem::kappa_of_m(ops, 1).value, v2 = fem::kappa_of_m(ops, 2).value,
               v4 = fem::kappa_of_m(ops, 4).value;
  CHECK(v1 >= v2);
  CHECK(v2 >= v4);
  const auto r = fem::kappa_of_m(ops, 2);
  CHECK(r.minimizer.dot(ops.M * r.minimizer) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(fem::kappa_of_m(ops, 0.0), DomainError);
}

TEST_CASE("flux problem against closed forms") {
  const closed_form::BoxSpec box({0.5, 0.5});
  const double exact = closed_form::box_f(box, 1.0);
  double errors[3];
  for (int level = 3; level <= 5; ++level) {
    const auto ops = ops_for(geometry::rectangle(0.5, 0.5), level);
    const auto mu = fem::neumann_spectrum(ops, 3);
    errors[level - 3] = std::abs(fem::solve_flux(ops, 1.0, mu.values).f_value - exact) / exact;
  }
  CHECK(errors[0] <= 0.01);
  CHECK(errors[1] <= 0.0025);
  for (int i = 0; i < 2; ++i) {
    const double rate = std::log2(errors[i] / errors[i + 1]);
    CHECK(rate >= 1.6);
    CHECK(rate <= 2.4);
  }

  const auto disk = fem::assemble(mesh::build(geometry::disk(), 4000, 12000));
  REQUIRE(disk.size() >= 4000);
  const auto sol = fem::solve_flux(disk, 1.0, fem::neumann_spectrum(disk, 3).values);
  CHECK(sol.f_value == doctest::Approx(closed_form::ball_f(closed_form::BallSpec(2, 1.0), 1.0)).epsilon(0.01));
}

TEST_CASE("small c limit and guard band") {
  for (const auto& spec : {geometry::regular_polygon(5), geometry::sector(1.0), geometry::ellipse(1.5, 1.0)}) {
    const auto ops = ops_for(spec, 4);
    const auto mu = fem::neumann_spectrum(ops, 3);
    const fem::FluxSolver solver(ops, mu.values);
    const auto sol = solver.solve(1e-6);
    CHECK(sol.f_value == doctest::Approx(ops.isoperimetric_ratio()).epsilon(0.02));
    CHECK(sol.residual <= 1e-8);
    CHECK(fem::solution_norm_checks(sol, ops).pass);
    CHECK_THROWS_AS(solver.solve(mu.values[1]), NearEigenvalueError);
    CHECK_THROWS_AS(solver.solve(mu.values[1] * (1 + 1e-7)), NearEigenvalueError);
    CHECK_NOTHROW(solver.solve(mu.values[1] * (1 - 1e-5)));
    CHECK_THROWS_AS(solver.solve(-1.0), DomainError);
  }
}

TEST_CASE("solution diagnostics") {
  const auto& sq = unit_square();
  const auto mu = fem::neumann_spectrum(sq, 3);
  const auto sol = fem::solve_flux(sq, 1.0, mu.values);
  const auto d = fem::solution_norm_checks(sol, sq);
  CHECK(std::abs(d.edge_boundary_integral - sq.b.dot(sol.u)) <= 1e-12 * std::abs(sq.b.dot(sol.u)));
  CHECK(d.green_defect <= 1e-8);
  CHECK(d.pass);
  for (int level = 3; level <= 4; ++level) {
    const auto disk = ops_for(geometry::disk(), level);
    const auto s = fem::solve_flux(disk, 2.0, fem::neumann_spectrum(disk, 3).values);
    CHECK(fem::solution_norm_checks(s, disk).pass);
  }
}

TEST_CASE("absolute boundary term bounds kappa of m from above") {
  // λ_m uses (∫|u|)² in place of (∫u)²; since b >= 0, bᵀ|u| >= |bᵀu|.
  const auto ops = ops_for(geometry::rectangle(0.5, 0.5), 4);
  const double m = 1.0;
  const auto km = fem::kappa_of_m(ops, m);
  const auto quotient = [&](const Eigen::VectorXd& v) {
    const double t = ops.b.dot(v.cwiseAbs());
    return (v.dot(ops.K * v) + t * t / m) / v.dot(ops.M * v);
  };
  CHECK(ops.b.minCoeff() >= 0.0);
  CHECK(quotient(km.minimizer) >= km.value * (1 - 1e-10));
  const auto block = eigen::start_block(ops.size(), 8, 99);
  for (int j = 0; j < block.cols(); ++j) CHECK(quotient(block.col(j)) >= km.value);
}
