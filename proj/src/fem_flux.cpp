#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>

#include "fluxspec/errors.hpp"
#include "fluxspec/fem.hpp"

namespace fluxspec::fem {

namespace {

constexpr double kResidualTarget = 1e-8;

}  // namespace

struct FluxSolver::Impl {
  Eigen::SimplicialLDLT<SparseMatrix> ldlt;
};

FluxSolver::FluxSolver(const OperatorPair& ops, std::vector<double> eigenvalues)
    : ops_(ops), eigenvalues_(std::move(eigenvalues)), impl_(std::make_unique<Impl>()) {
  if (eigenvalues_.size() < 2) throw DomainError("FluxSolver needs at least mu_1 and mu_2");
  std::sort(eigenvalues_.begin(), eigenvalues_.end());
  // μ₁ = 0 exactly; the computed value only carries roundoff.
  eigenvalues_.front() = 0.0;
  mu2_ = eigenvalues_[1];
  const SparseMatrix pattern = ops_.K - ops_.M;
  impl_->ldlt.analyzePattern(pattern);
}

FluxSolver::~FluxSolver() = default;

// μ₁ = 0 is left out: the constant mode is split off analytically in solve,
// so small c is well conditioned.
bool FluxSolver::in_guard_band(double c) const {
  for (std::size_t k = 1; k < eigenvalues_.size(); ++k) {
    if (std::abs(c - eigenvalues_[k]) < kGuardBand * mu2_) return true;
  }
  return false;
}

FluxSolution FluxSolver::solve(double c) const {
  if (!std::isfinite(c) || c <= 0.0) throw DomainError("solve_flux: c must be > 0");
  for (std::size_t k = 1; k < eigenvalues_.size(); ++k) {
    if (std::abs(c - eigenvalues_[k]) < kGuardBand * mu2_) {
      throw NearEigenvalueError("solve_flux: c is inside the guard band of a Neumann eigenvalue",
                                c, eigenvalues_[k]);
    }
  }
  const SparseMatrix a = ops_.K - c * ops_.M;
  // Testing against 1 fixes the constant part: c·α|Ω| = P.
  const Eigen::VectorXd m1 = ops_.M * Eigen::VectorXd::Ones(ops_.size());
  const double alpha = ops_.b.sum() / (c * m1.sum());
  const Eigen::VectorXd rhs = c * alpha * m1 - ops_.b;
  const double b_norm = ops_.b.norm();
  const auto residual_of = [&](const Eigen::VectorXd& w) { return (a * w - rhs).norm() / b_norm; };

  Eigen::VectorXd w;
  double residual = std::numeric_limits<double>::infinity();
  impl_->ldlt.factorize(a);
  if (impl_->ldlt.info() == Eigen::Success) {
    w = impl_->ldlt.solve(rhs);
    residual = residual_of(w);
    for (int step = 0; step < 3 && residual > 1e-2 * kResidualTarget; ++step) {
      w += impl_->ldlt.solve(rhs - a * w);
      residual = residual_of(w);
    }
  }
  if (!(residual <= kResidualTarget)) {
    Eigen::SparseLU<SparseMatrix> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) throw NumericalError("solve_flux: singular factorisation");
    w = lu.solve(rhs);
    w += lu.solve(rhs - a * w);
    residual = residual_of(w);
    if (!(residual <= kResidualTarget)) {
      throw NumericalError("solve_flux: residual " + sci(residual) + " above 1e-8");
    }
  }

  FluxSolution sol;
  sol.c = c;
  sol.constant = alpha;
  sol.u = w.array() + alpha;
  sol.boundary_integral = alpha * ops_.b.sum() + ops_.b.dot(w);
  sol.f_value = c * sol.boundary_integral;
  sol.boundary_min = std::numeric_limits<double>::infinity();
  for (const auto& e : ops_.mesh.boundary_edges) sol.boundary_min = std::min(sol.boundary_min, w(e[0]));
  sol.boundary_min += alpha;
  sol.deviation = std::move(w);
  sol.residual = residual;
  return sol;
}

FluxSolution solve_flux(const OperatorPair& ops, double c, const std::vector<double>& eigenvalues) {
  return FluxSolver(ops, eigenvalues).solve(c);
}

NormChecks solution_norm_checks(const FluxSolution& sol, const OperatorPair& ops) {
  NormChecks out;
  const Eigen::VectorXd& u = sol.u;
  const bool split = sol.deviation.size() == u.size();
  const Eigen::VectorXd m1 = ops.M * Eigen::VectorXd::Ones(u.size());
  if (split) {
    out.residual = ((ops.K - sol.c * ops.M) * sol.deviation - sol.c * sol.constant * m1 + ops.b).norm() /
                   ops.b.norm();
  } else {
    out.residual = ((ops.K - sol.c * ops.M) * u + ops.b).norm() / ops.b.norm();
  }
  double edge_sum = 0.0;
  for (const auto& e : ops.mesh.boundary_edges) {
    const auto& p = ops.mesh.nodes[e[0]];
    const auto& q = ops.mesh.nodes[e[1]];
    edge_sum += 0.5 * std::hypot(q[0] - p[0], q[1] - p[1]) * (u(e[0]) + u(e[1]));
  }
  out.edge_boundary_integral = edge_sum;
  const double btu = ops.b.dot(u);
  out.boundary_integral_gap = std::abs(edge_sum - btu) / std::max(1.0, std::abs(btu));
  double mass = sol.c * u.dot(ops.M * u);
  double energy = u.dot(ops.K * u);
  if (split) {
    // K annihilates constants, so only the deviation carries energy.
    const Eigen::VectorXd& w = sol.deviation;
    const double a = sol.constant;
    mass = sol.c * (a * a * m1.sum() + 2.0 * a * m1.dot(w) + w.dot(ops.M * w));
    energy = w.dot(ops.K * w);
  }
  const double scale = std::max({std::abs(mass), std::abs(energy), std::abs(btu)});
  out.green_defect = std::abs(mass - energy - btu) / scale;
  out.pass = out.residual <= kResidualTarget && out.boundary_integral_gap <= 1e-12 &&
             out.green_defect <= 1e-8;
  return out;
}

}  // namespace fluxspec::fem
