#pragma once

// P1 finite elements for the flux problem and the associated spectra.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <memory>
#include <vector>

#include "fluxspec/mesh.hpp"

namespace fluxspec::fem {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct OperatorPair {
  SparseMatrix K;     // ∫ ∇φ_i·∇φ_j
  SparseMatrix M;     // ∫ φ_i φ_j
  Eigen::VectorXd b;  // ∫_∂Ω φ_i dσ
  mesh::Mesh mesh;
  double area = 0.0;
  double perimeter = 0.0;

  Eigen::Index size() const noexcept { return b.size(); }
  double isoperimetric_ratio() const noexcept { return perimeter * perimeter / area; }
};

OperatorPair assemble(const mesh::Mesh& mesh);

struct Spectrum {
  std::vector<double> values;
  Eigen::MatrixXd vectors;  // one M-orthonormal column per value
  std::vector<double> residuals;
};

/// First k pairs of K v = μ M v, k <= 20.
Spectrum neumann_spectrum(const OperatorPair& ops, int k);
/// First k pairs restricted to bᵀw = 0 (Householder null-space reduction).
Spectrum kappa_spectrum(const OperatorPair& ops, int k);

struct KappaOfM {
  double value;
  Eigen::VectorXd minimizer;
  double residual;
};
/// Smallest eigenpair of (K + b bᵀ / m) u = λ M u.
KappaOfM kappa_of_m(const OperatorPair& ops, double m);

/// Indices whose eigenvalues lie within `relative` of spectrum.values[index].
std::vector<int> eigenvalue_group(const Spectrum& spectrum, int index, double relative = 1e-6);
/// bᵀv for a simple eigenvalue; for a grouped eigenvalue the largest |bᵀv|
/// over unit vectors of the grouped eigenspace, i.e. the norm of Vᵀb.
double eigenfunction_boundary_mean(const OperatorPair& ops, const Spectrum& spectrum, int index);

struct FluxSolution {
  double c = 0.0;
  Eigen::VectorXd u;
  // u = constant + deviation; for small c the constant is O(1/c) and would
  // swamp the residual if only u were kept.
  double constant = 0.0;
  Eigen::VectorXd deviation;
  double boundary_integral = 0.0;
  double f_value = 0.0;
  double boundary_min = 0.0;
  double residual = 0.0;  // ‖(K - cM)u + b‖ / ‖b‖, with K·1 = 0 used exactly
};

/// Factorises K - cM for many c values, reusing the symbolic analysis.
class FluxSolver {
 public:
  /// `eigenvalues` are the computed μ_k used for the guard band.
  FluxSolver(const OperatorPair& ops, std::vector<double> eigenvalues);
  ~FluxSolver();
  FluxSolver(const FluxSolver&) = delete;
  FluxSolver& operator=(const FluxSolver&) = delete;

  FluxSolution solve(double c) const;
  /// True when c lies within the relative guard band of a computed μ_k.
  bool in_guard_band(double c) const;
  double mu2() const noexcept { return mu2_; }
  const OperatorPair& operators() const noexcept { return ops_; }

 private:
  struct Impl;
  const OperatorPair& ops_;
  std::vector<double> eigenvalues_;
  double mu2_;
  std::unique_ptr<Impl> impl_;
};

inline constexpr double kGuardBand = 1e-6;

FluxSolution solve_flux(const OperatorPair& ops, double c, const std::vector<double>& eigenvalues);

struct NormChecks {
  double residual = 0.0;
  double edge_boundary_integral = 0.0;
  double boundary_integral_gap = 0.0;  // |edge sum - bᵀu| / max(1, |bᵀu|)
  double green_defect = 0.0;           // |c uᵀMu - uᵀKu - bᵀu| / scale
  bool pass = false;
};
NormChecks solution_norm_checks(const FluxSolution& sol, const OperatorPair& ops);

}  // namespace fluxspec::fem
