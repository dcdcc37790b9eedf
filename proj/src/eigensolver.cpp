#include "fluxspec/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "fluxspec/errors.hpp"

namespace fluxspec::eigen {

namespace {

// Z = Y V D^{-1/2} from the eigen-decomposition of YᵀMY; drops dependent directions.
Block m_orthonormalise(const Block& y, const BlockMap& mass) {
  const Block my = mass(y);
  const Eigen::MatrixXd gram = y.transpose() * my;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (gram + gram.transpose()));
  const Eigen::VectorXd& d = es.eigenvalues();
  const double keep = 1e-13 * d.cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = d.size() - 1; i >= 0; --i) {
    if (d(i) > keep) cols.push_back(i);
  }
  Block z(y.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    z.col(static_cast<Eigen::Index>(j)) = y * es.eigenvectors().col(cols[j]) / std::sqrt(d(cols[j]));
  }
  return z;
}

}  // namespace

Block start_block(Eigen::Index n, int columns, unsigned seed) {
  Block x(n, columns);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int j = 0; j < columns; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) x(i, j) = j == 0 ? 1.0 : dist(rng);
  }
  return x;
}

void normalise_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      // Strictly larger keeps the first index among near ties.
      if (std::abs(vectors(i, j)) > best * (1.0 + 1e-12)) {
        best = std::abs(vectors(i, j));
        arg = i;
      }
    }
    if (vectors(arg, j) < 0.0) vectors.col(j) *= -1.0;
  }
}

EigenPairs smallest_eigenpairs(const PencilOperators& ops, int k, const Block& start,
                               const SubspaceOptions& options) {
  const Eigen::Index n = ops.dimension;
  if (k < 1 || k > n) throw DomainError("smallest_eigenpairs: k out of range");
  const Eigen::Index p = std::min<Eigen::Index>(n, std::max(2 * k, k + 8));
  if (start.rows() != n || start.cols() < p) {
    throw DomainError("smallest_eigenpairs: start block too small");
  }

  Block x = m_orthonormalise(start.leftCols(p), ops.mass);
  EigenPairs out;
  double best_residual = std::numeric_limits<double>::infinity();
  int since_progress = 0;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    Block z = m_orthonormalise(ops.shift_invert(x), ops.mass);
    if (z.cols() < k) throw NumericalError("subspace iteration lost rank");
    const Block kz = ops.stiffness(z);
    Eigen::MatrixXd reduced = z.transpose() * kz;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rr(0.5 * (reduced + reduced.transpose()));
    x = z * rr.eigenvectors();
    const Block kx = kz * rr.eigenvectors();
    const Block mx = ops.mass(x.leftCols(k));

    Eigen::VectorXd residuals(k);
    bool converged = true;
    double worst = 0.0;
    for (int i = 0; i < k; ++i) {
      const double lambda = rr.eigenvalues()(i);
      residuals(i) = (kx.col(i) - lambda * mx.col(i)).norm() / mx.col(i).norm();
      const double scaled = residuals(i) / std::max(1.0, std::abs(lambda));
      worst = std::max(worst, scaled);
      if (scaled > options.tolerance) converged = false;
    }
    out.values = rr.eigenvalues().head(k);
    out.vectors = x.leftCols(k);
    out.residuals = residuals;
    out.iterations = iter;
    if (converged) break;
    if (worst < 0.5 * best_residual) {
      best_residual = worst;
      since_progress = 0;
    } else if (++since_progress >= options.stagnation_window) {
      if (worst <= options.accept) break;
      throw NumericalError("subspace iteration stagnated with residual " + sci(worst));
    }
    if (iter == options.max_iterations && worst > options.accept) {
      throw NumericalError("subspace iteration did not converge, residual " +
                           sci(worst));
    }
  }
  normalise_signs(out.vectors);
  return out;
}

}  // namespace fluxspec::eigen
