#pragma once

// Shift-invert block subspace iteration for symmetric pencils K x = λ M x
// given only through matrix-block products.

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace fluxspec::eigen {

using Block = Eigen::MatrixXd;
using BlockMap = std::function<Block(const Block&)>;

struct PencilOperators {
  Eigen::Index dimension = 0;
  BlockMap stiffness;      // X -> K X
  BlockMap mass;           // X -> M X
  BlockMap shift_invert;   // X -> (K + s M)^{-1} M X
};

struct SubspaceOptions {
  int max_iterations = 2000;
  double tolerance = 1e-10;    // residual <= tolerance * max(1, λ)
  double accept = 1e-8;        // loosest residual returned without throwing
  int stagnation_window = 25;  // iterations without residual progress before giving up
};

struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // M-orthonormal columns
  Eigen::VectorXd residuals;
  int iterations = 0;
};

/// k smallest eigenpairs. The start block must have at least
/// min(n, max(2k, k + 8)) linearly independent columns.
EigenPairs smallest_eigenpairs(const PencilOperators& ops, int k, const Block& start,
                               const SubspaceOptions& options = {});

/// Deterministic start block: the constant vector, then fixed-seed uniform columns.
Block start_block(Eigen::Index n, int columns, unsigned seed = 20240611u);

/// Flip each column so that its largest-magnitude entry is positive.
void normalise_signs(Eigen::MatrixXd& vectors);

}  // namespace fluxspec::eigen
