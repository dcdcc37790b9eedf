#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

#include "fluxspec/eigensolver.hpp"
#include "fluxspec/errors.hpp"
#include "fluxspec/fem.hpp"

namespace fluxspec::fem {

namespace {

using Block = eigen::Block;
using Factor = Eigen::SimplicialLDLT<SparseMatrix>;

// K + sM with s > 0 is SPD; s ~ 1/|Ω| keeps the shift on the scale of μ₂.
struct ShiftedFactor {
  double s;
  Factor ldlt;

  explicit ShiftedFactor(const OperatorPair& ops) : s(1.0 / ops.area) {
    SparseMatrix a = ops.K + s * ops.M;
    ldlt.compute(a);
    if (ldlt.info() != Eigen::Success) throw NumericalError("factorisation of K + sM failed");
  }
};

int block_size(Eigen::Index n, int k) {
  return static_cast<int>(std::min<Eigen::Index>(n, std::max(2 * k, k + 8)));
}

// Orthogonal basis Q of {w : bᵀw = 0}: the reflection H maps b to a
// multiple of e_j, and Q is H with column j deleted.
class HouseholderNullSpace {
 public:
  explicit HouseholderNullSpace(const Eigen::VectorXd& b) {
    b.cwiseAbs().maxCoeff(&pivot_);
    const double norm = b.norm();
    if (norm == 0.0) throw DomainError("kappa_spectrum: boundary vector b is zero");
    v_ = b;
    v_(pivot_) += std::copysign(norm, b(pivot_));
    beta_ = 2.0 / v_.squaredNorm();
  }

  Eigen::Index full() const noexcept { return v_.size(); }
  Eigen::Index reduced() const noexcept { return v_.size() - 1; }

  Block expand(const Block& z) const {
    Block x(full(), z.cols());
    x.topRows(pivot_) = z.topRows(pivot_);
    x.row(pivot_).setZero();
    x.bottomRows(full() - pivot_ - 1) = z.bottomRows(reduced() - pivot_);
    reflect(x);
    return x;
  }

  Eigen::Index pivot() const noexcept { return pivot_; }

  Block restrict(Block x) const {
    reflect(x);
    Block z(reduced(), x.cols());
    z.topRows(pivot_) = x.topRows(pivot_);
    z.bottomRows(reduced() - pivot_) = x.bottomRows(full() - pivot_ - 1);
    return z;
  }

  void reflect(Block& x) const {
    const Eigen::RowVectorXd w = beta_ * (v_.transpose() * x);
    x.noalias() -= v_ * w;
  }

 private:
  Eigen::VectorXd v_;
  Eigen::Index pivot_ = 0;
  double beta_ = 0.0;
};

Spectrum to_spectrum(const eigen::EigenPairs& pairs, Eigen::MatrixXd vectors) {
  Spectrum out;
  out.values.assign(pairs.values.data(), pairs.values.data() + pairs.values.size());
  out.residuals.assign(pairs.residuals.data(), pairs.residuals.data() + pairs.residuals.size());
  out.vectors = std::move(vectors);
  return out;
}

void check_k(const OperatorPair& ops, int k) {
  if (k < 1 || k > 20) throw DomainError("spectrum: k must lie in [1, 20]");
  if (ops.size() < 2 * k + 2) throw DomainError("spectrum: mesh too small for k eigenpairs");
}

}  // namespace

Spectrum neumann_spectrum(const OperatorPair& ops, int k) {
  check_k(ops, k);
  const ShiftedFactor factor(ops);
  eigen::PencilOperators pencil;
  pencil.dimension = ops.size();
  pencil.stiffness = [&](const Block& x) -> Block { return ops.K * x; };
  pencil.mass = [&](const Block& x) -> Block { return ops.M * x; };
  pencil.shift_invert = [&](const Block& x) -> Block { return factor.ldlt.solve(ops.M * x); };
  const Block start = eigen::start_block(ops.size(), block_size(ops.size(), k));
  const auto pairs = eigen::smallest_eigenpairs(pencil, k, start);
  return to_spectrum(pairs, pairs.vectors);
}

Spectrum kappa_spectrum(const OperatorPair& ops, int k) {
  check_k(ops, k);
  const HouseholderNullSpace q(ops.b);
  const ShiftedFactor factor(ops);
  const Eigen::VectorXd a_inv_b = factor.ldlt.solve(ops.b);
  const double b_a_inv_b = ops.b.dot(a_inv_b);

  eigen::PencilOperators pencil;
  pencil.dimension = q.reduced();
  pencil.stiffness = [&](const Block& z) -> Block { return q.restrict(ops.K * q.expand(z)); };
  pencil.mass = [&](const Block& z) -> Block { return q.restrict(ops.M * q.expand(z)); };
  // Solve A y = M Q z + τ b with bᵀy = 0, then return Qᵀ y.
  pencil.shift_invert = [&](const Block& z) -> Block {
    Block y = factor.ldlt.solve(ops.M * q.expand(z));
    const Eigen::RowVectorXd tau = (ops.b.transpose() * y) / b_a_inv_b;
    y.noalias() -= a_inv_b * tau;
    return q.restrict(y);
  };
  const Block start = q.restrict(eigen::start_block(ops.size(), block_size(q.reduced(), k)));
  const auto pairs = eigen::smallest_eigenpairs(pencil, k, start);
  Eigen::MatrixXd full = q.expand(pairs.vectors);
  eigen::normalise_signs(full);
  return to_spectrum(pairs, std::move(full));
}

KappaOfM kappa_of_m(const OperatorPair& ops, double m) {
  if (!std::isfinite(m) || m <= 0.0) throw DomainError("kappa_of_m: m must be > 0");
  const ShiftedFactor factor(ops);
  const Eigen::VectorXd a_inv_b = factor.ldlt.solve(ops.b);
  const double denom = m + ops.b.dot(a_inv_b);
  // Work in x̂ = H u, where H maps b onto the pivot axis. The penalty then
  // reads (‖b‖²/m) x̂_p² and never forms the cancelling sum bᵀu, whose
  // roundoff would be amplified by 1/m.
  const HouseholderNullSpace h(ops.b);
  const Eigen::Index p = h.pivot();
  const double penalty = ops.b.squaredNorm() / m;
  const auto conj = [&](const SparseMatrix& a, Block x) -> Block {
    h.reflect(x);
    Block y = a * x;
    h.reflect(y);
    return y;
  };

  eigen::PencilOperators pencil;
  pencil.dimension = ops.size();
  pencil.stiffness = [&](const Block& x) -> Block {
    Block kx = conj(ops.K, x);
    kx.row(p) += penalty * x.row(p);
    return kx;
  };
  pencil.mass = [&](const Block& x) -> Block { return conj(ops.M, x); };
  // Sherman-Morrison on (K + sM + b bᵀ/m).
  pencil.shift_invert = [&](const Block& x) -> Block {
    Block u = x;
    h.reflect(u);
    Block y = factor.ldlt.solve(ops.M * u);
    const Eigen::RowVectorXd w = (ops.b.transpose() * y) / denom;
    y.noalias() -= a_inv_b * w;
    h.reflect(y);
    return y;
  };
  Block start = eigen::start_block(ops.size(), block_size(ops.size(), 1));
  h.reflect(start);
  const auto pairs = eigen::smallest_eigenpairs(pencil, 1, start);
  Block u = pairs.vectors.col(0);
  h.reflect(u);
  eigen::normalise_signs(u);
  return {pairs.values(0), u.col(0), pairs.residuals(0)};
}

std::vector<int> eigenvalue_group(const Spectrum& spectrum, int index, double relative) {
  const int n = static_cast<int>(spectrum.values.size());
  if (index < 0 || index >= n) throw DomainError("eigenvalue_group: index out of range");
  const double centre = spectrum.values[index];
  const double band = relative * std::abs(centre);
  int lo = index;
  int hi = index;
  while (lo > 0 && std::abs(spectrum.values[lo - 1] - centre) <= band) --lo;
  while (hi + 1 < n && std::abs(spectrum.values[hi + 1] - centre) <= band) ++hi;
  std::vector<int> group;
  for (int i = lo; i <= hi; ++i) group.push_back(i);
  return group;
}

double eigenfunction_boundary_mean(const OperatorPair& ops, const Spectrum& spectrum, int index) {
  const auto group = eigenvalue_group(spectrum, index);
  if (group.size() == 1) return ops.b.dot(spectrum.vectors.col(index));
  double sum = 0.0;
  for (int i : group) {
    const double proj = ops.b.dot(spectrum.vectors.col(i));
    sum += proj * proj;
  }
  return std::sqrt(sum);
}

}  // namespace fluxspec::fem
