#include "fluxspec/extrapolation.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "fluxspec/errors.hpp"

namespace fluxspec::extrapolation {

double quadratic_intercept(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size() || t.size() < 3) {
    throw DomainError("quadratic_intercept needs at least three matched samples");
  }
  const auto n = static_cast<Eigen::Index>(t.size());
  // Scale t to O(1) so the normal equations stay well conditioned.
  double scale = 0.0;
  for (double v : t) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw DomainError("quadratic_intercept: all abscissae are zero");
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = t[i] / scale;
    design(i, 0) = 1.0;
    design(i, 1) = s;
    design(i, 2) = s * s;
    rhs(i) = y[i];
  }
  const Eigen::Vector3d coeffs = design.colPivHouseholderQr().solve(rhs);
  return coeffs(0);
}

double richardson(double coarse, double fine, double order) {
  const double factor = std::pow(2.0, order);
  return (factor * fine - coarse) / (factor - 1.0);
}

double observed_order(double error_coarse, double error_fine) {
  return std::log2(std::abs(error_coarse) / std::abs(error_fine));
}

}  // namespace fluxspec::extrapolation

namespace fluxspec::extrapolation {

double limit_from_below(const std::function<double(double)>& f, double endpoint, int k_first,
                        int k_last) {
  if (k_last - k_first < 2) throw DomainError("limit_from_below needs at least three samples");
  std::vector<double> t;
  std::vector<double> y;
  for (int k = k_first; k <= k_last; ++k) {
    const double gap = endpoint * std::ldexp(1.0, -k);
    t.push_back(gap);
    y.push_back(f(endpoint - gap));
  }
  return quadratic_intercept(t, y);
}

}  // namespace fluxspec::extrapolation
