#pragma once

#include <functional>
#include <vector>

namespace fluxspec::quadrature {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, nodes by Newton iteration on P_n.
GaussRule gauss_legendre(int n);

/// Integral of f over [a, b] with one n-point Gauss-Legendre panel.
double gauss_legendre_integral(const std::function<double(double)>& f, double a, double b, int n);

/// Adaptive Simpson with the usual (S2 - S1)/15 correction.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tolerance = 1e-12, int max_depth = 50);

}  // namespace fluxspec::quadrature
