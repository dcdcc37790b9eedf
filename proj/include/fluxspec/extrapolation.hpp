#pragma once

#include <span>

namespace fluxspec::extrapolation {

/// Least-squares fit y = a + b t + c t^2; returns a (the value at t = 0).
double quadratic_intercept(std::span<const double> t, std::span<const double> y);

/// Two-level Richardson extrapolation for an error of order h^order, with the
/// fine mesh at half the coarse spacing.
double richardson(double coarse, double fine, double order = 2.0);

/// Observed convergence order log2(|e_coarse| / |e_fine|).
double observed_order(double error_coarse, double error_fine);

}  // namespace fluxspec::extrapolation

#include <functional>

namespace fluxspec::extrapolation {

/// One-sided limit of f at `endpoint` from below: samples
/// f(endpoint (1 - 2^-k)) for k in [k_first, k_last] and returns the
/// intercept of a quadratic least-squares fit in (endpoint - c).
double limit_from_below(const std::function<double(double)>& f, double endpoint, int k_first,
                        int k_last);

}  // namespace fluxspec::extrapolation
