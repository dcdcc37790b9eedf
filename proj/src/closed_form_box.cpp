#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "fluxspec/closed_form.hpp"
#include "fluxspec/errors.hpp"

namespace fluxspec::closed_form {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSineGuard = 1e-8;

// Elementary symmetric polynomials of xs by prepending one variable at a time.
std::vector<double> elementary_symmetric(std::span<const double> xs) {
  std::vector<double> e(xs.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t k = i + 1; k >= 1; --k) e[k] += xs[i] * e[k - 1];
  }
  return e;
}

void require_regular_sines(const BoxSpec& box, double c, const char* who) {
  const double sqrt_c = std::sqrt(c);
  for (double a : box.half_lengths()) {
    const double phase = sqrt_c * a;
    const double nearest = kPi * std::round(phase / kPi);
    if (std::abs(phase - nearest) <= kSineGuard) {
      throw DomainError(std::string(who) + ": sqrt(c) a_i is too close to a multiple of pi");
    }
  }
}

void require_below_box_mu2(const BoxSpec& box, double c, const char* who) {
  if (!std::isfinite(c) || c <= 0.0) throw DomainError(std::string(who) + ": c must be > 0");
  if (c >= box.mu2()) throw DomainError(std::string(who) + ": c must be below mu2 = (pi/2a1)^2");
  require_regular_sines(box, c, who);
}

}  // namespace

BoxSpec::BoxSpec(std::vector<double> half_lengths) : a_(std::move(half_lengths)) {
  if (a_.empty()) throw DomainError("BoxSpec: need at least one half-length");
  for (double a : a_) {
    if (!std::isfinite(a) || a <= 0.0) throw DomainError("BoxSpec: half-lengths must be > 0");
  }
  std::sort(a_.begin(), a_.end(), std::greater<>());
}

double BoxSpec::volume() const noexcept {
  double v = 1.0;
  for (double a : a_) v *= 2.0 * a;
  return v;
}

double BoxSpec::perimeter() const noexcept {
  // 2^n σ_{n-1}: each pair of opposite faces contributes 2 |Ω| / (2 a_i).
  double p = 0.0;
  for (double a : a_) p += volume() / a;
  return p;
}

double BoxSpec::mu2() const noexcept {
  const double k = kPi / (2.0 * a_.front());
  return k * k;
}

BoxFluxSolution::BoxFluxSolution(BoxSpec box, double c)
    : box_(std::move(box)), c_(c), sqrt_c_(std::sqrt(c)) {
  for (double a : box_.half_lengths()) inv_sin_.push_back(1.0 / std::sin(sqrt_c_ * a));
}

double BoxFluxSolution::operator()(std::span<const double> x) const {
  if (x.size() != inv_sin_.size()) throw DomainError("BoxFluxSolution: dimension mismatch");
  double u = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) u += std::cos(sqrt_c_ * x[i]) * inv_sin_[i];
  return u / sqrt_c_;
}

std::vector<double> BoxFluxSolution::gradient(std::span<const double> x) const {
  if (x.size() != inv_sin_.size()) throw DomainError("BoxFluxSolution: dimension mismatch");
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = -std::sin(sqrt_c_ * x[i]) * inv_sin_[i];
  return g;
}

BoxFluxSolution box_flux_solution(const BoxSpec& box, double c) {
  require_below_box_mu2(box, c, "box_flux_solution");
  return BoxFluxSolution(box, c);
}

double box_f_unrestricted(const BoxSpec& box, double c) {
  if (!std::isfinite(c) || c <= 0.0) throw DomainError("box_f_unrestricted: c must be > 0");
  require_regular_sines(box, c, "box_f_unrestricted");
  const double sqrt_c = std::sqrt(c);
  const double volume = box.volume();
  const auto a = box.half_lengths();
  double f = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double cross = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j != i) cross += 1.0 / a[j];
    }
    f += sqrt_c * (volume / a[i]) / std::tan(sqrt_c * a[i]) + (volume / a[i]) * cross;
  }
  return f;
}

double box_f(const BoxSpec& box, double c) {
  require_below_box_mu2(box, c, "box_f");
  return box_f_unrestricted(box, c);
}

double box_boundary_min(const BoxSpec& box, double c) {
  require_below_box_mu2(box, c, "box_boundary_min");
  // Each cos(√c x_i) term is minimised at |x_i| = a_i; the corner attains all at once.
  const double sqrt_c = std::sqrt(c);
  double u = 0.0;
  for (double a : box.half_lengths()) u += 1.0 / std::tan(sqrt_c * a);
  return u / sqrt_c;
}

SymPolyBundle sym_poly_bundle(const BoxSpec& box) {
  const auto a = box.half_lengths();
  SymPolyBundle bundle;
  bundle.sigma = elementary_symmetric(a);
  bundle.d = elementary_symmetric(a.subspan(1));
  std::vector<double> ratios;
  for (std::size_t i = 1; i < a.size(); ++i) ratios.push_back(a[i] / a[0]);
  bundle.e = elementary_symmetric(ratios);
  return bundle;
}

double box_limit_at_mu2(const BoxSpec& box) {
  const auto a = box.half_lengths();
  const int n = box.dimension();
  if (n < 2) throw DomainError("box_limit_at_mu2: dimension must be at least 2");
  const SymPolyBundle p = sym_poly_bundle(box);
  const double a1 = a[0];
  double sum = 0.0;
  for (int i = 1; i < n; ++i) {
    // cot(π/2) is exactly zero; do not evaluate 1/tan there.
    if (a[i] == a1) continue;
    sum += std::ldexp(kPi, n - 1) * p.sigma[n] / (a1 * a[i]) / std::tan(0.5 * kPi * a[i] / a1);
  }
  return sum + std::ldexp(p.sigma[n - 2], n + 1);
}

double box_inequality_gap(const BoxSpec& box) {
  const int n = box.dimension();
  return box_limit_at_mu2(box) - (n - 1.0) / n * box.isoperimetric_ratio();
}

double box_gap_lower_bound(const BoxSpec& box) {
  const int n = box.dimension();
  if (n < 2) throw DomainError("box_gap_lower_bound: dimension must be at least 2");
  const SymPolyBundle p = sym_poly_bundle(box);
  const double a1 = box.largest();
  const double e_last = p.e[n - 1];
  const double maclaurin = std::pow(e_last, (n - 2.0) / (n - 1.0)) - e_last;
  return std::ldexp(p.sigma[n - 1], n) / (n * p.sigma[n]) * std::pow(a1, n - 1) * (n - 1.0) *
         maclaurin;
}

}  // namespace fluxspec::closed_form
