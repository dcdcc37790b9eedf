#include <cmath>
#include <numbers>

#include "fluxspec/closed_form.hpp"
#include "fluxspec/errors.hpp"
#include "fluxspec/quadrature.hpp"

namespace fluxspec::closed_form {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

// Distances from (x, y) to the bottom, right and left sides.
std::array<double, 3> side_distances(double height, double x, double y) {
  return {y, 0.5 * (height - kSqrt3 * x - y), 0.5 * (height + kSqrt3 * x - y)};
}

constexpr std::array<std::array<double, 2>, 3> kDistanceGradients = {
    {{0.0, 1.0}, {-0.8660254037844386, -0.5}, {0.8660254037844386, -0.5}}};

}  // namespace

EquilateralSpec::EquilateralSpec(double side) : side_(side) {
  if (!std::isfinite(side) || side <= 0.0) throw DomainError("EquilateralSpec: side must be > 0");
}

double EquilateralSpec::height() const noexcept { return 0.5 * kSqrt3 * side_; }

double EquilateralSpec::area() const noexcept { return 0.5 * side_ * height(); }

double EquilateralSpec::mu2() const noexcept { return 16.0 * kPi * kPi / (9.0 * side_ * side_); }

std::array<std::array<double, 2>, 3> EquilateralSpec::vertices() const noexcept {
  return {{{-0.5 * side_, 0.0}, {0.5 * side_, 0.0}, {0.0, height()}}};
}

LameMode::LameMode(EquilateralSpec spec, ModeKind kind, int m, int n)
    : spec_(spec), kind_(kind), m_(m), n_(n), l_(-m - n) {
  if (m == 0 && n == 0) throw DomainError("triangle_mode: (m, n) = (0, 0) is the constant mode");
}

double LameMode::operator()(double x, double y) const {
  // Formulas live on the side-2 triangle with vertices (-1,0), (1,0), (0,√3).
  const double scale = 2.0 / spec_.side();
  const double xs = scale * x;
  const double ys = scale * y;
  const auto radial = [&](int k) { return std::cos(kPi * k / kSqrt3 * (kSqrt3 - ys)); };
  const auto lateral = [&](int k) {
    const double arg = kPi * k / 3.0 * xs;
    return kind_ == ModeKind::symmetric ? std::cos(arg) : std::sin(arg);
  };
  return radial(l_) * lateral(m_ - n_) + radial(m_) * lateral(n_ - l_) +
         radial(n_) * lateral(l_ - m_);
}

double LameMode::eigenvalue() const noexcept {
  const double scale = 2.0 / spec_.side();
  return 4.0 / 9.0 * kPi * kPi * (m_ * m_ + m_ * n_ + n_ * n_) * scale * scale;
}

LameMode triangle_mode(const EquilateralSpec& spec, ModeKind kind, int m, int n) {
  return LameMode(spec, kind, m, n);
}

TriangleFluxSolution::TriangleFluxSolution(EquilateralSpec spec, double c)
    : spec_(spec), sqrt_c_(std::sqrt(c)) {
  if (!std::isfinite(c) || c <= 0.0 || c > spec.mu2()) {
    throw DomainError("triangle_flux_solution: c must lie in (0, mu2]");
  }
  amplitude_ = 1.0 / (sqrt_c_ * std::sin(0.5 * sqrt_c_ * spec.height()));
}

double TriangleFluxSolution::operator()(double x, double y) const {
  const double half = 0.5 * spec_.height();
  double u = 0.0;
  for (double s : side_distances(spec_.height(), x, y)) u += std::cos(sqrt_c_ * (s - half));
  return amplitude_ * u;
}

std::array<double, 2> TriangleFluxSolution::gradient(double x, double y) const {
  const double half = 0.5 * spec_.height();
  const auto s = side_distances(spec_.height(), x, y);
  std::array<double, 2> g{0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    const double w = -amplitude_ * sqrt_c_ * std::sin(sqrt_c_ * (s[i] - half));
    g[0] += w * kDistanceGradients[i][0];
    g[1] += w * kDistanceGradients[i][1];
  }
  return g;
}

TriangleMu2Solution::TriangleMu2Solution(EquilateralSpec spec) : spec_(spec) {}

double TriangleMu2Solution::operator()(double x, double y) const {
  const double half_side = 0.5 * spec_.side();
  const double xs = x / half_side;
  const double ys = y / half_side;
  const double normaliser = 2.0 * kPi / 3.0 * std::sin(kPi / kSqrt3);
  const double u2 = (2.0 * std::cos(kPi * xs / kSqrt3) * std::cos(kPi * ys / 3.0) +
                     std::cos(kPi / kSqrt3 - 2.0 / 3.0 * kPi * ys)) /
                    normaliser;
  return half_side * u2;
}

TriangleFluxSolution triangle_flux_solution(const EquilateralSpec& spec, double c) {
  return TriangleFluxSolution(spec, c);
}

TriangleMu2Solution triangle_flux_solution_at_mu2(const EquilateralSpec& spec) {
  return TriangleMu2Solution(spec);
}

double triangle_f(const EquilateralSpec& spec, double c) {
  if (!std::isfinite(c) || c <= 0.0 || c > spec.mu2()) {
    throw DomainError("triangle_f: c must lie in (0, mu2]");
  }
  const double k = std::sqrt(c);
  const double a = spec.side();
  const double h = spec.height();
  return 3.0 * a * k / std::tan(0.5 * k * h) + 12.0 * a / h;
}

double triangle_boundary_min(const EquilateralSpec& spec, double c) {
  if (!std::isfinite(c) || c <= 0.0 || c > spec.mu2()) {
    throw DomainError("triangle_boundary_min: c must lie in (0, mu2]");
  }
  // On each side u = A (cos(kh/2) + 2 cos(k(s - h/2))); the vertices are minimal.
  const double k = std::sqrt(c);
  const double theta = 0.5 * k * spec.height();
  return 3.0 * std::cos(theta) / (k * std::sin(theta));
}

double triangle_f_at_mu2(const EquilateralSpec& spec, int points_per_side) {
  const TriangleMu2Solution u(spec);
  const auto v = spec.vertices();
  double integral = 0.0;
  for (int side = 0; side < 3; ++side) {
    const auto& p = v[side];
    const auto& q = v[(side + 1) % 3];
    const auto along = [&](double t) {
      return u(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]));
    };
    integral += spec.side() * quadrature::gauss_legendre_integral(along, 0.0, 1.0, points_per_side);
  }
  return spec.mu2() * integral;
}

}  // namespace fluxspec::closed_form
