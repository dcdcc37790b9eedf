#pragma once

// Explicit solutions of -Δu = cu, ∂u/∂ν = -1 and the boundary functional
// f(c) = c ∫_∂Ω u_c dσ on balls, boxes, equilateral triangles and sectors.

#include <array>
#include <span>
#include <vector>

namespace fluxspec::closed_form {

// ---------------------------------------------------------------- balls

class BallSpec {
 public:
  BallSpec(int dimension, double radius);

  int dimension() const noexcept { return n_; }
  double radius() const noexcept { return radius_; }
  /// ω_n = π^{n/2} / Γ(n/2 + 1)
  double unit_volume() const noexcept;
  double volume() const noexcept;
  double perimeter() const noexcept;
  double isoperimetric_ratio() const noexcept { return perimeter() * perimeter() / volume(); }

 private:
  int n_;
  double radius_;
};

/// u_c(r) = a_c r^{1-n/2} J_{n/2-1}(√c r).
class RadialProfile {
 public:
  RadialProfile(int dimension, double c, double coefficient);
  double operator()(double r) const;
  double derivative(double r) const;
  double coefficient() const noexcept { return coefficient_; }

 private:
  int n_;
  double sqrt_c_;
  double coefficient_;
};

RadialProfile ball_flux_profile(const BallSpec& ball, double c);
double ball_f(const BallSpec& ball, double c);
double ball_mu2(const BallSpec& ball);
/// lim_{c -> μ2^-} f(c) by quadratic extrapolation from c = μ2 (1 - 2^-k), k = 6..12.
double ball_limit_at_mu2(const BallSpec& ball);

// ---------------------------------------------------------------- boxes

/// Π (-a_i, a_i) with the half-lengths kept in descending order.
class BoxSpec {
 public:
  explicit BoxSpec(std::vector<double> half_lengths);

  std::span<const double> half_lengths() const noexcept { return a_; }
  int dimension() const noexcept { return static_cast<int>(a_.size()); }
  double largest() const noexcept { return a_.front(); }
  double volume() const noexcept;
  double perimeter() const noexcept;
  double isoperimetric_ratio() const noexcept { return perimeter() * perimeter() / volume(); }
  /// (π / (2 a_1))^2
  double mu2() const noexcept;

 private:
  std::vector<double> a_;
};

struct SymPolyBundle {
  std::vector<double> sigma;  // σ_0..σ_n of a_1..a_n
  std::vector<double> d;      // d_0..d_{n-1} of a_2..a_n
  std::vector<double> e;      // e_0..e_{n-1} of a_2/a_1..a_n/a_1
};

/// u_c(x) = c^{-1/2} Σ cos(√c x_i) / sin(√c a_i).
class BoxFluxSolution {
 public:
  BoxFluxSolution(BoxSpec box, double c);
  double operator()(std::span<const double> x) const;
  std::vector<double> gradient(std::span<const double> x) const;
  double c() const noexcept { return c_; }

 private:
  BoxSpec box_;
  double c_;
  double sqrt_c_;
  std::vector<double> inv_sin_;
};

BoxFluxSolution box_flux_solution(const BoxSpec& box, double c);
double box_f(const BoxSpec& box, double c);
/// Same formula as box_f, but only requires the sine denominators to stay
/// away from zero, so c may exceed μ2 (up to (π/a_1)^2).
double box_f_unrestricted(const BoxSpec& box, double c);
/// min of u_c over the boundary (attained at the corners for c < μ2).
double box_boundary_min(const BoxSpec& box, double c);
double box_limit_at_mu2(const BoxSpec& box);
SymPolyBundle sym_poly_bundle(const BoxSpec& box);
/// box_limit_at_mu2 - (n-1)/n P^2/|Ω|.
double box_inequality_gap(const BoxSpec& box);
/// Lower bound for the gap from Maclaurin's inequality on e_k:
/// 2^n σ_{n-1}/(n σ_n) a_1^{n-1} (n-1) (e_{n-1}^{(n-2)/(n-1)} - e_{n-1}).
double box_gap_lower_bound(const BoxSpec& box);

// ---------------------------------------------------------------- equilateral triangles

/// Side a, vertices (-a/2, 0), (a/2, 0), (0, a√3/2).
class EquilateralSpec {
 public:
  explicit EquilateralSpec(double side);

  double side() const noexcept { return side_; }
  double height() const noexcept;
  double area() const noexcept;
  double perimeter() const noexcept { return 3.0 * side_; }
  double isoperimetric_ratio() const noexcept { return perimeter() * perimeter() / area(); }
  /// 16π^2 / (9 a^2)
  double mu2() const noexcept;
  std::array<std::array<double, 2>, 3> vertices() const noexcept;

 private:
  double side_;
};

enum class ModeKind { symmetric, antisymmetric };

/// Lamé Neumann eigenfunction T_s^{m,n} or T_a^{m,n}, with l = -m - n.
class LameMode {
 public:
  LameMode(EquilateralSpec spec, ModeKind kind, int m, int n);
  double operator()(double x, double y) const;
  double eigenvalue() const noexcept;

 private:
  EquilateralSpec spec_;
  ModeKind kind_;
  int m_;
  int n_;
  int l_;
};

LameMode triangle_mode(const EquilateralSpec& spec, ModeKind kind, int m, int n);

/// u_c = Σ_i cos(√c (s_i - h/2)) / (√c sin(√c h/2)), s_i the distance to
/// side i. Coincides with the explicit μ2 solution at c = μ2.
class TriangleFluxSolution {
 public:
  TriangleFluxSolution(EquilateralSpec spec, double c);
  double operator()(double x, double y) const;
  std::array<double, 2> gradient(double x, double y) const;

 private:
  EquilateralSpec spec_;
  double sqrt_c_;
  double amplitude_;
};

/// The explicit solution at c = μ2 in the side-2 frame, rescaled by a/2.
class TriangleMu2Solution {
 public:
  explicit TriangleMu2Solution(EquilateralSpec spec);
  double operator()(double x, double y) const;

 private:
  EquilateralSpec spec_;
};

TriangleFluxSolution triangle_flux_solution(const EquilateralSpec& spec, double c);
TriangleMu2Solution triangle_flux_solution_at_mu2(const EquilateralSpec& spec);
/// 3 a √c cot(√c h/2) + 12 a/h, valid for 0 < c <= μ2.
double triangle_f(const EquilateralSpec& spec, double c);
double triangle_boundary_min(const EquilateralSpec& spec, double c);
/// μ2 ∫_∂Ω u_{μ2} dσ by Gauss-Legendre quadrature on each side.
double triangle_f_at_mu2(const EquilateralSpec& spec, int points_per_side = 64);

// ---------------------------------------------------------------- sectors

/// Unit-radius sector {r <= 1, |θ| < α/2}.
class SectorSpec {
 public:
  explicit SectorSpec(double alpha);
  double alpha() const noexcept { return alpha_; }
  double area() const noexcept { return 0.5 * alpha_; }
  double perimeter() const noexcept { return 2.0 + alpha_; }
  /// angular order π/α of the first odd mode
  double nu() const noexcept;

 private:
  double alpha_;
};

enum class ModeParity { even, odd, double_mode };

struct SectorMu2 {
  double value;
  ModeParity parity;
};

/// ∫_∂S J_0(j_{1,1} r) ds = (2 / j_{1,1}) ∫_0^{j_{1,1}} J_0 + α J_0(j_{1,1}).
double sector_boundary_integral(const SectorSpec& spec);

/// The boundary integral is affine in α: intercept + slope α.
struct SectorLinearization {
  double intercept;
  double slope;
};
SectorLinearization sector_boundary_linearization();

/// The unique α with j'_{π/α,1} = j_{1,1}.
double sector_alpha0();
SectorMu2 sector_mu2(const SectorSpec& spec);

/// Rayleigh quotient of φ = J_0(j_{1,1} r) - (its boundary mean), an upper
/// bound for κ1(S(α)).
struct SectorTrialBound {
  double value;
  double gradient_energy;
  double mass;
  double boundary_mean;
};
SectorTrialBound sector_trial_bound(const SectorSpec& spec);

}  // namespace fluxspec::closed_form
