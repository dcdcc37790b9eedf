#pragma once

// c-sweeps of f(c), classification of κ₁ against μ₂, limits at μ₂ and the
// breaking threshold m₀.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fluxspec/fem.hpp"
#include "fluxspec/geometry.hpp"

namespace fluxspec::sweeps {

struct SweepConfig {
  int node_target = 2000;
  int node_cap = 12000;
  int eigen_count = 6;
  int grid_size = 50;
  double grid_low = 1e-4;       // first grid point, relative to μ₂
  double grid_high_gap = 1e-3;  // last grid point is (1 - gap) μ₂
  double mesh_tolerance = 2e-3; // relative |κ₁ - μ₂| accepted as equality
  double divergence_ratio = 1.8;
  int limit_k_first = 4;
  int limit_k_last = 9;
  double bisection_width = 1e-6;
  /// Levels subtracted from the automatically selected fine level.
  int coarsen = 0;
  /// Explicit fine refinement level; -1 selects it from the node target.
  int level = -1;
};

/// Fine refinement level implied by the configuration.
int fine_level(const geometry::DomainSpec& spec, const SweepConfig& config);

struct SweepRecord {
  std::string domain_id;
  double c = 0.0;
  double f_value = 0.0;
  double boundary_integral = 0.0;
  double boundary_min = 0.0;
  double residual = 0.0;
  bool guard_band_hit = false;
  std::string error;  // empty unless the point failed
};

/// Two consecutive mesh levels with their spectra.
struct Discretization {
  explicit Discretization(geometry::DomainSpec s) : spec(std::move(s)) {}

  geometry::DomainSpec spec;
  int level = 0;
  fem::OperatorPair coarse;
  fem::OperatorPair fine;
  fem::Spectrum mu_coarse;
  fem::Spectrum mu_fine;
  fem::Spectrum kappa_coarse;
  fem::Spectrum kappa_fine;
  std::vector<double> mu;     // Richardson-extrapolated
  std::vector<double> kappa;  // Richardson-extrapolated

  double mu2_fine() const { return mu_fine.values.at(1); }
};

Discretization discretize(const geometry::DomainSpec& spec, const SweepConfig& config = {});

/// P²/|Ω| for the smooth domain (closed-form shapes) or the mesh.
double isoperimetric_ratio(const geometry::DomainSpec& spec);
bool has_closed_form(const geometry::DomainSpec& spec);
/// Exact μ₂ where it is known in closed form.
std::optional<double> closed_form_mu2(const geometry::DomainSpec& spec);

/// Geometric grid of `count` points in [lo, hi].
std::vector<double> geometric_grid(double lo, double hi, int count);

std::vector<SweepRecord> sweep_f(const geometry::DomainSpec& spec, const std::vector<double>& grid,
                                 const SweepConfig& config = {});
std::vector<SweepRecord> sweep_f_closed_form(const geometry::DomainSpec& spec,
                                             const std::vector<double>& grid);
std::vector<SweepRecord> sweep_f_fem(const fem::FluxSolver& solver, const std::string& id,
                                     const std::vector<double>& grid);

enum class LimitStatus { converged, divergent_negative, inconclusive };

struct LimitResult {
  LimitStatus status = LimitStatus::inconclusive;
  double value = 0.0;
  std::vector<double> gaps;     // μ₂ - c
  std::vector<double> samples;  // f at μ₂ - gap
};

/// Quadratic extrapolation of f(μ₂(1 - 2^-k)) with the ratio test for blow-up.
LimitResult limit_from_samples(std::vector<double> gaps, std::vector<double> samples,
                               double divergence_ratio);
LimitResult limit_f_at_mu2_fem(const fem::FluxSolver& solver, const SweepConfig& config = {});
LimitResult limit_f_at_mu2(const geometry::DomainSpec& spec, const SweepConfig& config = {});

enum class Verdict { equality, strict, inconclusive };
enum class Tristate { yes, no, inconclusive };

struct DomainClassification {
  std::string domain_id;
  double mu2 = 0.0;
  double kappa1 = 0.0;
  double kappa1_fem = 0.0;  // Richardson κ₁, NaN for closed-form-only domains
  double c0 = 0.0;
  bool sign_change = false;
  Verdict verdict = Verdict::inconclusive;
  Tristate in_class_F = Tristate::inconclusive;
  std::optional<double> m0;
  LimitResult limit;
  double isoperimetric_ratio = 0.0;
  std::vector<SweepRecord> sweep;
};

DomainClassification classify_domain(const geometry::DomainSpec& spec,
                                     const SweepConfig& config = {});

/// m₀ = (n - 1) P² / (n μ₂ |Ω|) for balls.
double ball_threshold_formula(const closed_form::BallSpec& ball);

const char* to_string(Verdict v);
const char* to_string(Tristate t);
const char* to_string(LimitStatus s);

// ---------------------------------------------------------------- observation and sector reports

struct ObservationLine {
  std::string item;
  std::string detail;
  double measured = 0.0;
  double target = 0.0;
  bool pass = false;
};

struct FamilyRow {
  std::string domain_id;
  double parameter = 0.0;
  double limit_f = 0.0;
  std::string limit_status;
  double half_ratio = 0.0;  // P²/(2|Ω|)
  double boundary_min = 0.0;
  std::string in_class_F;
};

struct ObservationReport {
  std::vector<FamilyRow> polygons;
  std::vector<FamilyRow> super_equilateral;
  std::vector<FamilyRow> sub_equilateral;
  std::vector<FamilyRow> rhombi;
  std::vector<FamilyRow> ellipses;
  std::vector<ObservationLine> lines;
};

struct ObservationCatalog {
  std::vector<int> polygon_sides{4, 5, 6, 8};
  std::vector<double> super_apertures;  // default {π/3, 0.45π, 0.6π}
  std::vector<double> sub_apertures;    // default {π/4}
  std::vector<double> rhombus_angles;   // default {π/3, 5π/12, π/2}
  std::vector<double> ellipse_ratios{1.0, 1.25, 1.5};
  double tolerance = 0.02;

  static ObservationCatalog defaults();
};

ObservationReport observation_suite(const ObservationCatalog& catalog,
                                    const SweepConfig& config = {});

struct SectorRow {
  double alpha = 0.0;
  double mu2 = 0.0;
  std::string parity;
  double kappa1_fem = 0.0;
  double trial_bound = 0.0;
  bool strict_by_trial = false;
  bool strict_by_fem = false;
};

struct SectorReport {
  double alpha0 = 0.0;
  double alpha1_trial = 0.0;  // where the trial bound meets μ₂ above α₀
  std::vector<SectorRow> rows;
  SectorRow window_row;  // at (α₀ + α₁) / 2
  bool window_confirmed = false;  // some α in (α₀, α₁) is odd-only and strict
};

SectorRow sector_row(double alpha, const SweepConfig& config = {});
/// Bisection for the first α > α₀ where the trial bound reaches μ₂.
double sector_alpha1_trial();
SectorReport sector_study(const std::vector<double>& alphas, const SweepConfig& config = {});

}  // namespace fluxspec::sweeps
