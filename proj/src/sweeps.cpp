#include "fluxspec/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fluxspec/closed_form.hpp"
#include "fluxspec/errors.hpp"
#include "fluxspec/extrapolation.hpp"
#include "fluxspec/mesh.hpp"
#include "fluxspec/quadrature.hpp"

namespace fluxspec::sweeps {

namespace {

using closed_form::BallSpec;
using closed_form::BoxSpec;
using closed_form::EquilateralSpec;
using geometry::DiskDomain;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> richardson_list(const fem::Spectrum& coarse, const fem::Spectrum& fine) {
  std::vector<double> out;
  for (std::size_t i = 0; i < fine.values.size(); ++i) {
    out.push_back(extrapolation::richardson(coarse.values[i], fine.values[i]));
  }
  return out;
}

double ellipse_perimeter(double a, double b) {
  return quadrature::adaptive_simpson(
      [&](double t) { return std::hypot(a * std::sin(t), b * std::cos(t)); }, 0.0,
      2.0 * std::numbers::pi, 1e-13);
}

SweepRecord failed_record(const std::string& id, double c, const std::string& why) {
  SweepRecord r;
  r.domain_id = id;
  r.c = c;
  r.f_value = r.boundary_integral = r.boundary_min = r.residual = kNaN;
  r.error = why;
  return r;
}

double bisect_sign_change(const std::function<double(double)>& f, double lo, double hi, double width) {
  double f_lo = f(lo);
  while (hi - lo > width * hi) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Root of the closed-form box f beyond μ₂, before √c a₁ = π.
std::optional<double> box_c0_beyond_mu2(const BoxSpec& box) {
  const double mu2 = box.mu2();
  const double top = 4.0 * mu2 * (1.0 - 1e-9);
  const auto f = [&](double c) { return closed_form::box_f_unrestricted(box, c); };
  const auto grid = geometric_grid(mu2 * (1.0 + 1e-6), top, 400);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double fa;
    double fb;
    try {
      fa = f(grid[i]);
      fb = f(grid[i + 1]);
    } catch (const DomainError&) {
      continue;
    }
    if (fa > 0.0 && fb <= 0.0) return bisect_sign_change(f, grid[i], grid[i + 1], 1e-12);
  }
  return std::nullopt;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::equality: return "equality";
    case Verdict::strict: return "strict";
    case Verdict::inconclusive: break;
  }
  return "inconclusive";
}

const char* to_string(Tristate t) {
  switch (t) {
    case Tristate::yes: return "yes";
    case Tristate::no: return "no";
    case Tristate::inconclusive: break;
  }
  return "inconclusive";
}

const char* to_string(LimitStatus s) {
  switch (s) {
    case LimitStatus::converged: return "converged";
    case LimitStatus::divergent_negative: return "divergent-negative";
    case LimitStatus::inconclusive: break;
  }
  return "inconclusive";
}

int fine_level(const geometry::DomainSpec& spec, const SweepConfig& config) {
  if (config.level >= 0) return config.level;
  return std::max(0, mesh::select_level(spec, config.node_target, config.node_cap) - config.coarsen);
}

Discretization discretize(const geometry::DomainSpec& spec, const SweepConfig& config) {
  Discretization d(spec);
  d.level = std::max(1, fine_level(spec, config));
  const mesh::Mesh coarse = mesh::build_at_level(spec, d.level - 1);
  d.coarse = fem::assemble(coarse);
  d.fine = fem::assemble(mesh::refine(coarse, 1));
  d.mu_coarse = fem::neumann_spectrum(d.coarse, config.eigen_count + 1);
  d.mu_fine = fem::neumann_spectrum(d.fine, config.eigen_count + 1);
  d.kappa_coarse = fem::kappa_spectrum(d.coarse, config.eigen_count);
  d.kappa_fine = fem::kappa_spectrum(d.fine, config.eigen_count);
  d.mu = richardson_list(d.mu_coarse, d.mu_fine);
  d.kappa = richardson_list(d.kappa_coarse, d.kappa_fine);
  return d;
}

bool has_closed_form(const geometry::DomainSpec& spec) {
  return std::holds_alternative<DiskDomain>(spec.shape) ||
         std::holds_alternative<BoxSpec>(spec.shape) ||
         std::holds_alternative<EquilateralSpec>(spec.shape);
}

std::optional<double> closed_form_mu2(const geometry::DomainSpec& spec) {
  if (const auto* d = std::get_if<DiskDomain>(&spec.shape)) return closed_form::ball_mu2(d->ball);
  if (const auto* b = std::get_if<BoxSpec>(&spec.shape)) return b->mu2();
  if (const auto* t = std::get_if<EquilateralSpec>(&spec.shape)) return t->mu2();
  if (const auto* s = std::get_if<geometry::SectorDomain>(&spec.shape)) {
    return closed_form::sector_mu2(s->sector).value;
  }
  return std::nullopt;
}

double isoperimetric_ratio(const geometry::DomainSpec& spec) {
  if (const auto* d = std::get_if<DiskDomain>(&spec.shape)) return d->ball.isoperimetric_ratio();
  if (const auto* b = std::get_if<BoxSpec>(&spec.shape)) return b->isoperimetric_ratio();
  if (const auto* t = std::get_if<EquilateralSpec>(&spec.shape)) return t->isoperimetric_ratio();
  if (const auto* e = std::get_if<geometry::EllipseSpec>(&spec.shape)) {
    const double p = ellipse_perimeter(e->a, e->b);
    return p * p / (std::numbers::pi * e->a * e->b);
  }
  if (const auto* s = std::get_if<geometry::SectorDomain>(&spec.shape)) {
    return s->sector.perimeter() * s->sector.perimeter() / s->sector.area();
  }
  const auto loop = geometry::make_domain(spec);
  const double p = geometry::loop_perimeter(loop.vertices);
  return p * p / geometry::signed_area(loop.vertices);
}

std::vector<double> geometric_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw DomainError("geometric_grid: bad range");
  std::vector<double> grid(count);
  const double ratio = std::log(hi / lo);
  for (int i = 0; i < count; ++i) grid[i] = lo * std::exp(ratio * i / (count - 1));
  grid.back() = hi;
  return grid;
}

std::vector<SweepRecord> sweep_f_closed_form(const geometry::DomainSpec& spec,
                                             const std::vector<double>& grid_in) {
  auto grid = grid_in;
  std::sort(grid.begin(), grid.end());
  const double mu2 = closed_form_mu2(spec).value();
  std::vector<SweepRecord> out;
  for (double c : grid) {
    SweepRecord r;
    r.domain_id = spec.id;
    r.c = c;
    if (std::abs(c - mu2) < fem::kGuardBand * mu2) {
      r.guard_band_hit = true;
      r.f_value = r.boundary_integral = r.boundary_min = kNaN;
      out.push_back(r);
      continue;
    }
    try {
      if (const auto* d = std::get_if<DiskDomain>(&spec.shape)) {
        r.f_value = closed_form::ball_f(d->ball, c);
        r.boundary_min = closed_form::ball_flux_profile(d->ball, c)(d->ball.radius());
      } else if (const auto* b = std::get_if<BoxSpec>(&spec.shape)) {
        r.f_value = closed_form::box_f(*b, c);
        r.boundary_min = closed_form::box_boundary_min(*b, c);
      } else {
        const auto& t = std::get<EquilateralSpec>(spec.shape);
        r.f_value = closed_form::triangle_f(t, c);
        r.boundary_min = closed_form::triangle_boundary_min(t, c);
      }
      r.boundary_integral = r.f_value / c;
      r.f_value = c * r.boundary_integral;
      r.residual = 0.0;
    } catch (const std::exception& e) {
      r = failed_record(spec.id, c, e.what());
    }
    out.push_back(r);
  }
  return out;
}

std::vector<SweepRecord> sweep_f_fem(const fem::FluxSolver& solver, const std::string& id,
                                     const std::vector<double>& grid_in) {
  auto grid = grid_in;
  std::sort(grid.begin(), grid.end());
  std::vector<SweepRecord> out;
  for (double c : grid) {
    SweepRecord r;
    r.domain_id = id;
    r.c = c;
    if (solver.in_guard_band(c)) {
      r.guard_band_hit = true;
      r.f_value = r.boundary_integral = r.boundary_min = r.residual = kNaN;
      out.push_back(r);
      continue;
    }
    try {
      const auto sol = solver.solve(c);
      r.boundary_integral = sol.boundary_integral;
      r.f_value = c * sol.boundary_integral;
      r.boundary_min = sol.boundary_min;
      r.residual = sol.residual;
    } catch (const std::exception& e) {
      r = failed_record(id, c, e.what());
    }
    out.push_back(r);
  }
  return out;
}

std::vector<SweepRecord> sweep_f(const geometry::DomainSpec& spec, const std::vector<double>& grid,
                                 const SweepConfig& config) {
  if (has_closed_form(spec)) return sweep_f_closed_form(spec, grid);
  const int level = fine_level(spec, config);
  const auto ops = fem::assemble(mesh::build_at_level(spec, level));
  const auto mu = fem::neumann_spectrum(ops, config.eigen_count + 1);
  const fem::FluxSolver solver(ops, mu.values);
  return sweep_f_fem(solver, spec.id, grid);
}

LimitResult limit_from_samples(std::vector<double> gaps, std::vector<double> samples,
                               double divergence_ratio) {
  LimitResult out;
  out.gaps = std::move(gaps);
  out.samples = std::move(samples);
  const std::size_t n = out.samples.size();
  if (n < 3) throw DomainError("limit_from_samples needs at least three samples");
  for (double s : out.samples) {
    if (!std::isfinite(s)) return out;
  }
  std::vector<double> ratios;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    ratios.push_back(std::abs(out.samples[i + 1]) / std::abs(out.samples[i]));
  }
  const double last = ratios[ratios.size() - 1];
  const double before = ratios[ratios.size() - 2];
  out.value = extrapolation::quadratic_intercept(out.gaps, out.samples);
  if (last > divergence_ratio && before > divergence_ratio) {
    if (out.samples.back() < 0.0) {
      out.status = LimitStatus::divergent_negative;
      out.value = -std::numeric_limits<double>::infinity();
    }
    return out;
  }
  if (last < divergence_ratio && before < divergence_ratio &&
      std::abs(last - 1.0) < std::abs(before - 1.0) + 1e-3) {
    out.status = LimitStatus::converged;
  }
  return out;
}

LimitResult limit_f_at_mu2_fem(const fem::FluxSolver& solver, const SweepConfig& config) {
  const double mu2 = solver.mu2();
  std::vector<double> gaps;
  std::vector<double> samples;
  for (int k = config.limit_k_first; k <= config.limit_k_last; ++k) {
    const double gap = mu2 * std::ldexp(1.0, -k);
    gaps.push_back(gap);
    try {
      samples.push_back(solver.solve(mu2 - gap).f_value);
    } catch (const NumericalError&) {
      samples.push_back(kNaN);
    }
  }
  return limit_from_samples(std::move(gaps), std::move(samples), config.divergence_ratio);
}

LimitResult limit_f_at_mu2(const geometry::DomainSpec& spec, const SweepConfig& config) {
  LimitResult out;
  out.status = LimitStatus::converged;
  if (const auto* d = std::get_if<DiskDomain>(&spec.shape)) {
    out.value = closed_form::ball_limit_at_mu2(d->ball);
    return out;
  }
  if (const auto* b = std::get_if<BoxSpec>(&spec.shape)) {
    out.value = closed_form::box_limit_at_mu2(*b);
    return out;
  }
  if (const auto* t = std::get_if<EquilateralSpec>(&spec.shape)) {
    out.value = closed_form::triangle_f_at_mu2(*t);
    return out;
  }
  const int level = fine_level(spec, config);
  const auto ops = fem::assemble(mesh::build_at_level(spec, level));
  const auto mu = fem::neumann_spectrum(ops, config.eigen_count + 1);
  const fem::FluxSolver solver(ops, mu.values);
  return limit_f_at_mu2_fem(solver, config);
}

double ball_threshold_formula(const BallSpec& ball) {
  const int n = ball.dimension();
  return (n - 1.0) / (n * closed_form::ball_mu2(ball)) * ball.isoperimetric_ratio();
}

DomainClassification classify_domain(const geometry::DomainSpec& spec, const SweepConfig& config) {
  DomainClassification out;
  out.domain_id = spec.id;
  out.isoperimetric_ratio = isoperimetric_ratio(spec);
  out.kappa1_fem = kNaN;
  out.c0 = kNaN;

  bool planar = true;
  if (const auto* d = std::get_if<DiskDomain>(&spec.shape)) planar = d->ball.dimension() == 2;
  if (const auto* b = std::get_if<BoxSpec>(&spec.shape)) planar = b->dimension() == 2;

  std::optional<Discretization> disc;
  if (planar) disc = discretize(spec, config);
  const bool closed = has_closed_form(spec);
  const auto exact_mu2 = closed_form_mu2(spec);
  out.mu2 = exact_mu2 ? *exact_mu2 : disc->mu.at(1);

  // f is sampled on the closed form where it exists, else on the fine mesh.
  std::unique_ptr<fem::FluxSolver> solver;
  double sweep_mu2 = out.mu2;
  if (!closed) {
    solver = std::make_unique<fem::FluxSolver>(disc->fine, disc->mu_fine.values);
    sweep_mu2 = solver->mu2();
  }
  const auto grid = geometric_grid(config.grid_low * sweep_mu2,
                                   (1.0 - config.grid_high_gap) * sweep_mu2, config.grid_size);
  out.sweep = closed ? sweep_f_closed_form(spec, grid) : sweep_f_fem(*solver, spec.id, grid);

  const auto f_at = [&](double c) {
    if (closed) return sweep_f_closed_form(spec, {c}).front().f_value;
    return solver->solve(c).f_value;
  };

  bool any_failed = false;
  double min_boundary = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.sweep.size(); ++i) {
    const auto& r = out.sweep[i];
    if (!r.error.empty() || r.guard_band_hit) {
      any_failed = any_failed || !r.error.empty();
      continue;
    }
    min_boundary = std::min(min_boundary, r.boundary_min);
    if (!out.sign_change && r.f_value <= 0.0 && i > 0 && out.sweep[i - 1].f_value > 0.0) {
      out.sign_change = true;
      out.c0 = bisect_sign_change(f_at, out.sweep[i - 1].c, r.c, config.bisection_width);
    }
  }
  if (min_boundary > 0.0) {
    out.in_class_F = any_failed ? Tristate::inconclusive : Tristate::yes;
  } else if (std::isfinite(min_boundary)) {
    out.in_class_F = Tristate::no;
  }

  if (disc) out.kappa1_fem = disc->kappa.at(0);
  if (out.sign_change) {
    out.kappa1 = out.c0;
    out.verdict = out.c0 < sweep_mu2 * (1.0 - config.mesh_tolerance) ? Verdict::strict
                                                                       : Verdict::inconclusive;
  } else if (disc) {
    out.kappa1 = out.kappa1_fem;
    out.verdict = std::abs(out.kappa1 - out.mu2) <= config.mesh_tolerance * out.mu2
                      ? Verdict::equality
                      : Verdict::inconclusive;
    for (double k : disc->kappa) {
      if (k > out.mu2 * (1.0 + config.mesh_tolerance)) {
        out.c0 = k;
        break;
      }
    }
  } else {
    // Not meshable (n >= 3): positivity of f on the grid decides.
    out.kappa1 = out.mu2;
    out.verdict = any_failed ? Verdict::inconclusive : Verdict::equality;
  }
  if (const auto* b = std::get_if<BoxSpec>(&spec.shape); b && !out.sign_change) {
    if (auto root = box_c0_beyond_mu2(*b)) out.c0 = *root;
  }

  if (!closed) {
    out.limit = limit_f_at_mu2_fem(*solver, config);
  } else {
    out.limit = limit_f_at_mu2(spec, config);
  }
  if (out.verdict == Verdict::equality && out.limit.status == LimitStatus::converged) {
    out.m0 = out.limit.value / (closed ? out.mu2 : sweep_mu2);
  }
  return out;
}

}  // namespace fluxspec::sweeps
