#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "fluxspec/closed_form.hpp"
#include "fluxspec/errors.hpp"
#include "fluxspec/mesh.hpp"
#include "fluxspec/special_functions.hpp"
#include "fluxspec/sweeps.hpp"

namespace fluxspec::sweeps {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* pattern, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

FamilyRow fem_row(const geometry::DomainSpec& spec, double parameter, const SweepConfig& config) {
  FamilyRow row;
  row.domain_id = spec.id;
  row.parameter = parameter;
  const int level = fine_level(spec, config);
  const auto ops = fem::assemble(mesh::build_at_level(spec, level));
  const auto mu = fem::neumann_spectrum(ops, 3);
  const fem::FluxSolver solver(ops, mu.values);
  const auto limit = limit_f_at_mu2_fem(solver, config);
  row.limit_f = limit.value;
  row.limit_status = to_string(limit.status);
  row.half_ratio = 0.5 * ops.isoperimetric_ratio();
  const auto grid = geometric_grid(config.grid_low * solver.mu2(),
                                   (1.0 - config.grid_high_gap) * solver.mu2(), config.grid_size);
  const auto records = sweep_f_fem(solver, spec.id, grid);
  row.boundary_min = std::numeric_limits<double>::infinity();
  bool failed = false;
  for (const auto& r : records) {
    if (!r.error.empty()) failed = true;
    if (std::isfinite(r.boundary_min)) row.boundary_min = std::min(row.boundary_min, r.boundary_min);
  }
  row.in_class_F = row.boundary_min <= 0.0 ? "no" : (failed ? "inconclusive" : "yes");
  return row;
}

std::size_t argmin_limit(const std::vector<FamilyRow>& rows) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].limit_f < rows[best].limit_f) best = i;
  }
  return best;
}

void add(ObservationReport& report, std::string item, std::string detail, double measured,
         double target, bool pass) {
  report.lines.push_back({std::move(item), std::move(detail), measured, target, pass});
}

}  // namespace

ObservationCatalog ObservationCatalog::defaults() {
  ObservationCatalog c;
  c.super_apertures = {kPi / 3.0, 0.45 * kPi, 0.6 * kPi};
  c.sub_apertures = {kPi / 4.0};
  c.rhombus_angles = {kPi / 3.0, 5.0 * kPi / 12.0, kPi / 2.0};
  return c;
}

ObservationReport observation_suite(const ObservationCatalog& catalog, const SweepConfig& config) {
  ObservationReport report;
  const double tol = catalog.tolerance;

  for (int k : catalog.polygon_sides) {
    report.polygons.push_back(fem_row(geometry::regular_polygon(k), k, config));
  }
  for (double a : catalog.super_apertures) {
    report.super_equilateral.push_back(fem_row(geometry::isosceles(a), a, config));
  }
  for (double a : catalog.sub_apertures) {
    report.sub_equilateral.push_back(fem_row(geometry::isosceles(a), a, config));
  }
  for (double a : catalog.rhombus_angles) {
    report.rhombi.push_back(fem_row(geometry::rhombus(a), a, config));
  }
  for (double r : catalog.ellipse_ratios) {
    // Fixed area π so that boundary minima are comparable across the family.
    report.ellipses.push_back(fem_row(geometry::ellipse(std::sqrt(r), 1.0 / std::sqrt(r)), r, config));
  }

  for (const auto& row : report.polygons) {
    const double dev = std::abs(row.limit_f - row.half_ratio);
    add(report, "(1)", "regular polygon k=" + fmt("%.0f", row.parameter) + ": limit f = P^2/(2|O|)",
        row.limit_f, row.half_ratio,
        row.limit_status == "converged" && dev <= tol * row.half_ratio);
  }
  for (const auto& row : report.super_equilateral) {
    add(report, "(2)", "super-equilateral aperture " + fmt("%.6f", row.parameter) + ": limit f > P^2/(2|O|)",
        row.limit_f, row.half_ratio, row.limit_status == "converged" && row.limit_f > row.half_ratio);
  }
  if (!report.super_equilateral.empty()) {
    const auto best = argmin_limit(report.super_equilateral);
    add(report, "(2)", "super-equilateral infimum at the equilateral triangle",
        report.super_equilateral[best].parameter, kPi / 3.0,
        std::abs(report.super_equilateral[best].parameter - kPi / 3.0) < 1e-12);
  }
  for (const auto& row : report.sub_equilateral) {
    add(report, "(3)", "sub-equilateral aperture " + fmt("%.6f", row.parameter) + ": f -> -inf at mu2",
        row.limit_f, 0.0, row.limit_status == "divergent-negative");
  }
  for (const auto& row : report.ellipses) {
    add(report, "(4)", "ellipse ratio " + fmt("%.3f", row.parameter) + ": limit f >= P^2/(2|O|)",
        row.limit_f, row.half_ratio,
        row.limit_status == "converged" && row.limit_f >= row.half_ratio * (1.0 - tol));
  }
  if (!report.ellipses.empty()) {
    const auto best = argmin_limit(report.ellipses);
    add(report, "(4)", "ellipse infimum of limit f at the disk", report.ellipses[best].parameter, 1.0,
        report.ellipses[best].parameter == 1.0);
  }
  for (const auto& row : report.rhombi) {
    add(report, "(5)", "rhombus angle " + fmt("%.6f", row.parameter) + ": limit f >= P^2/(2|O|)",
        row.limit_f, row.half_ratio,
        row.limit_status == "converged" && row.limit_f >= row.half_ratio * (1.0 - tol));
  }
  if (!report.rhombi.empty()) {
    const auto best = argmin_limit(report.rhombi);
    add(report, "(5)", "rhombus minimum of limit f at the square", report.rhombi[best].parameter,
        kPi / 2.0, std::abs(report.rhombi[best].parameter - kPi / 2.0) < 1e-12);
  }
  for (const auto* family : {&report.super_equilateral, &report.sub_equilateral, &report.rhombi}) {
    for (const auto& row : *family) {
      // The square rhombus is also a regular polygon, and those are expected in class F.
      if (family == &report.rhombi && std::abs(row.parameter - kPi / 2.0) < 1e-12) continue;
      add(report, "(6)", row.domain_id + ": min boundary u_c < 0 near mu2", row.boundary_min, 0.0,
          row.boundary_min < 0.0);
    }
  }
  for (const auto& row : report.polygons) {
    add(report, "(6)", row.domain_id + ": min boundary u_c > 0", row.boundary_min, 0.0,
        row.boundary_min > 0.0);
  }
  for (const auto& row : report.ellipses) {
    add(report, "(7)", "ellipse ratio " + fmt("%.3f", row.parameter) + ": min boundary u_c > 0",
        row.boundary_min, 0.0, row.boundary_min > 0.0);
  }
  if (!report.ellipses.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < report.ellipses.size(); ++i) {
      if (report.ellipses[i].boundary_min < report.ellipses[best].boundary_min) best = i;
    }
    add(report, "(7)", "fixed-area ellipses: smallest boundary minimum at the disk",
        report.ellipses[best].parameter, 1.0, report.ellipses[best].parameter == 1.0);
  }
  return report;
}

SectorRow sector_row(double alpha, const SweepConfig& config) {
  using closed_form::ModeParity;
  SectorRow row;
  row.alpha = alpha;
  const closed_form::SectorSpec spec(alpha);
  const auto mu2 = closed_form::sector_mu2(spec);
  row.mu2 = mu2.value;
  row.parity = mu2.parity == ModeParity::even ? "even"
               : mu2.parity == ModeParity::odd ? "odd"
                                               : "double";
  row.trial_bound = closed_form::sector_trial_bound(spec).value;
  row.strict_by_trial = row.trial_bound < row.mu2;
  const auto disc = discretize(geometry::sector(alpha), config);
  row.kappa1_fem = disc.kappa[0];
  // The Richardson correction serves as the error estimate.
  const double error = std::abs(disc.kappa[0] - disc.kappa_fine.values[0]);
  row.strict_by_fem = row.kappa1_fem + 2.0 * error < row.mu2;
  return row;
}

double sector_alpha1_trial() {
  const double alpha0 = closed_form::sector_alpha0();
  const auto g = [](double alpha) {
    const closed_form::SectorSpec spec(alpha);
    return closed_form::sector_trial_bound(spec).value - closed_form::sector_mu2(spec).value;
  };
  const double lo = alpha0 + 1e-6;
  const double hi = std::min(kPi, 1.5);
  const double g_lo = g(lo);
  const double g_hi = g(hi);
  if (!(g_lo < 0.0 && g_hi > 0.0)) {
    throw NumericalError("sector_alpha1_trial: trial bound does not cross mu2 above alpha0");
  }
  return special::bisect(g, {lo, hi, g_lo, g_hi}, 1e-10);
}

SectorReport sector_study(const std::vector<double>& alphas, const SweepConfig& config) {
  SectorReport report;
  report.alpha0 = closed_form::sector_alpha0();
  report.alpha1_trial = sector_alpha1_trial();
  for (double alpha : alphas) report.rows.push_back(sector_row(alpha, config));
  report.window_row = sector_row(0.5 * (report.alpha0 + report.alpha1_trial), config);
  report.window_confirmed = report.window_row.parity == "odd" && report.window_row.strict_by_trial &&
                            report.window_row.strict_by_fem;
  return report;
}

}  // namespace fluxspec::sweeps
