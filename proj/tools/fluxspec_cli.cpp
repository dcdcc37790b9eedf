#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fluxspec/acceptance.hpp"
#include "fluxspec/closed_form.hpp"
#include "fluxspec/errors.hpp"
#include "fluxspec/fem.hpp"
#include "fluxspec/io.hpp"
#include "fluxspec/mesh.hpp"
#include "fluxspec/sweeps.hpp"

using namespace fluxspec;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kAcceptanceFailed = 1;
constexpr int kBadArguments = 2;
constexpr int kNumericalFailure = 3;

struct DomainFlags {
  std::string kind;
  int dim = 2;
  double radius = 1.0;
  std::vector<double> half_lengths;
  int sides = 0;
  double circumradius = 1.0;
  double aperture = 0.0;
  double leg = 1.0;
  double angle = 0.0;
  double side = 0.0;
  double a = 1.0;
  double b = 1.0;
  double alpha = 0.0;
  int segments = 16;

  // Only the parameters the kind uses, so the embedded config stays small.
  json to_json() const {
    json d{{"kind", kind}};
    if (kind == "disk" || kind == "ball") {
      d["dim"] = dim;
      d["radius"] = radius;
    } else if (kind == "box") {
      d["half_lengths"] = half_lengths;
    } else if (kind == "square") {
      d["side"] = side > 0 ? side : 1.0;
    } else if (kind == "regular-polygon") {
      d["sides"] = sides;
      d["circumradius"] = circumradius;
    } else if (kind == "isosceles") {
      d["aperture"] = aperture;
      d["leg"] = leg;
    } else if (kind == "rhombus") {
      d["angle"] = angle;
      d["side"] = side > 0 ? side : 1.0;
    } else if (kind == "ellipse") {
      d["a"] = a;
      d["b"] = b;
    } else if (kind == "sector") {
      d["alpha"] = alpha;
    } else if (kind == "equilateral") {
      d["side"] = side > 0 ? side : 2.0;
    }
    if (kind == "disk" || kind == "ellipse" || kind == "sector") d["segments"] = segments;
    return d;
  }
};

void add_domain_flags(CLI::App* cmd, DomainFlags& f, bool with_kind) {
  if (with_kind) {
    cmd->add_option("--domain", f.kind, "domain kind")
        ->required()
        ->check(CLI::IsMember({"disk", "ball", "box", "square", "regular-polygon", "isosceles", "rhombus",
                               "ellipse", "sector", "equilateral"}));
  }
  cmd->add_option("--dim", f.dim, "ball dimension")->check(CLI::Range(2, 12));
  cmd->add_option("--radius", f.radius, "ball radius")->check(CLI::PositiveNumber);
  cmd->add_option("--half-lengths", f.half_lengths, "box half lengths, comma separated")->delimiter(',');
  cmd->add_option("--sides", f.sides, "regular polygon side count")->check(CLI::Range(3, 64));
  cmd->add_option("--circumradius", f.circumradius)->check(CLI::PositiveNumber);
  cmd->add_option("--aperture", f.aperture, "isosceles apex angle (radians)");
  cmd->add_option("--leg", f.leg)->check(CLI::PositiveNumber);
  cmd->add_option("--angle", f.angle, "rhombus acute angle (radians)");
  cmd->add_option("--side", f.side)->check(CLI::PositiveNumber);
  cmd->add_option("--a", f.a)->check(CLI::PositiveNumber);
  cmd->add_option("--b", f.b)->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", f.alpha, "sector opening angle (radians)");
  cmd->add_option("--segments", f.segments, "boundary segments of curved domains")->check(CLI::Range(4, 256));
}

struct Common {
  io::RunConfig run;
  bool fem = false;
};

void add_common_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--csv", c.run.csv_path, "CSV output path");
  cmd->add_option("--json", c.run.json_path, "JSON output path (default stdout)");
  cmd->add_option("--node-target", c.run.sweep.node_target, "FEM mesh node target");
  cmd->add_option("--grid-size", c.run.sweep.grid_size, "number of c grid points")->check(CLI::Range(2, 100000));
  cmd->add_option("--level", c.run.sweep.level, "explicit fine refinement level");
  cmd->add_option("--coarsen", c.run.sweep.coarsen, "levels removed from the fine mesh")->check(CLI::NonNegativeNumber);
  cmd->add_option("--mesh-tolerance", c.run.sweep.mesh_tolerance);
  cmd->add_option("--bisection-width", c.run.sweep.bisection_width);
  cmd->add_option("--seed", c.run.seed);
}

void emit_json(const json& doc, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open " + path);
  out << doc.dump(2) << '\n';
}

void emit_csv(const std::vector<sweeps::SweepRecord>& records, const io::RunConfig& run, bool to_stdout) {
  if (run.csv_path.empty() || run.csv_path == "-") {
    if (to_stdout) io::write_sweep_csv(std::cout, records, run);
    return;
  }
  std::ofstream out(run.csv_path);
  if (!out) throw DomainError("cannot open " + run.csv_path);
  io::write_sweep_csv(out, records, run);
}

std::vector<double> closed_form_grid(double mu2, const sweeps::SweepConfig& s) {
  return sweeps::geometric_grid(s.grid_low * mu2, (1.0 - s.grid_high_gap) * mu2, s.grid_size);
}

json number(double v) { return std::isfinite(v) ? json(v) : json(io::format_number(v)); }

int run_ball(Common& c, const DomainFlags& f) {
  const closed_form::BallSpec ball(f.dim, f.radius);
  DomainFlags d = f;
  d.kind = "ball";
  c.run.domain = d.to_json();
  c.run.validate();
  const auto spec = io::domain_from_json(c.run.domain);
  const double mu2 = closed_form::ball_mu2(ball);
  emit_csv(sweeps::sweep_f_closed_form(spec, closed_form_grid(mu2, c.run.sweep)), c.run, false);
  const double limit = closed_form::ball_limit_at_mu2(ball);
  json p{{"domain_id", spec.id},
         {"mu2", number(mu2)},
         {"limit_at_zero", number(ball.isoperimetric_ratio())},
         {"limit_at_mu2", number(limit)},
         {"m0", number(limit / mu2)},
         {"m0_formula", number(sweeps::ball_threshold_formula(ball))}};
  emit_json(io::document(std::move(p), c.run), c.run.json_path);
  return kOk;
}

int run_box(Common& c, const DomainFlags& f) {
  if (f.half_lengths.empty()) throw DomainError("--half-lengths is required");
  DomainFlags d = f;
  d.kind = "box";
  c.run.domain = d.to_json();
  c.run.validate();
  const closed_form::BoxSpec box(f.half_lengths);
  const auto spec = io::domain_from_json(c.run.domain);
  std::vector<sweeps::SweepRecord> records;
  if (box.dimension() == 2) records = sweeps::sweep_f_closed_form(spec, closed_form_grid(box.mu2(), c.run.sweep));
  else {
    for (double x : closed_form_grid(box.mu2(), c.run.sweep)) {
      sweeps::SweepRecord r;
      r.domain_id = spec.id;
      r.c = x;
      r.f_value = closed_form::box_f(box, x);
      r.boundary_min = closed_form::box_boundary_min(box, x);
      r.boundary_integral = r.f_value / x;
      records.push_back(r);
    }
  }
  emit_csv(records, c.run, false);
  const double limit = closed_form::box_limit_at_mu2(box);
  json p{{"domain_id", spec.id},
         {"mu2", number(box.mu2())},
         {"limit_at_zero", number(box.isoperimetric_ratio())},
         {"limit_at_mu2", number(limit)},
         {"m0", number(limit / box.mu2())},
         {"gap", number(closed_form::box_inequality_gap(box))},
         {"gap_lower_bound", number(closed_form::box_gap_lower_bound(box))}};
  emit_json(io::document(std::move(p), c.run), c.run.json_path);
  return kOk;
}

int run_triangle(Common& c, const DomainFlags& f) {
  DomainFlags d = f;
  d.kind = "equilateral";
  c.run.domain = d.to_json();
  c.run.validate();
  const closed_form::EquilateralSpec tri(f.side > 0 ? f.side : 2.0);
  const auto spec = io::domain_from_json(c.run.domain);
  emit_csv(sweeps::sweep_f_closed_form(spec, closed_form_grid(tri.mu2(), c.run.sweep)), c.run, false);
  const double limit = closed_form::triangle_f_at_mu2(tri);
  json p{{"domain_id", spec.id},
         {"mu2", number(tri.mu2())},
         {"limit_at_zero", number(tri.isoperimetric_ratio())},
         {"limit_at_mu2", number(limit)},
         {"m0", number(limit / tri.mu2())}};
  emit_json(io::document(std::move(p), c.run), c.run.json_path);
  return kOk;
}

int run_sector(Common& c, const DomainFlags& f, bool alpha0_only, bool study,
               const std::vector<double>& alphas) {
  c.run.domain = json{{"kind", "sector"}};
  if (!alphas.empty()) c.run.domain["alpha"] = alphas;
  else if (f.alpha > 0) c.run.domain["alpha"] = f.alpha;
  c.run.validate();
  if (alpha0_only) {
    const auto lin = closed_form::sector_boundary_linearization();
    json p{{"alpha0", number(closed_form::sector_alpha0())},
           {"boundary_intercept", number(lin.intercept)},
           {"boundary_slope", number(lin.slope)}};
    emit_json(io::document(std::move(p), c.run), c.run.json_path);
    return kOk;
  }
  std::vector<double> list = alphas;
  if (list.empty() && f.alpha > 0) list.push_back(f.alpha);
  if (list.empty() && !study) throw DomainError("sector needs --alpha, --alpha0 or --study");
  const auto report = sweeps::sector_study(list, c.run.sweep);
  emit_json(io::document(io::sector_report_json(report), c.run), c.run.json_path);
  return kOk;
}

int run_classify(Common& c, const DomainFlags& f) {
  c.run.domain = f.to_json();
  c.run.validate();
  const auto spec = io::domain_from_json(c.run.domain);
  const auto cls = sweeps::classify_domain(spec, c.run.sweep);
  emit_csv(cls.sweep, c.run, false);
  emit_json(io::document(io::classification_json(cls, c.run), c.run), c.run.json_path);
  return kOk;
}

int run_sweep(Common& c, const DomainFlags& f) {
  c.run.domain = f.to_json();
  c.run.validate();
  const auto spec = io::domain_from_json(c.run.domain);
  std::vector<sweeps::SweepRecord> records;
  const auto mu2 = sweeps::closed_form_mu2(spec);
  if (mu2 && !c.fem && sweeps::has_closed_form(spec)) {
    records = sweeps::sweep_f_closed_form(spec, closed_form_grid(*mu2, c.run.sweep));
  } else {
    const auto ops = fem::assemble(mesh::build_at_level(spec, sweeps::fine_level(spec, c.run.sweep)));
    const auto mu = fem::neumann_spectrum(ops, 3);
    const fem::FluxSolver solver(ops, mu.values);
    records = sweeps::sweep_f_fem(solver, spec.id, closed_form_grid(solver.mu2(), c.run.sweep));
  }
  emit_csv(records, c.run, true);
  return kOk;
}

int run_observe(Common& c, bool table) {
  c.run.validate();
  const auto report = sweeps::observation_suite(sweeps::ObservationCatalog::defaults(), c.run.sweep);
  if (table) {
    io::write_observation_table(std::cout, report);
    if (!c.run.json_path.empty()) emit_json(io::document(io::observation_json(report), c.run), c.run.json_path);
    return kOk;
  }
  emit_json(io::document(io::observation_json(report), c.run), c.run.json_path);
  return kOk;
}

int run_accept(const acceptance::Options& options) {
  const auto results = acceptance::run(options, &std::cout);
  int pass = 0, fail = 0, warn = 0;
  double seconds = 0;
  for (const auto& r : results) {
    seconds += r.seconds;
    if (r.pass()) ++pass;
    else if (r.observational) ++warn;
    else ++fail;
  }
  std::printf("summary: %d passed, %d failed, %d warned in %.1f s\n", pass, fail, warn, seconds);
  return acceptance::exit_code(results) == 0 ? kOk : kAcceptanceFailed;
}

std::string_view kind_of(const std::exception& e) {
  if (dynamic_cast<const NearEigenvalueError*>(&e)) return "near_eigenvalue";
  if (dynamic_cast<const NumericalError*>(&e)) return "numerical";
  return "internal";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neumann flux functional and spectral sweeps"};
  app.require_subcommand(1);

  Common common;
  DomainFlags flags;

  auto* ball = app.add_subcommand("ball", "closed form on an n-ball");
  auto* box = app.add_subcommand("box", "closed form on a box and the symmetric polynomial inequality");
  auto* triangle = app.add_subcommand("triangle", "closed form on the equilateral triangle");
  auto* sector = app.add_subcommand("sector", "circular sector analytics");
  auto* classify = app.add_subcommand("classify", "classify a domain by the sign of f near mu2");
  auto* sweep = app.add_subcommand("sweep", "f(c) on a geometric grid below mu2");
  auto* observe = app.add_subcommand("observe", "numerical observation report");
  auto* accept = app.add_subcommand("accept", "run the acceptance suite");

  for (auto* cmd : {ball, box, triangle, sector, classify, sweep, observe}) add_common_flags(cmd, common);
  for (auto* cmd : {ball, box, triangle}) add_domain_flags(cmd, flags, false);
  add_domain_flags(classify, flags, true);
  add_domain_flags(sweep, flags, true);
  sweep->add_flag("--fem", common.fem, "use the finite element route even with a closed form");

  bool alpha0_only = false, study = false;
  std::vector<double> alphas;
  sector->add_option("--alpha", alphas, "opening angles, comma separated")->delimiter(',');
  sector->add_flag("--alpha0", alpha0_only, "print the degenerate angle only");
  sector->add_flag("--study", study, "default angle table plus the window check");

  bool paper_table = false;
  observe->add_flag("--paper-table", paper_table, "fixed-width tables of every family");

  acceptance::Options accept_options;
  bool quiet = false;
  accept->add_option("--only", accept_options.only, "sub-suite")
      ->check(CLI::IsMember({"closed-form", "fem", "observational"}));
  accept->add_option("--coarsen", accept_options.coarsen, "remove refinement levels")->check(CLI::NonNegativeNumber);
  accept->add_flag("--quiet", quiet, "criterion lines only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << io::error_json(kBadArguments, "bad_arguments", e.what()).dump() << '\n';
    return kBadArguments;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  common.run.command = name;
  try {
    if (name == "ball") return run_ball(common, flags);
    if (name == "box") return run_box(common, flags);
    if (name == "triangle") return run_triangle(common, flags);
    if (name == "sector") return run_sector(common, flags, alpha0_only, study, alphas);
    if (name == "classify") return run_classify(common, flags);
    if (name == "sweep") return run_sweep(common, flags);
    if (name == "observe") return run_observe(common, paper_table);
    accept_options.verbose = !quiet;
    return run_accept(accept_options);
  } catch (const DomainError& e) {
    std::cerr << io::error_json(kBadArguments, "bad_arguments", e.what()).dump() << '\n';
    return kBadArguments;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << io::error_json(kBadArguments, "bad_arguments", e.what()).dump() << '\n';
    return kBadArguments;
  } catch (const std::exception& e) {
    std::cerr << io::error_json(kNumericalFailure, std::string(kind_of(e)), e.what()).dump() << '\n';
    return kNumericalFailure;
  }
}
