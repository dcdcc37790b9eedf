#include "fluxspec/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "fluxspec/errors.hpp"

namespace fluxspec::io {

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

double get(const json& j, const char* key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

json limit_json(const sweeps::LimitResult& limit) {
  json samples = json::array();
  for (std::size_t i = 0; i < limit.samples.size(); ++i) {
    samples.push_back({{"gap", number(limit.gaps[i])}, {"f", number(limit.samples[i])}});
  }
  json out;
  out["status"] = sweeps::to_string(limit.status);
  out["value"] = limit.status == sweeps::LimitStatus::divergent_negative
                     ? json("divergent-negative")
                     : number(limit.value);
  out["samples"] = samples;
  return out;
}

json family_json(const std::vector<sweeps::FamilyRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"domain_id", r.domain_id},
                   {"parameter", number(r.parameter)},
                   {"limit_f", number(r.limit_f)},
                   {"limit_status", r.limit_status},
                   {"half_isoperimetric_ratio", number(r.half_ratio)},
                   {"boundary_min", number(r.boundary_min)},
                   {"in_class_F", r.in_class_F}});
  }
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (sweep.node_target < 500 || sweep.node_target > 12000) {
    throw DomainError("node target must lie in [500, 12000]");
  }
  if (sweep.node_cap < sweep.node_target) throw DomainError("node cap below node target");
  if (!(sweep.mesh_tolerance > 0.0) || !(sweep.bisection_width > 0.0) ||
      !(sweep.grid_low > 0.0) || !(sweep.grid_high_gap > 0.0) || !(sweep.divergence_ratio > 1.0)) {
    throw DomainError("tolerances must be positive");
  }
  if (sweep.grid_size < 2) throw DomainError("grid needs at least two points");
  if (sweep.limit_k_last - sweep.limit_k_first < 2) {
    throw DomainError("limit extrapolation needs at least three samples");
  }
}

json RunConfig::to_json() const {
  json out;
  out["command"] = command;
  out["domain"] = domain;
  out["node_target"] = sweep.node_target;
  out["node_cap"] = sweep.node_cap;
  out["level"] = sweep.level;
  out["coarsen"] = sweep.coarsen;
  out["grid_size"] = sweep.grid_size;
  out["grid_low"] = sweep.grid_low;
  out["grid_high_gap"] = sweep.grid_high_gap;
  out["mesh_tolerance"] = sweep.mesh_tolerance;
  out["divergence_ratio"] = sweep.divergence_ratio;
  out["limit_k"] = {sweep.limit_k_first, sweep.limit_k_last};
  out["bisection_width"] = sweep.bisection_width;
  out["seed"] = seed;
  return out;
}

geometry::DomainSpec domain_from_json(const json& d) {
  if (!d.contains("kind")) throw DomainError("domain needs a kind");
  const std::string kind = d.at("kind").get<std::string>();
  const int segments = d.contains("segments") ? d.at("segments").get<int>() : 16;
  if (kind == "disk" || kind == "ball") {
    const int dim = d.contains("dim") ? d.at("dim").get<int>() : 2;
    return {dim == 2 ? "disk" : "ball-" + std::to_string(dim),
            geometry::DiskDomain{closed_form::BallSpec(dim, get(d, "radius", 1.0)), segments}};
  }
  if (kind == "box") {
    auto a = d.at("half_lengths").get<std::vector<double>>();
    return {"box", closed_form::BoxSpec(std::move(a))};
  }
  if (kind == "square") {
    const double half = 0.5 * get(d, "side", 1.0);
    return {"square", closed_form::BoxSpec({half, half})};
  }
  if (kind == "regular-polygon") {
    return geometry::regular_polygon(d.at("sides").get<int>(), get(d, "circumradius", 1.0));
  }
  if (kind == "isosceles") return geometry::isosceles(d.at("aperture").get<double>(), get(d, "leg", 1.0));
  if (kind == "rhombus") return geometry::rhombus(d.at("angle").get<double>(), get(d, "side", 1.0));
  if (kind == "ellipse") return geometry::ellipse(get(d, "a", 1.0), get(d, "b", 1.0), segments);
  if (kind == "sector") return geometry::sector(d.at("alpha").get<double>(), segments);
  if (kind == "equilateral") return geometry::equilateral(get(d, "side", 2.0));
  if (kind == "polygon") {
    geometry::PolygonSpec poly;
    for (const auto& v : d.at("vertices")) poly.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    return {"polygon", poly};
  }
  throw DomainError("unknown domain kind '" + kind + "'");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_sweep_csv(std::ostream& out, const std::vector<sweeps::SweepRecord>& records,
                     const RunConfig& config) {
  out << "# schema: " << kCsvSchema << '\n';
  out << "# config: " << config.to_json().dump() << '\n';
  out << kSweepHeader << '\n';
  for (const auto& r : records) {
    out << r.domain_id << ',' << format_number(r.c) << ',' << format_number(r.f_value) << ','
        << format_number(r.boundary_integral) << ',' << format_number(r.boundary_min) << ','
        << format_number(r.residual) << ',' << (r.guard_band_hit ? "true" : "false") << '\n';
  }
}

json document(json payload, const RunConfig& config) {
  json out;
  out["schema"] = kJsonSchema;
  out["config"] = config.to_json();
  for (auto it = payload.begin(); it != payload.end(); ++it) out[it.key()] = it.value();
  return out;
}

json classification_json(const sweeps::DomainClassification& c, const RunConfig& config) {
  json p;
  p["domain_id"] = c.domain_id;
  p["mu2"] = number(c.mu2);
  p["kappa1"] = number(c.kappa1);
  p["kappa1_fem"] = number(c.kappa1_fem);
  p["c0"] = number(c.c0);
  p["sign_change"] = c.sign_change;
  p["verdict"] = sweeps::to_string(c.verdict);
  p["in_class_F"] = sweeps::to_string(c.in_class_F);
  p["m0"] = c.m0 ? number(*c.m0) : json(nullptr);
  p["limit_f_at_mu2"] = limit_json(c.limit);
  p["isoperimetric_ratio"] = number(c.isoperimetric_ratio);
  return document(p, config);
}

json sector_report_json(const sweeps::SectorReport& report) {
  const auto row_json = [](const sweeps::SectorRow& r) {
    return json{{"alpha", number(r.alpha)},
                {"mu2", number(r.mu2)},
                {"parity", r.parity},
                {"kappa1_fem", number(r.kappa1_fem)},
                {"trial_bound", number(r.trial_bound)},
                {"strict_by_trial", r.strict_by_trial},
                {"strict_by_fem", r.strict_by_fem}};
  };
  json rows = json::array();
  for (const auto& r : report.rows) rows.push_back(row_json(r));
  return {{"alpha0", number(report.alpha0)},
          {"alpha1_trial", number(report.alpha1_trial)},
          {"rows", rows},
          {"window_row", row_json(report.window_row)},
          {"window_confirmed", report.window_confirmed}};
}

json observation_json(const sweeps::ObservationReport& report) {
  json lines = json::array();
  for (const auto& l : report.lines) {
    lines.push_back({{"item", l.item},
                     {"detail", l.detail},
                     {"measured", number(l.measured)},
                     {"target", number(l.target)},
                     {"pass", l.pass}});
  }
  return {{"polygons", family_json(report.polygons)},
          {"super_equilateral", family_json(report.super_equilateral)},
          {"sub_equilateral", family_json(report.sub_equilateral)},
          {"rhombi", family_json(report.rhombi)},
          {"ellipses", family_json(report.ellipses)},
          {"lines", lines}};
}

json error_json(int exit_code, const std::string& kind, const std::string& message) {
  return {{"schema", kJsonSchema}, {"error", {{"exit_code", exit_code}, {"kind", kind}, {"message", message}}}};
}

void write_observation_table(std::ostream& out, const sweeps::ObservationReport& report) {
  const auto block = [&](const char* title, const std::vector<sweeps::FamilyRow>& rows) {
    if (rows.empty()) return;
    out << title << '\n';
    char buf[256];
    std::snprintf(buf, sizeof buf, "  %-28s %12s %14s %14s %20s %14s %8s\n", "domain", "parameter",
                  "limit_f", "P^2/(2|O|)", "status", "min_bdry_u", "class_F");
    out << buf;
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "  %-28s %12.6f %14.8g %14.8g %20s %14.6g %8s\n",
                    r.domain_id.c_str(), r.parameter, r.limit_f, r.half_ratio,
                    r.limit_status.c_str(), r.boundary_min, r.in_class_F.c_str());
      out << buf;
    }
  };
  block("regular polygons (parameter: sides)", report.polygons);
  block("super-equilateral triangles (parameter: aperture)", report.super_equilateral);
  block("sub-equilateral triangles (parameter: aperture)", report.sub_equilateral);
  block("rhombi (parameter: angle)", report.rhombi);
  block("fixed-area ellipses (parameter: axis ratio)", report.ellipses);
  out << '\n';
  for (const auto& l : report.lines) {
    out << (l.pass ? "PASS " : "FAIL ") << l.item << ' ' << l.detail << "  measured=" << format_number(l.measured)
        << " target=" << format_number(l.target) << '\n';
  }
}

}  // namespace fluxspec::io
