#pragma once

// Run configuration and deterministic CSV / JSON serialisation.

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "fluxspec/geometry.hpp"
#include "fluxspec/sweeps.hpp"

namespace fluxspec::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kCsvSchema = "fluxspec-sweep-csv/1";
inline constexpr const char* kJsonSchema = "fluxspec-json/1";
inline constexpr const char* kSweepHeader =
    "domain_id,c,f_value,boundary_integral,boundary_min,residual,guard_band_hit";

struct RunConfig {
  std::string command;
  json domain = json::object();  // {"kind": ..., parameters}
  sweeps::SweepConfig sweep;
  std::string csv_path;
  std::string json_path;
  unsigned seed = 20240611u;

  /// Throws DomainError when a tolerance is not positive or the node
  /// target lies outside [500, 12000].
  void validate() const;
  json to_json() const;
};

/// {"kind": "disk", "radius": 1} and friends; see the README for the list.
geometry::DomainSpec domain_from_json(const json& domain);

/// %.17g; non-finite values as nan, inf, -inf.
std::string format_number(double v);

void write_sweep_csv(std::ostream& out, const std::vector<sweeps::SweepRecord>& records,
                     const RunConfig& config);

json classification_json(const sweeps::DomainClassification& c, const RunConfig& config);
json sector_report_json(const sweeps::SectorReport& report);
json observation_json(const sweeps::ObservationReport& report);
json error_json(int exit_code, const std::string& kind, const std::string& message);
/// Wraps a payload with the schema line and the embedded configuration.
json document(json payload, const RunConfig& config);

/// Fixed-width text tables of the observation families.
void write_observation_table(std::ostream& out, const sweeps::ObservationReport& report);

}  // namespace fluxspec::io
