#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "fluxspec/errors.hpp"
#include "fluxspec/io.hpp"

using namespace fluxspec;
using io::json;

TEST_CASE("domain parsing") {
  CHECK(io::domain_from_json({{"kind", "disk"}, {"radius", 2.0}}).id == "disk");
  CHECK(io::domain_from_json({{"kind", "ball"}, {"dim", 3}}).id == "ball-3");
  CHECK(io::domain_from_json({{"kind", "box"}, {"half_lengths", {2.0, 1.0}}}).id == "box");
  CHECK(io::domain_from_json({{"kind", "regular-polygon"}, {"sides", 5}}).id == "regular-polygon-5");
  CHECK(io::domain_from_json({{"kind", "isosceles"}, {"aperture", 0.6}}).id == "isosceles-0.600000");
  CHECK(io::domain_from_json({{"kind", "rhombus"}, {"angle", 1.0}}).id == "rhombus-1.000000");
  CHECK(io::domain_from_json({{"kind", "sector"}, {"alpha", 1.0}}).id == "sector-1.000000");
  CHECK(io::domain_from_json({{"kind", "equilateral"}}).id.find("equilateral") == 0);
  const auto poly = io::domain_from_json({{"kind", "polygon"}, {"vertices", {{0, 0}, {1, 0}, {0, 1}}}});
  CHECK(std::get<geometry::PolygonSpec>(poly.shape).vertices.size() == 3);
  CHECK_THROWS_AS(io::domain_from_json({{"kind", "moon"}}), DomainError);
  CHECK_THROWS_AS(io::domain_from_json(json::object()), DomainError);
  CHECK_THROWS_AS(io::domain_from_json({{"kind", "box"}, {"half_lengths", {1.0, -1.0}}}), DomainError);
  CHECK_THROWS(io::domain_from_json({{"kind", "regular-polygon"}}));
}

TEST_CASE("number formatting") {
  CHECK(io::format_number(0.1) == "0.10000000000000001");
  CHECK(io::format_number(2.0) == "2");
  CHECK(io::format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(io::format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  const double x = 1.0 / 3.0;
  CHECK(std::stod(io::format_number(x)) == x);
}

TEST_CASE("run config validation") {
  io::RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.sweep.node_target = 400;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.sweep.node_target = 2000;
  c.sweep.mesh_tolerance = 0;
  CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("csv and json are deterministic and self-describing") {
  io::RunConfig config;
  config.command = "sweep";
  config.domain = {{"kind", "square"}, {"side", 1.0}};
  const auto spec = io::domain_from_json(config.domain);
  const auto records = sweeps::sweep_f(spec, sweeps::geometric_grid(1e-3, 9.0, 20), config.sweep);
  std::ostringstream a, b;
  io::write_sweep_csv(a, records, config);
  io::write_sweep_csv(b, records, config);
  CHECK(a.str() == b.str());
  std::istringstream in(a.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == std::string("# schema: ") + io::kCsvSchema);
  std::getline(in, line);
  CHECK(line.rfind("# config: ", 0) == 0);
  CHECK(json::parse(line.substr(10))["domain"]["kind"] == "square");
  std::getline(in, line);
  CHECK(line == io::kSweepHeader);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
  }
  CHECK(rows == 20);

  const auto c1 = sweeps::classify_domain(geometry::rectangle(0.5, 0.5), config.sweep);
  const auto c2 = sweeps::classify_domain(geometry::rectangle(0.5, 0.5), config.sweep);
  const auto d1 = io::document(io::classification_json(c1, config), config).dump(2);
  CHECK(d1 == io::document(io::classification_json(c2, config), config).dump(2));
  const auto doc = json::parse(d1);
  CHECK(doc["schema"] == io::kJsonSchema);
  CHECK(doc["config"]["command"] == "sweep");
  CHECK(doc["verdict"] == "equality");
}

TEST_CASE("error document") {
  const auto e = io::error_json(3, "numerical", "boom");
  CHECK(e["error"]["exit_code"] == 3);
  CHECK(e["error"]["message"] == "boom");
}
