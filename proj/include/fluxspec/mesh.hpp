#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "fluxspec/geometry.hpp"

namespace fluxspec::mesh {

using geometry::CurveTag;
using geometry::Point;

struct Mesh {
  std::vector<Point> nodes;
  std::vector<std::array<int, 3>> triangles;       // counterclockwise
  std::vector<std::array<int, 2>> boundary_edges;  // outward orientation, loop order
  std::vector<CurveTag> curved_tag;                // per node; none off the curve
  std::vector<double> curve_param;                 // per node; meaningful where tagged
  geometry::Curve curve;
  int level = 0;

  double area() const;
  double perimeter() const;
  double triangle_area(std::size_t t) const;
  std::size_t node_count() const noexcept { return nodes.size(); }
};

struct MeshReport {
  bool ok = true;
  std::string message;
  double min_area = 0.0;
  double min_angle = 0.0;  // radians
};

Mesh triangulate(const geometry::BoundaryLoop& loop);
Mesh refine(const Mesh& mesh, int levels = 1);
MeshReport validate(const Mesh& mesh);

/// Refine the coarse triangulation until it has at least `node_target`
/// nodes. Stops early when the next level would exceed `node_cap`.
Mesh build(const geometry::DomainSpec& spec, int node_target = 2000, int node_cap = 12000);
Mesh build_at_level(const geometry::DomainSpec& spec, int level);
/// Level that `build` would choose.
int select_level(const geometry::DomainSpec& spec, int node_target = 2000, int node_cap = 12000);

/// "nodes triangles boundary_edges" header, then the three blocks.
void write_mesh(std::ostream& out, const Mesh& mesh);

}  // namespace fluxspec::mesh
