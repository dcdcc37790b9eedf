#include "fluxspec/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>

#include "fluxspec/errors.hpp"

namespace fluxspec::mesh {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool inside_triangle(const Point& p, const Point& a, const Point& b, const Point& c) {
  return cross(a, b, p) >= 0.0 && cross(b, c, p) >= 0.0 && cross(c, a, p) >= 0.0;
}

Point area_centroid(const std::vector<Point>& v) {
  double cx = 0.0;
  double cy = 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % v.size()];
    const double w = p[0] * q[1] - q[0] * p[1];
    twice += w;
    cx += (p[0] + q[0]) * w;
    cy += (p[1] + q[1]) * w;
  }
  return {cx / (3.0 * twice), cy / (3.0 * twice)};
}

std::vector<std::array<int, 3>> ear_clip(const std::vector<Point>& v) {
  std::vector<int> ring(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) ring[i] = static_cast<int>(i);
  std::vector<std::array<int, 3>> out;
  while (ring.size() > 3) {
    bool clipped = false;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const int a = ring[(i + n - 1) % n];
      const int b = ring[i];
      const int c = ring[(i + 1) % n];
      if (cross(v[a], v[b], v[c]) <= 0.0) continue;
      bool empty = true;
      for (int k : ring) {
        if (k == a || k == b || k == c) continue;
        if (inside_triangle(v[k], v[a], v[b], v[c])) {
          empty = false;
          break;
        }
      }
      if (!empty) continue;
      out.push_back({a, b, c});
      ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
      break;
    }
    if (!clipped) throw DomainError("triangulate: ear clipping found no ear");
  }
  out.push_back({ring[0], ring[1], ring[2]});
  return out;
}

}  // namespace

double Mesh::triangle_area(std::size_t t) const {
  const auto& tri = triangles[t];
  return 0.5 * cross(nodes[tri[0]], nodes[tri[1]], nodes[tri[2]]);
}

double Mesh::area() const {
  double total = 0.0;
  for (std::size_t t = 0; t < triangles.size(); ++t) total += triangle_area(t);
  return total;
}

double Mesh::perimeter() const {
  double total = 0.0;
  for (const auto& e : boundary_edges) {
    total += std::hypot(nodes[e[1]][0] - nodes[e[0]][0], nodes[e[1]][1] - nodes[e[0]][1]);
  }
  return total;
}

Mesh triangulate(const geometry::BoundaryLoop& loop) {
  const auto& v = loop.vertices;
  const std::size_t n = v.size();
  if (n < 3) throw DomainError("triangulate: loop needs three vertices");
  if (geometry::signed_area(v) <= 1e-12) {
    throw DomainError("triangulate: loop is degenerate or clockwise");
  }
  if (!geometry::is_simple(v)) throw DomainError("triangulate: loop self-intersects");

  Mesh mesh;
  mesh.nodes = v;
  mesh.curved_tag = loop.tags;
  mesh.curve_param = loop.params;
  mesh.curve = loop.curve;
  for (std::size_t i = 0; i < n; ++i) {
    mesh.boundary_edges.push_back({static_cast<int>(i), static_cast<int>((i + 1) % n)});
  }
  if (n == 3) {
    mesh.triangles.push_back({0, 1, 2});
  } else if (geometry::is_convex(v)) {
    const int centre = static_cast<int>(n);
    mesh.nodes.push_back(area_centroid(v));
    mesh.curved_tag.push_back(CurveTag::none);
    mesh.curve_param.push_back(0.0);
    for (std::size_t i = 0; i < n; ++i) {
      mesh.triangles.push_back({centre, static_cast<int>(i), static_cast<int>((i + 1) % n)});
    }
  } else {
    mesh.triangles = ear_clip(v);
  }
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    if (mesh.triangle_area(t) <= 1e-14) {
      throw DomainError("triangulate: degenerate triangle " + std::to_string(t));
    }
  }
  return mesh;
}

Mesh refine(const Mesh& mesh, int levels) {
  if (levels < 0) throw DomainError("refine: levels must be >= 0");
  Mesh current = mesh;
  for (int level = 0; level < levels; ++level) {
    Mesh next;
    next.nodes = current.nodes;
    next.curved_tag = current.curved_tag;
    next.curve_param = current.curve_param;
    next.curve = current.curve;
    next.level = current.level + 1;

    std::map<std::pair<int, int>, int> boundary_pairs;
    for (const auto& e : current.boundary_edges) {
      boundary_pairs[{std::min(e[0], e[1]), std::max(e[0], e[1])}] = 1;
    }
    std::map<std::pair<int, int>, int> midpoint;
    const auto split = [&](int i, int j) {
      const std::pair<int, int> key{std::min(i, j), std::max(i, j)};
      if (auto it = midpoint.find(key); it != midpoint.end()) return it->second;
      const auto& p = next.nodes[i];
      const auto& q = next.nodes[j];
      Point m{0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])};
      CurveTag tag = CurveTag::none;
      double param = 0.0;
      const bool on_boundary = boundary_pairs.count(key) != 0;
      if (on_boundary && next.curved_tag[i] != CurveTag::none &&
          next.curved_tag[i] == next.curved_tag[j]) {
        tag = next.curved_tag[i];
        const double ti = next.curve_param[i];
        double dt = next.curve_param[j] - ti;
        if (tag != CurveTag::arc) dt = std::remainder(dt, 2.0 * std::numbers::pi);
        param = ti + 0.5 * dt;
        m = next.curve.at(param);
      }
      const int id = static_cast<int>(next.nodes.size());
      next.nodes.push_back(m);
      next.curved_tag.push_back(tag);
      next.curve_param.push_back(param);
      midpoint.emplace(key, id);
      return id;
    };
    for (const auto& t : current.triangles) {
      const int m01 = split(t[0], t[1]);
      const int m12 = split(t[1], t[2]);
      const int m20 = split(t[2], t[0]);
      next.triangles.push_back({t[0], m01, m20});
      next.triangles.push_back({m01, t[1], m12});
      next.triangles.push_back({m20, m12, t[2]});
      next.triangles.push_back({m01, m12, m20});
    }
    for (const auto& e : current.boundary_edges) {
      const int m = midpoint.at({std::min(e[0], e[1]), std::max(e[0], e[1])});
      next.boundary_edges.push_back({e[0], m});
      next.boundary_edges.push_back({m, e[1]});
    }
    current = std::move(next);
  }
  return current;
}

MeshReport validate(const Mesh& mesh) {
  MeshReport report;
  const auto fail = [&](std::string why) {
    report.ok = false;
    if (report.message.empty()) report.message = std::move(why);
  };
  const int n = static_cast<int>(mesh.nodes.size());
  report.min_area = std::numeric_limits<double>::infinity();
  report.min_angle = std::numeric_limits<double>::infinity();
  std::map<std::pair<int, int>, int> directed;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      if (tri[k] < 0 || tri[k] >= n) {
        fail("triangle " + std::to_string(t) + " has an out-of-range node");
        return report;
      }
    }
    const double area = mesh.triangle_area(t);
    report.min_area = std::min(report.min_area, area);
    if (area <= 0.0) fail("triangle " + std::to_string(t) + " is not counterclockwise");
    for (int k = 0; k < 3; ++k) {
      const auto& o = mesh.nodes[tri[k]];
      const auto& a = mesh.nodes[tri[(k + 1) % 3]];
      const auto& b = mesh.nodes[tri[(k + 2) % 3]];
      const double ux = a[0] - o[0], uy = a[1] - o[1], vx = b[0] - o[0], vy = b[1] - o[1];
      const double angle = std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
      report.min_angle = std::min(report.min_angle, angle);
      if (++directed[{tri[k], tri[(k + 1) % 3]}] > 1) fail("edge used twice in one direction");
    }
  }
  std::map<std::pair<int, int>, int> boundary;
  for (const auto& [edge, count] : directed) {
    (void)count;
    if (directed.count({edge.second, edge.first}) == 0) boundary[edge] = 1;
  }
  if (boundary.size() != mesh.boundary_edges.size()) {
    fail("boundary edge list does not match the mesh boundary");
  }
  for (const auto& e : mesh.boundary_edges) {
    if (boundary.count({e[0], e[1]}) == 0) fail("boundary edge is not an outward mesh edge");
  }
  for (std::size_t i = 0; i + 1 < mesh.boundary_edges.size(); ++i) {
    if (mesh.boundary_edges[i][1] != mesh.boundary_edges[i + 1][0]) {
      fail("boundary edges do not form a single ordered loop");
      break;
    }
  }
  if (!mesh.boundary_edges.empty() &&
      mesh.boundary_edges.back()[1] != mesh.boundary_edges.front()[0]) {
    fail("boundary loop is not closed");
  }
  std::vector<Point> loop;
  for (const auto& e : mesh.boundary_edges) loop.push_back(mesh.nodes[e[0]]);
  const double polygon_area = geometry::signed_area(loop);
  if (std::abs(mesh.area() - polygon_area) > 1e-12 * std::max(1.0, polygon_area)) {
    fail("triangle areas do not sum to the boundary polygon area");
  }
  return report;
}

int select_level(const geometry::DomainSpec& spec, int node_target, int node_cap) {
  Mesh m = triangulate(geometry::make_domain(spec));
  int level = 0;
  while (static_cast<int>(m.node_count()) < node_target) {
    // Next level has about V + E nodes; E ≈ V + T.
    const std::size_t estimate = m.node_count() + m.node_count() + m.triangles.size();
    if (static_cast<int>(estimate) > node_cap) break;
    m = refine(m, 1);
    ++level;
  }
  return level;
}

Mesh build_at_level(const geometry::DomainSpec& spec, int level) {
  return refine(triangulate(geometry::make_domain(spec)), level);
}

Mesh build(const geometry::DomainSpec& spec, int node_target, int node_cap) {
  return build_at_level(spec, select_level(spec, node_target, node_cap));
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  out << mesh.nodes.size() << ' ' << mesh.triangles.size() << ' ' << mesh.boundary_edges.size()
      << '\n';
  char buf[96];
  for (const auto& p : mesh.nodes) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p[0], p[1]);
    out << buf;
  }
  for (const auto& t : mesh.triangles) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& e : mesh.boundary_edges) out << e[0] << ' ' << e[1] << '\n';
}

}  // namespace fluxspec::mesh
