#include "fluxspec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "fluxspec/errors.hpp"

namespace fluxspec::geometry {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinArea = 1e-12;

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool segments_cross(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
  const double d1 = cross(q1, q2, p1);
  const double d2 = cross(q1, q2, p2);
  const double d3 = cross(p1, p2, q1);
  const double d4 = cross(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  const auto on_segment = [](const Point& a, const Point& b, const Point& p) {
    return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
           std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
  };
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

BoundaryLoop straight_loop(std::vector<Point> vertices) {
  BoundaryLoop loop;
  loop.tags.assign(vertices.size(), CurveTag::none);
  loop.params.assign(vertices.size(), 0.0);
  loop.vertices = std::move(vertices);
  return loop;
}

BoundaryLoop closed_curve_loop(const Curve& curve, int segments) {
  if (segments < 16) throw DomainError("curved boundaries need at least 16 segments");
  BoundaryLoop loop;
  loop.curve = curve;
  for (int j = 0; j < segments; ++j) {
    const double theta = 2.0 * kPi * j / segments;
    loop.vertices.push_back(curve.at(theta));
    loop.tags.push_back(curve.kind);
    loop.params.push_back(theta);
  }
  return loop;
}

void check_polygon(const std::vector<Point>& v) {
  if (v.size() < 3) throw DomainError("polygon needs at least three vertices");
  for (const auto& p : v) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1])) throw DomainError("non-finite vertex");
  }
  if (signed_area(v) <= kMinArea) {
    throw DomainError("polygon must be counterclockwise with area > 1e-12");
  }
  if (!is_simple(v)) throw DomainError("polygon is self-intersecting");
}

}  // namespace

Point Curve::at(double theta) const {
  switch (kind) {
    case CurveTag::ellipse:
      return {a * std::cos(theta), b * std::sin(theta)};
    case CurveTag::circle:
    case CurveTag::arc:
      return {a * std::cos(theta), a * std::sin(theta)};
    case CurveTag::none:
      break;
  }
  throw DomainError("Curve::at on a straight boundary");
}

double signed_area(const std::vector<Point>& loop) {
  double twice = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const auto& p = loop[i];
    const auto& q = loop[(i + 1) % loop.size()];
    twice += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * twice;
}

double loop_perimeter(const std::vector<Point>& loop) {
  double total = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const auto& p = loop[i];
    const auto& q = loop[(i + 1) % loop.size()];
    total += std::hypot(q[0] - p[0], q[1] - p[1]);
  }
  return total;
}

bool is_simple(const std::vector<Point>& loop) {
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = loop[i];
    const auto& b = loop[(i + 1) % n];
    if (a == b) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_cross(a, b, loop[j], loop[(j + 1) % n])) return false;
    }
  }
  return true;
}

bool is_convex(const std::vector<Point>& loop) {
  const std::size_t n = loop.size();
  const double scale = std::max(1.0, loop_perimeter(loop));
  for (std::size_t i = 0; i < n; ++i) {
    if (cross(loop[i], loop[(i + 1) % n], loop[(i + 2) % n]) < -1e-14 * scale * scale) {
      return false;
    }
  }
  return true;
}

BoundaryLoop make_domain(const DomainSpec& spec) {
  struct Visitor {
    BoundaryLoop operator()(const DiskDomain& d) const {
      if (d.ball.dimension() != 2) throw DomainError("meshing supports planar disks only");
      return closed_curve_loop({CurveTag::circle, d.ball.radius(), d.ball.radius()}, d.segments);
    }
    BoundaryLoop operator()(const closed_form::BoxSpec& box) const {
      if (box.dimension() != 2) throw DomainError("meshing supports planar boxes only");
      const double ax = box.half_lengths()[0];
      const double ay = box.half_lengths()[1];
      return straight_loop({{-ax, -ay}, {ax, -ay}, {ax, ay}, {-ax, ay}});
    }
    BoundaryLoop operator()(const PolygonSpec& poly) const {
      check_polygon(poly.vertices);
      return straight_loop(poly.vertices);
    }
    BoundaryLoop operator()(const EllipseSpec& e) const {
      if (!(e.a > 0.0) || !(e.b > 0.0)) throw DomainError("ellipse semi-axes must be > 0");
      return closed_curve_loop({CurveTag::ellipse, e.a, e.b}, e.segments);
    }
    BoundaryLoop operator()(const SectorDomain& s) const {
      if (s.arc_segments < 16) throw DomainError("sector arcs need at least 16 segments");
      BoundaryLoop loop;
      loop.curve = {CurveTag::arc, 1.0, 1.0};
      loop.vertices.push_back({0.0, 0.0});
      loop.tags.push_back(CurveTag::none);
      loop.params.push_back(0.0);
      const double half = 0.5 * s.sector.alpha();
      for (int j = 0; j <= s.arc_segments; ++j) {
        const double theta = -half + s.sector.alpha() * j / s.arc_segments;
        loop.vertices.push_back(loop.curve.at(theta));
        loop.tags.push_back(CurveTag::arc);
        loop.params.push_back(theta);
      }
      return loop;
    }
    BoundaryLoop operator()(const closed_form::EquilateralSpec& t) const {
      const auto v = t.vertices();
      return straight_loop({v[0], v[1], v[2]});
    }
  };
  return std::visit(Visitor{}, spec.shape);
}

DomainSpec regular_polygon(int k, double circumradius) {
  if (k < 3) throw DomainError("regular_polygon: k must be at least 3");
  PolygonSpec poly;
  for (int j = 0; j < k; ++j) {
    const double theta = -0.5 * kPi + kPi / k + 2.0 * kPi * j / k;
    poly.vertices.push_back({circumradius * std::cos(theta), circumradius * std::sin(theta)});
  }
  return {"regular-polygon-" + std::to_string(k), poly};
}

DomainSpec isosceles(double aperture, double leg) {
  if (!(aperture > 0.0 && aperture < kPi)) throw DomainError("isosceles: aperture in (0, pi)");
  const double half_base = leg * std::sin(0.5 * aperture);
  const double height = leg * std::cos(0.5 * aperture);
  PolygonSpec poly{{{-half_base, 0.0}, {half_base, 0.0}, {0.0, height}}};
  char id[64];
  std::snprintf(id, sizeof id, "isosceles-%.6f", aperture);
  return {id, poly};
}

DomainSpec rhombus(double angle, double side) {
  if (!(angle > 0.0 && angle < kPi)) throw DomainError("rhombus: angle in (0, pi)");
  const double hx = side * std::cos(0.5 * angle);
  const double hy = side * std::sin(0.5 * angle);
  PolygonSpec poly{{{-hx, 0.0}, {0.0, -hy}, {hx, 0.0}, {0.0, hy}}};
  char id[64];
  std::snprintf(id, sizeof id, "rhombus-%.6f", angle);
  return {id, poly};
}

DomainSpec rectangle(double half_x, double half_y) {
  return {"box", closed_form::BoxSpec({half_x, half_y})};
}

DomainSpec disk(double radius, int segments) {
  return {"disk", DiskDomain{closed_form::BallSpec(2, radius), segments}};
}

DomainSpec ellipse(double a, double b, int segments) {
  char id[64];
  std::snprintf(id, sizeof id, "ellipse-%.6f-%.6f", a, b);
  return {id, EllipseSpec{a, b, segments}};
}

DomainSpec sector(double alpha, int arc_segments) {
  char id[64];
  std::snprintf(id, sizeof id, "sector-%.6f", alpha);
  return {id, SectorDomain{closed_form::SectorSpec(alpha), arc_segments}};
}

DomainSpec equilateral(double side) {
  return {"equilateral", closed_form::EquilateralSpec(side)};
}

}  // namespace fluxspec::geometry
