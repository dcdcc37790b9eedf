#pragma once

// Planar domain catalogue and its polygonal boundary loops.

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "fluxspec/closed_form.hpp"

namespace fluxspec::geometry {

using Point = std::array<double, 2>;

enum class CurveTag { none, circle, ellipse, arc };

/// Curved boundary piece centred at the origin. Circle and arc use
/// radius a; the ellipse uses semi-axes (a, b). Parameter is the angle.
struct Curve {
  CurveTag kind = CurveTag::none;
  double a = 0.0;
  double b = 0.0;

  Point at(double theta) const;
};

struct DiskDomain {
  closed_form::BallSpec ball;
  int segments = 16;
};

struct PolygonSpec {
  std::vector<Point> vertices;  // counterclockwise
};

struct EllipseSpec {
  double a;
  double b;
  int segments = 16;
};

struct SectorDomain {
  closed_form::SectorSpec sector;
  int arc_segments = 16;
};

using Shape = std::variant<DiskDomain, closed_form::BoxSpec, PolygonSpec, EllipseSpec, SectorDomain,
                           closed_form::EquilateralSpec>;

struct DomainSpec {
  std::string id;
  Shape shape;
};

/// Counterclockwise loop; tags[i] and params[i] locate vertex i on `curve`.
struct BoundaryLoop {
  std::vector<Point> vertices;
  std::vector<CurveTag> tags;
  std::vector<double> params;
  Curve curve;
};

double signed_area(const std::vector<Point>& loop);
double loop_perimeter(const std::vector<Point>& loop);
bool is_simple(const std::vector<Point>& loop);
bool is_convex(const std::vector<Point>& loop);

BoundaryLoop make_domain(const DomainSpec& spec);

// Catalogue generators.

/// Regular k-gon with circumradius R and a horizontal bottom side.
DomainSpec regular_polygon(int k, double circumradius = 1.0);
/// Isosceles triangle with apex angle `aperture` on top and equal legs.
DomainSpec isosceles(double aperture, double leg = 1.0);
/// Rhombus with interior angle `angle` at the left and right vertices.
DomainSpec rhombus(double angle, double side = 1.0);
DomainSpec rectangle(double half_x, double half_y);
DomainSpec disk(double radius = 1.0, int segments = 16);
DomainSpec ellipse(double a, double b, int segments = 16);
DomainSpec sector(double alpha, int arc_segments = 16);
DomainSpec equilateral(double side);

}  // namespace fluxspec::geometry
