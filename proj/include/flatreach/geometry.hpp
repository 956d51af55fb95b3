#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace flatreach {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(b - a); }

enum class Orientation { Counterclockwise, Clockwise };
enum class OffsetSide { Outer, Inner };

/// Oriented closed polyline; the segment from the last vertex back to the
/// first is implicit.
struct ClosedCurve {
  std::vector<Point> vertices;
  Orientation orientation = Orientation::Counterclockwise;
  double spacing_hint = 0.0;

  std::size_t size() const { return vertices.size(); }
  const Point& at(std::size_t i) const { return vertices[i % vertices.size()]; }
};

/// Validates (>= 3 vertices, finite, no repeated consecutive vertices) and
/// fills in orientation and spacing_hint from the vertex list.
ClosedCurve make_closed_curve(std::vector<Point> pts);

double signed_area(const ClosedCurve& c);
double perimeter(const ClosedCurve& c);
ClosedCurve reversed(const ClosedCurve& c);

/// Exact segment-pair intersection scan (1e-12 relative collinearity
/// epsilon). Adjacent segments sharing an endpoint are not counted.
bool is_simple(const ClosedCurve& c);

/// Binary region on a uniform pixel grid. Row-major, y = 0 is the bottom
/// row; pixel (x, y) covers [x, x+1] x [y, y+1] in units of `spacing`.
struct GridMask {
  int width = 0;
  int height = 0;
  double spacing = 1.0;
  std::vector<std::uint8_t> cells;

  GridMask() = default;
  GridMask(int w, int h, double s);

  bool at(int x, int y) const { return cells[std::size_t(y) * width + x] != 0; }
  void set(int x, int y, bool v) { cells[std::size_t(y) * width + x] = v ? 1 : 0; }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
  Point cell_center(int x, int y) const {
    return {(x + 0.5) * spacing, (y + 0.5) * spacing};
  }
  std::int64_t count_true() const;
};

/// Copy with `margin` rings of false cells added on every side.
GridMask padded(const GridMask& m, int margin = 2);
/// True when the outermost ring is entirely false.
bool has_clear_border(const GridMask& m);

struct OffsetResult {
  ClosedCurve curve;
  double epsilon = 0.0;
  OffsetSide side = OffsetSide::Outer;
  bool injective = false;
};

/// Signed distance to the polygonal boundary of the mask region: positive
/// inside, negative outside, sign from even-odd ray casting.
double signed_distance(const GridMask& mask, const Point& p);
/// Same, against an already extracted set of boundary curves.
double signed_distance(const std::vector<ClosedCurve>& boundary, const Point& p);

/// Displace every vertex by eps along its unit normal (outward or inward).
/// `injective` is false when the result self-intersects or any segment
/// degenerates or reverses direction against its source segment.
OffsetResult offset_curve(const ClosedCurve& curve, double eps, OffsetSide side);

/// Unit tangent at vertex i from the central difference of its neighbors.
Point estimate_tangent(const ClosedCurve& curve, std::size_t i);

/// Unsigned Menger curvature per vertex: inverse circumradius of the triple
/// at +-window/2 arc length. Collinear triples give 0.
std::vector<double> estimate_curvature(const ClosedCurve& curve, double window);

double max_curvature(const ClosedCurve& curve, double window);

/// Default curvature window used when callers do not pick one.
double default_curvature_window(const ClosedCurve& curve);

/// Equal arc-length spacing; vertex count = round(perimeter / step).
ClosedCurve resample_arclength(const ClosedCurve& curve, double step);

/// Cyclic 3-point moving average, `passes` times.
ClosedCurve smooth_closed_curve(const ClosedCurve& curve, int passes);

double curve_diameter(const ClosedCurve& curve);

}  // namespace flatreach
