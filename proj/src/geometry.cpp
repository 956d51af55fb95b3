#include "flatreach/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "flatreach/flatnorm.hpp"

namespace flatreach {

namespace {

constexpr double kCollinearEps = 1e-12;

double seg_point_distance(Point a, Point b, Point p) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(a, p);
  double t = dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(a + t * ab, p);
}

int orient_sign(Point a, Point b, Point c, double scale) {
  const double v = cross(b - a, c - a);
  if (std::abs(v) <= kCollinearEps * scale) return 0;
  return v > 0.0 ? 1 : -1;
}

bool on_segment(Point a, Point b, Point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Proper or improper intersection of segments ab and cd.
bool segments_intersect(Point a, Point b, Point c, Point d, double scale) {
  const int o1 = orient_sign(a, b, c, scale);
  const int o2 = orient_sign(a, b, d, scale);
  const int o3 = orient_sign(c, d, a, scale);
  const int o4 = orient_sign(c, d, b, scale);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

std::vector<double> cumulative_arclength(const ClosedCurve& c) {
  const std::size_t n = c.size();
  std::vector<double> cum(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    cum[i + 1] = cum[i] + distance(c.vertices[i], c.at(i + 1));
  return cum;
}

// Position at arc length s (mod perimeter) walking the polyline from vertex 0.
Point point_at_arclength(const ClosedCurve& c, const std::vector<double>& cum,
                         double s) {
  const double total = cum.back();
  s = std::fmod(s, total);
  if (s < 0.0) s += total;
  const auto it = std::upper_bound(cum.begin(), cum.end(), s);
  std::size_t i = std::size_t(std::max<std::ptrdiff_t>(0, it - cum.begin() - 1));
  if (i >= c.size()) i = c.size() - 1;
  const double seg = cum[i + 1] - cum[i];
  const double t = seg > 0.0 ? (s - cum[i]) / seg : 0.0;
  return c.vertices[i] + t * (c.at(i + 1) - c.vertices[i]);
}

double menger_curvature(Point a, Point b, Point c) {
  const double twice_area = std::abs(cross(b - a, c - a));
  const double la = distance(b, c);
  const double lb = distance(a, c);
  const double lc = distance(a, b);
  const double prod = la * lb * lc;
  if (prod <= 0.0) return 0.0;
  const double scale = std::max({la, lb, lc});
  if (twice_area <= kCollinearEps * scale * scale) return 0.0;
  return 2.0 * twice_area / prod;
}

}  // namespace

ClosedCurve make_closed_curve(std::vector<Point> pts) {
  std::vector<Point> cleaned;
  cleaned.reserve(pts.size());
  for (const Point& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw std::domain_error("curve vertex is not finite");
    if (!cleaned.empty() && cleaned.back().x == p.x && cleaned.back().y == p.y)
      continue;
    cleaned.push_back(p);
  }
  if (cleaned.size() >= 2 && cleaned.front().x == cleaned.back().x &&
      cleaned.front().y == cleaned.back().y)
    cleaned.pop_back();
  if (cleaned.size() < 3)
    throw std::domain_error("closed curve needs at least 3 distinct vertices");

  ClosedCurve c;
  c.vertices = std::move(cleaned);
  c.orientation = signed_area(c) >= 0.0 ? Orientation::Counterclockwise
                                        : Orientation::Clockwise;
  c.spacing_hint = perimeter(c) / double(c.size());
  return c;
}

double signed_area(const ClosedCurve& c) {
  double a = 0.0;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) a += cross(c.vertices[i], c.at(i + 1));
  return 0.5 * a;
}

double perimeter(const ClosedCurve& c) {
  double p = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    p += distance(c.vertices[i], c.at(i + 1));
  return p;
}

ClosedCurve reversed(const ClosedCurve& c) {
  ClosedCurve r = c;
  std::reverse(r.vertices.begin(), r.vertices.end());
  r.orientation = c.orientation == Orientation::Counterclockwise
                      ? Orientation::Clockwise
                      : Orientation::Counterclockwise;
  return r;
}

bool is_simple(const ClosedCurve& c) {
  const std::size_t n = c.size();
  const double scale = std::max(curve_diameter(c), 1e-300);
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = c.vertices[i];
    const Point b = c.at(i + 1);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(a, b, c.vertices[j], c.at(j + 1), scale))
        return false;
    }
  }
  return true;
}

GridMask::GridMask(int w, int h, double s) : width(w), height(h), spacing(s) {
  if (w <= 0 || h <= 0) throw std::domain_error("mask dimensions must be positive");
  if (!(s > 0.0)) throw std::domain_error("mask spacing must be positive");
  cells.assign(std::size_t(w) * h, 0);
}

std::int64_t GridMask::count_true() const {
  std::int64_t n = 0;
  for (auto v : cells) n += (v != 0);
  return n;
}

GridMask padded(const GridMask& m, int margin) {
  if (margin < 0) throw std::domain_error("padding margin must be nonnegative");
  GridMask out(m.width + 2 * margin, m.height + 2 * margin, m.spacing);
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x)
      if (m.at(x, y)) out.set(x + margin, y + margin, true);
  return out;
}

bool has_clear_border(const GridMask& m) {
  for (int x = 0; x < m.width; ++x)
    if (m.at(x, 0) || m.at(x, m.height - 1)) return false;
  for (int y = 0; y < m.height; ++y)
    if (m.at(0, y) || m.at(m.width - 1, y)) return false;
  return true;
}

double signed_distance(const std::vector<ClosedCurve>& boundary, const Point& p) {
  double best = std::numeric_limits<double>::infinity();
  int crossings = 0;
  for (const ClosedCurve& c : boundary) {
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = c.vertices[i];
      const Point b = c.at(i + 1);
      best = std::min(best, seg_point_distance(a, b, p));
      // Even-odd ray cast along +x, half-open in y to avoid double counts.
      if ((a.y <= p.y) != (b.y <= p.y)) {
        const double t = (p.y - a.y) / (b.y - a.y);
        if (a.x + t * (b.x - a.x) > p.x) ++crossings;
      }
    }
  }
  if (!std::isfinite(best)) return -std::numeric_limits<double>::infinity();
  return (crossings % 2 == 1) ? best : -best;
}

double signed_distance(const GridMask& mask, const Point& p) {
  if (p.x < 0.0 || p.y < 0.0 || p.x > mask.width * mask.spacing ||
      p.y > mask.height * mask.spacing)
    throw std::domain_error("query point outside grid bounds");
  return signed_distance(extract_boundary(mask, 0), p);
}

OffsetResult offset_curve(const ClosedCurve& curve, double eps, OffsetSide side) {
  if (!(eps > 0.0)) throw std::domain_error("offset eps must be positive");
  const std::size_t n = curve.size();
  const bool ccw = signed_area(curve) >= 0.0;

  OffsetResult result;
  result.epsilon = eps;
  result.side = side;

  std::vector<Point> moved(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point t = estimate_tangent(curve, i);
    // Outward normal: tangent rotated -90 deg for counterclockwise curves.
    Point nrm = ccw ? Point{t.y, -t.x} : Point{-t.y, t.x};
    if (side == OffsetSide::Inner) nrm = -1.0 * nrm;
    moved[i] = curve.vertices[i] + eps * nrm;
  }

  ClosedCurve off;
  off.vertices = std::move(moved);
  off.orientation = curve.orientation;
  off.spacing_hint = curve.spacing_hint;

  // Injectivity: no self-intersection, and no segment degenerates or
  // reverses against its source segment (a local fold of the normal map).
  bool injective = true;
  for (std::size_t i = 0; i < n && injective; ++i) {
    const Point orig = curve.at(i + 1) - curve.vertices[i];
    const Point img = off.at(i + 1) - off.vertices[i];
    if (dot(orig, img) <= 0.0) injective = false;
  }
  if (injective && !is_simple(off)) injective = false;

  result.curve = std::move(off);
  result.injective = injective;
  return result;
}

Point estimate_tangent(const ClosedCurve& curve, std::size_t i) {
  const std::size_t n = curve.size();
  if (i >= n) throw std::domain_error("vertex index out of range");
  const Point d = curve.at(i + 1) - curve.at(i + n - 1);
  const double len = norm(d);
  if (len == 0.0) return {1.0, 0.0};
  return {d.x / len, d.y / len};
}

std::vector<double> estimate_curvature(const ClosedCurve& curve, double window) {
  const std::size_t n = curve.size();
  const auto cum = cumulative_arclength(curve);
  const double mean_spacing = cum.back() / double(n);
  if (!(window >= 2.0 * mean_spacing))
    throw std::invalid_argument("curvature window below 2x mean vertex spacing");
  if (window >= cum.back())
    throw std::invalid_argument("curvature window exceeds perimeter");

  std::vector<double> kappa(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = cum[i];
    const Point before = point_at_arclength(curve, cum, s - 0.5 * window);
    const Point after = point_at_arclength(curve, cum, s + 0.5 * window);
    kappa[i] = menger_curvature(before, curve.vertices[i], after);
  }
  return kappa;
}

double max_curvature(const ClosedCurve& curve, double window) {
  const auto k = estimate_curvature(curve, window);
  return *std::max_element(k.begin(), k.end());
}

double default_curvature_window(const ClosedCurve& curve) {
  return 6.0 * perimeter(curve) / double(curve.size());
}

ClosedCurve resample_arclength(const ClosedCurve& curve, double step) {
  const auto cum = cumulative_arclength(curve);
  const double total = cum.back();
  if (!(total > 0.0)) throw std::domain_error("cannot resample a degenerate curve");
  if (!(step > 0.0) || !(step < total / 8.0))
    throw std::domain_error("resample step must be in (0, perimeter/8)");

  const std::size_t count = std::max<std::size_t>(8, std::size_t(std::llround(total / step)));
  std::vector<Point> pts(count);
  for (std::size_t k = 0; k < count; ++k)
    pts[k] = point_at_arclength(curve, cum, total * double(k) / double(count));

  ClosedCurve out;
  out.vertices = std::move(pts);
  out.orientation = curve.orientation;
  out.spacing_hint = total / double(count);
  return out;
}

ClosedCurve smooth_closed_curve(const ClosedCurve& curve, int passes) {
  ClosedCurve out = curve;
  const std::size_t n = out.size();
  std::vector<Point> next(n);
  for (int p = 0; p < passes; ++p) {
    for (std::size_t i = 0; i < n; ++i)
      next[i] = (1.0 / 3.0) * (out.at(i + n - 1) + out.vertices[i] + out.at(i + 1));
    out.vertices.swap(next);
  }
  return out;
}

double curve_diameter(const ClosedCurve& curve) {
  double xmin = curve.vertices[0].x, xmax = xmin;
  double ymin = curve.vertices[0].y, ymax = ymin;
  for (const Point& p : curve.vertices) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  return std::hypot(xmax - xmin, ymax - ymin);
}

}  // namespace flatreach
