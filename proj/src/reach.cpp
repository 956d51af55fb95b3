#include "flatreach/reach.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "flatreach/parallel.hpp"

namespace flatreach {

namespace {

constexpr double kPerpEps = 1e-12;
constexpr std::size_t kMinSeparation = 5;  // vertex steps along the curve
// A pair is a genuine bottleneck only when local curvature does not explain
// the quotient and the chord is near-perpendicular to both tangent lines;
// ties between the two caps are broken with small slack.
constexpr double kCurvatureSlack = 0.98;
constexpr double kQuotientSlack = 1.02;
const double kPerpAlign2 = std::pow(std::cos(25.0 * std::numbers::pi / 180.0), 2);

struct PairBest {
  double value = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  std::size_t j = 0;

  bool better_than(const PairBest& o) const {
    if (value != o.value) return value < o.value;
    if (i != o.i) return i < o.i;
    return j < o.j;
  }
  void update(double v, std::size_t a, std::size_t b) {
    const PairBest cand{v, a, b};
    if (cand.better_than(*this)) *this = cand;
  }
  void merge(const PairBest& o) {
    if (o.better_than(*this)) *this = o;
  }
};

double menger(Point a, Point b, Point c) {
  const double twice_area = std::abs(cross(b - a, c - a));
  const double prod = distance(b, c) * distance(a, c) * distance(a, b);
  if (prod <= 0.0) return 0.0;
  return 2.0 * twice_area / prod;
}

struct CurveScratch {
  std::vector<Point> v;
  std::vector<Point> tn;  // unit normal of the tangent line per vertex
  // Classification curvature: the larger of the two one-sided Menger
  // estimates, so curvature transitions (stadium cap joints) are not
  // smeared flat by a centered window.
  std::vector<double> inv_kappa;
  double inv_kappa_min = std::numeric_limits<double>::infinity();
};

CurveScratch prepare(const ClosedCurve& curve) {
  const std::size_t n = curve.size();
  CurveScratch s;
  s.v = curve.vertices;
  s.tn.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point t = estimate_tangent(curve, i);
    s.tn[i] = {t.y, -t.x};
  }
  s.inv_kappa.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double back =
        menger(s.v[(i + n - 6) % n], s.v[(i + n - 3) % n], s.v[i]);
    const double fwd = menger(s.v[i], s.v[(i + 3) % n], s.v[(i + 6) % n]);
    const double k = std::max(back, fwd);
    s.inv_kappa[i] = k > 0.0 ? 1.0 / k : std::numeric_limits<double>::infinity();
  }
  const auto kappa = estimate_curvature(curve, default_curvature_window(curve));
  for (std::size_t i = 0; i < n; ++i)
    if (kappa[i] > 0.0)
      s.inv_kappa_min = std::min(s.inv_kappa_min, 1.0 / kappa[i]);
  return s;
}

struct FedererScan {
  PairBest any;         // min quotient over admissible pairs
  PairBest bottleneck;  // min quotient over bottleneck-like pairs
};

// Quotients for one base vertex against all admissible partners.
void scan_row(const CurveScratch& s, std::size_t i, FedererScan& out) {
  const std::size_t n = s.v.size();
  const Point vi = s.v[i];
  const Point ni = s.tn[i];
  const double ki = s.inv_kappa[i];
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t gap = i < j ? j - i : i - j;
    if (std::min(gap, n - gap) < kMinSeparation) continue;
    const double dx = s.v[j].x - vi.x;
    const double dy = s.v[j].y - vi.y;
    const double dperp = std::abs(ni.x * dx + ni.y * dy);
    if (dperp < kPerpEps) continue;
    const double d2 = dx * dx + dy * dy;
    const double q = d2 / (2.0 * dperp);
    out.any.update(q, i, j);
    if (q < kCurvatureSlack * std::min(ki, s.inv_kappa[j]) &&
        dperp * dperp >= kPerpAlign2 * d2) {
      const double dperp_j = std::abs(s.tn[j].x * dx + s.tn[j].y * dy);
      if (dperp_j * dperp_j >= kPerpAlign2 * d2) out.bottleneck.update(q, i, j);
    }
  }
}

FedererScan federer_scan(const CurveScratch& s, bool parallel) {
  const std::size_t n = s.v.size();
  FedererScan total;
  if (!parallel) {
    for (std::size_t i = 0; i < n; ++i) scan_row(s, i, total);
    return total;
  }
#ifdef _OPENMP
  const int threads = worker_count();
  std::vector<FedererScan> partial(threads);
#pragma omp parallel num_threads(threads)
  {
    const int t = omp_get_thread_num();
    FedererScan local;
#pragma omp for schedule(static)
    for (long long i = 0; i < (long long)n; ++i)
      scan_row(s, std::size_t(i), local);
    partial[t] = local;
  }
  for (const FedererScan& p : partial) {
    total.any.merge(p.any);
    total.bottleneck.merge(p.bottleneck);
  }
#else
  for (std::size_t i = 0; i < n; ++i) scan_row(s, i, total);
#endif
  return total;
}

ReachEstimate federer_estimate(const ClosedCurve& curve, bool parallel) {
  if (curve.size() < 8)
    throw std::domain_error("reach_federer needs at least 8 vertices");
  const CurveScratch s = prepare(curve);
  const FedererScan scan = federer_scan(s, parallel);

  ReachEstimate est;
  est.method = ReachMethod::Federer;
  est.value = std::min(scan.any.value, s.inv_kappa_min);

  const bool pair_active = scan.any.value <= kQuotientSlack * s.inv_kappa_min;
  const bool genuine = scan.bottleneck.value <= kQuotientSlack * scan.any.value;
  if (pair_active && genuine) {
    est.kind = ReachKind::Bottleneck;
    est.witness = {s.v[scan.bottleneck.i], s.v[scan.bottleneck.j]};
  } else {
    est.kind = ReachKind::Focal;
  }
  return est;
}

}  // namespace

ReachEstimate reach_federer(const ClosedCurve& curve) {
  return federer_estimate(curve, true);
}

ReachEstimate reach_federer_serial(const ClosedCurve& curve) {
  return federer_estimate(curve, false);
}

ReachEstimate reach_federer_cross(const ClosedCurve& a, const ClosedCurve& b) {
  ReachEstimate est;
  est.method = ReachMethod::Federer;
  est.kind = ReachKind::Bottleneck;

  const ClosedCurve* base[2] = {&a, &b};
  const ClosedCurve* other[2] = {&b, &a};
  PairBest best;
  int best_side = 0;
  for (int side = 0; side < 2; ++side) {
    const std::size_t n = base[side]->size();
    const std::size_t m = other[side]->size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point vi = base[side]->vertices[i];
      const Point t = estimate_tangent(*base[side], i);
      const Point ni{t.y, -t.x};
      PairBest row;
      for (std::size_t j = 0; j < m; ++j) {
        const double dx = other[side]->vertices[j].x - vi.x;
        const double dy = other[side]->vertices[j].y - vi.y;
        const double dperp = std::abs(ni.x * dx + ni.y * dy);
        if (dperp < kPerpEps) continue;
        row.update((dx * dx + dy * dy) / (2.0 * dperp), i, j);
      }
      if (row.better_than(best)) {
        best = row;
        best_side = side;
      }
    }
  }
  est.value = best.value;
  if (std::isfinite(best.value))
    est.witness = {base[best_side]->vertices[best.i],
                   other[best_side]->vertices[best.j]};
  return est;
}

std::optional<DoubleNormalPair> double_normal_pair(const ClosedCurve& curve) {
  if (curve.size() < 8)
    throw std::domain_error("double_normal_pair needs at least 8 vertices");
  const CurveScratch s = prepare(curve);
  const FedererScan scan = federer_scan(s, true);

  const bool pair_active = scan.any.value <= kQuotientSlack * s.inv_kappa_min;
  const bool genuine = scan.bottleneck.value <= kQuotientSlack * scan.any.value;
  if (!pair_active || !genuine) return std::nullopt;  // focal_only

  DoubleNormalPair pair;
  pair.p = s.v[scan.bottleneck.i];
  pair.q = s.v[scan.bottleneck.j];
  pair.midpoint = 0.5 * (pair.p + pair.q);
  const Point ti = estimate_tangent(curve, scan.bottleneck.i);
  const Point tj = estimate_tangent(curve, scan.bottleneck.j);
  const double c = std::clamp(std::abs(dot(ti, tj)), 0.0, 1.0);
  pair.tangent_angle_gap = std::acos(c);
  return pair;
}

// ---- brute-force ambient sampling oracle ----

namespace {

struct TieBest {
  double value = std::numeric_limits<double>::infinity();
  long long cell = -1;  // grid cell index, for a deterministic tie-break
  Point foot1, foot2;

  bool better_than(const TieBest& o) const {
    if (value != o.value) return value < o.value;
    return cell < o.cell;
  }
  void merge(const TieBest& o) {
    if (o.better_than(*this)) *this = o;
  }
};

struct SegmentFoot {
  double dist;
  Point foot;
};

SegmentFoot foot_on_segment(Point a, Point b, Point p) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Point f = a + t * ab;
  return {distance(f, p), f};
}

// Distance refinement near vertex i: the two incident segments.
SegmentFoot refine_at_vertex(const ClosedCurve& c, std::size_t i, Point p) {
  const std::size_t n = c.size();
  SegmentFoot best = foot_on_segment(c.at(i + n - 1), c.vertices[i], p);
  const SegmentFoot f2 = foot_on_segment(c.vertices[i], c.at(i + 1), p);
  if (f2.dist < best.dist) best = f2;
  return best;
}

class BruteforceScan {
 public:
  BruteforceScan(const ClosedCurve& curve, double grid_step, double tie_tol)
      : curve_(curve), grid_step_(grid_step), tie_tol_(tie_tol) {
    if (!(grid_step > 0.0)) throw std::domain_error("grid_step must be positive");
    if (!(tie_tol_ >= grid_step))
      throw std::domain_error("tie_tol must be at least grid_step");

    double xmin = curve.vertices[0].x, xmax = xmin;
    double ymin = curve.vertices[0].y, ymax = ymin;
    for (const Point& p : curve.vertices) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
    const double margin =
        0.25 * std::max(xmax - xmin, ymax - ymin) + 2.0 * grid_step;
    // Anchor the grid to absolute multiples of grid_step so mirror axes of
    // symmetric inputs are sampled exactly.
    origin_ = {std::floor((xmin - margin) / grid_step) * grid_step,
               std::floor((ymin - margin) / grid_step) * grid_step};
    nx_ = int(std::ceil((xmax + margin - origin_.x) / grid_step)) + 1;
    ny_ = int(std::ceil((ymax + margin - origin_.y) / grid_step)) + 1;
  }

  TieBest run(bool parallel) const {
    TieBest total;
    if (!parallel) {
      std::vector<double> scratch(curve_.size());
      for (int iy = 0; iy < ny_; ++iy) scan_row(iy, scratch, total);
      return total;
    }
#ifdef _OPENMP
    const int threads = worker_count();
    std::vector<TieBest> partial(threads);
#pragma omp parallel num_threads(threads)
    {
      const int t = omp_get_thread_num();
      TieBest local;
      std::vector<double> scratch(curve_.size());
#pragma omp for schedule(static)
      for (int iy = 0; iy < ny_; ++iy) scan_row(iy, scratch, local);
      partial[t] = local;
    }
    for (const TieBest& p : partial) total.merge(p);
#else
    std::vector<double> scratch(curve_.size());
    for (int iy = 0; iy < ny_; ++iy) scan_row(iy, scratch, total);
#endif
    return total;
  }

 private:
  void scan_row(int iy, std::vector<double>& d, TieBest& best) const {
    const std::size_t n = curve_.size();
    for (int ix = 0; ix < nx_; ++ix) {
      const Point p{origin_.x + ix * grid_step_, origin_.y + iy * grid_step_};
      for (std::size_t i = 0; i < n; ++i) {
        const double dx = curve_.vertices[i].x - p.x;
        const double dy = curve_.vertices[i].y - p.y;
        d[i] = dx * dx + dy * dy;
      }
      std::size_t arg1 = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (d[i] < d[arg1]) arg1 = i;
      const SegmentFoot f1 = refine_at_vertex(curve_, arg1, p);

      // Second-smallest distance in a genuinely different contact region:
      // either another local minimum of the cyclic distance sequence (a
      // separate basin, as at a bottleneck), or a contact opposing the first
      // one's normal direction (as around a focal center, where the basins
      // merge into a plateau).
      const Point normal1{f1.foot.x - p.x, f1.foot.y - p.y};
      std::size_t arg2 = n;
      double d2sq = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        if (d[i] >= d2sq) continue;
        const std::size_t gap = arg1 < i ? i - arg1 : arg1 - i;
        if (std::min(gap, n - gap) < kMinSeparation) continue;
        const bool basin =
            d[i] <= d[(i + 1) % n] && d[i] <= d[(i + n - 1) % n];
        const bool opposing = normal1.x * (curve_.vertices[i].x - p.x) +
                                  normal1.y * (curve_.vertices[i].y - p.y) <=
                              0.0;
        if (!basin && !opposing) continue;
        d2sq = d[i];
        arg2 = i;
      }
      if (arg2 == n) continue;

      const SegmentFoot f2 = refine_at_vertex(curve_, arg2, p);
      const double lo = std::min(f1.dist, f2.dist);
      const double hi = std::max(f1.dist, f2.dist);
      if (hi - lo > tie_tol_) continue;

      TieBest cand;
      cand.value = 0.5 * (lo + hi);
      cand.cell = (long long)iy * nx_ + ix;
      cand.foot1 = f1.foot;
      cand.foot2 = f2.foot;
      if (cand.better_than(best)) best = cand;
    }
  }

  const ClosedCurve& curve_;
  double grid_step_;
  double tie_tol_;
  Point origin_;
  int nx_ = 0;
  int ny_ = 0;
};

ReachEstimate bruteforce_estimate(const ClosedCurve& curve, double grid_step,
                                  double tie_tol, bool parallel) {
  if (tie_tol <= 0.0) tie_tol = 2.0 * grid_step;
  const BruteforceScan scan(curve, grid_step, tie_tol);
  const TieBest best = scan.run(parallel);

  ReachEstimate est;
  est.method = ReachMethod::Bruteforce;
  est.value = best.value;
  if (std::isfinite(best.value)) {
    est.kind = ReachKind::Bottleneck;
    est.witness = {best.foot1, best.foot2};
  } else {
    est.kind = ReachKind::Focal;  // no tie found in the sampled neighborhood
  }
  return est;
}

}  // namespace

ReachEstimate reach_bruteforce(const ClosedCurve& curve, double grid_step,
                               double tie_tol) {
  return bruteforce_estimate(curve, grid_step, tie_tol, true);
}

ReachEstimate reach_bruteforce_serial(const ClosedCurve& curve, double grid_step,
                                      double tie_tol) {
  return bruteforce_estimate(curve, grid_step, tie_tol, false);
}

double injectivity_radius(const ClosedCurve& curve, double eps_hi, double tol) {
  if (!is_simple(curve))
    throw std::domain_error("injectivity_radius requires a simple curve");
  if (tol <= 0.0) tol = 1e-3 * curve_diameter(curve);
  if (!(eps_hi > tol))
    throw std::domain_error("injectivity_radius requires eps_hi > tol > 0");

  auto injective_at = [&](double eps) {
    return offset_curve(curve, eps, OffsetSide::Outer).injective &&
           offset_curve(curve, eps, OffsetSide::Inner).injective;
  };

  double lo = 0.0;  // the zero offset is the curve itself
  double hi = eps_hi;
  if (injective_at(hi)) return hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (injective_at(mid))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace flatreach
