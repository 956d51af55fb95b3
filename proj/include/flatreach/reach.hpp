#pragma once

#include <optional>
#include <utility>

#include "flatreach/geometry.hpp"

namespace flatreach {

enum class ReachMethod { Federer, Bruteforce, OffsetInjectivity };
enum class ReachKind { Bottleneck, Focal };

struct ReachEstimate {
  double value = 0.0;
  ReachMethod method = ReachMethod::Federer;
  ReachKind kind = ReachKind::Focal;
  std::optional<std::pair<Point, Point>> witness;
};

/// p and q realize the bottleneck; tangent_angle_gap is the angle between
/// the tangent lines at p and q, in [0, pi/2].
struct DoubleNormalPair {
  Point p;
  Point q;
  Point midpoint;
  double tangent_angle_gap = 0.0;
};

/// Discrete Federer quotient: min over ordered vertex pairs of
/// |y-x|^2 / (2 dist(y-x, tangent line at x)), pairs closer than 5 vertex
/// spacings along the curve excluded, capped above by 1/max_curvature.
ReachEstimate reach_federer(const ClosedCurve& curve);
ReachEstimate reach_federer_serial(const ClosedCurve& curve);

/// Min Federer quotient over pairs taken across two disjoint curves (no
/// arc-separation cutoff and no curvature cap).
ReachEstimate reach_federer_cross(const ClosedCurve& a, const ClosedCurve& b);

/// Sampling oracle: scans ambient grid points around the curve, detects
/// points whose distance function along the curve has two near-equal local
/// minima in separate basins, and reports the smallest such tie distance.
/// tie_tol <= 0 selects the default 2 * grid_step.
ReachEstimate reach_bruteforce(const ClosedCurve& curve, double grid_step,
                               double tie_tol = 0.0);
ReachEstimate reach_bruteforce_serial(const ClosedCurve& curve, double grid_step,
                                      double tie_tol = 0.0);

/// The pair realizing the Federer minimum when that minimum is a genuine
/// bottleneck (not explained by local curvature); empty for focal-type
/// reach such as a circle.
std::optional<DoubleNormalPair> double_normal_pair(const ClosedCurve& curve);

/// Bisection on the supremal eps for which inner and outer offsets are both
/// injective. tol <= 0 selects 1e-3 * curve diameter.
double injectivity_radius(const ClosedCurve& curve, double eps_hi, double tol = 0.0);

}  // namespace flatreach
