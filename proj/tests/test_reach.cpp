#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "flatreach/geometry.hpp"
#include "flatreach/reach.hpp"
#include "support/shapes.hpp"

using namespace flatreach;
using namespace flatreach::testsupport;

namespace {
constexpr double kPi = std::numbers::pi;

ClosedCurve scaled(const ClosedCurve& c, double s) {
  ClosedCurve out = c;
  for (Point& p : out.vertices) p = s * p;
  out.spacing_hint *= s;
  return out;
}

const ClosedCurve& test_circle() {
  static const ClosedCurve c = make_circle(1.0, 1000);
  return c;
}
const ClosedCurve& test_stadium() {
  static const ClosedCurve c =
      resample_arclength(make_stadium(1.0, 2.0, 0.01), 0.01);
  return c;
}
const ClosedCurve& test_ellipse() {
  static const ClosedCurve c = resample_arclength(make_ellipse(2.0, 1.0, 8192), 0.01);
  return c;
}
const ClosedCurve& test_dumbbell() {
  static const ClosedCurve c =
      resample_arclength(make_dumbbell(1.0, 0.2, 2.0, 0.005), 0.005);
  return c;
}
}  // namespace

TEST_CASE("reach_federer on canonical shapes") {
  const ReachEstimate circle = reach_federer(test_circle());
  CHECK(circle.value == doctest::Approx(1.0).epsilon(0.01));
  CHECK(circle.kind == ReachKind::Focal);

  const ReachEstimate stadium = reach_federer(test_stadium());
  CHECK(stadium.value == doctest::Approx(1.0).epsilon(0.02));

  const ReachEstimate dumbbell = reach_federer(test_dumbbell());
  CHECK(dumbbell.value == doctest::Approx(0.2).epsilon(0.03));
  CHECK(dumbbell.kind == ReachKind::Bottleneck);
  REQUIRE(dumbbell.witness.has_value());
  // witness points sit on the two neck walls
  CHECK(std::abs(dumbbell.witness->first.x) < 0.05);
  CHECK(std::abs(std::abs(dumbbell.witness->first.y) - 0.2) < 0.01);
  CHECK(dumbbell.witness->first.y * dumbbell.witness->second.y < 0.0);

  CHECK_THROWS_AS(reach_federer(make_closed_curve({{0, 0}, {1, 0}, {1, 1}, {0, 1}})),
                  std::domain_error);
}

TEST_CASE("reach_federer serial and parallel kernels agree exactly") {
  for (const ClosedCurve* c : {&test_stadium(), &test_dumbbell()}) {
    const ReachEstimate a = reach_federer(*c);
    const ReachEstimate b = reach_federer_serial(*c);
    CHECK(a.value == b.value);
    CHECK(a.kind == b.kind);
    REQUIRE(a.witness.has_value() == b.witness.has_value());
    if (a.witness) {
      CHECK(a.witness->first.x == b.witness->first.x);
      CHECK(a.witness->first.y == b.witness->first.y);
      CHECK(a.witness->second.x == b.witness->second.x);
      CHECK(a.witness->second.y == b.witness->second.y);
    }
  }
}

TEST_CASE("reach_bruteforce oracle on canonical shapes") {
  const ReachEstimate circle = reach_bruteforce(make_circle(1.0, 628), 0.01);
  CHECK(circle.value == doctest::Approx(1.0).epsilon(0.02));
  REQUIRE(circle.witness.has_value());
  // ties at the center: both feet on the circle, contacts well separated
  CHECK(norm(circle.witness->first) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(norm(circle.witness->second) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(distance(circle.witness->first, circle.witness->second) > 1.0);

  const ReachEstimate dumbbell =
      reach_bruteforce(resample_arclength(make_dumbbell(1.0, 0.2, 2.0, 0.02), 0.02),
                       0.02);
  CHECK(std::abs(dumbbell.value - 0.2) < 0.03 * 0.2 + 2.0 * 0.02);

  const ReachEstimate ellipse = reach_bruteforce(test_ellipse(), 0.01);
  CHECK(std::abs(ellipse.value - 0.5) < 0.03);

  const ReachEstimate serial = reach_bruteforce_serial(test_ellipse(), 0.01);
  CHECK(serial.value == ellipse.value);

  CHECK_THROWS_AS(reach_bruteforce(test_circle(), -1.0), std::domain_error);
  CHECK_THROWS_AS(reach_bruteforce(test_circle(), 0.01, 0.001), std::domain_error);
}

TEST_CASE("double_normal_pair witnesses and focal-only shapes") {
  const auto dumbbell = double_normal_pair(test_dumbbell());
  REQUIRE(dumbbell.has_value());
  CHECK(dumbbell->tangent_angle_gap < 2.0 * kPi / 180.0);
  CHECK(dumbbell->p.y * dumbbell->q.y < 0.0);  // opposite neck walls
  CHECK(std::abs(dumbbell->midpoint.y) < 0.02);
  CHECK(norm(dumbbell->midpoint - Point{0.0, 0.0}) < 0.05);
  // midpoint is equidistant from the two arcs
  CHECK(distance(dumbbell->midpoint, dumbbell->p) ==
        doctest::Approx(distance(dumbbell->midpoint, dumbbell->q)).epsilon(1e-9));

  CHECK_FALSE(double_normal_pair(test_circle()).has_value());

  const auto stadium = double_normal_pair(test_stadium());
  REQUIRE(stadium.has_value());
  CHECK(stadium->tangent_angle_gap < 1.0 * kPi / 180.0);
  CHECK(std::abs(stadium->p.y) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(stadium->p.y * stadium->q.y < 0.0);  // opposite straight sides
}

TEST_CASE("injectivity_radius matches reach") {
  const ClosedCurve circle = make_circle(1.0, 628);
  const double tol_c = 1e-3 * curve_diameter(circle);
  CHECK(std::abs(injectivity_radius(circle, 1.6) - 1.0) < tol_c + 0.01);

  const ClosedCurve dumb = resample_arclength(make_dumbbell(1.0, 0.2, 2.0, 0.01), 0.01);
  const double tol_d = 1e-3 * curve_diameter(dumb);
  CHECK(std::abs(injectivity_radius(dumb, 0.6) - 0.2) < tol_d + 0.03 * 0.2);

  const ClosedCurve stad = resample_arclength(make_stadium(1.0, 2.0, 0.02), 0.02);
  const double tol_s = 1e-3 * curve_diameter(stad);
  CHECK(std::abs(injectivity_radius(stad, 1.6) - 1.0) < tol_s + 0.02);

  const ClosedCurve fig8 = make_closed_curve({{0, 0}, {2, 2}, {2, 0}, {0, 2}});
  CHECK_THROWS_AS(injectivity_radius(fig8, 1.0), std::domain_error);
}

TEST_CASE("estimator consistency across methods") {
  struct Case {
    const ClosedCurve* curve;
    double grid_step;
    double eps_hi;
  };
  const Case cases[] = {
      {&test_circle(), 0.01, 1.6},
      {&test_stadium(), 0.01, 1.6},
      {&test_ellipse(), 0.01, 0.9},
  };
  for (const Case& c : cases) {
    const double fed = reach_federer(*c.curve).value;
    const double bf = reach_bruteforce(*c.curve, c.grid_step).value;
    const double tol = 1e-3 * curve_diameter(*c.curve);
    const double inj = injectivity_radius(*c.curve, c.eps_hi, tol);
    CHECK(std::abs(fed - bf) <= 0.03 * bf + 2.0 * c.grid_step);
    CHECK(std::abs(inj - bf) <= 0.03 * bf + tol + 2.0 * c.grid_step);
  }
}

TEST_CASE("reach is capped by inverse max curvature") {
  for (const ClosedCurve* c :
       {&test_circle(), &test_stadium(), &test_ellipse(), &test_dumbbell()}) {
    const double k = max_curvature(*c, default_curvature_window(*c));
    CHECK(reach_federer(*c).value <= 1.03 / k);
  }
}

TEST_CASE("scaling equivariance") {
  const double s = 3.7;
  const ClosedCurve small_d = resample_arclength(make_dumbbell(1.0, 0.2, 2.0, 0.01), 0.01);
  const ClosedCurve big_d = scaled(small_d, s);

  CHECK(reach_federer(big_d).value ==
        doctest::Approx(s * reach_federer(small_d).value).epsilon(0.01));
  CHECK(reach_bruteforce(big_d, s * 0.02).value ==
        doctest::Approx(s * reach_bruteforce(small_d, 0.02).value).epsilon(0.01));
  CHECK(injectivity_radius(big_d, s * 0.6) ==
        doctest::Approx(s * injectivity_radius(small_d, 0.6)).epsilon(0.01));
}

TEST_CASE("parallel tangents at the bottleneck (moderate resolution)") {
  // full reach/100 resolution runs in the acceptance suite
  const ClosedCurve d = resample_arclength(make_dumbbell(1.0, 0.2, 2.0, 0.004), 0.004);
  const ReachEstimate est = reach_federer(d);
  REQUIRE(est.kind == ReachKind::Bottleneck);
  const double k = max_curvature(d, default_curvature_window(d));
  REQUIRE(k < 0.9 / est.value);  // bottleneck well below the curvature cap
  const auto pair = double_normal_pair(d);
  REQUIRE(pair.has_value());
  CHECK(pair->tangent_angle_gap < 2.0 * kPi / 180.0);
}

TEST_CASE("monotone refinement of reach_federer") {
  const ClosedCurve coarse = resample_arclength(make_dumbbell(1.0, 0.2, 2.0, 0.02), 0.02);
  const ClosedCurve fine = resample_arclength(make_dumbbell(1.0, 0.2, 2.0, 0.01), 0.01);
  const double oracle = reach_bruteforce(coarse, 0.02).value;
  const double at_coarse = reach_federer(coarse).value;
  const double at_fine = reach_federer(fine).value;
  CHECK(std::abs(at_fine - at_coarse) <= std::abs(at_coarse - oracle) + 1e-3);
}

TEST_CASE("cross-component reach for disjoint curves") {
  // two parallel circles: bottleneck between them is half the gap
  const ClosedCurve a = make_circle(1.0, 800, {0.0, 0.0});
  const ClosedCurve b = make_circle(1.0, 800, {2.6, 0.0});
  const ReachEstimate between = reach_federer_cross(a, b);
  CHECK(between.value == doctest::Approx(0.3).epsilon(0.02));
  REQUIRE(between.witness.has_value());
  CHECK(between.witness->first.x == doctest::Approx(1.0).epsilon(0.05));
}
