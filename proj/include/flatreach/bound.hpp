#pragma once

#include <array>
#include <vector>

#include "flatreach/geometry.hpp"

namespace flatreach {

/// Parameters of the comparison construction in the normalized frame where
/// the first tangent line is the x-axis and the second is y = -2*rho.
struct BoundSpec {
  double lambda = 1.0;
  double rho = 0.0;
  double x = 0.0;      // half-width of the track rectangles
  double y = 0.0;      // cap depth (sagitta) at half-width x
  double theta = 0.0;  // polar angle in (3*pi/2, 2*pi)
};

BoundSpec bound_spec_from_theta(double lambda, double rho, double theta);

struct DiskSpec {
  Point center;
  double radius = 0.0;
};

/// Rectangle minus two open disks (one track region).
struct TrackRegion {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  std::array<DiskSpec, 2> removed;
};

struct ConstructionMasses {
  double gamma1_length = 0.0;  // worst-case track arc, first curve
  double gamma2_length = 0.0;  // worst-case track arc, second curve
  double cut_length = 0.0;     // |L(x)| + |L(-x)|
  double sstar_area = 0.0;     // exact area between the worst-case arcs
};

struct ConstructionRegions {
  double lambda = 1.0;
  double rho = 0.0;
  double x = 0.0;
  TrackRegion r1;
  TrackRegion r2;
  std::vector<Point> sstar;  // polygon approximating S*, for plotting
  ConstructionMasses masses;
};

struct ImprovementWitness {
  bool holds = false;
  double theta_used = 0.0;
  double lhs = 0.0;    // mass lower bound 4x
  double rhs = 0.0;    // mass upper bound
  double margin = 0.0; // lhs - rhs
};

/// Sagitta of the circular cap of radius 1/lambda and half-width x:
/// 1/lambda - sqrt((1/lambda)^2 - x^2), in [0, 1/lambda].
double cap_depth(double x, double lambda);

/// Minimum combined length of the two tracks of half-width x.
double mass_lower_bound(double x);

/// Cost of the two vertical cuts plus lambda times the butterfly-wings
/// area bound: (4y + 2(2 rho)) + lambda (2 (2 rho x + x y)).
double mass_upper_bound(double x, double y, double rho, double lambda);

/// (2 cos t - (1 + sin t)(cos t + 2)) / (2 (cos t + 1)) on (3*pi/2, 2*pi).
double c_of_theta(double theta);

struct OptimizedConstant {
  double c_hat = 0.0;
  double theta_star = 0.0;
};

/// Golden-section maximization of c_of_theta; unimodality is checked by a
/// coarse pre-scan before the search runs.
OptimizedConstant optimize_c(double tol = 1e-10);

/// Evaluates both sides of the improvement inequality at theta_star with
/// x = cos(theta_star)/lambda. holds exactly when rho < c_hat/lambda.
ImprovementWitness verify_improvement(double lambda, double rho);

ConstructionRegions build_construction(double lambda, double rho, double x);

/// True iff m_gamma > m_gamma_star + lambda * m_s_star; in that case the
/// composed energy inequality is checked as well.
bool lemma4_check(double m_gamma, double m_s, double m_gamma_star,
                  double m_s_star, double lambda);

}  // namespace flatreach
