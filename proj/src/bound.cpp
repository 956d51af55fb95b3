#include "flatreach/bound.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace flatreach {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kThetaLo = 1.5 * kPi;
constexpr double kThetaHi = 2.0 * kPi;
constexpr double kEdgeInset = 1e-9;

}  // namespace

BoundSpec bound_spec_from_theta(double lambda, double rho, double theta) {
  if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
  if (!(rho >= 0.0)) throw std::domain_error("rho must be nonnegative");
  BoundSpec spec;
  spec.lambda = lambda;
  spec.rho = rho;
  spec.theta = theta;
  spec.x = std::cos(theta) / lambda;
  spec.y = (1.0 + std::sin(theta)) / lambda;
  return spec;
}

double cap_depth(double x, double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
  const double r = 1.0 / lambda;
  if (!(x >= 0.0) || x > r)
    throw std::domain_error("cap half-width must be in [0, 1/lambda]");
  return r - std::sqrt(r * r - x * x);
}

double mass_lower_bound(double x) { return 4.0 * x; }

double mass_upper_bound(double x, double y, double rho, double lambda) {
  return (4.0 * y + 2.0 * (2.0 * rho)) + lambda * (2.0 * (2.0 * rho * x + x * y));
}

double c_of_theta(double theta) {
  if (!(theta > kThetaLo) || !(theta < kThetaHi))
    throw std::domain_error("theta must lie in (3*pi/2, 2*pi)");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return (2.0 * c - (1.0 + s) * (c + 2.0)) / (2.0 * (c + 1.0));
}

OptimizedConstant optimize_c(double tol) {
  if (!(tol > 0.0)) throw std::domain_error("tolerance must be positive");
  const double lo = kThetaLo + kEdgeInset;
  const double hi = kThetaHi - kEdgeInset;

  // Unimodality pre-scan: strictly up to the max, then strictly down.
  {
    constexpr int kScan = 10000;
    double prev = c_of_theta(lo);
    bool descending = false;
    for (int k = 1; k <= kScan; ++k) {
      const double v = c_of_theta(lo + (hi - lo) * double(k) / double(kScan));
      if (v < prev) descending = true;
      else if (descending && v > prev + 1e-12)
        throw std::logic_error("c_of_theta is not unimodal on the interval");
      prev = v;
    }
  }

  const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c1 = b - inv_gr * (b - a);
  double c2 = a + inv_gr * (b - a);
  double f1 = c_of_theta(c1);
  double f2 = c_of_theta(c2);
  while (b - a > tol) {
    if (f1 > f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - inv_gr * (b - a);
      f1 = c_of_theta(c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + inv_gr * (b - a);
      f2 = c_of_theta(c2);
    }
  }
  OptimizedConstant out;
  out.theta_star = 0.5 * (a + b);
  out.c_hat = c_of_theta(out.theta_star);
  return out;
}

ImprovementWitness verify_improvement(double lambda, double rho) {
  if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
  if (!(rho >= 0.0)) throw std::domain_error("rho must be nonnegative");
  const OptimizedConstant oc = optimize_c();
  const double x = std::cos(oc.theta_star) / lambda;
  const double y = cap_depth(x, lambda);

  ImprovementWitness w;
  w.theta_used = oc.theta_star;
  w.lhs = mass_lower_bound(x);
  w.rhs = mass_upper_bound(x, y, rho, lambda);
  w.margin = w.lhs - w.rhs;
  w.holds = w.margin > 0.0;
  return w;
}

ConstructionRegions build_construction(double lambda, double rho, double x) {
  if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
  if (!(rho >= 0.0)) throw std::domain_error("rho must be nonnegative");
  const double r = 1.0 / lambda;
  if (!(x > 0.0) || !(x < r))
    throw std::domain_error("half-width x must lie in (0, 1/lambda)");

  ConstructionRegions out;
  out.lambda = lambda;
  out.rho = rho;
  out.x = x;

  // Track 1 sits on the tangent line y = 0, track 2 on y = -2*rho; each is
  // the rectangle minus the two osculating disks of radius 1/lambda.
  out.r1 = {-x, x, -r, r, {DiskSpec{{0.0, r}, r}, DiskSpec{{0.0, -r}, r}}};
  const double shift = -2.0 * rho;
  out.r2 = {-x, x, shift - r, shift + r,
            {DiskSpec{{0.0, shift + r}, r}, DiskSpec{{0.0, shift - r}, r}}};

  // Worst case: the first curve rides the top cap arc (+sagitta), the second
  // rides the bottom cap arc of its band (shift - sagitta).
  const double y = cap_depth(x, lambda);
  const double half_angle = std::asin(x * lambda);
  const double arc_len = 2.0 * half_angle * r;

  // integral of the sagitta r - sqrt(r^2 - u^2) over [-x, x]
  const double sag_integral =
      2.0 * r * x - x * std::sqrt(r * r - x * x) - r * r * std::asin(x * lambda);

  out.masses.gamma1_length = arc_len;
  out.masses.gamma2_length = arc_len;
  out.masses.cut_length = 2.0 * (2.0 * rho + 2.0 * y);
  out.masses.sstar_area = 4.0 * rho * x + 2.0 * sag_integral;

  constexpr int kArcSamples = 64;
  auto upper = [&](double u) { return r - std::sqrt(r * r - u * u); };
  for (int k = 0; k <= kArcSamples; ++k) {
    const double u = -x + 2.0 * x * double(k) / double(kArcSamples);
    out.sstar.push_back({u, upper(u)});
  }
  for (int k = 0; k <= kArcSamples; ++k) {
    const double u = x - 2.0 * x * double(k) / double(kArcSamples);
    out.sstar.push_back({u, shift - upper(u)});
  }
  return out;
}

bool lemma4_check(double m_gamma, double m_s, double m_gamma_star,
                  double m_s_star, double lambda) {
  if (m_gamma < 0.0 || m_s < 0.0 || m_gamma_star < 0.0 || m_s_star < 0.0)
    throw std::domain_error("masses must be nonnegative");
  if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");

  const bool improves = m_gamma > m_gamma_star + lambda * m_s_star;
  if (improves) {
    // Composed energy inequality via subadditivity of mass.
    const double before = m_gamma + lambda * m_s;
    const double after = m_gamma_star + lambda * (m_s + m_s_star);
    if (!(before > after))
      throw std::logic_error("lemma4_check: composed inequality failed");
  }
  return improves;
}

}  // namespace flatreach
