#include "flatreach/flatnorm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace flatreach {

namespace {

struct RawStencil {
  std::vector<std::pair<int, int>> offsets;
  std::vector<double> weights;  // per unit spacing
};

// Cauchy-Crofton weight for one direction: half the angular cell around the
// direction divided by the arc length, delta^2 * dphi / (2 |v|) at delta=1.
RawStencil crofton_stencil(const std::vector<std::pair<int, int>>& offsets) {
  const std::size_t n = offsets.size();
  std::vector<double> angle(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    double a = std::atan2(double(offsets[i].second), double(offsets[i].first));
    a = std::fmod(a + 2.0 * std::numbers::pi, std::numbers::pi);
    angle[i] = a;
    order[i] = i;
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return angle[a] < angle[b]; });

  RawStencil out;
  out.offsets = offsets;
  out.weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    const double prev = k == 0 ? angle[order[n - 1]] - std::numbers::pi
                               : angle[order[k - 1]];
    const double next = k == n - 1 ? angle[order[0]] + std::numbers::pi
                                   : angle[order[k + 1]];
    const double dphi = 0.5 * (next - prev);
    const double len = std::hypot(double(offsets[i].first), double(offsets[i].second));
    out.weights[i] = dphi / (2.0 * len);
  }
  return out;
}

double cut_length_of_direction(const RawStencil& s, double phi) {
  const double ux = std::cos(phi), uy = std::sin(phi);
  double total = 0.0;
  for (std::size_t i = 0; i < s.offsets.size(); ++i)
    total += s.weights[i] *
             std::abs(ux * s.offsets[i].second - uy * s.offsets[i].first);
  return total;
}

// Rescale so over- and under-estimation of Euclidean length are symmetric
// across orientations.
RawStencil normalized(RawStencil s) {
  double lo = 1e30, hi = -1e30;
  constexpr int kSamples = 40000;
  for (int k = 0; k <= kSamples; ++k) {
    const double phi = 0.5 * std::numbers::pi * double(k) / double(kSamples);
    const double v = cut_length_of_direction(s, phi);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double scale = 2.0 / (lo + hi);
  for (double& w : s.weights) w *= scale;
  return s;
}

const RawStencil& raw_stencil(Stencil s) {
  static const RawStencil n4 = [] {
    RawStencil r;
    r.offsets = {{1, 0}, {0, 1}};
    r.weights = {1.0, 1.0};  // l1 perimeter: one unit edge per cut pair
    return r;
  }();
  static const RawStencil n8 =
      normalized(crofton_stencil({{1, 0}, {0, 1}, {1, 1}, {1, -1}}));
  static const RawStencil n16 = normalized(crofton_stencil(
      {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}, {2, -1}, {1, -2}}));
  switch (s) {
    case Stencil::N4: return n4;
    case Stencil::N8: return n8;
    case Stencil::N16: return n16;
  }
  throw std::logic_error("unreachable stencil");
}

}  // namespace

Stencil stencil_from_int(int n) {
  switch (n) {
    case 4: return Stencil::N4;
    case 8: return Stencil::N8;
    case 16: return Stencil::N16;
  }
  throw std::invalid_argument("stencil must be 4, 8, or 16");
}

StencilWeights stencil_weights(Stencil s, double spacing) {
  const RawStencil& raw = raw_stencil(s);
  StencilWeights out;
  out.offsets = raw.offsets;
  out.weights.resize(raw.weights.size());
  for (std::size_t i = 0; i < raw.weights.size(); ++i)
    out.weights[i] = raw.weights[i] * spacing;
  return out;
}

CutGraph build_cut_graph(const GridMask& mask, double lambda, Stencil stencil) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");

  CutGraph g;
  g.width = mask.width;
  g.height = mask.height;
  g.spacing = mask.spacing;
  g.lambda = lambda;
  g.stencil = stencil;

  const StencilWeights sw = stencil_weights(stencil, mask.spacing);
  const double terminal = lambda * mask.spacing * mask.spacing;
  auto node = [&](int x, int y) { return y * mask.width + x; };

  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (mask.at(x, y))
        g.arcs.push_back({g.source(), node(x, y), terminal});
      else
        g.arcs.push_back({node(x, y), g.sink(), terminal});
      // Out-of-grid neighbors count as permanently empty: their cut weight
      // goes straight to the sink, so the grid border is not free perimeter.
      double border = 0.0;
      for (std::size_t k = 0; k < sw.offsets.size(); ++k) {
        const int dx = sw.offsets[k].first;
        const int dy = sw.offsets[k].second;
        if (!mask.in_bounds(x - dx, y - dy)) border += sw.weights[k];
        if (!mask.in_bounds(x + dx, y + dy)) {
          border += sw.weights[k];
          continue;
        }
        g.arcs.push_back({node(x, y), node(x + dx, y + dy), sw.weights[k]});
        g.arcs.push_back({node(x + dx, y + dy), node(x, y), sw.weights[k]});
      }
      if (border > 0.0) g.arcs.push_back({node(x, y), g.sink(), border});
    }
  }
  return g;
}

FlatNormResult minimize_l1tv(const GridMask& mask, double lambda, Stencil stencil,
                             int smoothing_passes) {
  if (!has_clear_border(mask))
    throw std::invalid_argument("mask must be padded (clear border ring)");
  const CutGraph graph = build_cut_graph(mask, lambda, stencil);
  MaxflowResult mf = maxflow_mincut(graph);

  FlatNormResult result;
  result.lambda = lambda;
  const MassValues m = flat_norm_value(mask, mf.partition, lambda, smoothing_passes);
  result.perimeter = m.perimeter;
  result.symdiff_area = m.symdiff_area;
  result.energy = m.energy;
  result.sigma = std::move(mf.partition);
  return result;
}

MassValues flat_norm_value(const GridMask& omega, const GridMask& sigma,
                           double lambda, int smoothing_passes) {
  if (omega.width != sigma.width || omega.height != sigma.height ||
      omega.spacing != sigma.spacing)
    throw std::domain_error("flat_norm_value: mismatched grids");

  MassValues out;
  for (const ClosedCurve& c : extract_boundary(sigma, smoothing_passes))
    out.perimeter += perimeter(c);

  std::int64_t diff = 0;
  for (std::size_t i = 0; i < omega.cells.size(); ++i)
    diff += (omega.cells[i] != 0) != (sigma.cells[i] != 0);
  out.symdiff_area = double(diff) * omega.spacing * omega.spacing;
  out.energy = out.perimeter + lambda * out.symdiff_area;
  return out;
}

double cut_energy(const GridMask& omega, const GridMask& sigma, double lambda,
                  Stencil stencil) {
  if (omega.width != sigma.width || omega.height != sigma.height ||
      omega.spacing != sigma.spacing)
    throw std::domain_error("cut_energy: mismatched grids");
  const StencilWeights sw = stencil_weights(stencil, omega.spacing);
  double total = 0.0;
  for (int y = 0; y < omega.height; ++y) {
    for (int x = 0; x < omega.width; ++x) {
      const bool s = sigma.at(x, y);
      for (std::size_t k = 0; k < sw.offsets.size(); ++k) {
        const int dx = sw.offsets[k].first;
        const int dy = sw.offsets[k].second;
        if (s && !omega.in_bounds(x - dx, y - dy)) total += sw.weights[k];
        if (!omega.in_bounds(x + dx, y + dy)) {
          if (s) total += sw.weights[k];
          continue;
        }
        if (s != sigma.at(x + dx, y + dy)) total += sw.weights[k];
      }
      if (s != omega.at(x, y))
        total += lambda * omega.spacing * omega.spacing;
    }
  }
  return total;
}

}  // namespace flatreach
