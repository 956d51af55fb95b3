#pragma once

#include <array>
#include <utility>
#include <vector>

#include "flatreach/geometry.hpp"

namespace flatreach {

enum class Stencil { N4 = 4, N8 = 8, N16 = 16 };

Stencil stencil_from_int(int n);

/// Neighbor offsets and cut-metric weights (per unit spacing) for a stencil.
/// Weights follow the Cauchy-Crofton angular partition, rescaled so the
/// worst-case over/under-estimate of Euclidean length is symmetric.
struct StencilWeights {
  std::vector<std::pair<int, int>> offsets;  // undirected, one per direction
  std::vector<double> weights;               // same order, scaled by spacing
};
StencilWeights stencil_weights(Stencil s, double spacing);

/// Capacitated s/t graph over the pixels of a mask. Node ids: pixel
/// (x, y) -> y*width + x, then source, then sink.
struct CutGraph {
  int width = 0;
  int height = 0;
  double spacing = 1.0;
  double lambda = 0.0;
  Stencil stencil = Stencil::N16;

  struct Arc {
    int from;
    int to;
    double capacity;
  };
  std::vector<Arc> arcs;  // neighbor arcs appear in both directions

  int num_nodes() const { return width * height + 2; }
  int source() const { return width * height; }
  int sink() const { return width * height + 1; }
};

CutGraph build_cut_graph(const GridMask& mask, double lambda, Stencil stencil);

struct MaxflowResult {
  double flow_value = 0.0;  // cut capacity of the returned partition
  GridMask partition;       // source side
};

/// Dinic max-flow; the reported flow_value is the capacity of the returned
/// source-side cut, summed in arc order, so duality holds exactly.
MaxflowResult maxflow_mincut(const CutGraph& graph);

struct FlatNormResult {
  GridMask sigma;
  double perimeter = 0.0;
  double symdiff_area = 0.0;
  double energy = 0.0;
  double lambda = 0.0;
};

/// Global minimizer of Per(S) + lambda * Area(S symdiff Omega) on the grid.
/// Masses are measured on the extracted boundary, not the cut value.
FlatNormResult minimize_l1tv(const GridMask& mask, double lambda, Stencil stencil,
                             int smoothing_passes = 2);

/// Pixel-edge boundary contours, one closed curve per component, outer
/// boundaries counterclockwise; optional corner smoothing (3-point moving
/// average) before returning.
std::vector<ClosedCurve> extract_boundary(const GridMask& mask,
                                          int smoothing_passes = 0);

struct MassValues {
  double perimeter = 0.0;
  double symdiff_area = 0.0;
  double energy = 0.0;
};

MassValues flat_norm_value(const GridMask& omega, const GridMask& sigma,
                           double lambda, int smoothing_passes = 2);

/// Cut-metric energy of an explicit candidate: stencil perimeter of sigma
/// plus lambda * area(sigma symdiff omega). Equals the cut capacity the
/// candidate would have in build_cut_graph's graph.
double cut_energy(const GridMask& omega, const GridMask& sigma, double lambda,
                  Stencil stencil);

}  // namespace flatreach
