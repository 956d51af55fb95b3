#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatreach/bound.hpp"
#include "flatreach/flatnorm.hpp"
#include "flatreach/geometry.hpp"
#include "flatreach/reach.hpp"

namespace flatreach {

inline constexpr const char* kToolVersion = "0.1.0";

enum class InputKind { MaskPgm, PolygonJson };
enum class ReachMethodChoice { Federer, Bruteforce, Both };

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PipelineConfig {
  std::string input_path;
  InputKind input_kind = InputKind::MaskPgm;
  double lambda = 1.0;
  Stencil stencil = Stencil::N16;
  int smoothing_passes = 2;
  ReachMethodChoice reach_method = ReachMethodChoice::Federer;
  std::string output_report;
  std::optional<std::string> output_svg;
  std::uint64_t seed = 0;
  double raster_spacing = 0.0;     // polygon inputs; 0 = diameter/256
  double curvature_factor = 1.1;   // curvature_ok: max curvature <= f * lambda
  double reach_factor = 0.9;       // reach_ok: reach >= f * c_hat / lambda
};

struct ComponentRecord {
  int component_id = 0;
  double perimeter = 0.0;
  double max_curvature = 0.0;
  double reach_value = 0.0;
  ReachKind reach_kind = ReachKind::Focal;
  bool curvature_ok = false;
  bool reach_ok = false;
  std::optional<std::pair<Point, Point>> reach_witness;
};

struct VerifyReport {
  double lambda = 0.0;
  double c_hat = 0.0;
  double threshold = 0.0;  // c_hat / lambda
  double energy_input = 0.0;
  double energy_minimizer = 0.0;
  double energy_empty = 0.0;
  std::vector<ComponentRecord> components;
  std::string overall;  // "pass" | "fail" | "vacuous"
};

// ---- file formats ----

GridMask load_mask_pgm(const std::string& path);
void save_mask_pgm(const GridMask& mask, const std::string& path, bool binary = true);

ClosedCurve load_polygon_json(const std::string& path);
void save_polygon_json(const ClosedCurve& curve, const std::string& path);

/// Even-odd rasterization of a closed polygon at the given spacing, with a
/// 2-cell false margin.
GridMask rasterize_polygon(const ClosedCurve& curve, double spacing, int margin = 2);

struct LoadedShape {
  std::optional<GridMask> mask;
  std::optional<ClosedCurve> curve;
};
LoadedShape load_shape(const std::string& path, InputKind kind);

/// Mask for a polygon input at the configured spacing (default diameter/256).
GridMask mask_from_config(const PipelineConfig& config, const LoadedShape& shape);

// ---- verification pipeline ----

VerifyReport run_verify(const PipelineConfig& config);

/// Deterministic report serialization: fixed field order, reals with 12
/// significant digits.
std::string report_to_json(const VerifyReport& report, const PipelineConfig& config);
void write_report_json(const VerifyReport& report, const PipelineConfig& config,
                       const std::string& path);

// ---- svg emission ----

struct VerifySvgContext {
  std::vector<ClosedCurve> input_boundary;
  std::vector<ClosedCurve> minimizer_boundary;
  std::optional<std::pair<Point, Point>> reach_witness;
};

std::string render_verify_svg(const VerifySvgContext& ctx);
std::string render_bound_svg(const ConstructionRegions& regions);
void emit_svg(const std::string& svg_text, const std::string& path);

}  // namespace flatreach
