#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "flatreach/bound.hpp"
#include "flatreach/pipeline.hpp"

namespace flatreach {

namespace {

std::string real12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

const char* kind_name(ReachKind k) {
  return k == ReachKind::Bottleneck ? "bottleneck" : "focal";
}

const char* method_name(ReachMethodChoice m) {
  switch (m) {
    case ReachMethodChoice::Federer: return "federer";
    case ReachMethodChoice::Bruteforce: return "bruteforce";
    case ReachMethodChoice::Both: return "both";
  }
  return "federer";
}

ClosedCurve translated(const ClosedCurve& c, Point by) {
  ClosedCurve out = c;
  for (Point& p : out.vertices) p = p + by;
  return out;
}

struct MeasuredComponent {
  ClosedCurve resampled;
  double perimeter = 0.0;
  double max_curvature = 0.0;
};

MeasuredComponent measure_component(const ClosedCurve& raw, double lambda,
                                    double spacing) {
  MeasuredComponent m;
  m.perimeter = perimeter(raw);

  double step = std::min({spacing, 0.05 / lambda, m.perimeter / 16.0});
  double window = std::min(0.8 / lambda, m.perimeter / 6.0);
  if (window < 6.0 * step) step = window / 6.0;

  m.resampled = resample_arclength(raw, step);
  m.max_curvature = max_curvature(m.resampled, window);
  return m;
}

}  // namespace

VerifyReport run_verify(const PipelineConfig& config) {
  const LoadedShape shape = load_shape(config.input_path, config.input_kind);
  const GridMask mask = mask_from_config(config, shape);

  const OptimizedConstant oc = optimize_c();

  VerifyReport report;
  report.lambda = config.lambda;
  report.c_hat = oc.c_hat;
  report.threshold = oc.c_hat / config.lambda;

  const FlatNormResult fn =
      minimize_l1tv(mask, config.lambda, config.stencil, config.smoothing_passes);
  GridMask empty(mask.width, mask.height, mask.spacing);
  report.energy_input =
      flat_norm_value(mask, mask, config.lambda, config.smoothing_passes).energy;
  report.energy_minimizer = fn.energy;
  report.energy_empty =
      flat_norm_value(mask, empty, config.lambda, config.smoothing_passes).energy;

  if (fn.sigma.count_true() == 0) {
    report.overall = "vacuous";
    return report;
  }

  const std::vector<ClosedCurve> components =
      extract_boundary(fn.sigma, config.smoothing_passes);

  std::vector<MeasuredComponent> measured;
  measured.reserve(components.size());
  for (const ClosedCurve& c : components)
    measured.push_back(measure_component(c, config.lambda, mask.spacing));

  // Reach of the union: per component the min over its own estimate and the
  // cross-component bottlenecks (points v, v' need not sit on one circle).
  const std::size_t k = components.size();
  std::vector<double> reach_value(k);
  std::vector<ReachKind> reach_kind(k);
  std::vector<std::optional<std::pair<Point, Point>>> reach_witness(k);

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  for (std::size_t i = 0; i < k; ++i) {
    ReachEstimate intra;
    if (config.reach_method == ReachMethodChoice::Federer) {
      intra = reach_federer(measured[i].resampled);
    } else {
      const double grid_step = 0.5 * mask.spacing;
      const Point jitter{uni(rng) * grid_step, uni(rng) * grid_step};
      ReachEstimate bf = reach_bruteforce(
          translated(measured[i].resampled, jitter), grid_step);
      if (bf.witness)
        bf.witness = {bf.witness->first - jitter, bf.witness->second - jitter};
      if (config.reach_method == ReachMethodChoice::Both) {
        const ReachEstimate fed = reach_federer(measured[i].resampled);
        intra = fed.value <= bf.value ? fed : bf;
      } else {
        intra = bf;
      }
    }
    reach_value[i] = intra.value;
    reach_kind[i] = intra.kind;
    reach_witness[i] = intra.witness;
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const ReachEstimate between =
          reach_federer_cross(measured[i].resampled, measured[j].resampled);
      for (const std::size_t c : {i, j}) {
        if (between.value < reach_value[c]) {
          reach_value[c] = between.value;
          reach_kind[c] = ReachKind::Bottleneck;
          reach_witness[c] = between.witness;
        }
      }
    }
  }

  bool all_ok = true;
  for (std::size_t i = 0; i < k; ++i) {
    ComponentRecord rec;
    rec.component_id = int(i);
    rec.perimeter = measured[i].perimeter;
    rec.max_curvature = measured[i].max_curvature;
    rec.reach_value = reach_value[i];
    rec.reach_kind = reach_kind[i];
    rec.reach_witness = reach_witness[i];
    rec.curvature_ok =
        rec.max_curvature <= config.curvature_factor * config.lambda;
    rec.reach_ok = rec.reach_value >= config.reach_factor * report.threshold;
    all_ok = all_ok && rec.curvature_ok && rec.reach_ok;
    report.components.push_back(rec);
  }
  report.overall = all_ok ? "pass" : "fail";
  return report;
}

std::string report_to_json(const VerifyReport& report, const PipelineConfig& config) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"lambda\": " << real12(report.lambda) << ",\n";
  os << "  \"c_hat\": " << real12(report.c_hat) << ",\n";
  os << "  \"threshold\": " << real12(report.threshold) << ",\n";
  os << "  \"energies\": {\"input\": " << real12(report.energy_input)
     << ", \"minimizer\": " << real12(report.energy_minimizer)
     << ", \"empty\": " << real12(report.energy_empty) << "},\n";
  os << "  \"components\": [";
  for (std::size_t i = 0; i < report.components.size(); ++i) {
    const ComponentRecord& c = report.components[i];
    if (i) os << ",";
    os << "\n    {\"component_id\": " << c.component_id
       << ", \"perimeter\": " << real12(c.perimeter)
       << ", \"max_curvature\": " << real12(c.max_curvature)
       << ", \"reach_value\": " << real12(c.reach_value)
       << ", \"reach_kind\": \"" << kind_name(c.reach_kind) << "\""
       << ", \"curvature_ok\": " << (c.curvature_ok ? "true" : "false")
       << ", \"reach_ok\": " << (c.reach_ok ? "true" : "false") << "}";
  }
  if (!report.components.empty()) os << "\n  ";
  os << "],\n";
  os << "  \"overall\": \"" << report.overall << "\",\n";
  os << "  \"tool_version\": \"" << kToolVersion << "\",\n";
  os << "  \"config_echo\": {\"input_path\": \"" << config.input_path
     << "\", \"input_kind\": \""
     << (config.input_kind == InputKind::MaskPgm ? "mask_pgm" : "polygon_json")
     << "\", \"lambda\": " << real12(config.lambda)
     << ", \"stencil\": " << int(config.stencil)
     << ", \"smoothing_passes\": " << config.smoothing_passes
     << ", \"reach_method\": \"" << method_name(config.reach_method)
     << "\", \"seed\": " << config.seed
     << ", \"curvature_factor\": " << real12(config.curvature_factor)
     << ", \"reach_factor\": " << real12(config.reach_factor) << "}\n";
  os << "}\n";
  return os.str();
}

void write_report_json(const VerifyReport& report, const PipelineConfig& config,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  const std::string text = report_to_json(report, config);
  out.write(text.data(), std::streamsize(text.size()));
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace flatreach
