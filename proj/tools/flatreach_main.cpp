#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "flatreach/bound.hpp"
#include "flatreach/flatnorm.hpp"
#include "flatreach/parallel.hpp"
#include "flatreach/pipeline.hpp"
#include "flatreach/reach.hpp"

namespace {

using namespace flatreach;

constexpr int kExitOk = 0;
constexpr int kExitFail = 2;
constexpr int kExitInput = 3;
constexpr int kExitInternal = 4;

InputKind kind_from_path(const std::string& path) {
  const auto dot = path.find_last_of('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  if (ext == ".json") return InputKind::PolygonJson;
  return InputKind::MaskPgm;
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int run_bound(double lambda, double tol, double rho_opt,
              const std::string& plot_path) {
  const OptimizedConstant oc = optimize_c(tol);
  std::cout << "c_hat = " << fmt12(oc.c_hat) << "\n";
  std::cout << "theta_star = " << fmt12(oc.theta_star) << "\n";
  std::cout << "threshold = " << fmt12(oc.c_hat / lambda) << "\n";
  if (!plot_path.empty()) {
    const double rho = rho_opt >= 0.0 ? rho_opt : oc.c_hat / lambda;
    const double x = std::cos(oc.theta_star) / lambda;
    emit_svg(render_bound_svg(build_construction(lambda, rho, x)), plot_path);
    std::cout << "plot written to " << plot_path << "\n";
  }
  return kExitOk;
}

int run_minimize(const std::string& input, double lambda, int stencil,
                 int smoothing, double spacing, const std::string& out_path) {
  PipelineConfig cfg;
  cfg.input_path = input;
  cfg.input_kind = kind_from_path(input);
  cfg.raster_spacing = spacing;
  const LoadedShape shape = load_shape(input, cfg.input_kind);
  const GridMask mask = mask_from_config(cfg, shape);
  const FlatNormResult fn =
      minimize_l1tv(mask, lambda, stencil_from_int(stencil), smoothing);
  save_mask_pgm(fn.sigma, out_path);
  std::cout << "perimeter = " << fmt12(fn.perimeter) << "\n";
  std::cout << "symdiff_area = " << fmt12(fn.symdiff_area) << "\n";
  std::cout << "energy = " << fmt12(fn.energy) << "\n";
  std::cout << "minimizer written to " << out_path << "\n";
  return kExitOk;
}

void print_estimate(const char* name, const ReachEstimate& est) {
  std::cout << name << " = " << fmt12(est.value) << " ("
            << (est.kind == ReachKind::Bottleneck ? "bottleneck" : "focal");
  if (est.witness)
    std::cout << ", witness (" << fmt12(est.witness->first.x) << ", "
              << fmt12(est.witness->first.y) << ") - ("
              << fmt12(est.witness->second.x) << ", "
              << fmt12(est.witness->second.y) << ")";
  std::cout << ")\n";
}

int run_reach(const std::string& input, const std::string& method,
              double step, double grid_step, double spacing) {
  const InputKind kind = kind_from_path(input);
  std::vector<ClosedCurve> curves;
  if (kind == InputKind::MaskPgm) {
    const GridMask mask = padded(load_mask_pgm(input), 2);
    curves = extract_boundary(mask, 2);
  } else {
    curves.push_back(load_polygon_json(input));
  }
  if (curves.empty()) {
    std::cout << "reach = inf (empty mask)\n";
    return kExitOk;
  }

  for (std::size_t i = 0; i < curves.size(); ++i) {
    double use_step = step;
    if (!(use_step > 0.0)) use_step = perimeter(curves[i]) / 1024.0;
    curves[i] = resample_arclength(curves[i], use_step);
  }
  double gs = grid_step;
  if (!(gs > 0.0)) {
    double diam = 0.0;
    for (const auto& c : curves) diam = std::max(diam, curve_diameter(c));
    gs = diam / 256.0;
  }
  (void)spacing;

  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (curves.size() > 1) std::cout << "component " << i << ":\n";
    if (method == "federer" || method == "both")
      print_estimate("reach_federer", reach_federer(curves[i]));
    if (method == "bruteforce" || method == "both")
      print_estimate("reach_bruteforce", reach_bruteforce(curves[i], gs));
  }
  for (std::size_t i = 0; i < curves.size(); ++i)
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      std::cout << "between components " << i << " and " << j << ":\n";
      print_estimate("reach_cross", reach_federer_cross(curves[i], curves[j]));
    }
  return kExitOk;
}

int cmd_verify(const PipelineConfig& cfg) {
  const VerifyReport report = flatreach::run_verify(cfg);
  write_report_json(report, cfg, cfg.output_report);
  if (cfg.output_svg) {
    const LoadedShape shape = load_shape(cfg.input_path, cfg.input_kind);
    const GridMask mask = mask_from_config(cfg, shape);
    const FlatNormResult fn =
        minimize_l1tv(mask, cfg.lambda, cfg.stencil, cfg.smoothing_passes);
    VerifySvgContext ctx;
    ctx.input_boundary = extract_boundary(mask, cfg.smoothing_passes);
    ctx.minimizer_boundary = extract_boundary(fn.sigma, cfg.smoothing_passes);
    for (const ComponentRecord& c : report.components)
      if (c.reach_witness) {
        ctx.reach_witness = c.reach_witness;
        break;
      }
    emit_svg(render_verify_svg(ctx), *cfg.output_svg);
  }
  std::cout << "overall: " << report.overall << " (report written to "
            << cfg.output_report << ")\n";
  if (report.overall == "fail") return kExitFail;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  flatreach::apply_thread_env();

  CLI::App app{"multiscale flat norm minimizers and reach verification"};
  app.require_subcommand(1);

  // bound
  auto* bound = app.add_subcommand("bound", "optimized constant and threshold");
  double b_lambda = 1.0, b_tol = 1e-10, b_rho = -1.0;
  std::string b_plot;
  bound->add_option("--lambda", b_lambda, "scale parameter")->check(CLI::PositiveNumber);
  bound->add_option("--tol", b_tol, "golden-section tolerance")->check(CLI::PositiveNumber);
  bound->add_option("--rho", b_rho, "reach value for the plotted construction");
  bound->add_option("--plot", b_plot, "write the construction regions as SVG");

  // minimize
  auto* mini = app.add_subcommand("minimize", "L1TV minimizer of a shape");
  std::string m_input, m_out;
  double m_lambda = 1.0, m_spacing = 0.0;
  int m_stencil = 16, m_smoothing = 2;
  mini->add_option("--input", m_input, "input PGM or polygon JSON")->required();
  mini->add_option("--lambda", m_lambda, "scale parameter")->required()->check(CLI::PositiveNumber);
  mini->add_option("--stencil", m_stencil, "4, 8 or 16")->check(CLI::IsMember({4, 8, 16}));
  mini->add_option("--smoothing", m_smoothing, "contour smoothing passes")->check(CLI::NonNegativeNumber);
  mini->add_option("--spacing", m_spacing, "raster spacing for polygon inputs");
  mini->add_option("--out", m_out, "output PGM for the minimizer")->required();

  // reach
  auto* reach = app.add_subcommand("reach", "reach estimates of a shape");
  std::string r_input, r_method = "federer";
  double r_step = 0.0, r_grid = 0.0, r_spacing = 0.0;
  reach->add_option("--input", r_input, "input PGM or polygon JSON")->required();
  reach->add_option("--method", r_method, "federer | bruteforce | both")
      ->check(CLI::IsMember({"federer", "bruteforce", "both"}));
  reach->add_option("--step", r_step, "resample step (default perimeter/1024)");
  reach->add_option("--grid-step", r_grid, "brute-force ambient grid step");
  reach->add_option("--spacing", r_spacing, "raster spacing for polygon inputs");

  // verify
  auto* verify = app.add_subcommand("verify", "end-to-end theorem check");
  flatreach::PipelineConfig cfg;
  std::string v_svg;
  int v_stencil = 16;
  std::string v_method = "federer";
  verify->add_option("--input", cfg.input_path, "input PGM or polygon JSON")->required();
  verify->add_option("--lambda", cfg.lambda, "scale parameter")->required()->check(CLI::PositiveNumber);
  verify->add_option("--report", cfg.output_report, "output report JSON")->required();
  verify->add_option("--svg", v_svg, "output SVG rendering");
  verify->add_option("--seed", cfg.seed, "seed for randomized sub-sampling");
  verify->add_option("--stencil", v_stencil, "4, 8 or 16")->check(CLI::IsMember({4, 8, 16}));
  verify->add_option("--smoothing", cfg.smoothing_passes, "contour smoothing passes")->check(CLI::NonNegativeNumber);
  verify->add_option("--method", v_method, "federer | bruteforce | both")
      ->check(CLI::IsMember({"federer", "bruteforce", "both"}));
  verify->add_option("--spacing", cfg.raster_spacing, "raster spacing for polygon inputs");
  verify->add_option("--curvature-factor", cfg.curvature_factor, "curvature check slack");
  verify->add_option("--reach-factor", cfg.reach_factor, "reach check slack");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*bound) return run_bound(b_lambda, b_tol, b_rho, b_plot);
    if (*mini)
      return run_minimize(m_input, m_lambda, m_stencil, m_smoothing, m_spacing, m_out);
    if (*reach) return run_reach(r_input, r_method, r_step, r_grid, r_spacing);
    if (*verify) {
      cfg.input_kind = kind_from_path(cfg.input_path);
      cfg.stencil = flatreach::stencil_from_int(v_stencil);
      if (!v_svg.empty()) cfg.output_svg = v_svg;
      if (v_method == "bruteforce") cfg.reach_method = ReachMethodChoice::Bruteforce;
      else if (v_method == "both") cfg.reach_method = ReachMethodChoice::Both;
      return cmd_verify(cfg);
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
