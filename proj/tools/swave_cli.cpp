// Command-line front end: runs the convergence, energy and defect studies
// and writes CSV tables plus standalone SVG plots and a run manifest.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "swave/csv.hpp"
#include "swave/experiments.hpp"
#include "swave/selftest.hpp"
#include "swave/svg.hpp"

namespace {

using namespace swave;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitSelftest = 4;

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<double> T;
  std::optional<int> threads;
  bool paper_scale = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON config file");
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", args.seed, "master RNG seed");
  cmd->add_option("--M", args.samples, "Monte Carlo sample count");
  cmd->add_option("--T", args.T, "final time");
  cmd->add_option("--threads", args.threads, "worker threads (0 = all cores)");
  cmd->add_flag("--paper-scale", args.paper_scale,
                "use the full-resolution study parameters (slow)");
}

std::vector<double> dyadic(int coarsest_pow, int finest_pow) {
  std::vector<double> ks;
  for (int p = coarsest_pow; p <= finest_pow; ++p) ks.push_back(std::ldexp(1.0, -p));
  return ks;
}

ExperimentConfig load(const CommonArgs& args, ExperimentConfig defaults) {
  ConfigOverrides ov;
  ov.seed = args.seed;
  ov.samples = args.samples;
  ov.T = args.T;
  ov.threads = args.threads;
  ov.out_dir = args.out_dir.empty() ? std::optional<std::string>{} : args.out_dir;
  if (!args.config_path.empty()) return parse_config(args.config_path, ov, std::move(defaults));
  if (ov.seed) defaults.seed = *ov.seed;
  if (ov.samples) defaults.samples = *ov.samples;
  if (ov.T) defaults.T = *ov.T;
  if (ov.threads) defaults.threads = *ov.threads;
  if (ov.out_dir) defaults.out_dir = *ov.out_dir;
  validate_config(defaults);
  return defaults;
}

void finish(const ExperimentConfig& cfg, const std::string& verb,
            std::chrono::steady_clock::time_point t0) {
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest((std::filesystem::path(cfg.out_dir) / "manifest.json").string(), cfg,
                 {{verb, secs}});
  std::cout << verb << ": wrote " << cfg.out_dir << " in " << secs << " s\n";
}

PlotSeries to_series(const ConvergenceSeries& s, bool vs_h) {
  PlotSeries ps;
  bool truncated = false;
  for (const auto& row : s.table.rows) {
    if (row.exploded) {
      truncated = true;
      continue;
    }
    ps.x.push_back(vs_h ? row.h : row.k);
    ps.y.push_back(row.rmse);
  }
  ps.name = s.scheme + (vs_h ? "" : " h=1/" + std::to_string(s.n_cells)) +
            (truncated ? "*" : "");
  return ps;
}

int run_temporal(const CommonArgs& args) {
  ExperimentConfig cfg;
  cfg.problem = "linear";
  cfg.s = 0.5;
  if (args.paper_scale) {
    cfg.n_cells_list = {256};
    cfg.k_exact = std::ldexp(1.0, -8);
    cfg.k_list = dyadic(2, 6);
  } else {
    cfg.n_cells_list = {64};
    cfg.k_exact = std::ldexp(1.0, -10);
    cfg.k_list = dyadic(3, 7);
  }
  cfg.out_dir = "out/temporal";
  cfg = load(args, cfg);
  std::filesystem::create_directories(cfg.out_dir);
  const auto t0 = std::chrono::steady_clock::now();
  TemporalResult result = run_temporal_convergence(cfg);
  ErrorTable all;
  PlotSpec plot;
  plot.title = "Strong temporal error, position component";
  plot.x_label = "k";
  plot.y_label = "RMS error";
  plot.loglog = true;
  for (const auto& series : result.series) {
    for (const auto& row : series.table.rows) all.rows.push_back(row);
    plot.series.push_back(to_series(series, false));
    std::cout << "temporal slope (" << series.scheme << ", n=" << series.n_cells
              << "): " << series.slope << "\n";
  }
  plot.references.push_back({std::min(0.5 + cfg.s, 1.0), "reference slope"});
  write_error_csv((std::filesystem::path(cfg.out_dir) / "errors_temporal.csv").string(), all);
  write_plot((std::filesystem::path(cfg.out_dir) / "temporal.svg").string(), plot);
  finish(cfg, "temporal", t0);
  return kExitOk;
}

int run_spatial(const CommonArgs& args) {
  ExperimentConfig cfg;
  cfg.problem = "linear";
  cfg.s = 0.5;
  if (args.paper_scale) {
    cfg.n_cells_list = {8, 16, 32, 64};
    cfg.n_cells_exact = 256;
    cfg.k_exact = std::ldexp(1.0, -8);
  } else {
    cfg.n_cells_list = {4, 8, 16, 32};
    cfg.n_cells_exact = 128;
    cfg.k_exact = std::ldexp(1.0, -10);
  }
  cfg.out_dir = "out/spatial";
  cfg = load(args, cfg);
  std::filesystem::create_directories(cfg.out_dir);
  const auto t0 = std::chrono::steady_clock::now();
  SpatialResult result = run_spatial_convergence(cfg);
  PlotSpec plot;
  plot.title = "Strong spatial error, position component";
  plot.x_label = "h";
  plot.y_label = "RMS error";
  plot.loglog = true;
  plot.series.push_back(to_series(result.series, true));
  plot.references.push_back({std::min(cfg.s + 0.5, 2.0) * 2.0 / 3.0, "reference slope"});
  std::cout << "spatial slope: " << result.series.slope << "\n";
  write_error_csv((std::filesystem::path(cfg.out_dir) / "errors_spatial.csv").string(),
                  result.series.table);
  write_plot((std::filesystem::path(cfg.out_dir) / "spatial.svg").string(), plot);
  finish(cfg, "spatial", t0);
  return kExitOk;
}

int run_compare(const CommonArgs& args) {
  ExperimentConfig cfg;
  cfg.problem = "linear";
  cfg.s = 0.5;
  cfg.schemes = {"stm", "bem", "cnm", "sv"};
  if (args.paper_scale) {
    cfg.n_cells_list = {1024};
    cfg.k_exact = std::ldexp(1.0, -16);
    cfg.k_list = dyadic(4, 12);
  } else {
    cfg.n_cells_list = {32};
    cfg.k_exact = std::ldexp(1.0, -10);
    cfg.k_list = dyadic(3, 7);
  }
  cfg.out_dir = "out/compare";
  cfg = load(args, cfg);
  std::filesystem::create_directories(cfg.out_dir);
  const auto t0 = std::chrono::steady_clock::now();
  ComparisonResult result = run_scheme_comparison(cfg);
  ErrorTable all;
  PlotSpec plot;
  plot.title = "Scheme comparison, strong error vs step size";
  plot.x_label = "k";
  plot.y_label = "RMS error";
  plot.loglog = true;
  for (const auto& series : result.series) {
    for (const auto& row : series.table.rows) all.rows.push_back(row);
    PlotSeries ps = to_series(series, false);
    ps.name = series.scheme + (ps.name.back() == '*' ? "*" : "");
    plot.series.push_back(std::move(ps));
    std::cout << "compare slope (" << series.scheme << "): " << series.slope << "\n";
  }
  std::cout << "CFL reference: k sqrt(lambda_max) = 1 at k = "
            << 1.0 / result.sqrt_lambda_max << "\n";
  write_error_csv((std::filesystem::path(cfg.out_dir) / "errors_compare.csv").string(), all);
  write_plot((std::filesystem::path(cfg.out_dir) / "compare.svg").string(), plot);
  finish(cfg, "compare", t0);
  return kExitOk;
}

int run_trace(const CommonArgs& args) {
  ExperimentConfig cfg;
  cfg.problem = "linear";
  cfg.s = 0.0;
  cfg.schemes = {"stm", "bem", "cnm", "sv"};
  cfg.n_cells_list = {10};
  cfg.k_list = {0.1};
  cfg.T = args.paper_scale ? 500.0 : 50.0;
  cfg.samples = args.paper_scale ? 15000 : 2000;
  cfg.energy_record_dt = args.paper_scale ? 10.0 : 1.0;
  cfg.out_dir = "out/trace";
  cfg = load(args, cfg);
  std::filesystem::create_directories(cfg.out_dir);
  const auto t0 = std::chrono::steady_clock::now();
  TraceResult result = run_trace_formula(cfg);
  std::vector<EnergyCurve> curves = result.exact_curves;
  curves.push_back(result.mc_curve);
  PlotSpec plot;
  plot.title = "Expected energy vs trace line";
  plot.x_label = "t";
  plot.y_label = "E[H(t)]";
  for (const auto& c : curves) {
    PlotSeries ps;
    ps.name = c.scheme;
    for (const auto& p : c.points) {
      ps.x.push_back(p.t);
      ps.y.push_back(p.energy);
    }
    plot.series.push_back(std::move(ps));
  }
  plot.references.push_back({0.5 * result.trace, "trace line"});
  std::cout << "trace: Tr(P_h Q P_h) = " << result.trace
            << ", max stm deviation from the line = " << result.stm_max_rel_dev << "\n";
  write_energy_csv((std::filesystem::path(cfg.out_dir) / "energy_trace.csv").string(), curves);
  write_plot((std::filesystem::path(cfg.out_dir) / "trace.svg").string(), plot);
  finish(cfg, "trace", t0);
  return kExitOk;
}

int run_sg(const CommonArgs& args) {
  ExperimentConfig cfg;
  cfg.problem = "sine-gordon";
  cfg.s = 1.0;
  if (args.paper_scale) {
    cfg.n_cells_exact = 512;
    cfg.k_exact = std::ldexp(1.0, -6);
    cfg.k_list = dyadic(1, 5);
    cfg.sg_energy_samples = 15000;
  } else {
    cfg.n_cells_exact = 128;
    cfg.k_exact = std::ldexp(1.0, -6);
    cfg.k_list = dyadic(1, 5);
  }
  cfg.out_dir = "out/sine-gordon";
  cfg = load(args, cfg);
  std::filesystem::create_directories(cfg.out_dir);
  const auto t0 = std::chrono::steady_clock::now();
  SineGordonResult result = run_sine_gordon(cfg);
  write_energy_csv((std::filesystem::path(cfg.out_dir) / "energy_sg.csv").string(),
                   {result.mc_energy});
  PlotSpec eplot;
  eplot.title = "Sine-Gordon expected energy";
  eplot.x_label = "t";
  eplot.y_label = "E[H(t)]";
  PlotSeries mc;
  mc.name = "stm-nl";
  PlotSeries line;
  line.name = "trace line";
  for (const auto& p : result.mc_energy.points) {
    mc.x.push_back(p.t);
    mc.y.push_back(p.energy);
    line.x.push_back(p.t);
    line.y.push_back(p.exact_energy);
  }
  eplot.series.push_back(std::move(mc));
  eplot.series.push_back(std::move(line));
  write_plot((std::filesystem::path(cfg.out_dir) / "sg_energy.svg").string(), eplot);
  std::cout << "sine-gordon: fitted energy growth " << result.energy_slope
            << " vs trace/2 = " << 0.5 * result.trace << "\n";
  if (!result.errors.table.rows.empty()) {
    write_error_csv((std::filesystem::path(cfg.out_dir) / "errors_sg.csv").string(),
                    result.errors.table);
    PlotSpec rplot;
    rplot.title = "Sine-Gordon strong temporal error";
    rplot.x_label = "k";
    rplot.y_label = "RMS error";
    rplot.loglog = true;
    rplot.series.push_back(to_series(result.errors, false));
    rplot.references.push_back({1.0, "reference slope"});
    write_plot((std::filesystem::path(cfg.out_dir) / "sg_errors.svg").string(), rplot);
    std::cout << "sine-gordon error slope: " << result.errors.slope << "\n";
  }
  finish(cfg, "sine-gordon", t0);
  return kExitOk;
}

int run_defect(const CommonArgs& args) {
  ExperimentConfig cfg;
  cfg.problem = "linear";
  cfg.s = 0.0;
  cfg.n_cells_list = {32};
  cfg.k_list = {0.125, 0.0625, 0.03125, 0.015625};
  cfg.samples = args.paper_scale ? 20000 : 4000;
  cfg.out_dir = "out/defect";
  cfg = load(args, cfg);
  std::filesystem::create_directories(cfg.out_dir);
  const auto t0 = std::chrono::steady_clock::now();
  DefectResult result = measure_local_defect(cfg);
  write_defect_csv((std::filesystem::path(cfg.out_dir) / "defect.csv").string(), result.rows);
  PlotSpec plot;
  plot.title = "Local quadrature defect of the noise convolution";
  plot.x_label = "k";
  plot.y_label = "mean squared defect";
  plot.loglog = true;
  PlotSeries d1, d2;
  d1.name = "position defect";
  d2.name = "velocity defect";
  for (const auto& r : result.rows) {
    d1.x.push_back(r.k);
    d1.y.push_back(r.d1_msq);
    d2.x.push_back(r.k);
    d2.y.push_back(r.d2_msq);
  }
  plot.series.push_back(std::move(d1));
  plot.series.push_back(std::move(d2));
  plot.references.push_back({result.target_exponent, "reference slope"});
  write_plot((std::filesystem::path(cfg.out_dir) / "defect.svg").string(), plot);
  std::cout << "defect exponent: " << result.d1_exponent << " (target "
            << result.target_exponent << ")\n";
  finish(cfg, "defect", t0);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FEM + trigonometric time integrators for the stochastic wave equation"};
  app.require_subcommand(1);

  CommonArgs args;
  std::map<std::string, std::function<int()>> dispatch;
  for (const auto& [verb, fn] : std::map<std::string, int (*)(const CommonArgs&)>{
           {"temporal", run_temporal},
           {"spatial", run_spatial},
           {"compare", run_compare},
           {"trace", run_trace},
           {"sine-gordon", run_sg},
           {"defect", run_defect}}) {
    CLI::App* cmd = app.add_subcommand(verb);
    add_common(cmd, args);
    dispatch[verb] = [fn, &args]() { return fn(args); };
  }
  CLI::App* selftest = app.add_subcommand("selftest", "run the built-in invariant suite");
  dispatch["selftest"] = [&]() {
    return swave::report_selftest(std::cout) ? kExitOk : kExitSelftest;
  };
  (void)selftest;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    return dispatch.at(app.get_subcommands().front()->get_name())();
  } catch (const swave::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
