#include "swave/experiments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace swave {

namespace {

int checked_round(double x, const char* what) {
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-6 * std::max(1.0, std::abs(x)))
    throw std::invalid_argument(std::string(what) + ": value " + std::to_string(x) +
                                " is not an integer");
  return static_cast<int>(r);
}

double fit_series_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 3) return std::numeric_limits<double>::quiet_NaN();
  return fit_log_slope(x, y).first;
}

// Ordinary least squares y = a + b t on linear axes.
double linear_fit_slope(const std::vector<double>& t, const std::vector<double>& y) {
  const int n = static_cast<int>(t.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (int i = 0; i < n; ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  return (n * sty - st * sy) / (n * stt - st * st);
}

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / v.size();
}

double se_of_mean(const std::vector<double>& v) {
  const int n = static_cast<int>(v.size());
  const double m = mean_of(v);
  double var = 0;
  for (double x : v) var += (x - m) * (x - m);
  return std::sqrt(var / (n - 1) / n);
}

}  // namespace

void parallel_for(int n, int threads, const std::function<void(int)>& task) {
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) task(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w]() {
      for (int i = w; i < n; i += workers) task(i);
    });
  for (auto& th : pool) th.join();
}

State linear_initial_state(const FemSystem& system) {
  // cos(pi(x - 1/2)) = sin(pi x); exact load, L2 projection.
  VectorXd u1 = system.l2_project(sin_mode_load(system.mesh(), 1));
  return {std::move(u1), VectorXd::Zero(system.dof())};
}

State sine_gordon_initial_state(const FemSystem& system) {
  VectorXd u2 = system.l2_project(indicator_load(system.mesh(), 0.25, 0.75));
  return {VectorXd::Zero(system.dof()), std::move(u2)};
}

RunOutcome integrate_scheme(SchemeKind kind, const FemSystem& system,
                            const NoiseProjector& projector, const CoupledPath& path,
                            double k, double T, const State& x0, const NonlinearTerm* g,
                            const FilterSet* filters, double explosion_guard) {
  const int m = checked_round(k / path.base_dt(), "integrate_scheme: k / base_dt");
  const int n_steps = checked_round(T / k, "integrate_scheme: T / k");
  if (static_cast<std::int64_t>(m) * n_steps > path.n_base_steps())
    throw std::invalid_argument("integrate_scheme: path too short");

  auto blown = [&](double sq1, double sq2) {
    return !(sq1 < explosion_guard * explosion_guard) ||
           !(sq2 < explosion_guard * explosion_guard);
  };

  if (kind == SchemeKind::Stm || kind == SchemeKind::StmNl) {
    VectorXd u1 = system.to_spectral(x0.u1);
    VectorXd u2 = system.to_spectral(x0.u2);
    Propagator prop;
    std::unique_ptr<StmNlScheme> nl;
    if (kind == SchemeKind::Stm) {
      prop = make_stm_propagator(system, k);
    } else {
      FilterSet fs = filters ? *filters : FilterSet::standard();
      NonlinearTerm gg = g ? *g : NonlinearTerm([](double u) { return -std::sin(u); });
      nl = std::make_unique<StmNlScheme>(system, k, fs, gg);
    }
    for (int step = 0; step < n_steps; ++step) {
      VectorXd w = projector.project_spectral(
          path.window(static_cast<std::int64_t>(step) * m, static_cast<std::int64_t>(step + 1) * m));
      if (kind == SchemeKind::Stm)
        stm_step_spectral(prop, u1, u2, w);
      else
        nl->step_spectral(u1, u2, w);
      if (blown(u1.squaredNorm(), u2.squaredNorm()))
        return {{system.from_spectral(u1), system.from_spectral(u2)}, true};
    }
    return {{system.from_spectral(u1), system.from_spectral(u2)}, false};
  }

  State x{x0.u1, x0.u2};
  if (kind == SchemeKind::Sv) {
    if (m % 2 != 0)
      throw std::invalid_argument("integrate_scheme: sv needs an even number of base steps per step");
    SvScheme sv(system, k);
    for (int step = 0; step < n_steps; ++step) {
      const std::int64_t n0 = static_cast<std::int64_t>(step) * m;
      VectorXd w1 = projector.project(path.window(n0, n0 + m / 2));
      VectorXd w2 = projector.project(path.window(n0 + m / 2, n0 + m));
      x = sv.step(x, w1, w2);
      if (blown(x.u1.squaredNorm(), x.u2.squaredNorm())) return {std::move(x), true};
    }
    return {std::move(x), false};
  }

  std::unique_ptr<BemScheme> bem;
  std::unique_ptr<CnmScheme> cnm;
  if (kind == SchemeKind::Bem)
    bem = std::make_unique<BemScheme>(system, k);
  else
    cnm = std::make_unique<CnmScheme>(system, k);
  for (int step = 0; step < n_steps; ++step) {
    VectorXd w = projector.project(
        path.window(static_cast<std::int64_t>(step) * m, static_cast<std::int64_t>(step + 1) * m));
    x = bem ? bem->step(x, w) : cnm->step(x, w);
    if (blown(x.u1.squaredNorm(), x.u2.squaredNorm())) return {std::move(x), true};
  }
  return {std::move(x), false};
}

VectorXd inject_to_fine(const Mesh1D& coarse, const VectorXd& values, const Mesh1D& fine) {
  const int nf = fine.dof();
  VectorXd out(nf);
  auto eval_coarse = [&](double x) {
    // piecewise linear with zero boundary values
    const double t = x / coarse.h;
    int cell = static_cast<int>(std::floor(t));
    if (cell < 0) cell = 0;
    if (cell >= coarse.n_cells) cell = coarse.n_cells - 1;
    const double local = t - cell;
    const double left = (cell >= 1) ? values[cell - 1] : 0.0;
    const double right = (cell < coarse.dof()) ? values[cell] : 0.0;
    return left + (right - left) * local;
  };
  for (int i = 0; i < nf; ++i) out[i] = eval_coarse(fine.interior_nodes[i]);
  return out;
}

TemporalResult run_temporal_convergence(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.k_exact <= 0.0) throw ConfigError("k_exact", "required for temporal convergence");
  TemporalResult result;
  const int n_base = checked_round(cfg.T / cfg.k_exact, "T / k_exact");
  for (int n_cells : cfg.n_cells_list) {
    FemSystem system(build_uniform_mesh(n_cells));
    system.spectral_decompose();
    CovarianceModel model{cfg.s, system.dof()};
    NoiseProjector projector(system, model);
    const State x0 = linear_initial_state(system);

    const int n_k = static_cast<int>(cfg.k_list.size());
    for (const auto& scheme : cfg.schemes) {
      const SchemeKind kind = scheme_from_name(scheme);
      std::vector<std::vector<double>> sq(n_k, std::vector<double>(cfg.samples));
      std::vector<char> any_exploded(n_k, 0);
      parallel_for(cfg.samples, cfg.threads, [&](int sample) {
        CoupledPath path(sample_seed(cfg.seed, sample), cfg.k_exact, n_base, model.J);
        RunOutcome ref =
            integrate_scheme(SchemeKind::Stm, system, projector, path, cfg.k_exact, cfg.T, x0);
        for (int ik = 0; ik < n_k; ++ik) {
          RunOutcome run =
              integrate_scheme(kind, system, projector, path, cfg.k_list[ik], cfg.T, x0);
          if (run.exploded) {
            any_exploded[ik] = 1;
            sq[ik][sample] = std::numeric_limits<double>::quiet_NaN();
            continue;
          }
          VectorXd e = run.final_state.u1 - ref.final_state.u1;
          sq[ik][sample] = system.mass().quadform(e);
        }
      });
      ConvergenceSeries series;
      series.scheme = scheme;
      series.n_cells = n_cells;
      std::vector<double> ks, errs;
      for (int ik = 0; ik < n_k; ++ik) {
        ErrorRow row;
        row.scheme = scheme;
        row.h = 1.0 / n_cells;
        row.k = cfg.k_list[ik];
        row.component = 1;
        row.samples = cfg.samples;
        if (any_exploded[ik]) {
          row.exploded = true;
        } else {
          RootMeanSq r = root_mean_sq(sq[ik]);
          row.rmse = r.root;
          row.se = r.se;
          ks.push_back(row.k);
          errs.push_back(row.rmse);
        }
        series.table.rows.push_back(row);
      }
      series.slope = fit_series_slope(ks, errs);
      result.series.push_back(std::move(series));
    }
  }
  return result;
}

SpatialResult run_spatial_convergence(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.k_exact <= 0.0 || cfg.n_cells_exact <= 0)
    throw ConfigError("n_cells_exact", "required for spatial convergence");
  FemSystem fine(build_uniform_mesh(cfg.n_cells_exact));
  fine.spectral_decompose();
  CovarianceModel model{cfg.s, fine.dof()};
  NoiseProjector fine_projector(fine, model);
  const State fine_x0 = linear_initial_state(fine);
  const int n_base = checked_round(cfg.T / cfg.k_exact, "T / k_exact");

  struct Level {
    std::unique_ptr<FemSystem> system;
    std::unique_ptr<NoiseProjector> projector;
    State x0;
  };
  std::vector<Level> levels;
  for (int n_cells : cfg.n_cells_list) {
    Level lvl;
    lvl.system = std::make_unique<FemSystem>(build_uniform_mesh(n_cells));
    lvl.system->spectral_decompose();
    lvl.projector = std::make_unique<NoiseProjector>(*lvl.system, model);
    lvl.x0 = linear_initial_state(*lvl.system);
    levels.push_back(std::move(lvl));
  }

  const int n_h = static_cast<int>(levels.size());
  std::vector<std::vector<double>> sq(n_h, std::vector<double>(cfg.samples));
  parallel_for(cfg.samples, cfg.threads, [&](int sample) {
    CoupledPath path(sample_seed(cfg.seed, sample), cfg.k_exact, n_base, model.J);
    RunOutcome ref = integrate_scheme(SchemeKind::Stm, fine, fine_projector, path, cfg.k_exact,
                                      cfg.T, fine_x0);
    for (int ih = 0; ih < n_h; ++ih) {
      const Level& lvl = levels[ih];
      RunOutcome run = integrate_scheme(SchemeKind::Stm, *lvl.system, *lvl.projector, path,
                                        cfg.k_exact, cfg.T, lvl.x0);
      VectorXd injected =
          inject_to_fine(lvl.system->mesh(), run.final_state.u1, fine.mesh());
      VectorXd e = injected - ref.final_state.u1;
      sq[ih][sample] = fine.mass().quadform(e);
    }
  });

  SpatialResult result;
  result.series.scheme = "stm";
  result.series.n_cells = cfg.n_cells_exact;
  std::vector<double> hs, errs;
  for (int ih = 0; ih < n_h; ++ih) {
    RootMeanSq r = root_mean_sq(sq[ih]);
    ErrorRow row;
    row.scheme = "stm";
    row.h = levels[ih].system->mesh().h;
    row.k = cfg.k_exact;
    row.component = 1;
    row.rmse = r.root;
    row.se = r.se;
    row.samples = cfg.samples;
    result.series.table.rows.push_back(row);
    hs.push_back(row.h);
    errs.push_back(row.rmse);
  }
  result.series.slope = fit_series_slope(hs, errs);
  return result;
}

ComparisonResult run_scheme_comparison(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.k_exact <= 0.0) throw ConfigError("k_exact", "required for scheme comparison");
  if (cfg.n_cells_list.empty()) throw ConfigError("n_cells_list", "need one mesh");
  FemSystem system(build_uniform_mesh(cfg.n_cells_list.front()));
  system.spectral_decompose();
  CovarianceModel model{cfg.s, system.dof()};
  NoiseProjector projector(system, model);
  // Zero initial data: the cross-scheme comparison targets the stochastic
  // convergence rates, which the deterministic start-up error of the
  // damped schemes would otherwise mask at moderate step sizes.
  const State x0{VectorXd::Zero(system.dof()), VectorXd::Zero(system.dof())};
  // Half base steps so Stoermer-Verlet mid-step increments are window sums.
  const double base_dt = 0.5 * cfg.k_exact;
  const int n_base = checked_round(cfg.T / base_dt, "T / (k_exact/2)");
  const int n_k = static_cast<int>(cfg.k_list.size());

  ComparisonResult result;
  result.sqrt_lambda_max = std::sqrt(system.eigenvalues().maxCoeff());
  for (const auto& scheme : cfg.schemes) {
    const SchemeKind kind = scheme_from_name(scheme);
    std::vector<std::vector<double>> sq(n_k, std::vector<double>(cfg.samples));
    std::vector<char> any_exploded(n_k, 0);
    parallel_for(cfg.samples, cfg.threads, [&](int sample) {
      CoupledPath path(sample_seed(cfg.seed, sample), base_dt, n_base, model.J);
      RunOutcome ref =
          integrate_scheme(SchemeKind::Stm, system, projector, path, cfg.k_exact, cfg.T, x0);
      for (int ik = 0; ik < n_k; ++ik) {
        RunOutcome run =
            integrate_scheme(kind, system, projector, path, cfg.k_list[ik], cfg.T, x0);
        if (run.exploded) {
          any_exploded[ik] = 1;
          sq[ik][sample] = std::numeric_limits<double>::quiet_NaN();
        } else {
          VectorXd e = run.final_state.u1 - ref.final_state.u1;
          sq[ik][sample] = system.mass().quadform(e);
        }
      }
    });
    ConvergenceSeries series;
    series.scheme = scheme;
    series.n_cells = cfg.n_cells_list.front();
    std::vector<double> ks, errs;
    for (int ik = 0; ik < n_k; ++ik) {
      ErrorRow row;
      row.scheme = scheme;
      row.h = system.mesh().h;
      row.k = cfg.k_list[ik];
      row.component = 1;
      row.samples = cfg.samples;
      if (any_exploded[ik]) {
        row.exploded = true;
      } else {
        RootMeanSq r = root_mean_sq(sq[ik]);
        row.rmse = r.root;
        row.se = r.se;
        ks.push_back(row.k);
        errs.push_back(row.rmse);
      }
      series.table.rows.push_back(row);
    }
    series.slope = fit_series_slope(ks, errs);
    result.series.push_back(std::move(series));
  }
  return result;
}

TraceResult run_trace_formula(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.problem != "linear") throw ConfigError("problem", "trace formula needs the linear problem");
  if (cfg.k_list.empty() || cfg.n_cells_list.empty())
    throw ConfigError("k_list", "need one step size and one mesh");
  FemSystem system(build_uniform_mesh(cfg.n_cells_list.front()));
  system.spectral_decompose();
  CovarianceModel model{cfg.s, system.dof()};
  NoiseProjector projector(system, model);
  const State x0 = linear_initial_state(system);
  const double k = cfg.k_list.front();
  const int n_steps = checked_round(cfg.T / k, "T / k");
  const int record_every = std::max(1, checked_round(cfg.energy_record_dt / k, "record / k"));

  TraceResult result;
  result.trace = trace_ph_q_ph(system, model);
  result.initial_energy = discrete_energy(system, x0);
  auto line = [&](double t) { return result.initial_energy + 0.5 * t * result.trace; };

  auto add_exact = [&](MomentScheme ms, const std::string& name) {
    auto samples = propagate_expected_energy(system, model, ms, k, n_steps, x0, record_every);
    EnergyCurve curve;
    curve.scheme = name;
    for (const auto& es : samples) curve.points.push_back({es.t, es.value, 0.0, line(es.t)});
    result.exact_curves.push_back(std::move(curve));
  };
  add_exact(MomentScheme::Exact, "semidiscrete");
  for (const auto& scheme : cfg.schemes) {
    switch (scheme_from_name(scheme)) {
      case SchemeKind::Stm: add_exact(MomentScheme::Stm, "stm"); break;
      case SchemeKind::Bem: add_exact(MomentScheme::Bem, "bem"); break;
      case SchemeKind::Cnm: add_exact(MomentScheme::Cnm, "cnm"); break;
      case SchemeKind::Sv: add_exact(MomentScheme::Sv, "sv"); break;
      case SchemeKind::StmNl:
        throw ConfigError("schemes", "stm-nl has no exact moment propagation");
    }
  }

  for (const auto& curve : result.exact_curves) {
    if (curve.scheme != "stm") continue;
    for (const auto& p : curve.points) {
      const double dev = std::abs(p.energy - p.exact_energy) / std::max(p.exact_energy, 1e-300);
      result.stm_max_rel_dev = std::max(result.stm_max_rel_dev, dev);
    }
  }

  // Monte Carlo STM curve on the same checkpoints.
  const int n_checkpoints = n_steps / record_every;
  std::vector<std::vector<double>> energies(n_checkpoints + 1,
                                            std::vector<double>(cfg.samples));
  Propagator prop = make_stm_propagator(system, k);
  const VectorXd& lambda = system.eigenvalues();
  parallel_for(cfg.samples, cfg.threads, [&](int sample) {
    CoupledPath path(sample_seed(cfg.seed, sample), k, n_steps, model.J);
    VectorXd u1 = system.to_spectral(x0.u1);
    VectorXd u2 = system.to_spectral(x0.u2);
    auto energy = [&]() {
      return 0.5 * (lambda.dot(u1.cwiseProduct(u1)) + u2.squaredNorm());
    };
    energies[0][sample] = energy();
    for (int step = 1; step <= n_steps; ++step) {
      VectorXd w = projector.project_spectral(path.window(step - 1, step));
      stm_step_spectral(prop, u1, u2, w);
      if (step % record_every == 0) energies[step / record_every][sample] = energy();
    }
  });
  result.mc_curve.scheme = "stm-mc";
  for (int c = 0; c <= n_checkpoints; ++c) {
    const double t = c * record_every * k;
    result.mc_curve.points.push_back(
        {t, mean_of(energies[c]), se_of_mean(energies[c]), line(t)});
  }
  return result;
}

SineGordonResult run_sine_gordon(const ExperimentConfig& cfg) {
  validate_config(cfg);
  SineGordonResult result;

  // Expected-energy study with Q = I.
  {
    FemSystem system(build_uniform_mesh(cfg.sg_energy_n_cells));
    system.spectral_decompose();
    CovarianceModel model{0.0, system.dof()};
    NoiseProjector projector(system, model);
    const State x0 = sine_gordon_initial_state(system);
    result.trace = trace_ph_q_ph(system, model);
    const double k = cfg.sg_energy_k;
    const int n_steps = checked_round(cfg.sg_energy_T / k, "sg_energy_T / k");
    const int record_every = std::max(1, checked_round(cfg.energy_record_dt / k, "record / k"));
    const int n_checkpoints = n_steps / record_every;
    std::vector<std::vector<double>> energies(n_checkpoints + 1,
                                              std::vector<double>(cfg.sg_energy_samples));
    StmNlScheme scheme(system, k, FilterSet::standard(),
                       [](double u) { return -std::sin(u); });
    const VectorXd& lambda = system.eigenvalues();
    parallel_for(cfg.sg_energy_samples, cfg.threads, [&](int sample) {
      CoupledPath path(sample_seed(cfg.seed, sample), k, n_steps, model.J);
      VectorXd u1 = system.to_spectral(x0.u1);
      VectorXd u2 = system.to_spectral(x0.u2);
      auto energy = [&]() {
        return 0.5 * (lambda.dot(u1.cwiseProduct(u1)) + u2.squaredNorm());
      };
      energies[0][sample] = energy();
      for (int step = 1; step <= n_steps; ++step) {
        VectorXd w = projector.project_spectral(path.window(step - 1, step));
        scheme.step_spectral(u1, u2, w);
        if (step % record_every == 0) energies[step / record_every][sample] = energy();
      }
    });
    const double h0 = discrete_energy(system, x0);
    result.mc_energy.scheme = "stm-nl";
    std::vector<double> ts, means;
    for (int c = 0; c <= n_checkpoints; ++c) {
      const double t = c * record_every * k;
      const double mean = mean_of(energies[c]);
      result.mc_energy.points.push_back(
          {t, mean, se_of_mean(energies[c]), h0 + 0.5 * t * result.trace});
      ts.push_back(t);
      means.push_back(mean);
    }
    result.energy_slope = linear_fit_slope(ts, means);
  }

  // Strong temporal errors against an stm-nl reference (s from config).
  if (!cfg.k_list.empty()) {
    if (cfg.k_exact <= 0.0 || cfg.n_cells_exact <= 0)
      throw ConfigError("k_exact", "required for the sine-gordon error table");
    FemSystem system(build_uniform_mesh(cfg.n_cells_exact));
    system.spectral_decompose();
    CovarianceModel model{cfg.s, system.dof()};
    NoiseProjector projector(system, model);
    const State x0 = sine_gordon_initial_state(system);
    const int n_base = checked_round(cfg.T / cfg.k_exact, "T / k_exact");
    const int n_k = static_cast<int>(cfg.k_list.size());
    std::vector<std::vector<double>> sq(n_k, std::vector<double>(cfg.samples));
    parallel_for(cfg.samples, cfg.threads, [&](int sample) {
      CoupledPath path(sample_seed(cfg.seed, sample), cfg.k_exact, n_base, model.J);
      RunOutcome ref = integrate_scheme(SchemeKind::StmNl, system, projector, path,
                                        cfg.k_exact, cfg.T, x0);
      for (int ik = 0; ik < n_k; ++ik) {
        RunOutcome run = integrate_scheme(SchemeKind::StmNl, system, projector, path,
                                          cfg.k_list[ik], cfg.T, x0);
        VectorXd e = run.final_state.u1 - ref.final_state.u1;
        sq[ik][sample] = system.mass().quadform(e);
      }
    });
    result.errors.scheme = "stm-nl";
    result.errors.n_cells = cfg.n_cells_exact;
    std::vector<double> ks, errs;
    for (int ik = 0; ik < n_k; ++ik) {
      RootMeanSq r = root_mean_sq(sq[ik]);
      ErrorRow row;
      row.scheme = "stm-nl";
      row.h = 1.0 / cfg.n_cells_exact;
      row.k = cfg.k_list[ik];
      row.component = 1;
      row.rmse = r.root;
      row.se = r.se;
      row.samples = cfg.samples;
      result.errors.table.rows.push_back(row);
      ks.push_back(row.k);
      errs.push_back(row.rmse);
    }
    result.errors.slope = fit_series_slope(ks, errs);
  }
  return result;
}

DefectResult measure_local_defect(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.n_cells_list.empty() || cfg.k_list.empty())
    throw ConfigError("k_list", "need a mesh and a k grid");
  FemSystem system(build_uniform_mesh(cfg.n_cells_list.front()));
  system.spectral_decompose();
  CovarianceModel model{cfg.s, system.dof()};
  NoiseProjector projector(system, model);
  const VectorXd omega = system.eigenvalues().cwiseSqrt();
  const int n = system.dof();
  const int sub = cfg.defect_substeps;

  DefectResult result;
  result.target_exponent = std::min(2.0 * model.beta_sup() + 1.0, 3.0);
  std::vector<double> ks, msqs;
  for (std::size_t ik = 0; ik < cfg.k_list.size(); ++ik) {
    const double k = cfg.k_list[ik];
    const double delta = k / sub;
    std::vector<double> sq1(cfg.samples), sq2(cfg.samples);
    parallel_for(cfg.samples, cfg.threads, [&](int sample) {
      CoupledPath path(sample_seed(cfg.seed, sample * 131 + static_cast<int>(ik)), delta, sub,
                       model.J);
      VectorXd conv1 = VectorXd::Zero(n), conv2 = VectorXd::Zero(n),
               total = VectorXd::Zero(n);
      for (int mstep = 0; mstep < sub; ++mstep) {
        VectorXd w = projector.project_spectral(path.window(mstep, mstep + 1));
        const double tau = k - mstep * delta;  // left-endpoint kernel
        for (int j = 0; j < n; ++j) {
          conv1[j] += std::sin(omega[j] * tau) / omega[j] * w[j];
          conv2[j] += std::cos(omega[j] * tau) * w[j];
        }
        total += w;
      }
      double d1 = 0, d2 = 0;
      for (int j = 0; j < n; ++j) {
        const double e1 = conv1[j] - std::sin(omega[j] * k) / omega[j] * total[j];
        const double e2 = conv2[j] - std::cos(omega[j] * k) * total[j];
        d1 += e1 * e1;
        d2 += e2 * e2;
      }
      sq1[sample] = d1;
      sq2[sample] = d2;
    });
    DefectRow row;
    row.k = k;
    row.d1_msq = mean_of(sq1);
    row.d1_se = se_of_mean(sq1);
    row.d2_msq = mean_of(sq2);
    row.d2_se = se_of_mean(sq2);
    result.rows.push_back(row);
    ks.push_back(k);
    msqs.push_back(row.d1_msq);
  }
  result.d1_exponent = fit_series_slope(ks, msqs);
  return result;
}

}  // namespace swave
