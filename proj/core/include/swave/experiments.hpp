#pragma once

#include <functional>
#include <vector>

#include "swave/config.hpp"
#include "swave/noise.hpp"
#include "swave/observables.hpp"

namespace swave {

struct EnergyPoint {
  double t = 0.0;
  double energy = 0.0;
  double se = 0.0;            // 0 for exact curves
  double exact_energy = 0.0;  // trace line H0 + (t/2) Tr(P_h Q P_h)
};

struct EnergyCurve {
  std::string scheme;
  std::vector<EnergyPoint> points;
};

/// Run independent tasks 0..n-1 on a fixed worker count; each task writes
/// only its own output slot, so results do not depend on scheduling.
void parallel_for(int n, int threads, const std::function<void(int)>& task);

/// Nodal coefficients of P_h applied to the paper's initial data
/// u(x,0) = cos(pi (x - 1/2)) = sin(pi x).
State linear_initial_state(const FemSystem& system);
/// u = 0, velocity = P_h of the indicator of [1/4, 3/4].
State sine_gordon_initial_state(const FemSystem& system);

struct RunOutcome {
  State final_state;
  bool exploded = false;
};

/// Integrate one sample of the (possibly nonlinear) problem over [0, T]
/// with scheme step k, drawing increments as window sums from the coupled
/// path. Aborts and flags the outcome when the state norm passes the guard.
RunOutcome integrate_scheme(SchemeKind kind, const FemSystem& system,
                            const NoiseProjector& projector, const CoupledPath& path,
                            double k, double T, const State& x0,
                            const NonlinearTerm* g = nullptr,
                            const FilterSet* filters = nullptr,
                            double explosion_guard = 1e12);

/// Evaluate the coarse piecewise-linear function at the fine interior nodes
/// (nodal injection; exact for nested meshes).
VectorXd inject_to_fine(const Mesh1D& coarse, const VectorXd& values, const Mesh1D& fine);

struct ConvergenceSeries {
  std::string scheme;
  int n_cells = 0;
  ErrorTable table;
  double slope = 0.0;  // NaN when fewer than 3 finite rows
};

struct TemporalResult {
  std::vector<ConvergenceSeries> series;
};

struct SpatialResult {
  ConvergenceSeries series;  // table rows indexed by h, k fixed at k_exact
};

struct ComparisonResult {
  std::vector<ConvergenceSeries> series;  // one per scheme
  double sqrt_lambda_max = 0.0;           // CFL reference for SV
};

struct TraceResult {
  double trace = 0.0;          // Tr(P_h Q P_h)
  double initial_energy = 0.0;
  std::vector<EnergyCurve> exact_curves;  // per scheme + "semidiscrete"
  EnergyCurve mc_curve;                   // Monte Carlo STM
  double stm_max_rel_dev = 0.0;           // exact STM curve vs trace line
};

struct SineGordonResult {
  double trace = 0.0;
  EnergyCurve mc_energy;
  double energy_slope = 0.0;  // fitted d/dt of the MC expected energy
  ConvergenceSeries errors;   // strong position errors vs k (s from config)
};

struct DefectRow {
  double k = 0.0;
  double d1_msq = 0.0, d1_se = 0.0;
  double d2_msq = 0.0, d2_se = 0.0;
};

struct DefectResult {
  std::vector<DefectRow> rows;
  double d1_exponent = 0.0;  // fitted exponent of E||d1||^2 vs k
  double target_exponent = 0.0;
};

TemporalResult run_temporal_convergence(const ExperimentConfig& cfg);
SpatialResult run_spatial_convergence(const ExperimentConfig& cfg);
ComparisonResult run_scheme_comparison(const ExperimentConfig& cfg);
TraceResult run_trace_formula(const ExperimentConfig& cfg);
SineGordonResult run_sine_gordon(const ExperimentConfig& cfg);
DefectResult measure_local_defect(const ExperimentConfig& cfg);

}  // namespace swave
