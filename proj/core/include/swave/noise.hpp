#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "swave/fem.hpp"

namespace swave {

/// Spectral description of Q = Lambda^{-s} on (0,1): eigenpairs
/// gamma_j = (j pi)^{-2s}, e_j = sqrt(2) sin(j pi x), truncated at J modes.
struct CovarianceModel {
  double s = 0.0;
  int J = 1;

  double gamma(int j) const;  // 1-based mode index
  /// Supremum of the admissible regularity parameter, min(1/2 + s, 4).
  double beta_sup() const { return std::min(0.5 + s, 4.0); }
};

/// (gamma_j, scale of the sine mode e_j = sqrt(2) sin(j pi x)).
std::pair<double, int> covariance_eigenpair(const CovarianceModel& model, int j);

/// Per-mode Brownian increments over one window.
struct ModeIncrements {
  double dt = 0.0;
  VectorXd values;  // length J, each ~ N(0, dt)
};

/// Brownian base-step increment table shared by coarse and fine integrators.
/// Increments are a pure function of (seed, mode, base step); aggregating
/// base increments over a window gives the coarser increment exactly.
class CoupledPath {
 public:
  CoupledPath(std::uint64_t seed, double base_dt, std::int64_t n_base_steps, int n_modes,
              std::size_t memory_budget_bytes = std::size_t{2} << 30);

  std::uint64_t seed() const { return seed_; }
  double base_dt() const { return base_dt_; }
  std::int64_t n_base_steps() const { return n_base_steps_; }
  int n_modes() const { return n_modes_; }

  /// Base increment of mode j (0-based) at base step n.
  double increment(int j, std::int64_t n) const;

  /// Per-mode sums over base steps [n1, n2). Throws on empty or
  /// out-of-range windows.
  ModeIncrements window(std::int64_t n1, std::int64_t n2) const;

 private:
  std::uint64_t seed_;
  double base_dt_;
  std::int64_t n_base_steps_;
  int n_modes_;
  double sqrt_dt_;
  std::vector<double> table_;  // materialized when within budget, else empty
};

/// Maps mode increments to the nodal coefficients of P_h dW, caching the
/// scaled load vectors. project(inc) solves M c = sum_j gamma_j^{1/2}
/// dbeta_j b_j.
class NoiseProjector {
 public:
  NoiseProjector(const FemSystem& system, const CovarianceModel& model);

  VectorXd project(const ModeIncrements& inc) const;
  /// Spectral coefficients of the projected increment (requires spectrum).
  VectorXd project_spectral(const ModeIncrements& inc) const;

  /// N x J matrix with columns gamma_j^{1/2} b_j.
  const MatrixXd& loads() const { return loads_; }
  /// Phi^T loads (empty until the system has a spectrum).
  const MatrixXd& spectral_loads() const;

  const FemSystem& system() const { return *system_; }

 private:
  const FemSystem* system_;
  MatrixXd loads_;
  mutable MatrixXd spectral_loads_;
};

/// One-call convenience wrapper over NoiseProjector.
VectorXd project_increment(const FemSystem& system, const CovarianceModel& model,
                           const ModeIncrements& inc);

/// Tr(P_h Q P_h) = sum_j gamma_j b_j^T M^{-1} b_j.
double trace_ph_q_ph(const FemSystem& system, const CovarianceModel& model);

/// Derived per-sample seed so Monte Carlo samples use disjoint streams.
std::uint64_t sample_seed(std::uint64_t master_seed, std::int64_t sample_index);

}  // namespace swave
