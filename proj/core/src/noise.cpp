#include "swave/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "swave/rng.hpp"

namespace swave {

double CovarianceModel::gamma(int j) const {
  if (j < 1 || j > J) throw std::out_of_range("CovarianceModel::gamma: mode index out of range");
  return std::pow(j * M_PI, -2.0 * s);
}

std::pair<double, int> covariance_eigenpair(const CovarianceModel& model, int j) {
  return {model.gamma(j), j};
}

CoupledPath::CoupledPath(std::uint64_t seed, double base_dt, std::int64_t n_base_steps,
                         int n_modes, std::size_t memory_budget_bytes)
    : seed_(seed),
      base_dt_(base_dt),
      n_base_steps_(n_base_steps),
      n_modes_(n_modes),
      sqrt_dt_(std::sqrt(base_dt)) {
  if (base_dt <= 0.0 || n_base_steps < 1 || n_modes < 1)
    throw std::invalid_argument("CoupledPath: sizes must be positive");
  const std::size_t bytes =
      static_cast<std::size_t>(n_modes) * static_cast<std::size_t>(n_base_steps) * sizeof(double);
  if (bytes <= memory_budget_bytes) {
    table_.resize(static_cast<std::size_t>(n_modes) * n_base_steps);
    for (int j = 0; j < n_modes; ++j)
      for (std::int64_t n = 0; n < n_base_steps; ++n)
        table_[static_cast<std::size_t>(j) * n_base_steps + n] =
            rng::quantize(sqrt_dt_ * rng::gaussian(seed_, j + 1, n));
  }
  // Outside the budget the table stays empty and increments are
  // regenerated from the counter stream on demand.
}

double CoupledPath::increment(int j, std::int64_t n) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(j) * n_base_steps_ + n];
  return rng::quantize(sqrt_dt_ * rng::gaussian(seed_, j + 1, n));
}

ModeIncrements CoupledPath::window(std::int64_t n1, std::int64_t n2) const {
  if (n1 >= n2) throw std::invalid_argument("CoupledPath::window: empty window");
  if (n1 < 0 || n2 > n_base_steps_)
    throw std::out_of_range("CoupledPath::window: window outside path extent");
  ModeIncrements inc;
  inc.dt = (n2 - n1) * base_dt_;
  inc.values.resize(n_modes_);
  for (int j = 0; j < n_modes_; ++j) {
    double s = 0.0;
    for (std::int64_t n = n1; n < n2; ++n) s += increment(j, n);
    inc.values[j] = s;
  }
  return inc;
}

NoiseProjector::NoiseProjector(const FemSystem& system, const CovarianceModel& model)
    : system_(&system) {
  const int n = system.dof();
  loads_.resize(n, model.J);
  const double sqrt2 = std::sqrt(2.0);
  for (int j = 1; j <= model.J; ++j)
    loads_.col(j - 1) = std::sqrt(model.gamma(j)) * sqrt2 * sin_mode_load(system.mesh(), j);
}

VectorXd NoiseProjector::project(const ModeIncrements& inc) const {
  if (inc.values.size() != loads_.cols())
    throw std::invalid_argument("NoiseProjector::project: mode count mismatch");
  return system_->mass_factor().solve(loads_ * inc.values);
}

const MatrixXd& NoiseProjector::spectral_loads() const {
  if (spectral_loads_.size() == 0)
    spectral_loads_ = system_->eigenvectors().transpose() * loads_;
  return spectral_loads_;
}

VectorXd NoiseProjector::project_spectral(const ModeIncrements& inc) const {
  return spectral_loads() * inc.values;
}

VectorXd project_increment(const FemSystem& system, const CovarianceModel& model,
                           const ModeIncrements& inc) {
  return NoiseProjector(system, model).project(inc);
}

double trace_ph_q_ph(const FemSystem& system, const CovarianceModel& model) {
  double tr = 0.0;
  for (int j = 1; j <= model.J; ++j) {
    VectorXd b = std::sqrt(2.0) * sin_mode_load(system.mesh(), j);
    tr += model.gamma(j) * b.dot(system.mass_factor().solve(b));
  }
  return tr;
}

std::uint64_t sample_seed(std::uint64_t master_seed, std::int64_t sample_index) {
  return rng::counter_word(master_seed, 0x5eedu, static_cast<std::uint64_t>(sample_index),
                           0xa5a5u);
}

}  // namespace swave
