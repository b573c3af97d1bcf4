#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "swave/fem.hpp"
#include "swave/integrators.hpp"
#include "swave/noise.hpp"

namespace swave {

struct EnergySample {
  double t = 0.0;
  double value = 0.0;
};

/// One row of a convergence study: resolution vs root-mean-square error.
struct ErrorRow {
  std::string scheme;
  double h = 0.0;
  double k = 0.0;
  int component = 1;
  double rmse = 0.0;
  double se = 0.0;
  int samples = 0;
  bool exploded = false;
};

struct ErrorTable {
  std::vector<ErrorRow> rows;
};

/// 1/2 (u1^T S u1 + u2^T M u2).
double discrete_energy(const FemSystem& system, const State& x);

struct RootMeanSq {
  double root = 0.0;
  double se = 0.0;  // jackknife standard error of the root
  int n = 0;
};

/// Root of the mean of squared norms with a jackknife error bar.
/// Throws std::invalid_argument for fewer than 2 values.
RootMeanSq root_mean_sq(const std::vector<double>& sq_values);

/// sqrt(mean of e^T M e) over matched (approx, reference) pairs.
RootMeanSq strong_error(const FemSystem& system,
                        const std::vector<std::pair<State, State>>& samples, int component);

/// Ordinary least squares on (log x, log y). Throws on nonpositive data
/// or fewer than 3 rows.
std::pair<double, double> fit_log_slope(const std::vector<double>& x,
                                        const std::vector<double>& y);
std::pair<double, double> fit_slope(const ErrorTable& table);

/// Second moment E[X X^T] of the state in spectral coordinates.
struct SecondMoment {
  MatrixXd c11, c12, c22;
};

enum class MomentScheme { Stm, Bem, Cnm, Sv, Exact };

/// Exact propagation of the expected energy of a linear scheme driven by
/// the projected noise, via the one-step covariance recursion
/// C' = T C T^T + k N Qh N^T. MomentScheme::Exact uses the semidiscrete
/// flow with the closed-form stochastic-convolution covariance.
/// Energy samples are recorded every record_every steps (including t=0).
std::vector<EnergySample> propagate_expected_energy(const FemSystem& system,
                                                    const CovarianceModel& model,
                                                    MomentScheme scheme, double k,
                                                    int n_steps, const State& initial,
                                                    int record_every = 1);

}  // namespace swave
