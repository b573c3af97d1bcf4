#include "swave/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace swave {

double discrete_energy(const FemSystem& system, const State& x) {
  return 0.5 * (system.stiffness().quadform(x.u1) + system.mass().quadform(x.u2));
}

RootMeanSq root_mean_sq(const std::vector<double>& sq_values) {
  const int n = static_cast<int>(sq_values.size());
  if (n < 2) throw std::invalid_argument("root_mean_sq: need at least 2 samples");
  double total = 0.0;
  for (double q : sq_values) total += q;
  RootMeanSq out;
  out.n = n;
  out.root = std::sqrt(total / n);
  // Jackknife over leave-one-out roots.
  std::vector<double> loo(n);
  double mean_loo = 0.0;
  for (int i = 0; i < n; ++i) {
    loo[i] = std::sqrt(std::max(total - sq_values[i], 0.0) / (n - 1));
    mean_loo += loo[i];
  }
  mean_loo /= n;
  double var = 0.0;
  for (int i = 0; i < n; ++i) var += (loo[i] - mean_loo) * (loo[i] - mean_loo);
  out.se = std::sqrt(var * (n - 1) / n);
  return out;
}

RootMeanSq strong_error(const FemSystem& system,
                        const std::vector<std::pair<State, State>>& samples, int component) {
  if (samples.size() < 2) throw std::invalid_argument("strong_error: need at least 2 samples");
  std::vector<double> sq;
  sq.reserve(samples.size());
  for (const auto& [approx, ref] : samples) {
    VectorXd e = (component == 1) ? (approx.u1 - ref.u1).eval() : (approx.u2 - ref.u2).eval();
    sq.push_back(system.mass().quadform(e));
  }
  return root_mean_sq(sq);
}

std::pair<double, double> fit_log_slope(const std::vector<double>& x,
                                        const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("fit_log_slope: need at least 3 matched points");
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    if (x[i] <= 0.0 || y[i] <= 0.0)
      throw std::domain_error("fit_log_slope: nonpositive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  return {slope, intercept};
}

std::pair<double, double> fit_slope(const ErrorTable& table) {
  std::vector<double> k, err;
  for (const auto& row : table.rows) {
    if (row.exploded) continue;
    k.push_back(row.k);
    err.push_back(row.rmse);
  }
  return fit_log_slope(k, err);
}

namespace {

// diag(x) * A * diag(y)
MatrixXd scaled(const VectorXd& x, const MatrixXd& a, const VectorXd& y) {
  return x.asDiagonal() * a * y.asDiagonal();
}

// sin(x k)/x with series branch, = k sinc(x k).
double sin_over(double x, double k) { return k * sinc(x * k); }

// (1 - cos(x k))/x; -> 0 as x -> 0.
double vers_over(double x, double k) {
  const double xk = x * k;
  if (std::abs(xk) < 1e-4) return x * k * k * (0.5 - xk * xk / 24.0);
  return (1.0 - std::cos(xk)) / x;
}

struct LinearMap {
  VectorXd a, b, c, d;  // per-mode blocks of T = [[a,b],[c,d]]
  struct NoiseColumn {
    VectorXd p, q;   // per-mode noise column [p; q]
    double variance; // variance of the driving increment per step
  };
  std::vector<NoiseColumn> noise;
};

LinearMap scheme_map(MomentScheme scheme, const VectorXd& lambda, double k) {
  const int n = static_cast<int>(lambda.size());
  const VectorXd omega = lambda.cwiseSqrt();
  LinearMap m;
  m.a.resize(n);
  m.b.resize(n);
  m.c.resize(n);
  m.d.resize(n);
  switch (scheme) {
    case MomentScheme::Stm:
    case MomentScheme::Exact: {
      for (int j = 0; j < n; ++j) {
        const double cj = std::cos(k * omega[j]), sj = std::sin(k * omega[j]);
        m.a[j] = cj;
        m.b[j] = sj / omega[j];
        m.c[j] = -omega[j] * sj;
        m.d[j] = cj;
      }
      if (scheme == MomentScheme::Stm) m.noise.push_back({m.b, m.d, k});
      // Exact adds the stochastic-convolution covariance separately.
      break;
    }
    case MomentScheme::Bem: {
      for (int j = 0; j < n; ++j) {
        const double g = 1.0 / (1.0 + k * k * lambda[j]);
        m.a[j] = g;
        m.b[j] = k * g;
        m.c[j] = -k * lambda[j] * g;
        m.d[j] = g;
      }
      m.noise.push_back({m.b, m.d, k});
      break;
    }
    case MomentScheme::Cnm: {
      for (int j = 0; j < n; ++j) {
        const double g = 1.0 / (1.0 + 0.25 * k * k * lambda[j]);
        const double d22 = g * (1.0 - 0.25 * k * k * lambda[j]);
        m.a[j] = 1.0 - 0.5 * k * k * lambda[j] * g;
        m.b[j] = 0.5 * k * (1.0 + d22);
        m.c[j] = -k * lambda[j] * g;
        m.d[j] = d22;
      }
      VectorXd q(n), p(n);
      for (int j = 0; j < n; ++j) {
        q[j] = 1.0 / (1.0 + 0.25 * k * k * lambda[j]);
        p[j] = 0.5 * k * q[j];
      }
      m.noise.push_back({p, q, k});
      break;
    }
    case MomentScheme::Sv: {
      for (int j = 0; j < n; ++j) {
        m.a[j] = 1.0 - 0.5 * k * k * lambda[j];
        m.b[j] = k;
        m.c[j] = -k * lambda[j] * (1.0 - 0.25 * k * k * lambda[j]);
        m.d[j] = 1.0 - 0.5 * k * k * lambda[j];
      }
      VectorXd pa = VectorXd::Constant(n, k);
      VectorXd qa(n);
      for (int j = 0; j < n; ++j) qa[j] = 1.0 - 0.5 * k * k * lambda[j];
      m.noise.push_back({pa, qa, 0.5 * k});
      m.noise.push_back({VectorXd::Zero(n), VectorXd::Ones(n), 0.5 * k});
      break;
    }
  }
  return m;
}

}  // namespace

std::vector<EnergySample> propagate_expected_energy(const FemSystem& system,
                                                    const CovarianceModel& model,
                                                    MomentScheme scheme, double k,
                                                    int n_steps, const State& initial,
                                                    int record_every) {
  const int n = system.dof();
  const VectorXd& lambda = system.eigenvalues();
  NoiseProjector projector(system, model);
  const MatrixXd& ls = projector.spectral_loads();
  const MatrixXd qhat = ls * ls.transpose();  // unit-time covariance, spectral coords

  LinearMap map = scheme_map(scheme, lambda, k);

  // Closed-form covariance of int_0^k E_h(k-s) P_h B dW(s) for the exact flow.
  MatrixXd e11, e12, e22;
  if (scheme == MomentScheme::Exact) {
    const VectorXd omega = lambda.cwiseSqrt();
    e11.resize(n, n);
    e12.resize(n, n);
    e22.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double wm = omega[i] - omega[j], wp = omega[i] + omega[j];
        const double iss = 0.5 * (sin_over(wm, k) - sin_over(wp, k));
        const double icc = 0.5 * (sin_over(wm, k) + sin_over(wp, k));
        const double isc = 0.5 * (vers_over(wp, k) + vers_over(wm, k));
        e11(i, j) = qhat(i, j) * iss / (omega[i] * omega[j]);
        e12(i, j) = qhat(i, j) * isc / omega[i];
        e22(i, j) = qhat(i, j) * icc;
      }
  }

  VectorXd x1 = system.to_spectral(initial.u1);
  VectorXd x2 = system.to_spectral(initial.u2);
  SecondMoment cm{x1 * x1.transpose(), x1 * x2.transpose(), x2 * x2.transpose()};

  auto energy = [&]() {
    return 0.5 * (lambda.dot(cm.c11.diagonal()) + cm.c22.diagonal().sum());
  };

  std::vector<EnergySample> out;
  out.push_back({0.0, energy()});
  for (int step = 1; step <= n_steps; ++step) {
    const MatrixXd c21 = cm.c12.transpose();
    MatrixXd c11 = scaled(map.a, cm.c11, map.a) + scaled(map.a, cm.c12, map.b) +
                   scaled(map.b, c21, map.a) + scaled(map.b, cm.c22, map.b);
    MatrixXd c12 = scaled(map.a, cm.c11, map.c) + scaled(map.a, cm.c12, map.d) +
                   scaled(map.b, c21, map.c) + scaled(map.b, cm.c22, map.d);
    MatrixXd c22 = scaled(map.c, cm.c11, map.c) + scaled(map.c, cm.c12, map.d) +
                   scaled(map.d, c21, map.c) + scaled(map.d, cm.c22, map.d);
    for (const auto& col : map.noise) {
      c11 += col.variance * scaled(col.p, qhat, col.p);
      c12 += col.variance * scaled(col.p, qhat, col.q);
      c22 += col.variance * scaled(col.q, qhat, col.q);
    }
    if (scheme == MomentScheme::Exact) {
      c11 += e11;
      c12 += e12;
      c22 += e22;
    }
    cm.c11 = std::move(c11);
    cm.c12 = std::move(c12);
    cm.c22 = std::move(c22);
    if (step % record_every == 0) out.push_back({step * k, energy()});
  }
  return out;
}

}  // namespace swave
