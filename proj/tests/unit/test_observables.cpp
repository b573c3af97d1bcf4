#include <cmath>

#include "doctest.h"
#include "swave/experiments.hpp"
#include "swave/observables.hpp"

using namespace swave;

TEST_CASE("root_mean_sq and its jackknife error bar") {
  CHECK_THROWS_AS(root_mean_sq({1.0}), std::invalid_argument);
  RootMeanSq r = root_mean_sq({4.0, 4.0, 4.0, 4.0});
  CHECK(r.root == doctest::Approx(2.0));
  CHECK(r.se == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(r.n == 4);

  // Hand-computed three-sample case: squares {1, 4, 16}.
  r = root_mean_sq({1.0, 4.0, 16.0});
  CHECK(r.root == doctest::Approx(std::sqrt(7.0)));
  const double l1 = std::sqrt(10.0), l2 = std::sqrt(8.5), l3 = std::sqrt(2.5);
  const double mean = (l1 + l2 + l3) / 3.0;
  const double var = (l1 - mean) * (l1 - mean) + (l2 - mean) * (l2 - mean) +
                     (l3 - mean) * (l3 - mean);
  CHECK(r.se == doctest::Approx(std::sqrt(var * 2.0 / 3.0)));
}

TEST_CASE("log-log slope fit is exact on power laws") {
  std::vector<double> x{0.5, 0.25, 0.125, 0.0625};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 1.5));
  auto [slope, intercept] = fit_log_slope(x, y);
  CHECK(slope == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(std::exp(intercept) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_log_slope({1.0, 2.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_log_slope({1.0, 2.0, -1.0}, {1.0, 2.0, 3.0}), std::domain_error);
}

TEST_CASE("fit_slope skips exploded rows") {
  ErrorTable table;
  for (double k : {0.5, 0.25, 0.125, 0.0625}) {
    ErrorRow row;
    row.k = k;
    row.rmse = std::pow(k, 2.0);
    table.rows.push_back(row);
  }
  ErrorRow bad;
  bad.k = 1.0;
  bad.exploded = true;
  table.rows.push_back(bad);
  CHECK(fit_slope(table).first == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("strong_error matches root_mean_sq of M-norms") {
  FemSystem system(build_uniform_mesh(8));
  std::vector<std::pair<State, State>> pairs;
  std::vector<double> sq;
  for (int s = 0; s < 3; ++s) {
    State a{VectorXd::Random(system.dof()), VectorXd::Random(system.dof())};
    State b{VectorXd::Random(system.dof()), VectorXd::Random(system.dof())};
    sq.push_back(system.mass().quadform(a.u1 - b.u1));
    pairs.push_back({a, b});
  }
  CHECK(strong_error(system, pairs, 1).root == doctest::Approx(root_mean_sq(sq).root));
}

TEST_CASE("covariance recursion: deterministic limit and energy identities") {
  FemSystem system(build_uniform_mesh(8));
  system.spectral_decompose();
  CovarianceModel model{0.5, system.dof()};
  State x0 = linear_initial_state(system);
  const double h0 = discrete_energy(system, x0);

  // The trigonometric recursion grows the energy by exactly (k/2) trace per
  // step, so every recorded point sits on the line.
  const double trace = trace_ph_q_ph(system, model);
  auto stm = propagate_expected_energy(system, model, MomentScheme::Stm, 0.05, 200, x0, 20);
  for (const auto& p : stm)
    CHECK(p.value == doctest::Approx(h0 + 0.5 * p.t * trace).epsilon(1e-11));

  // The exact semidiscrete flow obeys the same trace formula.
  auto exact =
      propagate_expected_energy(system, model, MomentScheme::Exact, 0.05, 200, x0, 20);
  for (const auto& p : exact)
    CHECK(p.value == doctest::Approx(h0 + 0.5 * p.t * trace).epsilon(1e-10));

  // Crank-Nicolson under-collects the forcing by 1/(1 + (k^2/4) lambda) but
  // conserves what it has: growth is linear with a slightly smaller slope.
  auto cnm = propagate_expected_energy(system, model, MomentScheme::Cnm, 0.05, 200, x0, 200);
  CHECK(cnm.back().value < h0 + 0.5 * cnm.back().t * trace);
  CHECK(cnm.back().value > 0.9 * (h0 + 0.5 * cnm.back().t * trace));

  // Backward Euler damps: far below the line for long times.
  auto bem = propagate_expected_energy(system, model, MomentScheme::Bem, 0.05, 1000, x0, 1000);
  CHECK(bem.back().value < 0.7 * (h0 + 0.5 * bem.back().t * trace));
}

TEST_CASE("covariance recursion matches Monte Carlo for one stm step") {
  FemSystem system(build_uniform_mesh(6));
  system.spectral_decompose();
  CovarianceModel model{0.0, system.dof()};
  NoiseProjector projector(system, model);
  State x0 = linear_initial_state(system);
  const double k = 0.2;
  auto exact = propagate_expected_energy(system, model, MomentScheme::Stm, k, 1, x0, 1);
  Propagator prop = make_stm_propagator(system, k);
  const int M = 20000;
  double acc = 0.0;
  CoupledPath path(4242, k, M, model.J);
  const VectorXd lambda = system.eigenvalues();
  for (int m = 0; m < M; ++m) {
    VectorXd u1 = system.to_spectral(x0.u1);
    VectorXd u2 = system.to_spectral(x0.u2);
    stm_step_spectral(prop, u1, u2, projector.project_spectral(path.window(m, m + 1)));
    acc += 0.5 * (lambda.dot(u1.cwiseProduct(u1)) + u2.squaredNorm());
  }
  CHECK(acc / M == doctest::Approx(exact.back().value).epsilon(0.03));
}

TEST_CASE("experiment helpers: initial states and injection") {
  FemSystem coarse(build_uniform_mesh(4));
  FemSystem fine(build_uniform_mesh(8));
  // Injection of a nodal piecewise-linear onto the nested fine mesh
  // reproduces the function exactly at shared nodes and midpoints.
  VectorXd v(coarse.dof());
  v << 1.0, -2.0, 0.5;
  VectorXd w = inject_to_fine(coarse.mesh(), v, fine.mesh());
  CHECK(w[1] == doctest::Approx(1.0));   // x = 1/4
  CHECK(w[3] == doctest::Approx(-2.0));  // x = 1/2
  CHECK(w[0] == doctest::Approx(0.5));   // midpoint of (0, 1/4)
  CHECK(w[2] == doctest::Approx(-0.5));  // midpoint of (1/4, 1/2)
  CHECK(w[6] == doctest::Approx(0.25));  // midpoint of (3/4, 1)

  State x0 = linear_initial_state(fine);
  CHECK(x0.u2.cwiseAbs().maxCoeff() == 0.0);
  CHECK(x0.u1[3] == doctest::Approx(1.0).epsilon(0.05));  // sin(pi/2)

  State sg = sine_gordon_initial_state(fine);
  CHECK(sg.u1.cwiseAbs().maxCoeff() == 0.0);
  CHECK(sg.u2[3] == doctest::Approx(1.0).epsilon(0.1));
  CHECK(sg.u2[0] < 0.3);
}

TEST_CASE("parallel_for fills every slot exactly once") {
  std::vector<int> hits(257, 0);
  parallel_for(257, 4, [&](int i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
}

TEST_CASE("integrate_scheme: coupling makes the self-error zero") {
  FemSystem system(build_uniform_mesh(8));
  system.spectral_decompose();
  CovarianceModel model{0.5, system.dof()};
  NoiseProjector projector(system, model);
  State x0 = linear_initial_state(system);
  CoupledPath path(99, 1.0 / 64.0, 64, model.J);
  RunOutcome a = integrate_scheme(SchemeKind::Stm, system, projector, path, 1.0 / 64.0, 1.0, x0);
  RunOutcome b = integrate_scheme(SchemeKind::Stm, system, projector, path, 1.0 / 64.0, 1.0, x0);
  CHECK((a.final_state.u1 - b.final_state.u1).cwiseAbs().maxCoeff() == 0.0);
  CHECK_FALSE(a.exploded);

  // A coarser run over the same path differs but stays close.
  RunOutcome c = integrate_scheme(SchemeKind::Stm, system, projector, path, 1.0 / 8.0, 1.0, x0);
  const double err = std::sqrt(system.mass().quadform(c.final_state.u1 - a.final_state.u1));
  CHECK(err > 0.0);
  CHECK(err < 1.0);
}

TEST_CASE("explosion guard flags unstable leapfrog runs") {
  FemSystem system(build_uniform_mesh(64));
  system.spectral_decompose();
  CovarianceModel model{0.5, system.dof()};
  NoiseProjector projector(system, model);
  State x0 = linear_initial_state(system);
  // CFL limit: k sqrt(lambda_max) <= 2 with sqrt(lambda_max) ~ 2 sqrt(3)/h.
  CoupledPath path(7, 1.0 / 64.0, 64, model.J);
  RunOutcome bad =
      integrate_scheme(SchemeKind::Sv, system, projector, path, 0.25, 1.0, x0);
  CHECK(bad.exploded);
  RunOutcome ok =
      integrate_scheme(SchemeKind::Bem, system, projector, path, 0.25, 1.0, x0);
  CHECK_FALSE(ok.exploded);
}
