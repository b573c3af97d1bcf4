#include "swave/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "swave/config.hpp"
#include "swave/csv.hpp"
#include "swave/experiments.hpp"
#include "swave/integrators.hpp"
#include "swave/noise.hpp"
#include "swave/observables.hpp"
#include "swave/rng.hpp"
#include "swave/svg.hpp"

namespace swave {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Suite {
  std::vector<CheckResult> results;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    results.push_back({name, ok, ok ? "" : detail});
  }
  void check_close(const std::string& name, double got, double want, double tol) {
    const double err = std::abs(got - want);
    char buf[128];
    std::snprintf(buf, sizeof buf, "got %.17g, want %.17g (|diff| %.3g > %.3g)", got, want,
                  err, tol);
    check(name, err <= tol, buf);
  }
};

void check_eigenvalues(Suite& s) {
  for (int n_cells : {2, 4, 8, 32}) {
    FemSystem system(build_uniform_mesh(n_cells));
    system.spectral_decompose();
    double max_rel = 0.0;
    for (int j = 1; j <= system.dof(); ++j) {
      const double closed = uniform_mesh_eigenvalue(system.mesh(), j);
      max_rel = std::max(max_rel,
                         std::abs(system.eigenvalues()[j - 1] - closed) / closed);
    }
    s.check_close("eigenvalue-formula/n" + std::to_string(n_cells), max_rel, 0.0, 1e-12);
    // Phi^T M Phi = I
    const MatrixXd& phi = system.eigenvectors();
    MatrixXd gram(system.dof(), system.dof());
    for (int c = 0; c < system.dof(); ++c) {
      VectorXd mc = system.mass().apply(phi.col(c));
      for (int r = 0; r < system.dof(); ++r) gram(r, c) = phi.col(r).dot(mc);
    }
    s.check_close("mass-orthonormality/n" + std::to_string(n_cells),
                  (gram - MatrixXd::Identity(system.dof(), system.dof())).cwiseAbs().maxCoeff(),
                  0.0, 1e-12);
  }
}

void check_projection(Suite& s) {
  // The L2 projection leaves a residual M c - b = 0 and is M-norm optimal.
  FemSystem system(build_uniform_mesh(16));
  const VectorXd b = sin_mode_load(system.mesh(), 3);
  const VectorXd c = system.l2_project(b);
  s.check_close("l2-projection-residual", (system.mass().apply(c) - b).cwiseAbs().maxCoeff(),
                0.0, 1e-13);
  // Known value: projection of sqrt(2) sin(pi x) on two cells has midpoint
  // coefficient 12 sqrt(2) / pi^2.
  FemSystem tiny(build_uniform_mesh(2));
  const double coeff =
      std::sqrt(2.0) * tiny.l2_project(sin_mode_load(tiny.mesh(), 1))[0];
  s.check_close("l2-projection-coeff", coeff, 12.0 * std::sqrt(2.0) / (kPi * kPi), 1e-12);
}

void check_scheme_identities(Suite& s) {
  FemSystem system(build_uniform_mesh(12));
  system.spectral_decompose();
  const double k = 0.05;
  const VectorXd zero = VectorXd::Zero(system.dof());
  State x{VectorXd::Zero(system.dof()), VectorXd::Zero(system.dof())};
  for (int i = 0; i < system.dof(); ++i) {
    x.u1[i] = std::sin(1.7 * (i + 1));
    x.u2[i] = std::cos(0.9 * (i + 1));
  }
  const double e0 = discrete_energy(system, x);

  // Trigonometric group: two deterministic steps of k equal one step of 2k.
  Propagator pk = make_stm_propagator(system, k);
  Propagator p2k = make_stm_propagator(system, 2 * k);
  State two = stm_step(pk, stm_step(pk, x, zero), zero);
  State one = stm_step(p2k, x, zero);
  s.check_close("stm-group-property",
                (two.u1 - one.u1).cwiseAbs().maxCoeff() +
                    (two.u2 - one.u2).cwiseAbs().maxCoeff(),
                0.0, 1e-10);
  // Energy conservation of the deterministic trigonometric step.
  s.check_close("stm-energy-conservation", discrete_energy(system, two) / e0, 1.0, 1e-12);

  // Crank-Nicolson is a per-mode rotation: exact energy conservation.
  CnmScheme cnm(system, k);
  s.check_close("cnm-energy-conservation",
                discrete_energy(system, cnm.step(x, zero)) / e0, 1.0, 1e-12);

  // Backward Euler damps each mode's energy by exactly 1/(1 + k^2 lambda).
  BemScheme bem(system, k);
  State xb = bem.step(x, zero);
  VectorXd v1 = system.to_spectral(x.u1), v2 = system.to_spectral(x.u2);
  VectorXd w1 = system.to_spectral(xb.u1), w2 = system.to_spectral(xb.u2);
  double max_dev = 0.0;
  for (int j = 0; j < system.dof(); ++j) {
    const double lam = system.eigenvalues()[j];
    const double before = lam * v1[j] * v1[j] + v2[j] * v2[j];
    const double after = lam * w1[j] * w1[j] + w2[j] * w2[j];
    max_dev = std::max(max_dev, std::abs(after * (1.0 + k * k * lam) / before - 1.0));
  }
  s.check_close("bem-modal-damping", max_dev, 0.0, 1e-12);

  // With all filters set to 1 and g = 0, the nonlinear step reduces to stm.
  StmNlScheme nl(system, k, FilterSet::none(), [](double) { return 0.0; });
  State a = nl.step(x, zero);
  State b = stm_step(pk, x, zero);
  s.check_close("stm-nl-reduces-to-stm",
                (a.u1 - b.u1).cwiseAbs().maxCoeff() + (a.u2 - b.u2).cwiseAbs().maxCoeff(),
                0.0, 1e-10);
}

void check_noise(Suite& s) {
  // Exact window aggregation (increments live on a fixed grid).
  CoupledPath path(12345, 0.001, 64, 8);
  bool assoc = true;
  for (int j = 0; j < 8 && assoc; ++j) {
    double whole = path.window(0, 64).values[j];
    double parts = 0.0;
    for (int n = 0; n < 64; n += 4) parts += path.window(n, n + 4).values[j];
    assoc = (whole == parts);
  }
  s.check("window-aggregation-exact", assoc, "window sums differ between refinements");

  // Same seed reproduces the same increments.
  CoupledPath again(12345, 0.001, 64, 8);
  s.check("path-determinism", path.window(0, 64).values == again.window(0, 64).values,
          "same seed produced different increments");

  // Ito isometry: E || projected increment ||_M^2 = dt * Tr(P_h Q P_h).
  FemSystem system(build_uniform_mesh(16));
  system.spectral_decompose();
  CovarianceModel model{0.5, system.dof()};
  NoiseProjector projector(system, model);
  const double trace = trace_ph_q_ph(system, model);
  const double dt = 0.01;
  const int draws = 4000;
  double acc = 0.0;
  CoupledPath mc(777, dt, draws, model.J);
  for (int n = 0; n < draws; ++n) {
    VectorXd w = projector.project(mc.window(n, n + 1));
    acc += system.mass().quadform(w);
  }
  const double ratio = acc / draws / (dt * trace);
  s.check_close("ito-isometry", ratio, 1.0, 0.05);

  // Closed-form trace for the one-mode flat-spectrum case on two cells.
  FemSystem tiny(build_uniform_mesh(2));
  s.check_close("trace-closed-form", trace_ph_q_ph(tiny, CovarianceModel{0.0, 1}),
                96.0 / std::pow(kPi, 4), 1e-12);

  // Gaussian marginals: mean and variance of a long stream.
  double m1 = 0.0, m2 = 0.0;
  const int n_gauss = 20000;
  for (int i = 0; i < n_gauss; ++i) {
    const double g = rng::gaussian(999, 1, i);
    m1 += g;
    m2 += g * g;
  }
  m1 /= n_gauss;
  m2 /= n_gauss;
  s.check_close("gaussian-mean", m1, 0.0, 0.03);
  s.check_close("gaussian-variance", m2, 1.0, 0.05);
  // Inverse CDF hits round-trip accuracy.
  double max_icdf = 0.0;
  // |x| <= 5: past that the double rounding of p itself dominates.
  for (double x : {-5.0, -2.0, -0.5, 0.0, 0.5, 2.0, 5.0}) {
    const double p = 0.5 * std::erfc(-x / std::sqrt(2.0));
    max_icdf = std::max(max_icdf, std::abs(rng::normal_icdf(p) - x));
  }
  s.check_close("normal-icdf-roundtrip", max_icdf, 0.0, 1e-9);
}

void check_formats(Suite& s) {
  ErrorTable table;
  table.rows.push_back({"stm", 0.125, 1.0 / 3.0, 1, 1e-3 * kPi, 2.5e-5, 100, false});
  table.rows.push_back({"sv", 0.125, 0.25, 1, 0.0, 0.0, 100, true});
  const std::string path = "/tmp/swave_selftest_errors.csv";
  write_error_csv(path, table);
  ErrorTable back = read_error_csv(path);
  bool ok = back.rows.size() == table.rows.size();
  for (std::size_t i = 0; ok && i < back.rows.size(); ++i) {
    const auto& a = table.rows[i];
    const auto& b = back.rows[i];
    ok = a.scheme == b.scheme && a.h == b.h && a.k == b.k && a.rmse == b.rmse &&
         a.se == b.se && a.samples == b.samples && a.exploded == b.exploded;
  }
  s.check("csv-roundtrip-exact", ok, "read rows differ from written rows");

  bool rejected = false;
  try {
    parse_config_text("{\"bogus\": 1}", {});
  } catch (const ConfigError&) {
    rejected = true;
  }
  s.check("config-rejects-unknown-key", rejected, "unknown key accepted");

  bool svg_rejects = false;
  try {
    PlotSpec spec;
    spec.loglog = true;
    spec.series.push_back({"bad", {1.0, 2.0}, {1.0, -1.0}});
    render_plot(spec);
  } catch (const std::invalid_argument&) {
    svg_rejects = true;
  }
  s.check("svg-rejects-nonpositive-log", svg_rejects, "nonpositive log point accepted");
}

void check_trace_recursion(Suite& s) {
  // The stm covariance recursion follows the trace line exactly.
  FemSystem system(build_uniform_mesh(8));
  system.spectral_decompose();
  CovarianceModel model{0.5, system.dof()};
  const State x0 = linear_initial_state(system);
  const double h0 = discrete_energy(system, x0);
  const double trace = trace_ph_q_ph(system, model);
  auto samples = propagate_expected_energy(system, model, MomentScheme::Stm, 0.1, 50, x0, 10);
  double max_rel = 0.0;
  for (const auto& es : samples)
    max_rel = std::max(max_rel,
                       std::abs(es.value - (h0 + 0.5 * es.t * trace)) /
                           (h0 + 0.5 * es.t * trace));
  s.check_close("trace-line-exactness", max_rel, 0.0, 1e-10);
}

}  // namespace

std::vector<CheckResult> run_selftest() {
  Suite s;
  check_eigenvalues(s);
  check_projection(s);
  check_scheme_identities(s);
  check_noise(s);
  check_formats(s);
  check_trace_recursion(s);
  return s.results;
}

bool report_selftest(std::ostream& out) {
  bool all = true;
  for (const auto& r : run_selftest()) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.passed) out << ": " << r.detail;
    out << '\n';
    all = all && r.passed;
  }
  return all;
}

}  // namespace swave
