#include "swave/integrators.hpp"

#include <cmath>
#include <stdexcept>

namespace swave {

Propagator make_stm_propagator(const FemSystem& system, double k) {
  if (k <= 0.0) throw std::invalid_argument("make_stm_propagator: step must be positive");
  Propagator p;
  p.system = &system;
  p.k = k;
  p.omega = system.eigenvalues().cwiseSqrt();
  p.c = (k * p.omega.array()).cos();
  p.s = (k * p.omega.array()).sin();
  return p;
}

void stm_step_spectral(const Propagator& prop, VectorXd& u1, VectorXd& u2,
                       const VectorXd& noise) {
  const int n = static_cast<int>(u1.size());
  for (int j = 0; j < n; ++j) {
    const double v = u2[j] + noise[j];
    const double p = u1[j];
    u1[j] = prop.c[j] * p + prop.s[j] / prop.omega[j] * v;
    u2[j] = -prop.omega[j] * prop.s[j] * p + prop.c[j] * v;
  }
}

State stm_step(const Propagator& prop, const State& x, const VectorXd& noise) {
  const FemSystem& sys = *prop.system;
  if (x.u1.size() != sys.dof() || x.u2.size() != sys.dof() || noise.size() != sys.dof())
    throw std::invalid_argument("stm_step: dimension mismatch");
  VectorXd u1 = sys.to_spectral(x.u1);
  VectorXd u2 = sys.to_spectral(x.u2);
  VectorXd w = sys.to_spectral(noise);
  stm_step_spectral(prop, u1, u2, w);
  return {sys.from_spectral(u1), sys.from_spectral(u2)};
}

double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

FilterSet FilterSet::standard() {
  FilterSet f;
  f.psi = [](double xi) { double s = sinc(xi); return s * s * s; };
  f.phi = [](double xi) { return sinc(xi); };
  f.psi0 = [](double xi) { double s = sinc(xi); return std::cos(xi) * s * s; };
  f.psi1 = [](double xi) { double s = sinc(xi); return s * s; };
  return f;
}

FilterSet FilterSet::none() {
  auto one = [](double) { return 1.0; };
  return FilterSet{one, one, one, one};
}

StmNlScheme::StmNlScheme(const FemSystem& system, double k, FilterSet filters, NonlinearTerm g)
    : prop_(make_stm_propagator(system, k)), g_(std::move(g)) {
  const int n = system.dof();
  psi_.resize(n);
  phi_.resize(n);
  psi0_.resize(n);
  psi1_.resize(n);
  for (int j = 0; j < n; ++j) {
    const double xi = k * prop_.omega[j];
    psi_[j] = filters.psi(xi);
    phi_[j] = filters.phi(xi);
    psi0_[j] = filters.psi0(xi);
    psi1_[j] = filters.psi1(xi);
  }
}

VectorXd StmNlScheme::nonlinear_spectral(const VectorXd& u1_spectral) const {
  const FemSystem& sys = *prop_.system;
  // Filter the position spectrally, evaluate g at the nodal values
  // (collocation), then return spectral coefficients of the nodal vector.
  VectorXd p = sys.from_spectral(phi_.cwiseProduct(u1_spectral));
  for (int i = 0; i < p.size(); ++i) p[i] = g_(p[i]);
  return sys.to_spectral(p);
}

void StmNlScheme::step_spectral(VectorXd& u1, VectorXd& u2, const VectorXd& noise) const {
  const double k = prop_.k;
  const VectorXd gn = nonlinear_spectral(u1);
  VectorXd u1_new = u1;
  VectorXd v = u2 + noise;
  for (int j = 0; j < u1.size(); ++j)
    u1_new[j] = prop_.c[j] * u1[j] + prop_.s[j] / prop_.omega[j] * v[j] +
                0.5 * k * k * psi_[j] * gn[j];
  const VectorXd gn1 = nonlinear_spectral(u1_new);
  for (int j = 0; j < u2.size(); ++j)
    u2[j] = -prop_.omega[j] * prop_.s[j] * u1[j] + prop_.c[j] * v[j] +
            0.5 * k * (psi0_[j] * gn[j] + psi1_[j] * gn1[j]);
  u1 = u1_new;
}

State StmNlScheme::step(const State& x, const VectorXd& noise) const {
  const FemSystem& sys = *prop_.system;
  if (x.u1.size() != sys.dof() || noise.size() != sys.dof())
    throw std::invalid_argument("StmNlScheme::step: dimension mismatch");
  VectorXd u1 = sys.to_spectral(x.u1);
  VectorXd u2 = sys.to_spectral(x.u2);
  VectorXd w = sys.to_spectral(noise);
  step_spectral(u1, u2, w);
  return {sys.from_spectral(u1), sys.from_spectral(u2)};
}

BemScheme::BemScheme(const FemSystem& system, double k)
    : system_(&system), k_(k), shifted_(system.mass(), k * k, system.stiffness()) {}

State BemScheme::step(const State& x, const VectorXd& noise) const {
  const SymTridiag& M = system_->mass();
  const SymTridiag& S = system_->stiffness();
  VectorXd rhs = M.apply(x.u2 + noise) - k_ * S.apply(x.u1);
  VectorXd u2 = shifted_.solve(rhs);
  return {x.u1 + k_ * u2, u2};
}

CnmScheme::CnmScheme(const FemSystem& system, double k)
    : system_(&system), k_(k), shifted_(system.mass(), 0.25 * k * k, system.stiffness()) {}

State CnmScheme::step(const State& x, const VectorXd& noise) const {
  const SymTridiag& M = system_->mass();
  const SymTridiag& S = system_->stiffness();
  VectorXd rhs =
      M.apply(x.u2 + noise) - k_ * S.apply(x.u1) - 0.25 * k_ * k_ * S.apply(x.u2);
  VectorXd u2 = shifted_.solve(rhs);
  return {x.u1 + 0.5 * k_ * (x.u2 + u2), u2};
}

SvScheme::SvScheme(const FemSystem& system, double k) : system_(&system), k_(k) {}

State SvScheme::step(const State& x, const VectorXd& noise_half1,
                     const VectorXd& noise_half2) const {
  const SymTridiag& S = system_->stiffness();
  const TridiagFactor& Mf = system_->mass_factor();
  VectorXd u2h = x.u2 - 0.5 * k_ * Mf.solve(S.apply(x.u1)) + noise_half1;
  VectorXd u1 = x.u1 + k_ * u2h;
  VectorXd u2 = u2h - 0.5 * k_ * Mf.solve(S.apply(u1)) + noise_half2;
  return {std::move(u1), std::move(u2)};
}

State bem_step(const FemSystem& system, double k, const State& x, const VectorXd& noise) {
  return BemScheme(system, k).step(x, noise);
}

State cnm_step(const FemSystem& system, double k, const State& x, const VectorXd& noise) {
  return CnmScheme(system, k).step(x, noise);
}

State sv_step(const FemSystem& system, double k, const State& x,
              const VectorXd& noise_half1, const VectorXd& noise_half2) {
  return SvScheme(system, k).step(x, noise_half1, noise_half2);
}

SchemeKind scheme_from_name(const std::string& name) {
  if (name == "stm") return SchemeKind::Stm;
  if (name == "stm-nl") return SchemeKind::StmNl;
  if (name == "bem") return SchemeKind::Bem;
  if (name == "cnm") return SchemeKind::Cnm;
  if (name == "sv") return SchemeKind::Sv;
  throw std::invalid_argument("unknown scheme name: " + name);
}

std::string scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Stm: return "stm";
    case SchemeKind::StmNl: return "stm-nl";
    case SchemeKind::Bem: return "bem";
    case SchemeKind::Cnm: return "cnm";
    case SchemeKind::Sv: return "sv";
  }
  return "?";
}

}  // namespace swave
