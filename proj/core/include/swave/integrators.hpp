#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "swave/fem.hpp"

namespace swave {

/// Position and velocity coefficient vectors of the semidiscrete solution.
struct State {
  VectorXd u1;
  VectorXd u2;
};

/// Per-mode cos/sin values of the wave group at a fixed step k.
struct Propagator {
  const FemSystem* system = nullptr;
  double k = 0.0;
  VectorXd omega;  // sqrt(lambda_j)
  VectorXd c;      // cos(k omega_j)
  VectorXd s;      // sin(k omega_j)
};

Propagator make_stm_propagator(const FemSystem& system, double k);

/// One step of the stochastic trigonometric method; noise holds the nodal
/// coefficients of P_h dW and enters through the column
/// [Lambda^{-1/2} S_h(k); C_h(k)], the same as the velocity.
State stm_step(const Propagator& prop, const State& x, const VectorXd& noise);

/// Spectral-coordinate kernel of stm_step (state and noise in the
/// eigenbasis); used by the experiment runners.
void stm_step_spectral(const Propagator& prop, VectorXd& u1, VectorXd& u2,
                       const VectorXd& noise);

/// sin(x)/x with a series branch near zero.
double sinc(double x);

/// Mode filters evaluated at xi_j = k omega_j; all equal 1 at xi = 0.
struct FilterSet {
  std::function<double(double)> psi, phi, psi0, psi1;

  /// sinc^3, sinc, cos*sinc^2, sinc^2.
  static FilterSet standard();
  /// All four identically 1 (no filtering).
  static FilterSet none();
};

/// Pointwise nonlinearity applied to nodal values (collocation).
using NonlinearTerm = std::function<double(double)>;

/// Filtered trigonometric integrator for d(du) - Lap u dt = g(u) dt + dW.
class StmNlScheme {
 public:
  StmNlScheme(const FemSystem& system, double k, FilterSet filters, NonlinearTerm g);

  State step(const State& x, const VectorXd& noise) const;
  void step_spectral(VectorXd& u1, VectorXd& u2, const VectorXd& noise) const;

  const Propagator& propagator() const { return prop_; }

 private:
  Propagator prop_;
  NonlinearTerm g_;
  VectorXd psi_, phi_, psi0_, psi1_;  // filters at xi_j = k omega_j

  VectorXd nonlinear_spectral(const VectorXd& u1_spectral) const;
};

/// Backward Euler-Maruyama with cached factorization of M + k^2 S.
class BemScheme {
 public:
  BemScheme(const FemSystem& system, double k);
  State step(const State& x, const VectorXd& noise) const;

 private:
  const FemSystem* system_;
  double k_;
  TridiagFactor shifted_;  // M + k^2 S
};

/// Crank-Nicolson-Maruyama with cached factorization of M + (k^2/4) S.
class CnmScheme {
 public:
  CnmScheme(const FemSystem& system, double k);
  State step(const State& x, const VectorXd& noise) const;

 private:
  const FemSystem* system_;
  double k_;
  TridiagFactor shifted_;  // M + (k^2/4) S
};

/// Stochastic Stoermer-Verlet; takes the two half-window increments.
class SvScheme {
 public:
  SvScheme(const FemSystem& system, double k);
  State step(const State& x, const VectorXd& noise_half1,
             const VectorXd& noise_half2) const;

 private:
  const FemSystem* system_;
  double k_;
};

State bem_step(const FemSystem& system, double k, const State& x, const VectorXd& noise);
State cnm_step(const FemSystem& system, double k, const State& x, const VectorXd& noise);
State sv_step(const FemSystem& system, double k, const State& x,
              const VectorXd& noise_half1, const VectorXd& noise_half2);

enum class SchemeKind { Stm, StmNl, Bem, Cnm, Sv };

/// Parses "stm", "stm-nl", "bem", "cnm", "sv"; throws on anything else.
SchemeKind scheme_from_name(const std::string& name);
std::string scheme_name(SchemeKind kind);

}  // namespace swave
