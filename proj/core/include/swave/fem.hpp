#pragma once

#include <Eigen/Dense>
#include <functional>

#include "swave/mesh.hpp"
#include "swave/tridiag.hpp"

namespace swave {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Piecewise-linear FEM discretisation of -d^2/dx^2 on (0,1) with
/// homogeneous Dirichlet conditions: mass and stiffness matrices plus,
/// after spectral_decompose(), the generalized eigendecomposition
/// S Phi = M Phi diag(lambda) with Phi^T M Phi = I.
class FemSystem {
 public:
  explicit FemSystem(const Mesh1D& mesh);

  const Mesh1D& mesh() const { return mesh_; }
  int dof() const { return mesh_.dof(); }
  const SymTridiag& mass() const { return mass_; }
  const SymTridiag& stiffness() const { return stiffness_; }
  const TridiagFactor& mass_factor() const { return mass_factor_; }
  const TridiagFactor& stiffness_factor() const { return stiffness_factor_; }

  /// Dense generalized eigendecomposition; idempotent.
  void spectral_decompose();
  bool has_spectrum() const { return has_spectrum_; }

  /// Ascending generalized eigenvalues of (S, M).
  const VectorXd& eigenvalues() const;
  /// Columns are M-orthonormal eigenvectors.
  const MatrixXd& eigenvectors() const;

  /// Spectral coefficients Phi^T M v of a nodal vector.
  VectorXd to_spectral(const VectorXd& v) const;
  /// Nodal values Phi vhat of spectral coefficients.
  VectorXd from_spectral(const VectorXd& vhat) const;

  /// Phi f(lambda) Phi^T M v. Throws std::domain_error if f is non-finite
  /// on any eigenvalue.
  VectorXd apply_spectral_function(const std::function<double(double)>& f,
                                   const VectorXd& v) const;

  /// Solve M c = load (coefficients of the L2 projection).
  VectorXd l2_project(const VectorXd& load) const;
  /// Solve S c = stiffness_load (coefficients of the Ritz projection).
  VectorXd ritz_project(const VectorXd& stiffness_load) const;

  /// ||Lambda_h^{alpha/2} v||_{L2}. alpha = 0 and alpha = 1 use the M and S
  /// quadratic forms directly; other alpha require the spectrum.
  double h_alpha_norm(const VectorXd& v, double alpha) const;

 private:
  Mesh1D mesh_;
  SymTridiag mass_, stiffness_;
  TridiagFactor mass_factor_, stiffness_factor_;
  bool has_spectrum_ = false;
  VectorXd eigvals_;
  MatrixXd eigvecs_;
};

/// Load vector of sin(j*pi*x): b_i = sin(j*pi*x_i) * 4 sin^2(j*pi*h/2) / (j^2 pi^2 h).
/// Exact for the hat basis.
VectorXd sin_mode_load(const Mesh1D& mesh, int j);

/// Composite 4-point Gauss quadrature load (g, phi_i) for arbitrary g.
VectorXd quadrature_load(const Mesh1D& mesh, const std::function<double(double)>& g);

/// Load vector of the indicator of [a,b]: b_i = int_a^b phi_i dx, exact.
VectorXd indicator_load(const Mesh1D& mesh, double a, double b);

/// Closed-form eigenvalue of the discrete Laplacian on the uniform mesh:
/// (6/h^2) (1 - cos(j pi h)) / (2 + cos(j pi h)).
double uniform_mesh_eigenvalue(const Mesh1D& mesh, int j);

}  // namespace swave
