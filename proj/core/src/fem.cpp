#include "swave/fem.hpp"

#include <cmath>
#include <stdexcept>

namespace swave {

FemSystem::FemSystem(const Mesh1D& mesh) : mesh_(mesh) {
  const int n = mesh_.dof();
  if (n < 1) throw std::invalid_argument("FemSystem: mesh has no interior node");
  const double h = mesh_.h;
  // Exact hat-function integrals: int phi_i phi_j and int phi_i' phi_j'.
  mass_.diag = VectorXd::Constant(n, 2.0 * h / 3.0);
  mass_.off = VectorXd::Constant(std::max(n - 1, 0), h / 6.0);
  stiffness_.diag = VectorXd::Constant(n, 2.0 / h);
  stiffness_.off = VectorXd::Constant(std::max(n - 1, 0), -1.0 / h);
  mass_factor_ = TridiagFactor(mass_);
  stiffness_factor_ = TridiagFactor(stiffness_);
}

void FemSystem::spectral_decompose() {
  if (has_spectrum_) return;
  Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(stiffness_.dense(), mass_.dense());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectral_decompose: eigensolver failed to converge");
  eigvals_ = es.eigenvalues();
  eigvecs_ = es.eigenvectors();  // already M-orthonormal, eigenvalues ascending
  has_spectrum_ = true;
}

const VectorXd& FemSystem::eigenvalues() const {
  if (!has_spectrum_) throw std::logic_error("FemSystem: spectrum not computed");
  return eigvals_;
}

const MatrixXd& FemSystem::eigenvectors() const {
  if (!has_spectrum_) throw std::logic_error("FemSystem: spectrum not computed");
  return eigvecs_;
}

VectorXd FemSystem::to_spectral(const VectorXd& v) const {
  return eigenvectors().transpose() * mass_.apply(v);
}

VectorXd FemSystem::from_spectral(const VectorXd& vhat) const {
  return eigenvectors() * vhat;
}

VectorXd FemSystem::apply_spectral_function(const std::function<double(double)>& f,
                                            const VectorXd& v) const {
  VectorXd vhat = to_spectral(v);
  for (int j = 0; j < vhat.size(); ++j) {
    const double fj = f(eigvals_[j]);
    if (!std::isfinite(fj))
      throw std::domain_error("apply_spectral_function: non-finite value at eigenvalue " +
                              std::to_string(eigvals_[j]));
    vhat[j] *= fj;
  }
  return from_spectral(vhat);
}

VectorXd FemSystem::l2_project(const VectorXd& load) const {
  if (load.size() != dof()) throw std::invalid_argument("l2_project: load size mismatch");
  return mass_factor_.solve(load);
}

VectorXd FemSystem::ritz_project(const VectorXd& stiffness_load) const {
  if (stiffness_load.size() != dof())
    throw std::invalid_argument("ritz_project: load size mismatch");
  return stiffness_factor_.solve(stiffness_load);
}

double FemSystem::h_alpha_norm(const VectorXd& v, double alpha) const {
  if (alpha == 0.0) return std::sqrt(std::max(mass_.quadform(v), 0.0));
  if (alpha == 1.0) return std::sqrt(std::max(stiffness_.quadform(v), 0.0));
  VectorXd vhat = to_spectral(v);
  double q = 0.0;
  for (int j = 0; j < vhat.size(); ++j) q += std::pow(eigvals_[j], alpha) * vhat[j] * vhat[j];
  return std::sqrt(q);
}

VectorXd sin_mode_load(const Mesh1D& mesh, int j) {
  if (j < 1) throw std::invalid_argument("sin_mode_load: j must be positive");
  const int n = mesh.dof();
  const double h = mesh.h;
  const double half = std::sin(0.5 * j * M_PI * h);
  const double scale = 4.0 * half * half / (j * j * M_PI * M_PI * h);
  VectorXd b(n);
  for (int i = 0; i < n; ++i) b[i] = scale * std::sin(j * M_PI * mesh.interior_nodes[i]);
  return b;
}

VectorXd quadrature_load(const Mesh1D& mesh, const std::function<double(double)>& g) {
  // 4-point Gauss-Legendre nodes/weights on [-1,1].
  static const double gx[4] = {-0.8611363115940526, -0.3399810435848563,
                               0.3399810435848563, 0.8611363115940526};
  static const double gw[4] = {0.3478548451374538, 0.6521451548625461,
                               0.6521451548625461, 0.3478548451374538};
  const int n = mesh.dof();
  const double h = mesh.h;
  VectorXd b = VectorXd::Zero(n);
  for (int e = 0; e < mesh.n_cells; ++e) {
    const double x0 = e * h;
    for (int q = 0; q < 4; ++q) {
      const double x = x0 + 0.5 * h * (gx[q] + 1.0);
      const double w = 0.5 * h * gw[q];
      const double t = (x - x0) / h;  // local coordinate in [0,1]
      // left node of element e is interior node e-1, right node is e
      if (e >= 1) b[e - 1] += w * g(x) * (1.0 - t);
      if (e < n) b[e] += w * g(x) * t;
    }
  }
  return b;
}

VectorXd indicator_load(const Mesh1D& mesh, double a, double b) {
  // int_a^b phi_i dx via the exact piecewise-linear antiderivative on each element.
  const int n = mesh.dof();
  const double h = mesh.h;
  VectorXd load = VectorXd::Zero(n);
  auto clip = [](double x, double lo, double hi) { return std::min(std::max(x, lo), hi); };
  for (int e = 0; e < mesh.n_cells; ++e) {
    const double x0 = e * h, x1 = x0 + h;
    const double lo = clip(a, x0, x1), hi = clip(b, x0, x1);
    if (hi <= lo) continue;
    // int t dt and int (1-t) dt over the local image of [lo,hi]
    const double t0 = (lo - x0) / h, t1 = (hi - x0) / h;
    const double up = h * 0.5 * (t1 * t1 - t0 * t0);            // against rising hat
    const double down = h * ((t1 - t0) - 0.5 * (t1 * t1 - t0 * t0));  // against falling hat
    if (e >= 1) load[e - 1] += down;
    if (e < n) load[e] += up;
  }
  return load;
}

double uniform_mesh_eigenvalue(const Mesh1D& mesh, int j) {
  const double h = mesh.h;
  const double c = std::cos(j * M_PI * h);
  return 6.0 / (h * h) * (1.0 - c) / (2.0 + c);
}

}  // namespace swave
