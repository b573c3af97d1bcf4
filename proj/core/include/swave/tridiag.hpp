#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace swave {

/// Symmetric tridiagonal matrix stored as its diagonal and off-diagonal.
struct SymTridiag {
  Eigen::VectorXd diag;  // length n
  Eigen::VectorXd off;   // length n-1

  int size() const { return static_cast<int>(diag.size()); }

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const {
    const int n = size();
    Eigen::VectorXd r = diag.cwiseProduct(v);
    for (int i = 0; i + 1 < n; ++i) {
      r[i] += off[i] * v[i + 1];
      r[i + 1] += off[i] * v[i];
    }
    return r;
  }

  double quadform(const Eigen::VectorXd& v) const {
    const int n = size();
    double q = 0.0;
    for (int i = 0; i < n; ++i) q += diag[i] * v[i] * v[i];
    for (int i = 0; i + 1 < n; ++i) q += 2.0 * off[i] * v[i] * v[i + 1];
    return q;
  }

  Eigen::MatrixXd dense() const {
    const int n = size();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) a(i, i) = diag[i];
    for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = off[i];
    return a;
  }
};

/// LDL^T factorization of a symmetric positive-definite tridiagonal matrix.
class TridiagFactor {
 public:
  TridiagFactor() = default;

  explicit TridiagFactor(const SymTridiag& a) { compute(a); }

  /// Factor diag(a) + shift * diag(b) (b may be empty for no shift term).
  TridiagFactor(const SymTridiag& a, double shift, const SymTridiag& b) {
    SymTridiag c{a.diag + shift * b.diag, a.off + shift * b.off};
    compute(c);
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
    const int n = static_cast<int>(d_.size());
    Eigen::VectorXd x = rhs;
    for (int i = 1; i < n; ++i) x[i] -= l_[i - 1] * x[i - 1];
    for (int i = 0; i < n; ++i) x[i] /= d_[i];
    for (int i = n - 2; i >= 0; --i) x[i] -= l_[i] * x[i + 1];
    return x;
  }

 private:
  void compute(const SymTridiag& a) {
    const int n = a.size();
    d_.resize(n);
    l_.resize(n > 0 ? n - 1 : 0);
    d_[0] = a.diag[0];
    for (int i = 0; i + 1 < n; ++i) {
      if (d_[i] <= 0.0) throw std::runtime_error("tridiagonal matrix not positive definite");
      l_[i] = a.off[i] / d_[i];
      d_[i + 1] = a.diag[i + 1] - l_[i] * a.off[i];
    }
    if (n > 0 && d_[n - 1] <= 0.0)
      throw std::runtime_error("tridiagonal matrix not positive definite");
  }

  Eigen::VectorXd d_;  // pivots
  Eigen::VectorXd l_;  // unit lower-bidiagonal multipliers
};

}  // namespace swave
