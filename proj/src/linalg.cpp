#include "relinc/linalg.hpp"

#include <cmath>

namespace relinc::linalg {

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

bool all_finite(const RealMatrix& m) { return m.allFinite(); }

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const ComplexMatrix& u) {
  if (u.size() == 0) return 0.0;
  const ComplexMatrix g = u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols());
  return g.cwiseAbs().maxCoeff();
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double min_eigenvalue_hermitian(const ComplexMatrix& m) { return hermitian_eigenvalues(m).minCoeff(); }

double trace_norm_hermitian(const ComplexMatrix& m) { return hermitian_eigenvalues(m).cwiseAbs().sum(); }

double von_neumann_entropy(const ComplexMatrix& rho) { return shannon_entropy(hermitian_eigenvalues(rho)); }

double shannon_entropy(const RealVector& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

ComplexMatrix canonical_column_phases(const ComplexMatrix& u) {
  ComplexMatrix out = u;
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    const double scale = u.col(j).cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      const double a = std::abs(u(i, j));
      if (a > 1e-12 * scale) {
        out.col(j) *= std::conj(u(i, j)) / a;
        break;
      }
    }
  }
  return out;
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho) { return u * rho * u.adjoint(); }

}  // namespace relinc::linalg
