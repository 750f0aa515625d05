#pragma once

#include <complex>

#include <Eigen/Dense>

namespace relinc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

namespace linalg {

bool all_finite(const ComplexMatrix& m);
bool all_finite(const RealMatrix& m);

/// max |m - m^dagger|
double hermiticity_defect(const ComplexMatrix& m);

/// max |u^dagger u - I|
double unitarity_defect(const ComplexMatrix& u);

/// Eigenvalues of the Hermitian part of m, ascending.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

double min_eigenvalue_hermitian(const ComplexMatrix& m);

/// Sum of absolute eigenvalues of the Hermitian part.
double trace_norm_hermitian(const ComplexMatrix& m);

/// Von Neumann entropy in bits, with 0 log 0 = 0.
double von_neumann_entropy(const ComplexMatrix& rho);

/// Shannon entropy in bits, with 0 log 0 = 0. Negative round-off is ignored.
double shannon_entropy(const RealVector& p);

/// Multiply each column by a phase so its first non-negligible entry is real
/// and positive.
ComplexMatrix canonical_column_phases(const ComplexMatrix& u);

/// rho -> u rho u^dagger
ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho);

}  // namespace linalg
}  // namespace relinc
