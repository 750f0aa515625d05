#include "relinc/quantum.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "relinc/error.hpp"
#include "relinc/rng.hpp"

namespace relinc {

namespace {

std::string fmt_violation(const char* type, const char* invariant, double value, double tol) {
  std::ostringstream os;
  os.precision(3);
  os << type << ": invariant '" << invariant << "' violated (deviation " << std::scientific << value
     << " > tolerance " << tol << ")";
  return os.str();
}

void require_square(const ComplexMatrix& m, const char* type) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw InvariantViolation(std::string(type) + ": invariant 'square matrix' violated (got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")");
  }
}

void require_finite(const ComplexMatrix& m, const char* type) {
  if (!linalg::all_finite(m)) {
    throw InvariantViolation(std::string(type) + ": invariant 'finite entries' violated");
  }
}

ComplexMatrix gaussian_matrix(int rows, int cols, CounterRng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

// --- ProbabilityVector -------------------------------------------------------

ProbabilityVector ProbabilityVector::from(RealVector p, const Tolerances& tol) {
  if (p.size() < 1) throw InvariantViolation("ProbabilityVector: invariant 'nonempty' violated");
  if (!p.allFinite()) throw InvariantViolation("ProbabilityVector: invariant 'finite entries' violated");
  const double total = p.sum();
  if (std::abs(total - 1.0) > tol.prob) {
    throw InvariantViolation(fmt_violation("ProbabilityVector", "sum p_i = 1", std::abs(total - 1.0), tol.prob));
  }
  if (p.minCoeff() < -tol.prob) {
    throw InvariantViolation(fmt_violation("ProbabilityVector", "p_i >= 0", -p.minCoeff(), tol.prob));
  }
  return ProbabilityVector(std::move(p));
}

ProbabilityVector ProbabilityVector::uniform(int n) {
  if (n < 1) throw InvalidArgument("ProbabilityVector::uniform: n must be positive");
  return ProbabilityVector(RealVector::Constant(n, 1.0 / n));
}

ProbabilityVector ProbabilityVector::point_mass(int n, int index) {
  if (n < 1 || index < 0 || index >= n) throw InvalidArgument("ProbabilityVector::point_mass: bad index");
  RealVector p = RealVector::Zero(n);
  p[index] = 1.0;
  return ProbabilityVector(std::move(p));
}

// --- Basis --------------------------------------------------------------------

Basis Basis::from_unitary(ComplexMatrix u, const Tolerances& tol) {
  require_square(u, "Basis");
  require_finite(u, "Basis");
  const double defect = linalg::unitarity_defect(u);
  if (defect > tol.unitary) {
    throw InvariantViolation(fmt_violation("Basis", "u^dagger u = I", defect, tol.unitary));
  }
  // sum_j P_j = u u^dagger; for square u this follows from the check above up
  // to round-off, but it is the invariant the projectors rely on.
  const ComplexMatrix completeness =
      u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.rows());
  const double cdefect = completeness.cwiseAbs().maxCoeff();
  if (cdefect > tol.unitary) {
    throw InvariantViolation(fmt_violation("Basis", "sum_j P_j = I", cdefect, tol.unitary));
  }
  return Basis(std::move(u));
}

Basis Basis::computational(int d) {
  if (d < 1) throw InvalidArgument("Basis::computational: d must be positive");
  return Basis(ComplexMatrix::Identity(d, d));
}

ComplexMatrix Basis::projector(int j) const {
  const ComplexVector k = u_.col(j);
  return k * k.adjoint();
}

// --- Povm -------------------------------------------------------------------

Povm Povm::from_effects(std::vector<ComplexMatrix> effects, const Tolerances& tol) {
  if (effects.empty()) throw InvariantViolation("Povm: invariant 'at least one effect' violated");
  const Eigen::Index d = effects.front().rows();
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (const auto& e : effects) {
    require_square(e, "Povm");
    require_finite(e, "Povm");
    if (e.rows() != d) throw InvariantViolation("Povm: invariant 'equal effect dimensions' violated");
    const double herm = linalg::hermiticity_defect(e);
    if (herm > tol.herm) throw InvariantViolation(fmt_violation("Povm", "effect Hermitian", herm, tol.herm));
    const double min_eig = linalg::min_eigenvalue_hermitian(e);
    if (min_eig < -tol.psd) throw InvariantViolation(fmt_violation("Povm", "effect PSD", -min_eig, tol.psd));
    total += e;
  }
  const double sum_defect = (total - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (sum_defect > tol.herm) {
    throw InvariantViolation(fmt_violation("Povm", "sum_i F_i = I", sum_defect, tol.herm));
  }
  return Povm(static_cast<int>(d), std::move(effects));
}

Povm Povm::from_basis(const Basis& b) {
  std::vector<ComplexMatrix> effects;
  effects.reserve(b.dim());
  for (int j = 0; j < b.dim(); ++j) effects.push_back(b.projector(j));
  return Povm(b.dim(), std::move(effects));
}

Povm Povm::padded(int n) const {
  std::vector<ComplexMatrix> effects = effects_;
  while (static_cast<int>(effects.size()) < n) effects.push_back(ComplexMatrix::Zero(dim_, dim_));
  return Povm(dim_, std::move(effects));
}

// --- DensityState -------------------------------------------------------------

DensityState DensityState::from_matrix(ComplexMatrix rho, const Tolerances& tol) {
  require_square(rho, "DensityState");
  require_finite(rho, "DensityState");
  const double herm = linalg::hermiticity_defect(rho);
  if (herm > tol.herm) throw InvariantViolation(fmt_violation("DensityState", "Hermitian", herm, tol.herm));
  const double tr = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (tr > tol.herm) throw InvariantViolation(fmt_violation("DensityState", "trace = 1", tr, tol.herm));
  const double min_eig = linalg::min_eigenvalue_hermitian(rho);
  if (min_eig < -tol.psd) throw InvariantViolation(fmt_violation("DensityState", "PSD", -min_eig, tol.psd));
  return DensityState(std::move(rho), std::nullopt);
}

DensityState DensityState::diagonal(const Basis& b, const ProbabilityVector& p) {
  if (p.size() != b.dim()) throw DimensionMismatch("DensityState::diagonal: p length differs from basis dimension");
  const ComplexMatrix& u = b.unitary();
  ComplexMatrix rho = u * p.values().cast<Complex>().asDiagonal() * u.adjoint();
  return DensityState(std::move(rho), p);
}

DensityState DensityState::pure(const ComplexVector& ket) {
  const double n = ket.norm();
  if (!(n > 0.0)) throw InvalidArgument("DensityState::pure: zero vector");
  const ComplexVector k = ket / n;
  return DensityState(k * k.adjoint(), std::nullopt);
}

DensityState DensityState::maximally_mixed(int d) {
  if (d < 1) throw InvalidArgument("DensityState::maximally_mixed: d must be positive");
  ComplexMatrix rho = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  return DensityState(std::move(rho), std::nullopt);
}

// --- OverlapMatrix -----------------------------------------------------------

const char* to_string(Stochasticity s) {
  return s == Stochasticity::Bistochastic ? "bistochastic" : "column-stochastic";
}

OverlapMatrix OverlapMatrix::from_matrix(RealMatrix x, Stochasticity s, const Tolerances& tol) {
  if (x.rows() < 1 || x.cols() < 1) throw InvariantViolation("OverlapMatrix: invariant 'nonempty' violated");
  if (!x.allFinite()) throw InvariantViolation("OverlapMatrix: invariant 'finite entries' violated");
  const double lo = -x.minCoeff();
  if (lo > tol.prob) throw InvariantViolation(fmt_violation("OverlapMatrix", "X_ij >= 0", lo, tol.prob));
  const double hi = x.maxCoeff() - 1.0;
  if (hi > tol.prob) throw InvariantViolation(fmt_violation("OverlapMatrix", "X_ij <= 1", hi, tol.prob));
  const double col_defect = (x.colwise().sum().array() - 1.0).abs().maxCoeff();
  if (col_defect > tol.prob) {
    throw InvariantViolation(fmt_violation("OverlapMatrix", "column sums = 1", col_defect, tol.prob));
  }
  if (s == Stochasticity::Bistochastic) {
    if (x.rows() != x.cols()) throw InvariantViolation("OverlapMatrix: invariant 'bistochastic is square' violated");
    const double row_defect = (x.rowwise().sum().array() - 1.0).abs().maxCoeff();
    if (row_defect > tol.prob) {
      throw InvariantViolation(fmt_violation("OverlapMatrix", "row sums = 1", row_defect, tol.prob));
    }
  }
  return OverlapMatrix(std::move(x), s);
}

OverlapMatrix OverlapMatrix::transposed() const {
  if (s_ != Stochasticity::Bistochastic) {
    throw InvalidArgument("OverlapMatrix::transposed: only bistochastic matrices stay valid under transposition");
  }
  return OverlapMatrix(x_.transpose(), s_);
}

OverlapMatrix OverlapMatrix::padded(int n) const {
  if (n <= rows()) return *this;
  RealMatrix x = RealMatrix::Zero(n, cols());
  x.topRows(rows()) = x_;
  return OverlapMatrix(std::move(x), Stochasticity::ColumnStochastic);
}

// --- operations --------------------------------------------------------------

OverlapMatrix overlap_matrix(const Basis& b1, const Basis& b0) {
  if (b1.dim() != b0.dim()) throw DimensionMismatch("overlap_matrix: bases have different dimensions");
  // <i1|j0> = (u1^dagger u0)_ij
  const ComplexMatrix g = b1.unitary().adjoint() * b0.unitary();
  RealMatrix x = g.cwiseAbs2();
  return OverlapMatrix::from_matrix(std::move(x), Stochasticity::Bistochastic);
}

OverlapMatrix overlap_matrix_povm(const Povm& f, const Basis& b0) {
  if (f.dim() != b0.dim()) throw DimensionMismatch("overlap_matrix_povm: POVM and basis dimensions differ");
  const int d = b0.dim();
  RealMatrix x(f.size(), d);
  for (int i = 0; i < f.size(); ++i) {
    for (int j = 0; j < d; ++j) {
      const ComplexVector k = b0.ket(j);
      x(i, j) = (k.adjoint() * f.effect(i) * k)(0, 0).real();
    }
  }
  return OverlapMatrix::from_matrix(std::move(x), Stochasticity::ColumnStochastic);
}

DensityState dephase(const DensityState& state, const Basis& b) {
  if (state.dim() != b.dim()) throw DimensionMismatch("dephase: state and basis dimensions differ");
  const ComplexMatrix& u = b.unitary();
  const ComplexMatrix in_basis = u.adjoint() * state.matrix() * u;
  const ComplexMatrix diag = in_basis.diagonal().real().cast<Complex>().asDiagonal();
  return DensityState::from_matrix(u * diag * u.adjoint());
}

ProbabilityVector measure_distribution(const DensityState& state, const Basis& b) {
  if (state.dim() != b.dim()) throw DimensionMismatch("measure_distribution: state and basis dimensions differ");
  const ComplexMatrix& u = b.unitary();
  RealVector p = (u.adjoint() * state.matrix() * u).diagonal().real();
  return ProbabilityVector::from(std::move(p));
}

ProbabilityVector measure_distribution(const DensityState& state, const Povm& f) {
  if (state.dim() != f.dim()) throw DimensionMismatch("measure_distribution: state and POVM dimensions differ");
  RealVector p(f.size());
  for (int i = 0; i < f.size(); ++i) p[i] = (f.effect(i) * state.matrix()).trace().real();
  return ProbabilityVector::from(std::move(p));
}

Basis fourier_basis(int d) {
  if (d < 2) throw InvalidArgument("fourier_basis: d must be at least 2");
  ComplexMatrix u(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      // reduce jk mod d before scaling to keep the phase argument small
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % d) / d;
      u(j, k) = std::polar(norm, angle);
    }
  }
  return Basis::from_unitary(std::move(u));
}

Basis qubit_rotated_basis(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  ComplexMatrix u(2, 2);
  u << c, -s, s, c;
  return Basis::from_unitary(std::move(u));
}

Basis haar_random_basis(int d, std::uint64_t seed) {
  if (d < 2) throw InvalidArgument("haar_random_basis: d must be at least 2");
  CounterRng rng(seed);
  const ComplexMatrix g = gaussian_matrix(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Q diag(r_jj / |r_jj|) makes the decomposition unique, which is what
  // turns the Gaussian measure into the Haar measure.
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double a = std::abs(rjj);
    if (a > 0.0) q.col(j) *= rjj / a;
  }
  return Basis::from_unitary(std::move(q));
}

Povm random_povm(int d, int n_effects, std::uint64_t seed) {
  if (d < 1) throw InvalidArgument("random_povm: d must be positive");
  if (n_effects < 1) throw InvalidArgument("random_povm: n_effects must be positive");
  constexpr int kMaxAttempts = 8;
  const CounterRng root(seed);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    CounterRng rng = root.split(static_cast<std::uint64_t>(attempt));
    std::vector<ComplexMatrix> a;
    ComplexMatrix s = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < n_effects; ++k) {
      const ComplexMatrix g = gaussian_matrix(d, d, rng);
      a.push_back(g * g.adjoint());
      s += a.back();
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s);
    const RealVector ev = es.eigenvalues();
    if (ev.minCoeff() <= 1e-10 * ev.maxCoeff()) continue;
    const ComplexMatrix v = es.eigenvectors();
    const ComplexMatrix s_inv_sqrt =
        v * ev.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() * v.adjoint();
    std::vector<ComplexMatrix> effects;
    for (const auto& ak : a) {
      ComplexMatrix f = s_inv_sqrt * ak * s_inv_sqrt;
      effects.push_back(0.5 * (f + f.adjoint()));
    }
    return Povm::from_effects(std::move(effects));
  }
  throw Error("random_povm: normalization matrix singular after bounded retries");
}

DensityState random_density_state(int d, std::uint64_t seed) {
  if (d < 1) throw InvalidArgument("random_density_state: d must be positive");
  CounterRng rng(seed);
  const ComplexMatrix g = gaussian_matrix(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityState::from_matrix(std::move(rho));
}

ProbabilityVector random_simplex_point(int d, std::uint64_t seed) {
  if (d < 1) throw InvalidArgument("random_simplex_point: d must be positive");
  CounterRng rng(seed);
  std::exponential_distribution<double> expo(1.0);
  RealVector p(d);
  for (int i = 0; i < d; ++i) p[i] = expo(rng);
  p /= p.sum();
  return ProbabilityVector::from(std::move(p));
}

}  // namespace relinc
