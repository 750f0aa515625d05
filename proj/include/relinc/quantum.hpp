#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "relinc/linalg.hpp"
#include "relinc/tolerances.hpp"

namespace relinc {

/// A probability distribution over measurement outcomes.
class ProbabilityVector {
 public:
  /// Validates sum-to-one and nonnegativity within `tol.prob`.
  static ProbabilityVector from(RealVector p, const Tolerances& tol = kDefaultTolerances);
  static ProbabilityVector uniform(int n);
  static ProbabilityVector point_mass(int n, int index);

  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int i) const { return p_[i]; }
  const RealVector& values() const { return p_; }

 private:
  explicit ProbabilityVector(RealVector p) : p_(std::move(p)) {}
  RealVector p_;
};

/// Orthonormal measurement basis. Column j of the unitary is the ket |j>.
///
/// Two bases describing the same set of projectors may differ by column
/// phases and ordering; compare bases through their overlap matrix, not
/// through their unitaries.
class Basis {
 public:
  static Basis from_unitary(ComplexMatrix u, const Tolerances& tol = kDefaultTolerances);
  static Basis computational(int d);

  int dim() const { return static_cast<int>(u_.rows()); }
  const ComplexMatrix& unitary() const { return u_; }
  ComplexVector ket(int j) const { return u_.col(j); }
  ComplexMatrix projector(int j) const;

 private:
  explicit Basis(ComplexMatrix u) : u_(std::move(u)) {}
  ComplexMatrix u_;
};

/// Generalized measurement: PSD effects summing to the identity.
class Povm {
 public:
  static Povm from_effects(std::vector<ComplexMatrix> effects,
                           const Tolerances& tol = kDefaultTolerances);
  /// The rank-1 projectors of a basis, in column order.
  static Povm from_basis(const Basis& b);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(effects_.size()); }
  const ComplexMatrix& effect(int i) const { return effects_[i]; }
  const std::vector<ComplexMatrix>& effects() const { return effects_; }

  /// Copy with zero effects appended until there are `n` outcomes.
  Povm padded(int n) const;

 private:
  Povm(int dim, std::vector<ComplexMatrix> effects) : dim_(dim), effects_(std::move(effects)) {}
  int dim_;
  std::vector<ComplexMatrix> effects_;
};

class DensityState {
 public:
  static DensityState from_matrix(ComplexMatrix rho, const Tolerances& tol = kDefaultTolerances);
  /// rho = sum_i p_i P_i for the projectors of `b`; remembers p.
  static DensityState diagonal(const Basis& b, const ProbabilityVector& p);
  static DensityState pure(const ComplexVector& ket);
  static DensityState maximally_mixed(int d);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const ComplexMatrix& matrix() const { return rho_; }
  /// Present only for states built with `diagonal`.
  const std::optional<ProbabilityVector>& diagonal_probabilities() const { return diag_; }

 private:
  DensityState(ComplexMatrix rho, std::optional<ProbabilityVector> diag)
      : rho_(std::move(rho)), diag_(std::move(diag)) {}
  ComplexMatrix rho_;
  std::optional<ProbabilityVector> diag_;
};

enum class Stochasticity { Bistochastic, ColumnStochastic };

const char* to_string(Stochasticity s);

/// X_ij = Tr(E_i P_j) for measurement effects E_i against reference
/// projectors P_j. Rows index outcomes, columns index the reference basis.
class OverlapMatrix {
 public:
  static OverlapMatrix from_matrix(RealMatrix x, Stochasticity s,
                                   const Tolerances& tol = kDefaultTolerances);

  int rows() const { return static_cast<int>(x_.rows()); }
  int cols() const { return static_cast<int>(x_.cols()); }
  const RealMatrix& matrix() const { return x_; }
  Stochasticity stochasticity() const { return s_; }
  RealVector row(int i) const { return x_.row(i).transpose(); }
  RealVector col(int j) const { return x_.col(j); }

  OverlapMatrix transposed() const;
  /// Zero rows appended until there are `n` rows; stays ColumnStochastic
  /// unless no padding was needed.
  OverlapMatrix padded(int n) const;

 private:
  OverlapMatrix(RealMatrix x, Stochasticity s) : x_(std::move(x)), s_(s) {}
  RealMatrix x_;
  Stochasticity s_;
};

OverlapMatrix overlap_matrix(const Basis& b1, const Basis& b0);
OverlapMatrix overlap_matrix_povm(const Povm& f, const Basis& b0);

/// sum_i P_i rho P_i
DensityState dephase(const DensityState& state, const Basis& b);

ProbabilityVector measure_distribution(const DensityState& state, const Basis& b);
ProbabilityVector measure_distribution(const DensityState& state, const Povm& f);

/// u_jk = exp(2 pi i jk / d) / sqrt(d)
Basis fourier_basis(int d);

/// Qubit basis whose first ket is cos(theta/2)|0> + sin(theta/2)|1>, i.e. the
/// computational basis rotated by Bloch angle `theta` about the y axis.
Basis qubit_rotated_basis(double theta);

Basis haar_random_basis(int d, std::uint64_t seed);
Povm random_povm(int d, int n_effects, std::uint64_t seed);
/// Full-rank mixed state rho = G G^dagger / Tr(...), G complex Gaussian.
DensityState random_density_state(int d, std::uint64_t seed);
/// Point drawn from the flat Dirichlet distribution on the simplex.
ProbabilityVector random_simplex_point(int d, std::uint64_t seed);

}  // namespace relinc
