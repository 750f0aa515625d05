#pragma once

#include <optional>
#include <vector>

#include "relinc/lp.hpp"
#include "relinc/quantum.hpp"

namespace relinc {

/// phi(x) = max_k (<c_k, x> + b_k). Homogeneous when every offset is zero.
class PiecewiseLinearConvex {
 public:
  PiecewiseLinearConvex(RealMatrix slopes, RealVector offsets);

  double operator()(const RealVector& x) const;
  /// sum_i phi(row_i(x))
  double sum_over_rows(const RealMatrix& x) const;

  int pieces() const { return static_cast<int>(slopes_.rows()); }
  int dim() const { return static_cast<int>(slopes_.cols()); }
  bool homogeneous() const { return homogeneous_; }
  const RealMatrix& slopes() const { return slopes_; }
  const RealVector& offsets() const { return offsets_; }

 private:
  RealMatrix slopes_;  // one piece per row
  RealVector offsets_;
  bool homogeneous_;
};

struct MajorizationDecision {
  bool holds = false;
  Stochasticity cls = Stochasticity::Bistochastic;
  /// holds: X2 = M X1 with M in `cls`.
  std::optional<RealMatrix> m;
  /// !holds: sum phi(rows X2) - sum phi(rows X1) >= margin.
  std::optional<PiecewiseLinearConvex> witness;
  double separation = 0.0;
};

/// Descending partial sums of p dominate those of q and the totals agree.
bool vector_majorizes(const RealVector& p, const RealVector& q, double tol = 1e-9);
bool vector_majorizes(const ProbabilityVector& p, const ProbabilityVector& q, double tol = 1e-9);

/// Decides whether X2 = M X1 for some M of class `cls`. Row counts may differ;
/// the shorter matrix is padded with zero rows.
MajorizationDecision matrix_majorizes(const OverlapMatrix& x1, const OverlapMatrix& x2, Stochasticity cls,
                                      const Tolerances& tol = kDefaultTolerances,
                                      std::ostream* trace = nullptr);

/// Separating functional assembled from a Farkas certificate of the
/// majorization LP: one piece per row of M, slopes from the duals of the
/// entrywise equalities, offsets from the row-sum duals (zero for the
/// column-stochastic class). Throws if the separation is below `tol.lp_margin`.
PiecewiseLinearConvex witness_from_certificate(const RealVector& certificate, const RealMatrix& x1,
                                               const RealMatrix& x2, Stochasticity cls,
                                               const Tolerances& tol = kDefaultTolerances);

/// Acute angle between the Bloch-ball axes of two qubit bases, in [0, pi/2].
double qubit_bloch_angle(const Basis& b1, const Basis& b0);

/// Identity except the block [[t, 1-t], [1-t, t]] on coordinates (i, j).
struct TTransform {
  int i = 0;
  int j = 1;
  double t = 1.0;

  RealMatrix matrix(int d) const;
};

/// Product T_k ... T_1 for the list (T_1, ..., T_k).
RealMatrix ttransform_product(const std::vector<TTransform>& ts, int d);

/// Finds (T_1, ..., T_k) with T_k ... T_1 within `tol` of M (or of a
/// strictly positive perturbation of M when the exact search stalls).
/// Throws DecompositionFailure when the bounded search finds nothing.
std::vector<TTransform> ttransform_decompose(const RealMatrix& m, double tol = 1e-9);

/// Real rotation whose entrywise squared moduli reproduce `t.matrix(d)`.
ComplexMatrix unistochastic_lift(const TTransform& t, int d);

}  // namespace relinc
