#pragma once

#include <vector>

#include "relinc/majorization.hpp"
#include "relinc/quantum.hpp"

namespace relinc {

/// A non-selective B1 measurement followed by dephasings in `aux_bases`
/// (in order) and the rotation `u`, emulating a B2 measurement on states
/// diagonal in B0.
struct DephasingSequence {
  Basis b0;
  Basis b1;
  Basis b2;
  std::vector<Basis> aux_bases;
  ComplexMatrix u;
  /// Post-processing matrix from the LP and its T-transform factors
  /// (T_1 first), one per auxiliary basis.
  RealMatrix m;
  std::vector<TTransform> factors;
};

/// Requires B1 to majorize B2 relative to B0 (bistochastic class); throws
/// InvalidArgument otherwise. `tol` bounds the T-transform approximation.
DephasingSequence build_emulation(const Basis& b0, const Basis& b1, const Basis& b2, double tol = 1e-9,
                                  const Tolerances& tols = kDefaultTolerances);

/// max_i || D_B2 D_B0 (P_i) - U [prod D_aux] D_B1 D_B0 (P_i) U^dagger ||_1
/// over the projectors P_i of B0.
double emulation_residual(const DephasingSequence& seq);

/// X(B'_k, B'_{k-1}) ... X(B'_1, B1) X(B1, B0), the probability-level chain.
RealMatrix chained_overlap(const DephasingSequence& seq);

/// sum_i P_i rho P_i on a raw operator.
ComplexMatrix dephase_operator(const ComplexMatrix& op, const Basis& b);

}  // namespace relinc
