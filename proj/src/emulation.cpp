#include "relinc/emulation.hpp"

#include "relinc/error.hpp"

namespace relinc {

ComplexMatrix dephase_operator(const ComplexMatrix& op, const Basis& b) {
  if (op.rows() != b.dim() || op.cols() != b.dim()) throw DimensionMismatch("dephase_operator: dimension mismatch");
  const ComplexMatrix& u = b.unitary();
  const ComplexVector diag = (u.adjoint() * op * u).diagonal();
  return u * diag.asDiagonal() * u.adjoint();
}

DephasingSequence build_emulation(const Basis& b0, const Basis& b1, const Basis& b2, double tol,
                                  const Tolerances& tols) {
  if (b0.dim() != b1.dim() || b0.dim() != b2.dim()) throw DimensionMismatch("build_emulation: dimension mismatch");
  const int d = b0.dim();
  const OverlapMatrix x1 = overlap_matrix(b1, b0);
  const OverlapMatrix x2 = overlap_matrix(b2, b0);
  const MajorizationDecision dec = matrix_majorizes(x1, x2, Stochasticity::Bistochastic, tols);
  if (!dec.holds) throw InvalidArgument("build_emulation: B1 does not majorize B2 relative to B0");

  std::vector<TTransform> factors = ttransform_decompose(*dec.m, tol);

  // With W = u1 u0^dagger and U^(a) = u0 R_a u0^dagger, the auxiliary basis
  // W U^(1)...U^(a) (B0) has unitary u1 R_1 ... R_a.
  std::vector<Basis> aux;
  ComplexMatrix frame = b1.unitary();
  for (const auto& t : factors) {
    frame = frame * unistochastic_lift(t, d);
    aux.push_back(Basis::from_unitary(frame, tols));
  }

  // U maps ket j of the last basis to ket j of B2, phases canonicalized.
  const ComplexMatrix last = linalg::canonical_column_phases(aux.empty() ? b1.unitary() : aux.back().unitary());
  const ComplexMatrix target = linalg::canonical_column_phases(b2.unitary());
  ComplexMatrix u = target * last.adjoint();

  return DephasingSequence{b0, b1, b2, std::move(aux), std::move(u), *dec.m, std::move(factors)};
}

double emulation_residual(const DephasingSequence& seq) {
  const int d = seq.b0.dim();
  for (const auto& b : seq.aux_bases) {
    if (b.dim() != d) throw DimensionMismatch("emulation_residual: auxiliary basis dimension mismatch");
  }
  if (seq.b1.dim() != d || seq.b2.dim() != d || seq.u.rows() != d || seq.u.cols() != d) {
    throw DimensionMismatch("emulation_residual: dimension mismatch");
  }
  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    const ComplexMatrix p = dephase_operator(seq.b0.projector(i), seq.b0);
    const ComplexMatrix lhs = dephase_operator(p, seq.b2);
    ComplexMatrix rhs = dephase_operator(p, seq.b1);
    for (const auto& b : seq.aux_bases) rhs = dephase_operator(rhs, b);
    rhs = linalg::conjugate(seq.u, rhs);
    worst = std::max(worst, linalg::trace_norm_hermitian(lhs - rhs));
  }
  return worst;
}

RealMatrix chained_overlap(const DephasingSequence& seq) {
  RealMatrix chain = overlap_matrix(seq.b1, seq.b0).matrix();
  const Basis* prev = &seq.b1;
  for (const auto& b : seq.aux_bases) {
    chain = overlap_matrix(b, *prev).matrix() * chain;
    prev = &b;
  }
  return chain;
}

}  // namespace relinc
