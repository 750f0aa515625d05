#pragma once

#include <optional>
#include <string>

#include "relinc/quantum.hpp"

namespace relinc {

/// alpha = 0, 1 and +infinity are handled by their limits; bits throughout.
double renyi_entropy(const RealVector& p, double alpha);
double renyi_entropy(const ProbabilityVector& p, double alpha);

/// -log2 max_ij X_ij
double mu_bound(const OverlapMatrix& x);

/// Entropic uncertainty check for one state and a pair of bases B1, B2.
/// Fluctuation quantities refer to states diagonal in B2 measured in B1.
struct UncertaintyReport {
  std::string label;
  double alpha = 1.0;
  double beta = 1.0;
  double entropy_b1 = 0.0;
  double entropy_b2 = 0.0;
  double lhs_entropy_sum = 0.0;
  double state_entropy = 0.0;
  double mu_bound = 0.0;
  /// Only at alpha = beta = 1: S(rho) + mu_bound.
  std::optional<double> coles_bound;
  double q_value = 0.0;
  double q_bound = 0.0;

  bool mu_violated(double slack = 1e-9) const { return lhs_entropy_sum < mu_bound - slack; }
  bool coles_violated(double slack = 1e-9) const { return coles_bound && lhs_entropy_sum < *coles_bound - slack; }
  bool q_violated(double slack = 1e-9) const { return q_value > q_bound + slack; }
};

/// Requires alpha, beta >= 1/2 with 1/alpha + 1/beta = 2 (1/inf = 0).
UncertaintyReport check_entropic_bounds(const DensityState& state, const Basis& b1, const Basis& b2, double alpha,
                                        double beta);

/// max_i lambda_max(diag(x_i) - x_i x_i^T), x_i the columns of X(B1, B0):
/// the largest variance over unit-norm observables diagonal in B1 for pure
/// states of B0.
double q_exact(const Basis& b1, const Basis& b0);

/// sup over unit-norm observables diagonal in B1 of sum_i Var_i, evaluated
/// as lambda_max(sum_i (diag(x_i) - x_i x_i^T)).
double variance_sum_sup(const Basis& b1, const Basis& b0);

/// 1 - lambda_min(X X^T); requires a square X.
double q_bound(const OverlapMatrix& x);

}  // namespace relinc
