#include "relinc/uncertainty.hpp"

#include <cmath>
#include <limits>

#include "relinc/error.hpp"

namespace relinc {

double renyi_entropy(const RealVector& p, double alpha) {
  if (!(alpha >= 0.0)) throw InvalidArgument("renyi_entropy: alpha must be nonnegative");
  if (std::isinf(alpha)) return -std::log2(p.maxCoeff());
  if (alpha == 0.0) {
    int support = 0;
    for (double v : p)
      if (v > 0.0) ++support;
    return std::log2(static_cast<double>(support));
  }
  if (alpha == 1.0) return linalg::shannon_entropy(p);
  double s = 0.0;
  for (double v : p)
    if (v > 0.0) s += std::pow(v, alpha);
  return std::log2(s) / (1.0 - alpha);
}

double renyi_entropy(const ProbabilityVector& p, double alpha) { return renyi_entropy(p.values(), alpha); }

double mu_bound(const OverlapMatrix& x) { return -std::log2(x.matrix().maxCoeff()); }

UncertaintyReport check_entropic_bounds(const DensityState& state, const Basis& b1, const Basis& b2, double alpha,
                                        double beta) {
  if (state.dim() != b1.dim() || state.dim() != b2.dim()) {
    throw DimensionMismatch("check_entropic_bounds: dimension mismatch");
  }
  const auto inv = [](double a) { return std::isinf(a) ? 0.0 : 1.0 / a; };
  if (!(alpha >= 0.5 && beta >= 0.5) || std::abs(inv(alpha) + inv(beta) - 2.0) > 1e-9) {
    throw InvalidArgument("check_entropic_bounds: need alpha, beta >= 1/2 with 1/alpha + 1/beta = 2");
  }
  UncertaintyReport r;
  r.label = "B1 vs B2";
  r.alpha = alpha;
  r.beta = beta;
  r.entropy_b1 = renyi_entropy(measure_distribution(state, b1), alpha);
  r.entropy_b2 = renyi_entropy(measure_distribution(state, b2), beta);
  r.lhs_entropy_sum = r.entropy_b1 + r.entropy_b2;
  r.state_entropy = linalg::von_neumann_entropy(state.matrix());
  const OverlapMatrix x21 = overlap_matrix(b2, b1);
  r.mu_bound = mu_bound(x21);
  if (alpha == 1.0 && beta == 1.0) r.coles_bound = r.state_entropy + r.mu_bound;
  r.q_value = q_exact(b1, b2);
  r.q_bound = q_bound(overlap_matrix(b1, b2));
  return r;
}

namespace {

RealMatrix column_variance_matrix(const RealVector& x) {
  RealMatrix c = -x * x.transpose();
  c.diagonal() += x;
  return c;
}

double lambda_max(const RealMatrix& m) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

}  // namespace

double q_exact(const Basis& b1, const Basis& b0) {
  const OverlapMatrix x = overlap_matrix(b1, b0);
  double worst = 0.0;
  for (int i = 0; i < x.cols(); ++i) worst = std::max(worst, lambda_max(column_variance_matrix(x.col(i))));
  return worst;
}

double variance_sum_sup(const Basis& b1, const Basis& b0) {
  const OverlapMatrix x = overlap_matrix(b1, b0);
  RealMatrix total = RealMatrix::Zero(x.rows(), x.rows());
  for (int i = 0; i < x.cols(); ++i) total += column_variance_matrix(x.col(i));
  return lambda_max(total);
}

double q_bound(const OverlapMatrix& x) {
  if (x.rows() != x.cols()) throw InvalidArgument("q_bound: overlap matrix must be square");
  const RealMatrix g = x.matrix() * x.matrix().transpose();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(g, Eigen::EigenvaluesOnly);
  return std::clamp(1.0 - es.eigenvalues().minCoeff(), 0.0, 1.0);
}

}  // namespace relinc
