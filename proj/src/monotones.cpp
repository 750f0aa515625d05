#include "relinc/monotones.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "relinc/error.hpp"
#include "relinc/rng.hpp"

namespace relinc {

namespace functionals {

ConvexFunctional negative_shannon() {
  return {"negative_shannon",
          [](const RealVector& x) {
            double s = 0.0;
            for (double v : x)
              if (v > 0.0) s += v * std::log2(v);
            return s;
          },
          true, false};
}

ConvexFunctional power_sum(double alpha) {
  if (!(alpha >= 1.0)) throw InvalidArgument("power_sum: alpha must be >= 1 for convexity");
  return {"power_sum_" + std::to_string(alpha).substr(0, 3),
          [alpha](const RealVector& x) {
            double s = 0.0;
            for (double v : x) s += std::pow(std::abs(v), alpha);
            return s;
          },
          true, alpha == 1.0};
}

ConvexFunctional max_component() {
  return {"max_component", [](const RealVector& x) { return x.maxCoeff(); }, true, true};
}

ConvexFunctional euclidean_norm() {
  return {"euclidean_norm", [](const RealVector& x) { return x.norm(); }, true, true};
}

ConvexFunctional max_linear(int d, int count, std::uint64_t seed) {
  if (d < 1 || count < 1) throw InvalidArgument("max_linear: d and count must be positive");
  CounterRng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RealMatrix c(count, d);
  for (int k = 0; k < count; ++k)
    for (int j = 0; j < d; ++j) c(k, j) = normal(rng);
  return {"max_linear", [c](const RealVector& x) { return (c * x).maxCoeff(); }, true, true};
}

std::vector<ConvexFunctional> builtins(int d, std::uint64_t seed) {
  return {negative_shannon(), power_sum(1.5), power_sum(2.0), power_sum(3.0),
          max_component(),    euclidean_norm(), max_linear(d, 2 * d + 1, seed)};
}

std::vector<ConvexFunctional> homogeneous_builtins(int d, std::uint64_t seed) {
  std::vector<ConvexFunctional> out;
  for (auto& f : builtins(d, seed))
    if (f.homogeneous) out.push_back(std::move(f));
  return out;
}

}  // namespace functionals

namespace {

RealVector random_nonnegative(int d, CounterRng& rng) {
  RealVector x(d);
  const double scale = 2.0 * rng.uniform();
  for (int i = 0; i < d; ++i) x[i] = scale * rng.uniform();
  return x;
}

}  // namespace

bool check_midpoint_convexity(const ConvexFunctional& phi, int d, std::uint64_t seed, int trials, double slack) {
  CounterRng rng(seed);
  for (int k = 0; k < trials; ++k) {
    const RealVector x = random_nonnegative(d, rng);
    const RealVector y = random_nonnegative(d, rng);
    if (phi(0.5 * (x + y)) > 0.5 * (phi(x) + phi(y)) + slack) return false;
  }
  return true;
}

bool check_homogeneity(const ConvexFunctional& phi, int d, std::uint64_t seed, int trials, double rel_tol) {
  CounterRng rng(seed);
  for (int k = 0; k < trials; ++k) {
    const RealVector x = random_nonnegative(d, rng);
    const double lambda = 0.01 + 10.0 * rng.uniform();
    const double lhs = phi(lambda * x);
    const double rhs = lambda * phi(x);
    if (std::abs(lhs - rhs) > rel_tol * std::max(1.0, std::abs(rhs))) return false;
  }
  return true;
}

double f_phi(const OverlapMatrix& x, const ConvexFunctional& phi) {
  if (!phi.convex) throw InvalidArgument("f_phi: functional '" + phi.name + "' is not convex");
  double s = 0.0;
  for (int i = 0; i < x.rows(); ++i) s += phi(x.row(i));
  return s;
}

double g_psi(const OverlapMatrix& x, const ConvexFunctional& psi) {
  if (!psi.homogeneous) throw InvalidArgument("g_psi: functional '" + psi.name + "' is not homogeneous");
  return f_phi(x, psi);
}

double rel_entropy_coherence(const DensityState& state, const Basis& b) {
  if (state.dim() != b.dim()) throw DimensionMismatch("rel_entropy_coherence: dimension mismatch");
  const ComplexMatrix& u = b.unitary();
  const RealVector dephased = (u.adjoint() * state.matrix() * u).diagonal().real();
  const double s_rho = state.diagonal_probabilities()
                           ? linalg::shannon_entropy(state.diagonal_probabilities()->values())
                           : linalg::von_neumann_entropy(state.matrix());
  return std::max(0.0, linalg::shannon_entropy(dephased) - s_rho);
}

double two_coherence(const DensityState& state, const Basis& b) {
  if (state.dim() != b.dim()) throw DimensionMismatch("two_coherence: dimension mismatch");
  const ComplexMatrix& u = b.unitary();
  const ComplexMatrix r = u.adjoint() * state.matrix() * u;
  double s = 0.0;
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    for (Eigen::Index j = 0; j < r.cols(); ++j)
      if (i != j) s += std::norm(r(i, j));
  return s;
}

// --- subentropy --------------------------------------------------------------

namespace {

using Wide = boost::multiprecision::cpp_bin_float_100;

// -sum_k p_k^n / prod_{j != k} (p_k - p_j) * log2 p_k over distinct positive p.
double subentropy_distinct(const std::vector<double>& p) {
  const std::size_t n = p.size();
  if (n <= 1) return 0.0;
  const Wide ln2 = boost::multiprecision::log(Wide(2));
  Wide total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const Wide pk = p[k];
    Wide coeff = boost::multiprecision::pow(pk, static_cast<int>(n));
    for (std::size_t j = 0; j < n; ++j)
      if (j != k) coeff /= pk - Wide(p[j]);
    total -= coeff * boost::multiprecision::log(pk) / ln2;
  }
  return static_cast<double>(total);
}

}  // namespace

double subentropy(const RealVector& p, double delta_deg) {
  std::vector<double> q;
  for (double v : p)
    if (v > 0.0) q.push_back(v);
  std::sort(q.begin(), q.end());
  if (q.size() <= 1) return 0.0;

  bool degenerate = false;
  for (std::size_t k = 1; k < q.size(); ++k)
    if (q[k] - q[k - 1] < delta_deg) degenerate = true;
  if (!degenerate) return subentropy_distinct(q);

  // Spread each cluster of near-equal values symmetrically by +-offsets and
  // average the two evaluations; first-order error cancels.
  std::vector<double> plus = q;
  std::vector<double> minus = q;
  std::size_t start = 0;
  while (start < q.size()) {
    std::size_t end = start + 1;
    while (end < q.size() && q[end] - q[end - 1] < delta_deg) ++end;
    const std::size_t m = end - start;
    if (m > 1) {
      const double step = std::min(2.0 * delta_deg, q[start] / static_cast<double>(m));
      for (std::size_t r = 0; r < m; ++r) {
        const double off = (static_cast<double>(r) - 0.5 * static_cast<double>(m - 1)) * step;
        plus[start + r] += off;
        minus[start + r] -= off;
      }
    }
    start = end;
  }
  return 0.5 * (subentropy_distinct(plus) + subentropy_distinct(minus));
}

double subentropy(const ProbabilityVector& p, double delta_deg) { return subentropy(p.values(), delta_deg); }

// --- coherence averages --------------------------------------------------------

double coherence_kappa(CoherenceKind kind, int d) {
  if (d < 1) throw InvalidArgument("coherence_kappa: d must be positive");
  return kind == CoherenceKind::RelEntropy ? 1.0 / d : 1.0 / (static_cast<double>(d) * (d + 1));
}

double coherence_row_functional(CoherenceKind kind, const RealVector& row) {
  if (kind == CoherenceKind::RelEntropy) return subentropy(row);
  // sum_i (1/d - p_i^2)
  return 1.0 - row.squaredNorm();
}

CoherenceAverage coherence_average(const Basis& b, const Basis& b0, CoherenceKind kind, const AverageMethod& method) {
  if (b.dim() != b0.dim()) throw DimensionMismatch("coherence_average: dimension mismatch");
  const int d = b.dim();
  if (std::holds_alternative<Analytic>(method)) {
    const OverlapMatrix x = overlap_matrix(b, b0);
    double s = 0.0;
    for (int i = 0; i < x.rows(); ++i) s += coherence_row_functional(kind, x.row(i));
    return {coherence_kappa(kind, d) * s, 0.0, 0};
  }
  const auto& mc = std::get<MonteCarlo>(method);
  if (mc.samples < 100) throw InvalidArgument("coherence_average: Monte Carlo needs at least 100 samples");
  const CounterRng root(mc.seed);
  std::exponential_distribution<double> expo(1.0);
  double mean = 0.0;
  double m2 = 0.0;
  for (int s = 0; s < mc.samples; ++s) {
    CounterRng rng = root.split(static_cast<std::uint64_t>(s));
    RealVector w(d);
    for (int i = 0; i < d; ++i) w[i] = expo(rng);
    w /= w.sum();
    const DensityState rho = DensityState::diagonal(b0, ProbabilityVector::from(std::move(w)));
    const double c = kind == CoherenceKind::RelEntropy ? rel_entropy_coherence(rho, b) : two_coherence(rho, b);
    const double delta = c - mean;
    mean += delta / (s + 1);
    m2 += delta * (c - mean);
  }
  const double var = mc.samples > 1 ? m2 / (mc.samples - 1) : 0.0;
  return {mean, std::sqrt(var / mc.samples), mc.samples};
}

}  // namespace relinc
