#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "relinc/quantum.hpp"

namespace relinc {

/// A scalar function on R^d with declared convexity and (positive)
/// homogeneity. Evaluators are expected on nonnegative arguments; the
/// Shannon-based ones use 0 log 0 = 0.
struct ConvexFunctional {
  std::string name;
  std::function<double(const RealVector&)> eval;
  bool convex = true;
  bool homogeneous = false;

  double operator()(const RealVector& x) const { return eval(x); }
};

namespace functionals {

/// sum_i x_i log2 x_i
ConvexFunctional negative_shannon();
/// sum_i |x_i|^alpha, alpha >= 1
ConvexFunctional power_sum(double alpha);
ConvexFunctional max_component();
ConvexFunctional euclidean_norm();
/// max over `count` fixed Gaussian linear functionals on R^d.
ConvexFunctional max_linear(int d, int count, std::uint64_t seed);

/// Every builtin convex functional for dimension d.
std::vector<ConvexFunctional> builtins(int d, std::uint64_t seed = 7);
/// The homogeneous subset of `builtins`.
std::vector<ConvexFunctional> homogeneous_builtins(int d, std::uint64_t seed = 7);

}  // namespace functionals

/// Randomized midpoint-convexity test on nonnegative vectors in R^d.
bool check_midpoint_convexity(const ConvexFunctional& phi, int d, std::uint64_t seed, int trials = 1000,
                              double slack = 1e-9);
/// phi(lambda x) = lambda phi(x) for random lambda > 0.
bool check_homogeneity(const ConvexFunctional& phi, int d, std::uint64_t seed, int trials = 1000,
                       double rel_tol = 1e-9);

/// sum_i phi(row_i(X)); rejects functionals not flagged convex.
double f_phi(const OverlapMatrix& x, const ConvexFunctional& phi);
/// f_phi restricted to homogeneous functionals (the column-stochastic family).
double g_psi(const OverlapMatrix& x, const ConvexFunctional& psi);

/// S(dephase(rho, b)) - S(rho) in bits.
double rel_entropy_coherence(const DensityState& state, const Basis& b);
/// sum_{i != j} |rho_ij|^2 with rho written in basis b.
double two_coherence(const DensityState& state, const Basis& b);

/// Jozsa-Robb-Wootters subentropy in bits. Ties among nonzero components
/// closer than `delta_deg` are resolved by symmetric perturbation.
double subentropy(const RealVector& p, double delta_deg = 1e-6);
double subentropy(const ProbabilityVector& p, double delta_deg = 1e-6);

enum class CoherenceKind { RelEntropy, TwoCoherence };

struct Analytic {};
struct MonteCarlo {
  int samples = 100000;
  std::uint64_t seed = 0;
};
using AverageMethod = std::variant<Analytic, MonteCarlo>;

struct CoherenceAverage {
  double value = 0.0;
  double std_error = 0.0;  // zero for the analytic method
  int samples = 0;
};

/// Normalization of the flat simplex measure in the closed forms:
/// average = kappa_d * sum_i phi(row_i(X)) with phi the subentropy
/// (kappa_d = 1/d) or phi(p) = sum_i (1/d - p_i^2) (kappa_d = 1/(d(d+1))).
double coherence_kappa(CoherenceKind kind, int d);

/// Per-row functional underlying the closed form (before kappa).
double coherence_row_functional(CoherenceKind kind, const RealVector& row);

/// Average coherence over B of states diagonal in B0 with flat-Dirichlet
/// weights. Monte Carlo evaluates the operator-level coherence per sample.
CoherenceAverage coherence_average(const Basis& b, const Basis& b0, CoherenceKind kind, const AverageMethod& method);

}  // namespace relinc
