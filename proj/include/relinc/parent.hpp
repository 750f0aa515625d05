#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "relinc/quantum.hpp"

namespace relinc {

struct ParentDecision {
  bool is_parent = false;
  /// Column-stochastic M with G_i = sum_j M_ij F_j (both padded to a common
  /// number of outcomes).
  std::optional<RealMatrix> m;
  double residual = 0.0;
};

/// max_i || G_i - sum_j M_ij F_j ||_max after padding. M may be given as
/// |G| x |F| or padded to the common cardinality.
double parent_residual(const Povm& f, const Povm& g, const RealMatrix& m);

ParentDecision is_parent(const Povm& f, const Povm& g, const Tolerances& tol = kDefaultTolerances);

/// ||X(G, B0) - M X(F, B0)||_inf for each sampled B0.
std::vector<double> relative_consistency(const Povm& f, const Povm& g, const RealMatrix& m,
                                         const std::vector<Basis>& b0_samples);

/// True when X(G, B0) = M X(F, B0) within `tol` for every sampled B0.
bool parent_implies_relative(const Povm& f, const Povm& g, const RealMatrix& m, const std::vector<Basis>& b0_samples,
                             double tol = 1e-8);

/// `n_haar` Haar-random bases followed by the computational and Fourier bases.
std::vector<Basis> default_b0_samples(int d, int n_haar, std::uint64_t seed);

}  // namespace relinc
