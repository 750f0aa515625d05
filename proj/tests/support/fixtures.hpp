#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oracles.hpp"
#include "relinc/majorization.hpp"
#include "relinc/quantum.hpp"
#include "relinc/rng.hpp"

namespace fixture {

/// Qutrit triple with X(B2,B0) = T3 T2 T1 X(B1,B0) for three known
/// T-transforms on the pairs (0,1), (1,2), (0,2); B0 is computational.
struct PlantedTriple {
  relinc::Basis b0;
  relinc::Basis b1;
  relinc::Basis b2;
  std::vector<relinc::TTransform> factors;
  relinc::RealMatrix m;
};

inline PlantedTriple planted_qutrit_triple(std::uint64_t seed) {
  relinc::CounterRng rng(seed);
  const relinc::Basis b0 = relinc::Basis::computational(3);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const relinc::Basis b1 = relinc::haar_random_basis(3, rng());
    std::vector<relinc::TTransform> ts{{0, 1, 0.6 + 0.3 * rng.uniform()},
                                       {1, 2, 0.6 + 0.3 * rng.uniform()},
                                       {0, 2, 0.6 + 0.3 * rng.uniform()}};
    const relinc::RealMatrix m = relinc::ttransform_product(ts, 3);
    const relinc::RealMatrix y = m * relinc::overlap_matrix(b1, b0).matrix();
    if (auto b2 = oracle::qutrit_basis_with_overlap(y)) return {b0, b1, *b2, ts, m};
  }
  throw std::runtime_error("planted_qutrit_triple: no unistochastic target found");
}

}  // namespace fixture
