#pragma once

namespace relinc {

/// Numerical tolerances shared across modules. Defaults suit double precision
/// with dimensions up to a few dozen.
struct Tolerances {
  double unitary = 1e-9;
  double herm = 1e-9;
  double psd = 1e-9;
  double prob = 1e-9;
  double lp = 1e-8;         // primal residual / phase-1 optimum
  double lp_margin = 1e-8;  // minimum Farkas margin after normalization
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace relinc
