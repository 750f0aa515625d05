#pragma once

#include <optional>
#include <ostream>

#include "relinc/linalg.hpp"

namespace relinc::lp {

/// Equality-constrained feasibility problem  A x = b, x >= 0.
struct LinearProgram {
  RealMatrix a_eq;
  RealVector b_eq;
  /// Optional cost vector; when set, a phase-2 pass minimizes c^T x over the
  /// feasible set after feasibility is established.
  std::optional<RealVector> objective;

  int n_vars() const { return static_cast<int>(a_eq.cols()); }
  int n_constraints() const { return static_cast<int>(a_eq.rows()); }
};

enum class Status { Feasible, Infeasible };

struct FeasibilityResult {
  Status status;
  /// Feasible: x >= 0 with ||A x - b||_inf <= tol.
  RealVector solution;
  /// Infeasible: y with y^T A <= tol componentwise, y^T b >= margin, ||y||_inf = 1.
  RealVector certificate;
  double phase1_objective = 0.0;
  int iterations = 0;

  bool feasible() const { return status == Status::Feasible; }
};

struct SolverOptions {
  double tol = 1e-8;
  double margin = 1e-8;
  int max_iterations = 100000;
  /// When set, every tableau is written here before each pivot.
  std::ostream* trace = nullptr;
};

/// Two-phase dense simplex with Bland's rule.
///
/// Throws relinc::Indeterminate when the iteration cap is hit, when the
/// phase-1 optimum falls in the band (tol, 10 tol), or when either branch
/// fails its numerical re-verification.
FeasibilityResult solve_feasibility(const LinearProgram& lp, const SolverOptions& opts = {});

/// ||A x - b||_inf, computed directly from the constraint data.
double constraint_residual(const RealMatrix& a, const RealVector& b, const RealVector& x);

/// Largest entry of y^T A (should be <= 0 for a Farkas certificate).
double certificate_slack(const RealMatrix& a, const RealVector& y);

}  // namespace relinc::lp
