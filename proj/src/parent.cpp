#include "relinc/parent.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "relinc/error.hpp"
#include "relinc/lp.hpp"
#include "relinc/rng.hpp"

namespace relinc {

namespace {

// Accepts M as |G| x |F| or already padded to n x n.
RealMatrix padded_post_processing(const Povm& f, const Povm& g, const RealMatrix& m, const char* who) {
  const int n = std::max(f.size(), g.size());
  const bool rows_ok = m.rows() == g.size() || m.rows() == n;
  const bool cols_ok = m.cols() == f.size() || m.cols() == n;
  if (!rows_ok || !cols_ok) throw DimensionMismatch(std::string(who) + ": M has the wrong shape");
  RealMatrix out = RealMatrix::Zero(n, n);
  out.topLeftCorner(m.rows(), m.cols()) = m;
  return out;
}

}  // namespace

double parent_residual(const Povm& f, const Povm& g, const RealMatrix& m_in) {
  const int n = std::max(f.size(), g.size());
  const RealMatrix m = padded_post_processing(f, g, m_in, "parent_residual");
  const Povm fp = f.padded(n);
  const Povm gp = g.padded(n);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    ComplexMatrix s = gp.effect(i);
    for (int j = 0; j < n; ++j) s -= m(i, j) * fp.effect(j);
    worst = std::max(worst, s.cwiseAbs().maxCoeff());
  }
  return worst;
}

ParentDecision is_parent(const Povm& f, const Povm& g, const Tolerances& tol) {
  if (f.dim() != g.dim()) throw DimensionMismatch("is_parent: POVM dimensions differ");
  const int d = f.dim();
  const int n = std::max(f.size(), g.size());
  const Povm fp = f.padded(n);
  const Povm gp = g.padded(n);

  // Variables M_ij at i * n + j. Rows: for each effect i and entry (r, c),
  // real and imaginary parts of sum_j M_ij F_j(r, c) = G_i(r, c); then the
  // column sums of M.
  const int per_effect = 2 * d * d;
  lp::LinearProgram prog;
  prog.a_eq = RealMatrix::Zero(n * per_effect + n, n * n);
  prog.b_eq = RealVector::Zero(n * per_effect + n);
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        const int row = i * per_effect + 2 * (r * d + c);
        for (int j = 0; j < n; ++j) {
          prog.a_eq(row, i * n + j) = fp.effect(j)(r, c).real();
          prog.a_eq(row + 1, i * n + j) = fp.effect(j)(r, c).imag();
        }
        prog.b_eq[row] = gp.effect(i)(r, c).real();
        prog.b_eq[row + 1] = gp.effect(i)(r, c).imag();
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    const int row = n * per_effect + j;
    for (int i = 0; i < n; ++i) prog.a_eq(row, i * n + j) = 1.0;
    prog.b_eq[row] = 1.0;
  }

  lp::SolverOptions opts;
  opts.tol = tol.lp;
  opts.margin = tol.lp_margin;
  const lp::FeasibilityResult res = lp::solve_feasibility(prog, opts);
  ParentDecision out;
  if (!res.feasible()) return out;

  RealMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = std::max(0.0, res.solution[i * n + j]);
  out.residual = parent_residual(f, g, m);
  const double col_defect = (m.colwise().sum().array() - 1.0).abs().maxCoeff();
  if (out.residual > tol.lp || col_defect > tol.lp) {
    std::ostringstream os;
    os << "is_parent: post-processing failed re-verification (residual " << out.residual << ")";
    throw Indeterminate(os.str());
  }
  out.is_parent = true;
  out.m = std::move(m);
  return out;
}

std::vector<double> relative_consistency(const Povm& f, const Povm& g, const RealMatrix& m_in,
                                         const std::vector<Basis>& b0_samples) {
  const int n = std::max(f.size(), g.size());
  const RealMatrix m = padded_post_processing(f, g, m_in, "relative_consistency");
  std::vector<double> out;
  out.reserve(b0_samples.size());
  for (const auto& b0 : b0_samples) {
    const RealMatrix xf = overlap_matrix_povm(f, b0).padded(n).matrix();
    const RealMatrix xg = overlap_matrix_povm(g, b0).padded(n).matrix();
    out.push_back((xg - m * xf).cwiseAbs().maxCoeff());
  }
  return out;
}

bool parent_implies_relative(const Povm& f, const Povm& g, const RealMatrix& m, const std::vector<Basis>& b0_samples,
                             double tol) {
  const auto res = relative_consistency(f, g, m, b0_samples);
  return std::all_of(res.begin(), res.end(), [tol](double r) { return r <= tol; });
}

std::vector<Basis> default_b0_samples(int d, int n_haar, std::uint64_t seed) {
  std::vector<Basis> out;
  const CounterRng root(seed);
  for (int k = 0; k < n_haar; ++k) out.push_back(haar_random_basis(d, root.split(static_cast<std::uint64_t>(k))()));
  out.push_back(Basis::computational(d));
  out.push_back(fourier_basis(d));
  return out;
}

}  // namespace relinc
