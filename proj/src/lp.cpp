#include "relinc/lp.hpp"

#include <cmath>

#include <Eigen/LU>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "relinc/error.hpp"

namespace relinc::lp {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-11;

// Dense tableau. Columns: [structural (n) | artificial (m) | rhs].
// Row m holds reduced costs; its rhs entry holds minus the objective value.
class Tableau {
 public:
  Tableau(const RealMatrix& a, const RealVector& b, std::vector<double> sign)
      : m_(static_cast<int>(a.rows())), n_(static_cast<int>(a.cols())),
        t_(RealMatrix::Zero(m_ + 1, n_ + m_ + 1)), basis_(m_), sign_(std::move(sign)) {
    for (int i = 0; i < m_; ++i) {
      t_.row(i).head(n_) = sign_[i] * a.row(i);
      t_(i, n_ + i) = 1.0;
      t_(i, rhs_col()) = sign_[i] * b[i];
      basis_[i] = n_ + i;
    }
    original_ = t_.topRows(m_);
  }

  int rows() const { return m_; }
  int structural() const { return n_; }
  int rhs_col() const { return n_ + m_; }
  bool is_artificial(int col) const { return col >= n_; }
  int basic(int row) const { return basis_[row]; }
  double at(int r, int c) const { return t_(r, c); }
  double rhs(int r) const { return t_(r, rhs_col()); }
  double cost(int c) const { return t_(m_, c); }
  double objective() const { return -t_(m_, rhs_col()); }
  double sign(int r) const { return sign_[r]; }

  // Reduced-cost row for cost vector c (length n + m): r = c - c_B^T B^-1 A.
  void set_costs(const RealVector& c) {
    costs_ = c;
    t_.row(m_).setZero();
    t_.row(m_).head(n_ + m_) = c.transpose();
    for (int i = 0; i < m_; ++i) {
      const double cb = c[basis_[i]];
      if (cb != 0.0) t_.row(m_) -= cb * t_.row(i);
    }
  }

  void pivot(int r, int c) {
    const double p = t_(r, c);
    t_.row(r) /= p;
    for (int i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[r] = c;
  }

  // Recomputes B^-1 [A | I | b] and the cost row from the original data for
  // the current basis, discarding drift accumulated over many pivots.
  // Returns false (tableau untouched) if the basis matrix is singular.
  bool refactor() {
    RealMatrix basis_cols(m_, m_);
    for (int i = 0; i < m_; ++i) basis_cols.col(i) = original_.col(basis_[i]);
    const Eigen::FullPivLU<RealMatrix> lu(basis_cols);
    if (!lu.isInvertible()) return false;
    t_.topRows(m_) = lu.solve(original_);
    for (int i = 0; i < m_; ++i) {
      t_.row(i) = t_.row(i).unaryExpr([](double x) { return std::abs(x) < 1e-14 ? 0.0 : x; });
      t_(i, basis_[i]) = 1.0;
    }
    set_costs(costs_);
    return true;
  }

  void dump(std::ostream& os, int iteration, const char* phase) const {
    os << "# " << phase << " iteration " << iteration << " basis:";
    for (int b : basis_) os << ' ' << b;
    os << '\n' << std::setprecision(6) << t_ << '\n';
  }

 private:
  int m_;
  int n_;
  RealMatrix t_;
  std::vector<int> basis_;
  std::vector<double> sign_;
  RealMatrix original_;
  RealVector costs_;
};

// Bland: lowest-index improving column; ratio test ties go to the lowest
// basic variable index. Returns false when optimal.
bool bland_step(Tableau& tab, bool allow_artificial, int& iterations, const SolverOptions& opts,
                const char* phase) {
  int enter = -1;
  const int ncols = tab.structural() + tab.rows();
  for (int c = 0; c < ncols; ++c) {
    if (!allow_artificial && tab.is_artificial(c)) continue;
    if (tab.cost(c) < -kCostEps) {
      enter = c;
      break;
    }
  }
  if (enter < 0) return false;

  int leave = -1;
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < tab.rows(); ++r) {
    const double a = tab.at(r, enter);
    if (a <= kPivotEps) continue;
    const double ratio = std::max(0.0, tab.rhs(r)) / a;
    if (ratio < best - 1e-14 ||
        (std::abs(ratio - best) <= 1e-14 && leave >= 0 && tab.basic(r) < tab.basic(leave))) {
      best = ratio;
      leave = r;
    }
  }
  if (leave < 0) return false;  // unbounded direction; cannot happen in phase 1

  if (opts.trace) tab.dump(*opts.trace, iterations, phase);
  tab.pivot(leave, enter);
  if (++iterations > opts.max_iterations) {
    throw Indeterminate("solve_feasibility: iteration cap of " + std::to_string(opts.max_iterations) +
                        " exceeded");
  }
  return true;
}

void run_to_optimum(Tableau& tab, bool allow_artificial, int& iterations, const SolverOptions& opts,
                    const char* phase) {
  constexpr int kRefactorEvery = 50;
  constexpr int kMaxRefactors = 20;
  for (int refactors = 0;; ++refactors) {
    int since = 0;
    while (bland_step(tab, allow_artificial, iterations, opts, phase)) {
      if (++since % kRefactorEvery == 0) tab.refactor();
    }
    // Confirm optimality on a freshly factored tableau; resume if drift hid
    // an improving column.
    if (since == 0 || refactors == kMaxRefactors || !tab.refactor()) return;
    if (!bland_step(tab, allow_artificial, iterations, opts, phase)) return;
  }
}

RealVector extract_primal(const Tableau& tab) {
  RealVector x = RealVector::Zero(tab.structural());
  for (int r = 0; r < tab.rows(); ++r) {
    const int b = tab.basic(r);
    if (!tab.is_artificial(b)) x[b] = std::max(0.0, tab.rhs(r));
  }
  return x;
}

// Pivot zero-level artificials out of the basis where a structural column
// allows it; rows where none does are redundant and left alone.
void expel_artificials(Tableau& tab) {
  for (int r = 0; r < tab.rows(); ++r) {
    if (!tab.is_artificial(tab.basic(r))) continue;
    int best = -1;
    double best_abs = 1e-9;
    for (int c = 0; c < tab.structural(); ++c) {
      const double a = std::abs(tab.at(r, c));
      if (a > best_abs) {
        best_abs = a;
        best = c;
      }
    }
    if (best >= 0) tab.pivot(r, best);
  }
}

}  // namespace

double constraint_residual(const RealMatrix& a, const RealVector& b, const RealVector& x) {
  if (a.rows() == 0) return 0.0;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    worst = std::max(worst, std::abs(s - b[i]));
  }
  return worst;
}

double certificate_slack(const RealMatrix& a, const RealVector& y) {
  if (a.cols() == 0) return -std::numeric_limits<double>::infinity();
  double worst = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) s += y[i] * a(i, j);
    worst = std::max(worst, s);
  }
  return worst;
}

FeasibilityResult solve_feasibility(const LinearProgram& lp, const SolverOptions& opts) {
  const int m = lp.n_constraints();
  const int n = lp.n_vars();
  if (lp.b_eq.size() != m) throw InvalidArgument("solve_feasibility: b_eq length does not match A_eq rows");
  if (!lp.a_eq.allFinite() || !lp.b_eq.allFinite()) throw InvalidArgument("solve_feasibility: non-finite data");
  if (lp.objective && lp.objective->size() != n) {
    throw InvalidArgument("solve_feasibility: objective length does not match variable count");
  }

  FeasibilityResult result{Status::Feasible, RealVector::Zero(n), RealVector(), 0.0, 0};
  if (m == 0) return result;

  std::vector<double> sign(m);
  for (int i = 0; i < m; ++i) sign[i] = lp.b_eq[i] < 0.0 ? -1.0 : 1.0;
  Tableau tab(lp.a_eq, lp.b_eq, sign);

  RealVector phase1_cost = RealVector::Zero(n + m);
  phase1_cost.tail(m).setOnes();
  tab.set_costs(phase1_cost);
  run_to_optimum(tab, true, result.iterations, opts, "phase1");

  const double w = std::max(0.0, tab.objective());
  result.phase1_objective = w;

  if (w <= opts.tol) {
    if (lp.objective) {
      expel_artificials(tab);
      RealVector c = RealVector::Zero(n + m);
      c.head(n) = *lp.objective;
      tab.set_costs(c);
      run_to_optimum(tab, false, result.iterations, opts, "phase2");
    }
    result.solution = extract_primal(tab);
    const double res = constraint_residual(lp.a_eq, lp.b_eq, result.solution);
    if (res > opts.tol) {
      std::ostringstream os;
      os << "solve_feasibility: feasible point failed re-verification (residual " << res << ")";
      throw Indeterminate(os.str());
    }
    return result;
  }
  if (w < 10.0 * opts.tol) {
    std::ostringstream os;
    os << "solve_feasibility: phase-1 optimum " << w << " inside the near-feasibility band";
    throw Indeterminate(os.str());
  }

  // Dual of phase 1: reduced cost of artificial i is 1 - y_i.
  RealVector y(m);
  for (int i = 0; i < m; ++i) y[i] = sign[i] * (1.0 - tab.cost(n + i));
  const double scale = y.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) throw Indeterminate("solve_feasibility: degenerate Farkas certificate");
  y /= scale;
  const double slack = certificate_slack(lp.a_eq, y);
  const double gain = y.dot(lp.b_eq);
  if (slack > opts.tol || gain < opts.margin) {
    std::ostringstream os;
    os << "solve_feasibility: Farkas certificate failed re-verification (max y^T A = " << slack
       << ", y^T b = " << gain << ")";
    throw Indeterminate(os.str());
  }
  result.status = Status::Infeasible;
  result.certificate = std::move(y);
  result.solution = RealVector();
  return result;
}

}  // namespace relinc::lp
