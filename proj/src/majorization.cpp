#include "relinc/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relinc/error.hpp"

namespace relinc {

// --- PiecewiseLinearConvex ---------------------------------------------------

PiecewiseLinearConvex::PiecewiseLinearConvex(RealMatrix slopes, RealVector offsets)
    : slopes_(std::move(slopes)), offsets_(std::move(offsets)) {
  if (slopes_.rows() < 1) throw InvalidArgument("PiecewiseLinearConvex: needs at least one piece");
  if (offsets_.size() != slopes_.rows()) throw InvalidArgument("PiecewiseLinearConvex: offset count mismatch");
  homogeneous_ = offsets_.isZero(0.0);
}

double PiecewiseLinearConvex::operator()(const RealVector& x) const {
  if (x.size() != slopes_.cols()) throw DimensionMismatch("PiecewiseLinearConvex: argument length mismatch");
  return (slopes_ * x + offsets_).maxCoeff();
}

double PiecewiseLinearConvex::sum_over_rows(const RealMatrix& x) const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) s += (*this)(x.row(i).transpose());
  return s;
}

// --- vector majorization -----------------------------------------------------

bool vector_majorizes(const RealVector& p, const RealVector& q, double tol) {
  if (p.size() != q.size()) throw DimensionMismatch("vector_majorizes: lengths differ");
  std::vector<double> a(p.data(), p.data() + p.size());
  std::vector<double> b(q.data(), q.data() + q.size());
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sa += a[k];
    sb += b[k];
    if (sa < sb - tol) return false;
  }
  return std::abs(sa - sb) <= tol;
}

bool vector_majorizes(const ProbabilityVector& p, const ProbabilityVector& q, double tol) {
  return vector_majorizes(p.values(), q.values(), tol);
}

// --- matrix majorization -----------------------------------------------------

namespace {

// Variables M_ik at index i * n + k. Constraint rows, in order:
//   (i, j): sum_k M_ik X1_kj = X2_ij        n * d rows
//   k:      sum_i M_ik = 1                   n rows
//   i:      sum_k M_ik = 1  (bistochastic)   n rows
lp::LinearProgram majorization_lp(const RealMatrix& x1, const RealMatrix& x2, Stochasticity cls) {
  const int n = static_cast<int>(x1.rows());
  const int d = static_cast<int>(x1.cols());
  const int rows = n * d + n + (cls == Stochasticity::Bistochastic ? n : 0);
  lp::LinearProgram prog;
  prog.a_eq = RealMatrix::Zero(rows, n * n);
  prog.b_eq = RealVector::Zero(rows);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      const int r = i * d + j;
      for (int k = 0; k < n; ++k) prog.a_eq(r, i * n + k) = x1(k, j);
      prog.b_eq[r] = x2(i, j);
    }
  }
  for (int k = 0; k < n; ++k) {
    const int r = n * d + k;
    for (int i = 0; i < n; ++i) prog.a_eq(r, i * n + k) = 1.0;
    prog.b_eq[r] = 1.0;
  }
  if (cls == Stochasticity::Bistochastic) {
    for (int i = 0; i < n; ++i) {
      const int r = n * d + n + i;
      for (int k = 0; k < n; ++k) prog.a_eq(r, i * n + k) = 1.0;
      prog.b_eq[r] = 1.0;
    }
  }
  return prog;
}

RealMatrix pad_rows(const RealMatrix& x, int n) {
  RealMatrix out = RealMatrix::Zero(n, x.cols());
  out.topRows(x.rows()) = x;
  return out;
}

}  // namespace

PiecewiseLinearConvex witness_from_certificate(const RealVector& certificate, const RealMatrix& x1,
                                               const RealMatrix& x2, Stochasticity cls, const Tolerances& tol) {
  const int n = static_cast<int>(std::max(x1.rows(), x2.rows()));
  const int d = static_cast<int>(x1.cols());
  const int expected = n * d + n + (cls == Stochasticity::Bistochastic ? n : 0);
  if (certificate.size() != expected) throw InvalidArgument("witness_from_certificate: certificate length mismatch");
  const RealMatrix a = pad_rows(x1, n);
  const RealMatrix b = pad_rows(x2, n);

  RealMatrix slopes(n, d);
  RealVector offsets = RealVector::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) slopes(i, j) = certificate[i * d + j];
    if (cls == Stochasticity::Bistochastic) offsets[i] = certificate[n * d + n + i];
  }
  PiecewiseLinearConvex phi(std::move(slopes), std::move(offsets));
  const double separation = phi.sum_over_rows(b) - phi.sum_over_rows(a);
  if (!(separation >= tol.lp_margin)) {
    std::ostringstream os;
    os << "witness_from_certificate: separation " << separation << " below margin " << tol.lp_margin;
    throw Indeterminate(os.str());
  }
  return phi;
}

MajorizationDecision matrix_majorizes(const OverlapMatrix& x1, const OverlapMatrix& x2, Stochasticity cls,
                                      const Tolerances& tol, std::ostream* trace) {
  if (x1.cols() != x2.cols()) throw DimensionMismatch("matrix_majorizes: column dimensions differ");
  const int n = std::max(x1.rows(), x2.rows());
  const RealMatrix a = pad_rows(x1.matrix(), n);
  const RealMatrix b = pad_rows(x2.matrix(), n);

  const lp::LinearProgram prog = majorization_lp(a, b, cls);
  lp::SolverOptions opts;
  opts.tol = tol.lp;
  opts.margin = tol.lp_margin;
  opts.trace = trace;
  const lp::FeasibilityResult res = lp::solve_feasibility(prog, opts);

  MajorizationDecision out;
  out.cls = cls;
  if (res.feasible()) {
    RealMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) m(i, k) = std::max(0.0, res.solution[i * n + k]);
    const double fit = (b - m * a).cwiseAbs().maxCoeff();
    double cls_defect = (m.colwise().sum().array() - 1.0).abs().maxCoeff();
    if (cls == Stochasticity::Bistochastic) {
      cls_defect = std::max(cls_defect, (m.rowwise().sum().array() - 1.0).abs().maxCoeff());
    }
    if (fit > tol.lp || cls_defect > tol.prob) {
      std::ostringstream os;
      os << "matrix_majorizes: post-processing matrix failed re-verification (fit " << fit << ", class defect "
         << cls_defect << ")";
      throw Indeterminate(os.str());
    }
    out.holds = true;
    out.m = std::move(m);
    return out;
  }
  out.holds = false;
  out.witness = witness_from_certificate(res.certificate, a, b, cls, tol);
  out.separation = out.witness->sum_over_rows(b) - out.witness->sum_over_rows(a);
  return out;
}

double qubit_bloch_angle(const Basis& b1, const Basis& b0) {
  if (b1.dim() != 2 || b0.dim() != 2) throw InvalidArgument("qubit_bloch_angle: requires d = 2");
  const OverlapMatrix x = overlap_matrix(b1, b0);
  const double c = std::min(1.0, std::abs(2.0 * x.matrix()(0, 0) - 1.0));
  return std::acos(c);
}

// --- T-transforms ------------------------------------------------------------

RealMatrix TTransform::matrix(int d) const {
  if (i < 0 || j < 0 || i >= d || j >= d || i == j) throw InvalidArgument("TTransform: indices out of range");
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("TTransform: t outside [0, 1]");
  RealMatrix m = RealMatrix::Identity(d, d);
  m(i, i) = t;
  m(j, j) = t;
  m(i, j) = 1.0 - t;
  m(j, i) = 1.0 - t;
  return m;
}

RealMatrix ttransform_product(const std::vector<TTransform>& ts, int d) {
  RealMatrix p = RealMatrix::Identity(d, d);
  for (const auto& t : ts) p = t.matrix(d) * p;
  return p;
}

ComplexMatrix unistochastic_lift(const TTransform& t, int d) {
  (void)t.matrix(d);  // validates
  ComplexMatrix r = ComplexMatrix::Identity(d, d);
  const double c = std::sqrt(t.t);
  const double s = std::sqrt(1.0 - t.t);
  r(t.i, t.i) = c;
  r(t.i, t.j) = -s;
  r(t.j, t.i) = s;
  r(t.j, t.j) = c;
  return r;
}

namespace {

struct PeelCandidate {
  TTransform tt;
  RealMatrix rest;
  int zeros;
  double zeroed;
};

int count_zeros(const RealMatrix& r, double ztol) { return static_cast<int>((r.array().abs() <= ztol).count()); }

bool is_permutation(const RealMatrix& r, double ztol) {
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const double x = r.data()[i];
    if (std::abs(x) > ztol && std::abs(x - 1.0) > ztol) return false;
  }
  return true;
}

// Peels transpositions off a permutation matrix, outermost first.
std::vector<TTransform> peel_permutation(RealMatrix p) {
  std::vector<TTransform> out;
  const Eigen::Index d = p.rows();
  for (Eigen::Index i = 0; i < d; ++i) {
    if (p(i, i) > 0.5) continue;
    Eigen::Index b = i + 1;
    while (b < d && p(b, i) < 0.5) ++b;
    if (b == d) break;
    p.row(i).swap(p.row(b));
    out.push_back(TTransform{static_cast<int>(i), static_cast<int>(b), 0.0});
  }
  return out;
}

// R = T R'  =>  R' = T^{-1} R, choosing t so that one more entry of R' vanishes.
std::vector<PeelCandidate> peel_candidates(const RealMatrix& r, double ztol) {
  const int d = static_cast<int>(r.rows());
  const int base_zeros = count_zeros(r, ztol);
  std::vector<PeelCandidate> out;
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      for (int target = 0; target < 2; ++target) {
        for (int c = 0; c < d; ++c) {
          const double den = r(a, c) + r(b, c);
          if (den <= ztol) continue;
          const double t = target == 0 ? r(b, c) / den : r(a, c) / den;
          if (t > 1.0 - 1e-12 || std::abs(2.0 * t - 1.0) < 1e-6) continue;
          bool dup = false;
          for (const auto& o : out) {
            if (o.tt.i == a && o.tt.j == b && std::abs(o.tt.t - t) < 1e-12) dup = true;
          }
          if (dup) continue;
          RealMatrix rest = r;
          const double inv = 1.0 / (2.0 * t - 1.0);
          rest.row(a) = (t * r.row(a) - (1.0 - t) * r.row(b)) * inv;
          rest.row(b) = (t * r.row(b) - (1.0 - t) * r.row(a)) * inv;
          if (rest.minCoeff() < -ztol) continue;
          rest = rest.unaryExpr([ztol](double x) { return x <= ztol ? 0.0 : x; });
          const int zeros = count_zeros(rest, ztol);
          if (zeros <= base_zeros) continue;
          out.push_back(PeelCandidate{TTransform{a, b, t}, std::move(rest), zeros,
                                      target == 0 ? r(a, c) : r(b, c)});
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const PeelCandidate& x, const PeelCandidate& y) {
    if (x.zeros != y.zeros) return x.zeros > y.zeros;
    return x.zeroed > y.zeroed;
  });
  return out;
}

class PeelSearch {
 public:
  PeelSearch(double ztol, long budget) : ztol_(ztol), budget_(budget) {}

  // Depth-limited DFS; `path` collects peeled factors outermost first.
  bool run(const RealMatrix& r, int depth_left, std::vector<TTransform>& path) {
    if (--budget_ < 0) return false;
    if (is_permutation(r, ztol_)) {
      // Swaps count towards the depth so that shorter products win.
      const auto swaps = peel_permutation(r);
      if (static_cast<int>(swaps.size()) > depth_left) return false;
      for (const auto& s : swaps) path.push_back(s);
      return true;
    }
    if (depth_left == 0) return false;
    for (auto& cand : peel_candidates(r, ztol_)) {
      path.push_back(cand.tt);
      const std::size_t mark = path.size();
      if (run(cand.rest, depth_left - 1, path)) return true;
      path.resize(mark - 1);
      if (budget_ < 0) return false;
    }
    return false;
  }

  bool exhausted() const { return budget_ < 0; }

 private:
  double ztol_;
  long budget_;
};

std::optional<std::vector<TTransform>> search_decomposition(const RealMatrix& m, double tol) {
  const int d = static_cast<int>(m.rows());
  const double ztol = std::clamp(tol * 1e-2, 1e-11, 1e-6);
  const int max_depth = d * (d - 1) + d - 1;
  PeelSearch search(ztol, 200000);
  for (int depth = 0; depth <= max_depth; ++depth) {
    std::vector<TTransform> path;
    if (search.run(m, depth, path)) {
      std::reverse(path.begin(), path.end());
      if ((ttransform_product(path, d) - m).cwiseAbs().maxCoeff() <= tol) return path;
      return std::nullopt;
    }
    if (search.exhausted()) break;
  }
  return std::nullopt;
}

}  // namespace

std::vector<TTransform> ttransform_decompose(const RealMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 1) throw InvalidArgument("ttransform_decompose: matrix must be square");
  const int d = static_cast<int>(m.rows());
  const double btol = std::max(1e-9, tol);
  const double sum_defect = std::max((m.colwise().sum().array() - 1.0).abs().maxCoeff(),
                                     (m.rowwise().sum().array() - 1.0).abs().maxCoeff());
  if (m.minCoeff() < -btol || sum_defect > btol) throw InvalidArgument("ttransform_decompose: matrix not bistochastic");
  if (d == 1) return {};
  if (d == 2) {
    const double t = std::clamp(m(0, 0), 0.0, 1.0);
    if (t >= 1.0 - tol) return {};
    return {TTransform{0, 1, t}};
  }
  if (auto exact = search_decomposition(m, tol)) return *exact;

  // Mix toward the flat matrix so every entry is positive; the 1-norm
  // distance of the mixture from M is at most 2 * eps = tol.
  const double eps = tol / 2.0;
  const RealMatrix mixed = (1.0 - eps) * m + eps * RealMatrix::Constant(d, d, 1.0 / d);
  if (auto approx = search_decomposition(mixed, tol)) return *approx;
  throw DecompositionFailure("ttransform_decompose: no T-transform product found within the search bound");
}

}  // namespace relinc
