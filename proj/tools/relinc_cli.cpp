#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "relinc/emulation.hpp"
#include "relinc/error.hpp"
#include "relinc/io.hpp"
#include "relinc/majorization.hpp"
#include "relinc/monotones.hpp"
#include "relinc/parent.hpp"
#include "relinc/uncertainty.hpp"

using namespace relinc;
using io::Json;
namespace fs = std::filesystem;

namespace {

enum Exit { kHolds = 0, kFails = 1, kError = 2 };

struct Globals {
  std::string format = "human";
  std::string out;
};

struct TolFlags {
  double lp = kDefaultTolerances.lp;
  double margin = kDefaultTolerances.lp_margin;
  double input = kDefaultTolerances.prob;

  Tolerances get() const {
    Tolerances t;
    t.unitary = t.herm = t.psd = t.prob = input;
    t.lp = lp;
    t.lp_margin = margin;
    return t;
  }
};

void add_tol_flags(CLI::App* cmd, TolFlags& t) {
  cmd->add_option("--tol", t.lp, "LP feasibility tolerance")->capture_default_str();
  cmd->add_option("--margin", t.margin, "minimum Farkas margin")->capture_default_str();
  cmd->add_option("--input-tol", t.input, "validation tolerance for input objects")->capture_default_str();
}

Json tol_json(const Tolerances& t) {
  return {{"unitary", t.unitary}, {"herm", t.herm}, {"psd", t.psd},
          {"prob", t.prob},       {"lp", t.lp},     {"lp_margin", t.lp_margin}};
}

std::string tol_line(const Json& tols) {
  std::ostringstream os;
  os << "tolerances:";
  for (const auto& [k, v] : tols.items()) os << ' ' << k << '=' << v.get<double>();
  os << '\n';
  return os.str();
}

std::string format_matrix(const RealMatrix& m, int indent = 2) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << std::string(indent, ' ');
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << std::setw(9) << m(i, j);
    os << '\n';
  }
  return os.str();
}

Json report_doc(const std::string& command) { return Json{{"kind", "report"}, {"command", command}}; }

int emit(const Globals& g, const Json& doc, const std::string& human, int code) {
  if (!g.out.empty()) io::save_json(g.out, doc);
  if (g.format == "machine")
    std::cout << doc.dump(2) << '\n';
  else
    std::cout << human;
  return code;
}

struct Measurement {
  Povm povm;
  std::optional<Basis> basis;
};

Measurement load_measurement(const std::string& path, const Tolerances& tol) {
  const io::Object obj = io::load_object(path, tol);
  if (const auto* b = std::get_if<Basis>(&obj)) return {Povm::from_basis(*b), *b};
  if (const auto* f = std::get_if<Povm>(&obj)) return {*f, std::nullopt};
  throw io::ParseError(path + ": expected a basis or povm document");
}

Basis mub_of(const Basis& b0) {
  return Basis::from_unitary(b0.unitary() * fourier_basis(b0.dim()).unitary());
}

// compare ------------------------------------------------------------------

struct CompareArgs {
  std::string b0, b1, b2;
  std::string cls = "bi";
  bool dump = false;
  TolFlags tol;
};

int run_compare(const Globals& g, const CompareArgs& a) {
  const Tolerances tol = a.tol.get();
  const Basis b0 = io::load_basis(a.b0, tol);
  const Stochasticity cls = a.cls == "bi" ? Stochasticity::Bistochastic : Stochasticity::ColumnStochastic;

  std::optional<Basis> basis1, basis2;
  OverlapMatrix x1 = overlap_matrix(b0, b0), x2 = x1;
  if (cls == Stochasticity::Bistochastic) {
    basis1 = io::load_basis(a.b1, tol);
    basis2 = io::load_basis(a.b2, tol);
    x1 = overlap_matrix(*basis1, b0);
    x2 = overlap_matrix(*basis2, b0);
  } else {
    const Measurement m1 = load_measurement(a.b1, tol), m2 = load_measurement(a.b2, tol);
    basis1 = m1.basis;
    basis2 = m2.basis;
    x1 = overlap_matrix_povm(m1.povm, b0);
    x2 = overlap_matrix_povm(m2.povm, b0);
  }
  const MajorizationDecision dec = matrix_majorizes(x1, x2, cls, tol, a.dump ? &std::cerr : nullptr);

  Json doc = report_doc("compare");
  doc["class"] = to_string(cls);
  doc["holds"] = dec.holds;
  std::ostringstream hu;
  hu << "class: " << to_string(cls) << '\n';
  hu << "decision: B1 " << (dec.holds ? "majorizes" : "does not majorize") << " B2 relative to B0\n";
  if (dec.holds) {
    doc["m"] = io::encode_real_matrix(*dec.m);
    hu << "M (X2 = M X1):\n" << format_matrix(*dec.m);
  } else {
    const PiecewiseLinearConvex& w = *dec.witness;
    doc["witness"] = {{"pieces", w.pieces()},
                      {"homogeneous", w.homogeneous()},
                      {"separation", dec.separation},
                      {"slopes", io::encode_real_matrix(w.slopes())},
                      {"offsets", io::encode_real_matrix(w.offsets())}};
    hu << "witness: " << w.pieces() << " pieces, " << (w.homogeneous() ? "homogeneous" : "affine")
       << ", separation " << std::setprecision(6) << dec.separation << '\n';
  }
  if (b0.dim() == 2 && basis1 && basis2) {
    const double t1 = qubit_bloch_angle(*basis1, b0), t2 = qubit_bloch_angle(*basis2, b0);
    doc["bloch_angles"] = {{"b1", t1}, {"b2", t2}};
    hu << std::fixed << std::setprecision(6) << "bloch angles: B1 " << t1 << ", B2 " << t2 << '\n';
  }
  doc["tolerances"] = tol_json(tol);
  hu << tol_line(doc["tolerances"]);
  return emit(g, doc, hu.str(), dec.holds ? kHolds : kFails);
}

// report -------------------------------------------------------------------

struct ReportArgs {
  std::string b0, b1, b2;
  int samples = 0;
  std::optional<std::uint64_t> seed;
  TolFlags tol;
};

Json pair_quantities(const Basis& b, const Basis& b0, const ReportArgs& a, std::uint64_t mc_seed) {
  const OverlapMatrix x = overlap_matrix(b, b0);
  Json j;
  j["mu_bound"] = mu_bound(x);
  j["q_bound"] = q_bound(x);
  j["q_exact"] = q_exact(b, b0);
  j["variance_sum_sup"] = variance_sum_sup(b, b0);
  Json fp = Json::object();
  for (const ConvexFunctional& phi : functionals::builtins(b0.dim())) fp[phi.name] = f_phi(x, phi);
  j["f_phi"] = fp;
  Json coh = Json::object();
  const std::pair<const char*, CoherenceKind> kinds[] = {{"rel_entropy", CoherenceKind::RelEntropy},
                                                          {"two_coherence", CoherenceKind::TwoCoherence}};
  for (const auto& [name, kind] : kinds) {
    Json c = {{"analytic", coherence_average(b, b0, kind, Analytic{}).value}};
    if (a.samples > 0) {
      const CoherenceAverage mc = coherence_average(b, b0, kind, MonteCarlo{a.samples, mc_seed});
      c["monte_carlo"] = mc.value;
      c["std_error"] = mc.std_error;
      c["samples"] = mc.samples;
    }
    coh[name] = c;
  }
  j["coherence_average"] = coh;
  return j;
}

std::string pair_human(const std::string& label, const Json& j) {
  std::ostringstream os;
  os << std::setprecision(8);
  os << label << '\n';
  os << "  r_MU (bits)         " << j["mu_bound"].get<double>() << '\n';
  os << "  q                   " << j["q_bound"].get<double>() << '\n';
  os << "  Q                   " << j["q_exact"].get<double>() << '\n';
  os << "  variance sum sup    " << j["variance_sum_sup"].get<double>() << '\n';
  for (const auto& [name, v] : j["f_phi"].items())
    os << "  f_phi " << std::left << std::setw(18) << name << std::right << v.get<double>() << '\n';
  os << "  coherence average       analytic     monte carlo  s.e.\n";
  for (const auto& [name, c] : j["coherence_average"].items()) {
    os << "  " << std::left << std::setw(18) << name << std::right << std::setw(15) << c["analytic"].get<double>();
    if (c.contains("monte_carlo"))
      os << "  " << std::setw(14) << c["monte_carlo"].get<double>() << "  " << c["std_error"].get<double>();
    os << '\n';
  }
  return os.str();
}

int run_report(const Globals& g, const ReportArgs& a) {
  if (a.samples > 0 && !a.seed) throw InvalidArgument("--seed is required when --samples > 0");
  const Tolerances tol = a.tol.get();
  const Basis b0 = io::load_basis(a.b0, tol);
  const Basis b1 = io::load_basis(a.b1, tol);
  Json doc = report_doc("report");
  std::string human;
  doc["b1"] = pair_quantities(b1, b0, a, a.seed.value_or(0));
  human += pair_human("B1 vs B0", doc["b1"]);
  if (!a.b2.empty()) {
    const Basis b2 = io::load_basis(a.b2, tol);
    doc["b2"] = pair_quantities(b2, b0, a, a.seed.value_or(0) + 1);
    human += pair_human("B2 vs B0", doc["b2"]);
    const bool holds =
        matrix_majorizes(overlap_matrix(b1, b0), overlap_matrix(b2, b0), Stochasticity::Bistochastic, tol).holds;
    doc["b1_majorizes_b2"] = holds;
    human += std::string("B1 majorizes B2 relative to B0: ") + (holds ? "yes" : "no") + '\n';
  }
  if (a.samples > 0) {
    doc["samples"] = a.samples;
    doc["seed"] = *a.seed;
  }
  doc["tolerances"] = tol_json(tol);
  human += tol_line(doc["tolerances"]);
  return emit(g, doc, human, kHolds);
}

// emulate ------------------------------------------------------------------

struct EmulateArgs {
  std::string b0, b1, b2;
  double approx = 1e-9;
  TolFlags tol;
};

int run_emulate(const Globals& gl, const EmulateArgs& a) {
  // --out names the directory for the generated bases here.
  const std::string dir = gl.out;
  Globals g = gl;
  g.out.clear();
  const Tolerances tol = a.tol.get();
  const Basis b0 = io::load_basis(a.b0, tol);
  const Basis b1 = io::load_basis(a.b1, tol);
  const Basis b2 = io::load_basis(a.b2, tol);
  Json doc = report_doc("emulate");
  Json tj = tol_json(tol);
  tj["approx"] = a.approx;
  if (!matrix_majorizes(overlap_matrix(b1, b0), overlap_matrix(b2, b0), Stochasticity::Bistochastic, tol).holds) {
    std::cerr << "relinc: B1 does not majorize B2 relative to B0; no dephasing sequence exists\n";
    doc["holds"] = false;
    doc["tolerances"] = tj;
    return emit(g, doc, "decision: B1 does not majorize B2 relative to B0\n" + tol_line(tj), kFails);
  }
  const DephasingSequence seq = build_emulation(b0, b1, b2, a.approx, tol);
  const double residual = emulation_residual(seq);

  doc["holds"] = true;
  doc["length"] = seq.aux_bases.size();
  doc["residual"] = residual;
  Json factors = Json::array();
  for (const TTransform& t : seq.factors) factors.push_back({{"i", t.i}, {"j", t.j}, {"t", t.t}});
  doc["factors"] = factors;
  doc["m"] = io::encode_real_matrix(seq.m);
  std::ostringstream hu;
  hu << "decision: B1 majorizes B2 relative to B0\n";
  hu << "auxiliary bases: " << seq.aux_bases.size() << '\n';
  hu << std::setprecision(6) << "residual: " << residual << '\n';
  for (std::size_t k = 0; k < seq.factors.size(); ++k)
    hu << "  T" << k + 1 << " on (" << seq.factors[k].i << ", " << seq.factors[k].j << ") t = " << std::fixed
       << seq.factors[k].t << std::defaultfloat << '\n';
  if (!dir.empty()) {
    fs::create_directories(dir);
    Json files = Json::array();
    for (std::size_t k = 0; k < seq.aux_bases.size(); ++k) {
      const fs::path p = fs::path(dir) / ("aux_" + std::to_string(k + 1) + ".json");
      io::save_json(p, io::to_json(seq.aux_bases[k]));
      files.push_back(p.string());
    }
    const fs::path up = fs::path(dir) / "rotation.json";
    io::save_json(up, io::to_json(Basis::from_unitary(seq.u)));
    doc["files"] = files;
    doc["rotation_file"] = up.string();
    hu << "wrote " << seq.aux_bases.size() << " auxiliary bases and rotation.json to " << dir << '\n';
  }
  doc["tolerances"] = tj;
  hu << tol_line(tj);
  return emit(g, doc, hu.str(), kHolds);
}

// parent -------------------------------------------------------------------

struct ParentArgs {
  std::string f, g;
  int bases = 20;
  std::uint64_t seed = 0;
  TolFlags tol;
};

int run_parent(const Globals& gl, const ParentArgs& a) {
  const Tolerances tol = a.tol.get();
  const Povm f = io::load_povm(a.f, tol);
  const Povm g = io::load_povm(a.g, tol);
  const ParentDecision dec = is_parent(f, g, tol);
  const std::vector<Basis> samples = default_b0_samples(f.dim(), a.bases, a.seed);
  std::vector<double> residuals;
  if (dec.is_parent) residuals = relative_consistency(f, g, *dec.m, samples);

  Json doc = report_doc("parent");
  doc["is_parent"] = dec.is_parent;
  std::ostringstream hu;
  hu << "decision: F " << (dec.is_parent ? "is" : "is not") << " a parent of G\n";
  if (dec.is_parent) {
    doc["m"] = io::encode_real_matrix(*dec.m);
    doc["residual"] = dec.residual;
    hu << "M (G_i = sum_j M_ij F_j):\n" << format_matrix(*dec.m);
  }
  hu << "basis             majorizes   consistency\n";
  Json table = Json::array();
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const std::size_t haar = samples.size() - 2;
    const std::string label =
        k < haar ? "haar " + std::to_string(k + 1) : (k == haar ? "computational" : "fourier");
    const bool maj = matrix_majorizes(overlap_matrix_povm(f, samples[k]), overlap_matrix_povm(g, samples[k]),
                                      Stochasticity::ColumnStochastic, tol)
                         .holds;
    Json row = {{"basis", label}, {"majorizes", maj}};
    hu << "  " << std::left << std::setw(16) << label << std::setw(12) << (maj ? "yes" : "no") << std::right;
    if (dec.is_parent) {
      row["residual"] = residuals[k];
      hu << std::setprecision(3) << std::scientific << residuals[k] << std::defaultfloat;
    } else {
      hu << "-";
    }
    hu << '\n';
    table.push_back(row);
  }
  doc["bases"] = table;
  doc["seed"] = a.seed;
  doc["tolerances"] = tol_json(tol);
  hu << std::setprecision(6) << tol_line(doc["tolerances"]);
  return emit(gl, doc, hu.str(), dec.is_parent ? kHolds : kFails);
}

// random -------------------------------------------------------------------

struct RandomArgs {
  std::string kind;
  int dim = 2;
  std::optional<int> outcomes;
  std::uint64_t seed = 0;
};

int run_random(const Globals& g, const RandomArgs& a) {
  Json doc;
  if (a.kind == "basis")
    doc = io::to_json(haar_random_basis(a.dim, a.seed));
  else if (a.kind == "povm")
    doc = io::to_json(random_povm(a.dim, a.outcomes.value_or(a.dim), a.seed));
  else
    doc = io::to_json(random_density_state(a.dim, a.seed));
  (void)io::parse_object(doc);
  if (g.out.empty()) {
    std::cout << doc.dump(2) << '\n';
    return kHolds;
  }
  io::save_json(g.out, doc);
  if (g.format == "machine")
    std::cout << Json{{"kind", "report"}, {"command", "random"}, {"file", g.out}}.dump(2) << '\n';
  else
    std::cout << "wrote " << a.kind << " (dim " << a.dim << ") to " << g.out << '\n';
  return kHolds;
}

// check --------------------------------------------------------------------

struct CheckArgs {
  std::vector<std::string> files;
  TolFlags tol;
};

struct CheckLog {
  Json items = Json::array();
  std::ostringstream human;
  bool all = true;

  void add(const std::string& name, bool pass, const std::string& detail = "") {
    items.push_back({{"check", name}, {"pass", pass}, {"detail", detail}});
    human << (pass ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) human << ": " << detail;
    human << '\n';
    all = all && pass;
  }
};

std::string sci(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << v;
  return os.str();
}

int run_check(const Globals& g, const CheckArgs& a) {
  const Tolerances tol = a.tol.get();
  std::vector<std::pair<std::string, Basis>> bases;
  std::vector<std::pair<std::string, Povm>> povms;
  std::vector<std::pair<std::string, DensityState>> states;
  for (const std::string& path : a.files) {
    const io::Object obj = io::load_object(path, tol);
    if (const auto* b = std::get_if<Basis>(&obj)) bases.emplace_back(path, *b);
    if (const auto* f = std::get_if<Povm>(&obj)) povms.emplace_back(path, *f);
    if (const auto* s = std::get_if<DensityState>(&obj)) states.emplace_back(path, *s);
  }

  CheckLog log;
  for (const std::string& path : a.files) log.add("parse " + path, true);
  const auto decide = [&](const OverlapMatrix& x1, const OverlapMatrix& x2, Stochasticity c) {
    return matrix_majorizes(x1, x2, c, tol).holds;
  };

  for (std::size_t i = 0; i < bases.size(); ++i) {
    const auto& [name, b] = bases[i];
    const auto ref = std::find_if(bases.begin(), bases.end(), [&](const auto& e) { return e.second.dim() == b.dim(); });
    const Basis& b0 = ref->second;
    const OverlapMatrix x = overlap_matrix(b, b0);
    const double rows = (x.matrix().rowwise().sum().array() - 1.0).abs().maxCoeff();
    const double cols = (x.matrix().colwise().sum().array() - 1.0).abs().maxCoeff();
    log.add("bistochastic overlap " + name, std::max(rows, cols) <= tol.prob, sci(std::max(rows, cols)));
    log.add("reflexive " + name, decide(x, x, Stochasticity::Bistochastic));
    log.add("top element " + ref->first + " over " + name,
            decide(overlap_matrix(b0, b0), x, Stochasticity::Bistochastic));
    log.add("bottom element " + name + " over MUB", decide(x, overlap_matrix(mub_of(b0), b0),
                                                           Stochasticity::Bistochastic));
    const double qs = q_exact(b, b0), mid = variance_sum_sup(b, b0), qb = q_bound(x);
    log.add("Q <= variance sup <= q " + name, qs <= mid + 1e-9 && mid <= qb + 1e-9,
            sci(qs) + " " + sci(mid) + " " + sci(qb));
    for (std::size_t j = 0; j < bases.size(); ++j) {
      if (j == i || bases[j].second.dim() != b.dim()) continue;
      const Basis& c = bases[j].second;
      if (j > i) {
        const double sym = (overlap_matrix(b, c).matrix() - overlap_matrix(c, b).matrix().transpose()).cwiseAbs().maxCoeff();
        log.add("overlap transpose " + name + " / " + bases[j].first, sym <= tol.prob, sci(sym));
      }
      const OverlapMatrix y = overlap_matrix(c, b0);
      if (!decide(x, y, Stochasticity::Bistochastic)) continue;
      double worst = -INFINITY;
      for (const ConvexFunctional& phi : functionals::builtins(b.dim())) worst = std::max(worst, f_phi(y, phi) - f_phi(x, phi));
      log.add("monotone soundness " + name + " > " + bases[j].first, worst <= 1e-9, "max gap " + sci(worst));
    }
  }

  for (const auto& [sname, rho] : states) {
    for (std::size_t i = 0; i < bases.size(); ++i)
      for (std::size_t j = i + 1; j < bases.size(); ++j) {
        if (bases[i].second.dim() != rho.dim() || bases[j].second.dim() != rho.dim()) continue;
        const UncertaintyReport r = check_entropic_bounds(rho, bases[i].second, bases[j].second, 1.0, 1.0);
        log.add("MU/Coles " + sname + " on " + bases[i].first + " / " + bases[j].first,
                !r.mu_violated() && !r.coles_violated() && !r.q_violated(),
                "H1+H2 = " + sci(r.lhs_entropy_sum) + ", r_MU = " + sci(r.mu_bound));
      }
  }

  for (const auto& [name, f] : povms) {
    const ParentDecision self = is_parent(f, f, tol);
    log.add("self parent " + name, self.is_parent, sci(self.residual));
    for (const auto& [bname, b0] : bases) {
      if (b0.dim() != f.dim()) continue;
      const OverlapMatrix x = overlap_matrix_povm(f, b0);
      const double cols = (x.matrix().colwise().sum().array() - 1.0).abs().maxCoeff();
      log.add("column-stochastic overlap " + name + " vs " + bname, cols <= tol.prob, sci(cols));
      log.add("majorizes trivial POVM " + name + " vs " + bname,
              decide(x, overlap_matrix_povm(Povm::from_effects({ComplexMatrix::Identity(f.dim(), f.dim())}), b0),
                     Stochasticity::ColumnStochastic));
    }
  }

  Json doc = report_doc("check");
  doc["checks"] = log.items;
  doc["all_pass"] = log.all;
  doc["tolerances"] = tol_json(tol);
  log.human << tol_line(doc["tolerances"]);
  return emit(g, doc, log.human.str(), log.all ? kHolds : kFails);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relinc: relative incompatibility of quantum measurements"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"human", "machine"}))->capture_default_str();
  app.add_option("--out", g.out, "write the machine-format document here (random: the object; emulate: directory for aux_k.json)");

  std::function<int()> run;

  CompareArgs ca;
  auto* compare = app.add_subcommand("compare", "decide whether B1 majorizes B2 relative to B0");
  compare->add_option("b0", ca.b0, "reference basis")->required();
  compare->add_option("b1", ca.b1, "first measurement")->required();
  compare->add_option("b2", ca.b2, "second measurement")->required();
  compare->add_option("--class", ca.cls, "bi: bases, bistochastic M; stoch: POVMs, stochastic M")
      ->check(CLI::IsMember({"bi", "stoch"}))
      ->capture_default_str();
  compare->add_flag("--dump-tableau", ca.dump, "write every simplex tableau to stderr");
  add_tol_flags(compare, ca.tol);
  compare->callback([&] { run = [&] { return run_compare(g, ca); }; });

  ReportArgs ra;
  auto* report = app.add_subcommand("report", "incompatibility quantifiers and coherence averages");
  report->add_option("b0", ra.b0, "reference basis")->required();
  report->add_option("b1", ra.b1, "first basis")->required();
  report->add_option("b2", ra.b2, "optional second basis");
  report->add_option("--samples", ra.samples, "Monte Carlo samples (0 = analytic only)")->capture_default_str();
  report->add_option("--seed", ra.seed, "seed for Monte Carlo columns");
  add_tol_flags(report, ra.tol);
  report->callback([&] { run = [&] { return run_report(g, ra); }; });

  EmulateArgs ea;
  auto* emulate = app.add_subcommand("emulate", "build the dephasing sequence emulating B2 from B1");
  emulate->add_option("b0", ea.b0, "reference basis")->required();
  emulate->add_option("b1", ea.b1, "first basis")->required();
  emulate->add_option("b2", ea.b2, "second basis")->required();
  emulate->add_option("--approx", ea.approx, "T-transform approximation tolerance")->capture_default_str();
  add_tol_flags(emulate, ea.tol);
  emulate->callback([&] { run = [&] { return run_emulate(g, ea); }; });

  ParentArgs pa;
  auto* parent = app.add_subcommand("parent", "decide whether F is a parent of G");
  parent->add_option("f", pa.f, "candidate parent POVM")->required();
  parent->add_option("g", pa.g, "child POVM")->required();
  parent->add_option("--bases", pa.bases, "Haar reference bases in the consistency table")->capture_default_str();
  parent->add_option("--seed", pa.seed, "seed for the reference bases")->required();
  add_tol_flags(parent, pa.tol);
  parent->callback([&] { run = [&] { return run_parent(g, pa); }; });

  RandomArgs rda;
  auto* random = app.add_subcommand("random", "write a random basis, POVM or state");
  random->add_option("kind", rda.kind, "basis | povm | state")
      ->required()
      ->check(CLI::IsMember({"basis", "povm", "state"}));
  random->add_option("--dim", rda.dim, "Hilbert space dimension")->required()->check(CLI::PositiveNumber);
  random->add_option("--outcomes", rda.outcomes, "POVM outcomes (default: dim)")->check(CLI::PositiveNumber);
  random->add_option("--seed", rda.seed, "seed")->required();
  random->callback([&] { run = [&] { return run_random(g, rda); }; });

  CheckArgs ka;
  auto* check = app.add_subcommand("check", "run the invariant suite on the given files");
  check->add_option("files", ka.files, "basis, povm and state documents")->required();
  add_tol_flags(check, ka.tol);
  check->callback([&] { run = [&] { return run_check(g, ka); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    return run();
  } catch (const io::ParseError& e) {
    std::cerr << "relinc: " << e.what() << '\n';
  } catch (const Indeterminate& e) {
    std::cerr << "relinc: indeterminate: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "relinc: " << e.what() << '\n';
  }
  return kError;
}
