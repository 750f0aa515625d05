#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "relinc/io.hpp"

using namespace relinc;
using io::Json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(RELINC_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Json run_machine(const std::string& args, int expected_code) {
  const Run r = run("--format machine " + args);
  REQUIRE(r.code == expected_code);
  return Json::parse(r.out);
}

fs::path dir() {
  static const fs::path d = [] {
    const fs::path p = fs::temp_directory_path() / "relinc_test_cli";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return d;
}

std::string write(const std::string& name, const Json& doc) {
  const fs::path p = dir() / name;
  io::save_json(p, doc);
  return p.string();
}

std::string qubit(const std::string& name, double theta) {
  return write(name, io::to_json(qubit_rotated_basis(theta)));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_tolerances(const Json& doc) {
  REQUIRE(doc.contains("tolerances"));
  for (const char* k : {"unitary", "herm", "psd", "prob", "lp", "lp_margin"}) CHECK(doc["tolerances"][k].is_number());
}

}  // namespace

TEST_CASE("compare of identical bases holds with M = I") {
  const std::string b0 = qubit("c0.json", 0.0), b = qubit("c1.json", 0.7);
  const Json doc = run_machine("compare " + b0 + " " + b + " " + b, 0);
  CHECK(doc["kind"] == "report");
  CHECK(doc["holds"] == true);
  const Json& m = doc["m"];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(std::abs(m[i][j].get<double>() - (i == j ? 1.0 : 0.0)) <= 1e-8);
  check_tolerances(doc);
}

TEST_CASE("compare pi/6 against pi/3 reports M to 6 decimals") {
  const std::string b0 = qubit("p0.json", 0.0);
  const std::string b1 = qubit("p1.json", std::numbers::pi / 6), b2 = qubit("p2.json", std::numbers::pi / 3);
  // M = [[m, 1-m], [1-m, m]] solving cos^2(t2/2) = m cos^2(t1/2) + (1-m) sin^2(t1/2).
  const double c1 = std::pow(std::cos(std::numbers::pi / 12), 2), s1 = 1.0 - c1;
  const double m = (0.75 - s1) / (c1 - s1);
  const Run human = run("compare " + b0 + " " + b1 + " " + b2);
  CHECK(human.code == 0);
  std::ostringstream expect;
  expect.setf(std::ios::fixed);
  expect.precision(6);
  expect << m;
  CHECK(human.out.find(expect.str()) != std::string::npos);
  CHECK(human.out.find("bloch angles") != std::string::npos);
  CHECK(human.out.find("tolerances:") != std::string::npos);

  const Json doc = run_machine("compare " + b0 + " " + b1 + " " + b2, 0);
  CHECK(doc["m"][0][0].get<double>() == doctest::Approx(m).epsilon(1e-8));
  CHECK(doc["bloch_angles"]["b1"].get<double>() == doctest::Approx(std::numbers::pi / 6));
  CHECK(doc["bloch_angles"]["b2"].get<double>() == doctest::Approx(std::numbers::pi / 3));
}

TEST_CASE("reversed compare exits 1 with a witness summary") {
  const std::string b0 = qubit("r0.json", 0.0);
  const std::string b1 = qubit("r1.json", std::numbers::pi / 6), b2 = qubit("r2.json", std::numbers::pi / 3);
  const Json doc = run_machine("compare " + b0 + " " + b2 + " " + b1, 1);
  CHECK(doc["holds"] == false);
  CHECK(doc["witness"]["pieces"].get<int>() >= 1);
  CHECK(doc["witness"]["separation"].get<double>() >= 1e-8);
  CHECK(run("compare " + b0 + " " + b2 + " " + b1).out.find("witness:") != std::string::npos);
}

TEST_CASE("stochastic class accepts POVM files") {
  const std::string b0 = write("s0.json", io::to_json(Basis::computational(3)));
  const std::string f = write("sf.json", io::to_json(random_povm(3, 4, 8)));
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  const std::string triv = write("st.json", io::to_json(Povm::from_effects({id / 2.0, id / 2.0})));
  CHECK(run("compare --class stoch " + b0 + " " + f + " " + triv).code == 0);
  CHECK(run("compare --class stoch " + b0 + " " + triv + " " + f).code == 1);
  CHECK(run("compare --class bi " + b0 + " " + f + " " + triv).code == 2);
}

TEST_CASE("report on computational and Hadamard bases") {
  const std::string b0 = qubit("h0.json", 0.0), h = qubit("h1.json", std::numbers::pi / 2);
  const Json doc = run_machine("report " + b0 + " " + h, 0);
  const Json& p = doc["b1"];
  CHECK(p["mu_bound"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p["q_bound"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p["q_exact"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  // subentropy(1/2, 1/2) = 1 - 1/(2 ln 2) bits, weighted by 1/d over the d equal rows.
  CHECK(p["coherence_average"]["rel_entropy"]["analytic"].get<double>() ==
        doctest::Approx(1.0 - 1.0 / (2.0 * std::numbers::ln2)).epsilon(1e-10));
  CHECK(p["f_phi"].size() >= 5);
  check_tolerances(doc);
  CHECK_FALSE(p["coherence_average"]["rel_entropy"].contains("monte_carlo"));
}

TEST_CASE("report of B0 against itself has zero incompatibility") {
  const std::string b0 = write("z0.json", io::to_json(haar_random_basis(3, 4)));
  const Json doc = run_machine("report " + b0 + " " + b0, 0);
  for (const char* k : {"mu_bound", "q_bound", "q_exact", "variance_sum_sup"})
    CHECK(std::abs(doc["b1"][k].get<double>()) < 1e-9);
  for (const auto& [name, c] : doc["b1"]["coherence_average"].items()) CHECK(std::abs(c["analytic"].get<double>()) < 1e-9);
}

TEST_CASE("report Monte Carlo columns need a seed and are deterministic") {
  const std::string b0 = qubit("m0.json", 0.0), b1 = qubit("m1.json", 1.0), b2 = qubit("m2.json", 0.4);
  CHECK(run("report --samples 100 " + b0 + " " + b1).code == 2);
  const Run a = run("--format machine report --samples 2000 --seed 5 " + b0 + " " + b1 + " " + b2);
  const Run b = run("--format machine report --samples 2000 --seed 5 " + b0 + " " + b1 + " " + b2);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Json doc = Json::parse(a.out);
  for (const char* pair : {"b1", "b2"})
    for (const auto& [name, c] : doc[pair]["coherence_average"].items()) {
      CHECK(c["samples"] == 2000);
      CHECK(c["std_error"].get<double>() > 0.0);
      CHECK(std::abs(c["monte_carlo"].get<double>() - c["analytic"].get<double>()) <= 5 * c["std_error"].get<double>());
    }
  CHECK(doc["b1_majorizes_b2"] == false);
}

TEST_CASE("machine output round-trips through --out") {
  const std::string b0 = qubit("o0.json", 0.0), b1 = qubit("o1.json", 0.3);
  const std::string out = (dir() / "report_out.json").string();
  const Run r = run("--format machine --out " + out + " report " + b0 + " " + b1);
  REQUIRE(r.code == 0);
  CHECK(Json::parse(slurp(out)) == Json::parse(r.out));
}

TEST_CASE("random objects re-parse and are deterministic") {
  for (const std::string kind : {"basis", "povm", "state"}) {
    const std::string p1 = (dir() / ("rand1_" + kind + ".json")).string();
    const std::string p2 = (dir() / ("rand2_" + kind + ".json")).string();
    REQUIRE(run("random " + kind + " --dim 3 --outcomes 5 --seed 17 --out " + p1).code == 0);
    REQUIRE(run("random " + kind + " --dim 3 --outcomes 5 --seed 17 --out " + p2).code == 0);
    CHECK(slurp(p1) == slurp(p2));
    const io::Object obj = io::load_object(p1);
    if (kind == "povm") {
      REQUIRE(std::holds_alternative<Povm>(obj));
      CHECK(std::get<Povm>(obj).size() == 5);
    }
    if (kind == "basis") CHECK(std::holds_alternative<Basis>(obj));
    if (kind == "state") CHECK(std::holds_alternative<DensityState>(obj));
  }
  const Run a = run("random basis --dim 2 --seed 1"), b = run("random basis --dim 2 --seed 2");
  CHECK(a.out != b.out);
  CHECK(std::holds_alternative<Basis>(io::parse_object_text(a.out)));
  CHECK(run("random basis --dim 2").code == 2);
}

TEST_CASE("emulate writes auxiliary bases") {
  const std::string b0 = qubit("e0.json", 0.0);
  const std::string b1 = qubit("e1.json", std::numbers::pi / 6), b2 = qubit("e2.json", std::numbers::pi / 3);
  const fs::path out = dir() / "emulate";
  const Json doc = run_machine("--out " + out.string() + " emulate " + b0 + " " + b1 + " " + b2, 0);
  CHECK(doc["length"] == 1);
  CHECK(doc["residual"].get<double>() <= 1e-6);
  REQUIRE(doc["files"].size() == 1);
  CHECK(std::holds_alternative<Basis>(io::load_object(doc["files"][0].get<std::string>())));
  CHECK(fs::exists(out / "rotation.json"));

  const Json same = run_machine("emulate " + b0 + " " + b1 + " " + b1, 0);
  CHECK(same["length"] == 0);
  CHECK(run("emulate " + b0 + " " + b2 + " " + b1).code == 1);
}

TEST_CASE("parent decisions and consistency table") {
  const std::string f = write("pf.json", io::to_json(random_povm(2, 3, 4)));
  const std::string comp = write("pc.json", io::to_json(Basis::computational(2)));
  const std::string had = qubit("ph.json", std::numbers::pi / 2);
  const Json doc = run_machine("parent --seed 3 --bases 4 " + f + " " + f, 0);
  CHECK(doc["is_parent"] == true);
  REQUIRE(doc["bases"].size() == 6);
  for (const Json& row : doc["bases"]) {
    CHECK(row["majorizes"] == true);
    CHECK(row["residual"].get<double>() <= 1e-8);
  }
  CHECK(run("parent --seed 3 " + comp + " " + had).code == 1);
  CHECK(run("parent " + f + " " + f).code == 2);
}

TEST_CASE("check runs the invariant suite") {
  const std::string a = write("k1.json", io::to_json(haar_random_basis(3, 1)));
  const std::string b = write("k2.json", io::to_json(haar_random_basis(3, 2)));
  const std::string s = write("k3.json", io::to_json(random_density_state(3, 3)));
  const std::string f = write("k4.json", io::to_json(random_povm(3, 4, 4)));
  const Json doc = run_machine("check " + a + " " + b + " " + s + " " + f, 0);
  CHECK(doc["all_pass"] == true);
  CHECK(doc["checks"].size() > 10);
  check_tolerances(doc);
}

TEST_CASE("errors exit 2 and name the problem") {
  const std::string b0 = qubit("x0.json", 0.0);
  std::ofstream(dir() / "bad.json") << R"({"dim": 2, "kind": "basis", "data": [[[1,0],[1,0]],[[0,0],[1,0]]]})";
  const Run bad = run("compare " + b0 + " " + (dir() / "bad.json").string() + " " + b0, true);
  CHECK(bad.code == 2);
  CHECK(bad.out.find("invalid document") != std::string::npos);
  CHECK(run("compare " + b0 + " " + b0 + " /nonexistent/relinc.json").code == 2);
  CHECK(run("compare " + b0 + " " + b0 + " " + b0 + " --bogus").code == 2);
  CHECK(run("compare --class both " + b0 + " " + b0 + " " + b0).code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("--help").code == 0);
}
