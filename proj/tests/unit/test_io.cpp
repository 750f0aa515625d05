#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "relinc/io.hpp"

using namespace relinc;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "relinc_test_io";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("basis round trip is exact") {
  const Basis b = haar_random_basis(4, 12);
  const fs::path p = temp_file("basis.json");
  io::save_json(p, io::to_json(b));
  const Basis back = io::load_basis(p);
  CHECK((back.unitary() - b.unitary()).norm() == 0.0);
}

TEST_CASE("POVM and state round trips") {
  const Povm f = random_povm(3, 5, 2);
  const auto obj = io::parse_object(io::to_json(f));
  REQUIRE(std::holds_alternative<Povm>(obj));
  const Povm& g = std::get<Povm>(obj);
  REQUIRE(g.size() == 5);
  for (int k = 0; k < 5; ++k) CHECK((g.effect(k) - f.effect(k)).norm() == 0.0);

  const DensityState rho = random_density_state(2, 3);
  const auto s = io::parse_object(io::to_json(rho));
  REQUIRE(std::holds_alternative<DensityState>(s));
  CHECK((std::get<DensityState>(s).matrix() - rho.matrix()).norm() == 0.0);
}

TEST_CASE("basis files load as projective POVMs") {
  const fs::path p = temp_file("basis_as_povm.json");
  io::save_json(p, io::to_json(fourier_basis(3)));
  const Povm f = io::load_povm(p);
  CHECK(f.size() == 3);
  CHECK((f.effect(1) - fourier_basis(3).projector(1)).norm() < 1e-15);
}

TEST_CASE("hand-written document") {
  const auto obj = io::parse_object_text(R"({"dim": 2, "kind": "basis",
    "data": [[[0.7071067811865476, 0], [0.7071067811865476, 0]],
             [[0.7071067811865476, 0], [-0.7071067811865476, 0]]]})");
  REQUIRE(std::holds_alternative<Basis>(obj));
  CHECK((overlap_matrix(std::get<Basis>(obj), Basis::computational(2)).matrix().array() - 0.5).abs().maxCoeff() <
        1e-12);
}

TEST_CASE("malformed documents are rejected with a reason") {
  auto reason = [](const std::string& text) {
    try {
      (void)io::parse_object_text(text);
    } catch (const io::ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(reason("not json").find("JSON") != std::string::npos);
  CHECK(reason(R"({"dim": 2, "kind": "basis"})").find("data") != std::string::npos);
  CHECK(reason(R"({"dim": 0, "kind": "basis", "data": []})").find("dim") != std::string::npos);
  CHECK(reason(R"({"dim": 1, "kind": "thing", "data": [[[1,0]]]})").find("kind") != std::string::npos);
  CHECK(reason(R"({"dim": 2, "kind": "basis", "data": [[[1,0],[0,0]]]})").find("rows") != std::string::npos);
  // Valid shape, invalid physics.
  CHECK(reason(R"({"dim": 2, "kind": "basis", "data": [[[1,0],[1,0]],[[0,0],[1,0]]]})").find("invalid document") !=
        std::string::npos);
  CHECK(reason(R"({"dim": 1, "kind": "state", "data": [[[2,0]]]})").find("invalid document") != std::string::npos);
}

TEST_CASE("missing files and wrong kinds") {
  CHECK_THROWS_AS(io::load_object("/nonexistent/relinc.json"), io::ParseError);
  const fs::path p = temp_file("state.json");
  io::save_json(p, io::to_json(DensityState::maximally_mixed(2)));
  CHECK_THROWS_AS(io::load_basis(p), io::ParseError);
  CHECK_THROWS_AS(io::load_povm(p), io::ParseError);
}
