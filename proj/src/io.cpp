#include "relinc/io.hpp"

#include <fstream>
#include <sstream>

#include "relinc/error.hpp"

namespace relinc::io {

namespace {

[[noreturn]] void fail(const std::string& rule) { throw ParseError("invalid document: " + rule); }

Complex decode_complex(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail("complex entries must be [re, im] number pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json encode_matrix(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Json encode_real_matrix(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix decode_matrix(const Json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) fail("matrix must have 'dim' rows");
  ComplexMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != dim) fail("matrix rows must have 'dim' entries");
    for (int c = 0; c < dim; ++c) m(r, c) = decode_complex(j[r][c]);
  }
  return m;
}

Object parse_object(const Json& doc, const Tolerances& tol) {
  if (!doc.is_object()) fail("top level must be an object");
  for (const char* key : {"dim", "kind", "data"}) {
    if (!doc.contains(key)) fail(std::string("missing field '") + key + "'");
  }
  if (!doc["dim"].is_number_integer() || doc["dim"].get<int>() < 1) fail("'dim' must be a positive integer");
  if (!doc["kind"].is_string()) fail("'kind' must be a string");
  const int dim = doc["dim"].get<int>();
  const std::string kind = doc["kind"].get<std::string>();
  const Json& data = doc["data"];
  try {
    if (kind == "basis") return Basis::from_unitary(decode_matrix(data, dim), tol);
    if (kind == "state") return DensityState::from_matrix(decode_matrix(data, dim), tol);
    if (kind == "povm") {
      if (!data.is_array() || data.empty()) fail("povm data must be a nonempty array of matrices");
      std::vector<ComplexMatrix> effects;
      for (const auto& e : data) effects.push_back(decode_matrix(e, dim));
      return Povm::from_effects(std::move(effects), tol);
    }
  } catch (const InvariantViolation& e) {
    throw ParseError(std::string("invalid document: ") + e.what());
  }
  fail("'kind' must be one of basis, povm, state");
}

Object parse_object_text(const std::string& text, const Tolerances& tol) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid document: not well-formed JSON (") + e.what() + ")");
  }
  return parse_object(doc, tol);
}

Object load_object(const std::filesystem::path& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_object_text(ss.str(), tol);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Basis load_basis(const std::filesystem::path& path, const Tolerances& tol) {
  Object o = load_object(path, tol);
  if (auto* b = std::get_if<Basis>(&o)) return *b;
  throw ParseError(path.string() + ": invalid document: expected kind 'basis'");
}

Povm load_povm(const std::filesystem::path& path, const Tolerances& tol) {
  Object o = load_object(path, tol);
  if (auto* f = std::get_if<Povm>(&o)) return *f;
  if (auto* b = std::get_if<Basis>(&o)) return Povm::from_basis(*b);
  throw ParseError(path.string() + ": invalid document: expected kind 'povm' or 'basis'");
}

Json to_json(const Basis& b) {
  return Json{{"dim", b.dim()}, {"kind", "basis"}, {"data", encode_matrix(b.unitary())}};
}

Json to_json(const Povm& f) {
  Json effects = Json::array();
  for (const auto& e : f.effects()) effects.push_back(encode_matrix(e));
  return Json{{"dim", f.dim()}, {"kind", "povm"}, {"data", std::move(effects)}};
}

Json to_json(const DensityState& s) {
  return Json{{"dim", s.dim()}, {"kind", "state"}, {"data", encode_matrix(s.matrix())}};
}

Json to_json(const Object& o) {
  return std::visit([](const auto& v) { return to_json(v); }, o);
}

void save_json(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace relinc::io
