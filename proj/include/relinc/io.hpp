#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "relinc/quantum.hpp"

namespace relinc::io {

using Json = nlohmann::ordered_json;

/// Raised for malformed documents; the message names the violated rule.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Object = std::variant<Basis, Povm, DensityState>;

/// Document layout:
///   {"dim": d, "kind": "basis" | "povm" | "state", "data": ...}
/// Complex entries are [re, im]; matrices are row-major arrays of rows; a
/// basis stores its unitary (columns are kets); a POVM stores an array of
/// effect matrices.
Object parse_object(const Json& doc, const Tolerances& tol = kDefaultTolerances);
Object parse_object_text(const std::string& text, const Tolerances& tol = kDefaultTolerances);
Object load_object(const std::filesystem::path& path, const Tolerances& tol = kDefaultTolerances);

Basis load_basis(const std::filesystem::path& path, const Tolerances& tol = kDefaultTolerances);
/// Accepts a basis file too, returning its projectors.
Povm load_povm(const std::filesystem::path& path, const Tolerances& tol = kDefaultTolerances);

Json encode_matrix(const ComplexMatrix& m);
ComplexMatrix decode_matrix(const Json& j, int dim);
Json encode_real_matrix(const RealMatrix& m);

Json to_json(const Basis& b);
Json to_json(const Povm& f);
Json to_json(const DensityState& s);
Json to_json(const Object& o);

void save_json(const std::filesystem::path& path, const Json& doc);

}  // namespace relinc::io
