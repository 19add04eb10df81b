#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "floerkit/hypercubes.hpp"
#include "json.hpp"

namespace fk {

using json = nlohmann::json;

// Malformed input.  `where` is a field path such as generators[2].h, or file:line:column for
// syntax errors.
struct InputError : std::runtime_error {
  std::string where;
  InputError(const std::string& w, const std::string& msg) : std::runtime_error(w + ": " + msg), where(w) {}
};

json read_json(const std::string& path);

// field access with path tracking
const json& need(const json& j, const std::string& key, const std::string& path);
int as_int(const json& j, const std::string& path);
std::string as_str(const json& j, const std::string& path);
Scalar as_scalar(Field f, const json& j, const std::string& path);
Field as_field(const json& j, const std::string& path);
std::string join_path(const std::string& path, const std::string& key);
std::string join_path(const std::string& path, size_t i);

Generator generator_from_json(const json& j, const std::string& path);
json to_json(const Generator& g);
json to_json(const Poly& p);
Poly poly_from_json(Field f, int arity, const json& j, const std::string& path);

FreeComplex complex_from_json(const json& j, const std::string& path = "");
json to_json(const FreeComplex& c);
FreeComplex load_complex(const std::string& file);

Hypercube cube_from_json(const json& j, const std::string& path = "");
json to_json(const Hypercube& h);
// operator file: {"grading", "maps": [[e, e', [[from, to, poly], ...]], ...]}
CubeMorphism morphism_from_json(const Hypercube& s, const Hypercube& t, const json& j, const std::string& path = "");
json to_json(const CubeMorphism& m);

// [[from, to, "coef"], ...] between named generator lists, arity 0
PolyMatrix sparse_map(Field f, const std::vector<Generator>& src, const std::vector<Generator>& tgt, const json& j,
                      const std::string& path);

json to_json(const GradedModule& m);
json to_json(const DimTable& t);
json to_json(const RankTable& t);

}  // namespace fk
