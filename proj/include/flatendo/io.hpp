#pragma once

// JSON file formats. Rationals are strings "p/q" (or "p"); JSON integers are
// also accepted on input. Matrices are row-major arrays of rows.

#include "group.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace flatendo::io {

using json = nlohmann::json;

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  throw InputError("expected a rational string, got " + j.dump());
}

inline json to_json(const Rational& r) { return to_string(r); }
inline json to_json(const Integer& z) { return z.get_str(); }

template <typename T>
json to_json(const Vector<T>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

template <typename T>
json to_json(const Matrix<T>& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline RatVector vector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of rationals, got " + j.dump());
  RatVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

inline RatMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("expected a nonempty array of matrix rows");
  std::vector<RatVector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  const std::size_t cols = rows.front().size();
  return RatMatrix::from_rows(rows, cols);
}

inline AffineMap affine_from_json(const json& j) {
  if (!j.is_object() || !j.contains("translation") || !j.contains("linear"))
    throw InputError("affine map needs \"translation\" and \"linear\" fields");
  RatVector t = vector_from_json(j.at("translation"));
  RatMatrix m = matrix_from_json(j.at("linear"));
  if (j.contains("dimension") && j.at("dimension").get<std::size_t>() != t.size())
    throw InputError("affine map: declared dimension does not match translation length");
  return AffineMap(std::move(t), std::move(m));
}

inline json to_json(const AffineMap& f) {
  return json{{"translation", to_json(f.translation_part())}, {"linear", to_json(f.linear_part())}};
}

/// Parsed group file, before closure.
struct GroupSpec {
  RatMatrix lattice;
  std::vector<AffineMap> generators;
  std::vector<std::string> names;
};

inline GroupSpec group_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dimension") || !j.contains("generators"))
    throw InputError("group file needs \"dimension\" and \"generators\" fields");
  const auto& dj = j.at("dimension");
  if (!dj.is_number_integer() || dj.get<long>() <= 0) throw InputError("dimension must be a positive integer");
  const std::size_t n = dj.get<std::size_t>();
  GroupSpec spec;
  spec.lattice = j.contains("lattice") ? matrix_from_json(j.at("lattice")) : RatMatrix::identity(n);
  if (spec.lattice.rows() != n || spec.lattice.cols() != n) throw InputError("lattice must be an n x n matrix");
  if (!j.at("generators").is_array()) throw InputError("generators must be an array");
  for (const auto& g : j.at("generators")) {
    AffineMap f = affine_from_json(g);
    if (f.dim() != n) throw InputError("generator dimension does not match \"dimension\"");
    spec.generators.push_back(std::move(f));
    spec.names.push_back(g.contains("name") ? g.at("name").get<std::string>()
                                            : "g" + std::to_string(spec.names.size() + 1));
  }
  return spec;
}

inline json to_json(const GroupSpec& spec) {
  json gens = json::array();
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    json g = to_json(spec.generators[i]);
    g["name"] = spec.names[i];
    gens.push_back(std::move(g));
  }
  return json{{"dimension", spec.lattice.rows()}, {"lattice", to_json(spec.lattice)}, {"generators", gens}};
}

inline json to_json(const GroupElement& e) {
  return json{{"lattice_part", to_json(e.lattice_part)}, {"holonomy_index", e.holonomy_index}};
}

/// Canonical form: lattice plus the full holonomy table.
inline json canonical_json(const CrystGroup& G) {
  json hol = json::array();
  for (const auto& h : G.holonomy())
    hol.push_back(json{{"linear", to_json(h.linear)}, {"rep_translation", to_json(h.rep_translation)}});
  return json{{"dimension", G.dim()}, {"lattice", to_json(G.lattice())}, {"holonomy", hol}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("cannot parse '" + path + "': " + e.what());
  }
}

inline GroupSpec read_group_spec(const std::string& path) {
  try {
    return group_spec_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw InputError("malformed group file '" + path + "': " + e.what());
  }
}

inline AffineMap read_affine_map(const std::string& path) {
  try {
    return affine_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw InputError("malformed affine map file '" + path + "': " + e.what());
  }
}

inline CrystGroup build_group(const GroupSpec& spec, const GroupOptions& options = {}) {
  return flatendo::build_group(spec.lattice, spec.generators, options);
}

}  // namespace flatendo::io
