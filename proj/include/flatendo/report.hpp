#pragma once

// Stable JSON shapes for analysis results. Rationals and integers are strings.

#include "io.hpp"
#include "obstruction.hpp"

#include <string>
#include <vector>

namespace flatendo::io {

inline json to_json(const RatPoly& p) {
  json a = json::array();
  for (const auto& c : p.coefficients()) a.push_back(to_json(c));
  return json{{"coefficients", a}, {"text", p.to_string()}};
}

inline json to_json(const std::optional<GroupElement>& e) { return e ? to_json(*e) : json(nullptr); }

inline json to_json(const EndoStatus& s) {
  json gens = json::array(), lat = json::array();
  for (const auto& e : s.conjugated_generators) gens.push_back(to_json(e));
  for (const auto& e : s.lattice_images) lat.push_back(to_json(e));
  return json{{"induces", s.induces},
              {"is_automorphism", s.is_automorphism},
              {"is_hirsch", s.is_hirsch},
              {"conjugated_generators", gens},
              {"lattice_images", lat}};
}

inline json to_json(const HirschResult& h) {
  return json{{"holds", h.holds},
              {"conjugation_invariant", h.conjugation_invariant},
              {"normalizes_holonomy", h.normalizes_holonomy},
              {"detail", h.detail}};
}

inline json to_json(const SpectralClass& s) {
  return json{{"has_eigenvalue_one", s.has_eigenvalue_one},
              {"unit_circle_count", s.unit_circle_count},
              {"expanding", s.expanding},
              {"hyperbolic", s.hyperbolic},
              {"char_poly", to_json(s.char_poly)}};
}

inline json to_json(const LinearSolution& s) {
  json k = json::array();
  for (const auto& v : s.kernel) k.push_back(to_json(v));
  return json{{"particular", to_json(s.particular)}, {"kernel", k}};
}

inline json to_json(const FixedPointResult& r) {
  json j{{"eigenvalue_one", r.eigenvalue_one}};
  j["point"] = r.point ? to_json(*r.point) : json(nullptr);
  j["solution_set"] = r.solution_set ? to_json(*r.solution_set) : json(nullptr);
  return j;
}

inline json to_json(const WellDefinedWitness& w) {
  return json{{"point", to_json(w.point)},
              {"element", to_json(w.element)},
              {"moved_image", to_json(w.moved_image)},
              {"image", to_json(w.image)}};
}

inline json to_json(const FinAbGroup& q) {
  json f = json::array();
  for (const auto& d : q.invariant_factors) f.push_back(to_json(d));
  return json{{"invariant_factors", f}, {"text", q.to_string()}, {"generator_images", to_json(q.generator_images)}};
}

inline json to_json(const QuotientMap& m) {
  return json{{"quotient", to_json(m.quotient)}, {"matrix", to_json(m.matrix)}};
}

inline json to_json(const RealizeResult& r) {
  json free = json::array();
  for (const auto& v : r.translation_freedom) free.push_back(to_json(v));
  json j{{"realizable", r.map.has_value()}, {"translation_freedom", free}};
  j["map"] = r.map ? to_json(*r.map) : json(nullptr);
  j["reason"] = r.reason;
  return j;
}

inline json to_json(const ObstructionReport& r) {
  const auto& b = r.search_bounds;
  json factors = json::array();
  for (const auto& d : b.invariant_factors) factors.push_back(to_json(d));
  json bounds{{"coefficient_bound", b.coefficient_bound},
              {"quotient", b.quotient},
              {"invariant_factors", factors},
              {"quotient_order", to_json(b.quotient_order)},
              {"holonomy_automorphisms", b.holonomy_automorphisms},
              {"quotient_automorphisms", b.quotient_automorphisms},
              {"max_quotient_order", to_json(b.limits.max_order)},
              {"max_endomorphisms", to_json(b.limits.max_endomorphisms)}};
  json j{{"candidates_tested", r.candidates_tested},
         {"distinct_quotient_maps", r.distinct_quotient_maps},
         {"alpha_quotient", to_json(r.alpha_quotient)},
         {"search_bounds", bounds}};
  if (r.intertwiner_found)
    j["intertwiner_found"] = json{{"phi", to_json(r.intertwiner_found->phi)},
                                  {"phi_quotient", to_json(r.intertwiner_found->phi_quotient)},
                                  {"h", to_json(r.intertwiner_found->h)}};
  else
    j["intertwiner_found"] = nullptr;
  return j;
}

}  // namespace flatendo::io
