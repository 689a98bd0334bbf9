#pragma once

// Checks the worked examples in corpus/expectations.json against fresh
// computations. Each check yields one line; any mismatch lists both values.

#include "report.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace flatendo {

struct VerifyCheck {
  std::string id;
  std::string locus;
  bool passed = false;
  std::string expected;
  std::string actual;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }
};

namespace verify_detail {

using io::json;

struct NamedGroup {
  CrystGroup group;
  std::map<std::string, std::size_t> names;
};

inline NamedGroup load(const std::filesystem::path& dir, const json& file) {
  auto spec = io::read_group_spec((dir / file.get<std::string>()).string());
  std::map<std::string, std::size_t> names;
  for (std::size_t i = 0; i < spec.names.size(); ++i) names[spec.names[i]] = i;
  return {io::build_group(spec), std::move(names)};
}

inline AffineMap load_map(const std::filesystem::path& dir, const json& file) {
  return io::read_affine_map((dir / file.get<std::string>()).string());
}

/// Word [[name, exponent], ...] evaluated left to right.
inline GroupElement evaluate_word(const NamedGroup& ng, const json& word) {
  const CrystGroup& G = ng.group;
  GroupElement acc = G.identity_element();
  for (const auto& letter : word) {
    const std::string name = letter.at(0).get<std::string>();
    long exp = letter.at(1).get<long>();
    auto it = ng.names.find(name);
    if (it == ng.names.end()) throw InputError("unknown generator name '" + name + "' in expectations");
    GroupElement g = generator_element(G, it->second);
    if (exp < 0) {
      g = G.invert(g);
      exp = -exp;
    }
    for (long k = 0; k < exp; ++k) acc = G.multiply(acc, g);
  }
  return acc;
}

inline std::string word_text(const json& word) {
  if (word.empty()) return "1";
  std::string s;
  for (const auto& l : word) {
    s += l.at(0).get<std::string>();
    long e = l.at(1).get<long>();
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

inline std::string element_text(const CrystGroup& G, const GroupElement& e) { return G.to_affine(e).to_string(); }

inline std::vector<Integer> factors_from_json(const json& j) {
  std::vector<Integer> out;
  for (const auto& x : j) out.push_back(Integer(x.get<std::string>()));
  return out;
}

inline std::string factors_text(const std::vector<Integer>& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? ", " : "") + f[i].get_str();
  return s + "]";
}

class Recorder {
 public:
  explicit Recorder(VerifyReport& r) : r_(r) {}
  void check(std::string id, const std::string& locus, bool ok, std::string expected, std::string actual) {
    r_.checks.push_back({std::move(id), locus, ok, std::move(expected), std::move(actual)});
  }
  /// Runs f, recording an exception as a failed check.
  template <typename F>
  void guarded(const std::string& id, const std::string& locus, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      check(id, locus, false, "no error", std::string("error: ") + e.what());
    }
  }

 private:
  VerifyReport& r_;
};

inline void check_generator_images(Recorder& rec, const std::string& section, const NamedGroup& ng, const AffineMap& alpha,
                                   const json& images) {
  const CrystGroup& G = ng.group;
  for (const auto& img : images) {
    const std::string gen = img.at("generator").get<std::string>();
    const std::string locus = img.at("locus").get<std::string>();
    rec.guarded(section + ".image." + gen, locus, [&] {
      GroupElement expected = evaluate_word(ng, img.at("word"));
      if (img.contains("prefix")) {
        auto z = to_integer(G.lattice_coords(io::vector_from_json(img.at("prefix"))));
        if (!z) throw InputError("prefix is not a lattice vector");
        expected = G.multiply(G.translation_element(*z), expected);
      }
      AffineMap actual = conjugate(alpha, G.generators().at(ng.names.at(gen)));
      bool ok = member(G, actual) == expected;
      rec.check(section + ".image." + gen, locus, ok, element_text(G, expected), actual.to_string());
    });
  }
}

inline void verify_auslander(Recorder& rec, const json& e) {
  const std::string locus = e.at("locus").get<std::string>();
  rec.guarded("auslander", locus, [&] {
    RatMatrix A = io::matrix_from_json(e.at("A"));
    RatMatrix B = io::matrix_from_json(e.at("B"));
    RatMatrix expected = io::matrix_from_json(e.at("B_prime"));
    RatMatrix bp = A * B * *inverse(A);
    rec.check("auslander.conjugate", locus, bp == expected, to_string(expected), to_string(bp));
    RatMatrix gram = bp.transpose() * bp;
    rec.check("auslander.not_orthogonal", locus, gram != RatMatrix::identity(bp.rows()), "B'^T B' != I",
              "B'^T B' = " + to_string(gram));
  });
}

inline void verify_franks(Recorder& rec, const std::filesystem::path& dir, const json& e) {
  NamedGroup ng = load(dir, e.at("group"));
  const CrystGroup& G = ng.group;
  AffineMap D = load_map(dir, e.at("conjugator"));
  AffineMap phi = load_map(dir, e.at("point_map"));

  EndoStatus st = conjugation_endo(G, D);
  rec.check("franks.induces", "conjugation by D maps Gamma into Gamma", st.induces, "true", st.induces ? "true" : "false");
  check_generator_images(rec, "franks", ng, D, e.at("generator_images"));

  const auto& hn = e.at("holonomy_normalized");
  rec.guarded("franks.holonomy", hn.at("locus").get<std::string>(), [&] {
    bool normalizes = hirsch_check(G, D.linear_part()).normalizes_holonomy;
    bool expected = hn.at("expected").get<bool>();
    // delta normalizes F, but D mu D^-1 picks up the translation d - delta mu delta^-1 d.
    bool d_normalizes = true;
    for (const auto& h : G.holonomy()) {
      AffineMap c = conjugate(D, AffineMap::linear(h.linear));
      d_normalizes &= c.is_pure_linear() && G.find_holonomy(c.linear_part()).has_value();
    }
    rec.check("franks.holonomy", hn.at("locus").get<std::string>(), d_normalizes == expected && normalizes,
              expected ? "D F D^-1 = F" : "D F D^-1 != F", d_normalizes ? "D F D^-1 = F" : "D F D^-1 != F");
  });

  const auto& w = e.at("witness");
  const std::string wl = w.at("locus").get<std::string>();
  rec.guarded("franks.witness", wl, [&] {
    RatVector n = io::vector_from_json(w.at("point"));
    GroupElement gamma = evaluate_word(ng, w.at("element"));
    AffineMap g = G.to_affine(gamma);
    RatVector moved = g(n);
    RatVector expected_moved = io::vector_from_json(w.at("moved_point"));
    rec.check("franks.witness.moved_point", wl, moved == expected_moved, to_string(expected_moved), to_string(moved));
    RatVector image = phi(n), moved_image = phi(moved);
    RatVector expected_image = io::vector_from_json(w.at("image"));
    RatVector expected_moved_image = io::vector_from_json(w.at("moved_image"));
    rec.check("franks.witness.image", wl, image == expected_image, to_string(expected_image), to_string(image));
    rec.check("franks.witness.moved_image", wl, moved_image == expected_moved_image, to_string(expected_moved_image),
              to_string(moved_image));
    bool distinct = !orbit_equal(G, moved_image, image);
    rec.check("franks.witness.orbits_differ", wl, distinct, "Gamma.phi(gamma.n) != Gamma.phi(n)",
              distinct ? "orbits differ" : "orbits coincide");
    auto found = well_defined_witness(G, phi, {n}, 1);
    bool same = found && found->element == gamma;
    rec.check("franks.witness.search", wl, same, "witness element " + element_text(G, gamma),
              found ? "witness element " + element_text(G, found->element) : "no witness found");
  });

  const auto& cf = e.at("coset_forms");
  const std::string cl = cf.at("locus").get<std::string>();
  rec.guarded("franks.coset_forms", cl, [&] {
    RatVector n = io::vector_from_json(w.at("point"));
    RatVector image = phi(n);
    RatVector moved_image = phi(G.to_affine(evaluate_word(ng, w.at("element")))(n));
    const auto& words = cf.at("words");
    const auto& vectors = cf.at("vectors");
    if (words.size() != vectors.size()) throw InputError("coset_forms: words and vectors differ in length");
    std::set<std::size_t> cosets;
    for (std::size_t k = 0; k < words.size(); ++k) {
      GroupElement g = evaluate_word(ng, words[k]);
      cosets.insert(g.holonomy_index);
      RatVector v = G.to_affine(g)(image);
      RatVector expected = io::vector_from_json(vectors[k]);
      rec.check("franks.coset_form." + word_text(words[k]), cl, v == expected, to_string(expected), to_string(v));
      auto diff = to_integer(G.lattice_coords(moved_image - v));
      rec.check("franks.coset_form." + word_text(words[k]) + ".excluded", cl, !diff.has_value(),
                "phi(gamma.n) not in Z^3 + " + to_string(v), diff ? "differs by a lattice vector" : "no lattice vector");
    }
    rec.check("franks.coset_forms.cover", cl, cosets.size() == G.holonomy_order(),
              std::to_string(G.holonomy_order()) + " cosets", std::to_string(cosets.size()) + " cosets");
  });
}

inline void verify_obstruction(Recorder& rec, const std::string& section, const CrystGroup& G, const AffineMap& alpha,
                               const json& o) {
  const std::string locus = o.at("locus").get<std::string>();
  rec.guarded(section + ".obstruction", locus, [&] {
    auto r = obstruction_search(G, alpha, QuotientSpec::parse(o.at("quotient").get<std::string>()), o.at("bound").get<long>());
    bool expected = o.at("found").get<bool>();
    bool found = r.intertwiner_found.has_value();
    rec.check(section + ".obstruction", locus, found == expected, expected ? "intertwiner found" : "none",
              (found ? "intertwiner found" : "none") + std::string(" (") + std::to_string(r.candidates_tested) +
                  " candidates, " + std::to_string(r.search_bounds.quotient_automorphisms) + " automorphisms)");
  });
}

inline void check_spectrum(Recorder& rec, const std::string& section, const AffineMap& alpha, const json& s) {
  const std::string locus = s.at("locus").get<std::string>();
  rec.guarded(section + ".spectrum", locus, [&] {
    SpectralClass c = classify_spectrum(alpha);
    auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
    for (const char* key : {"expanding", "hyperbolic"}) {
      if (!s.contains(key)) continue;
      bool expected = s.at(key).get<bool>();
      bool actual = std::string(key) == "expanding" ? c.expanding : c.hyperbolic;
      rec.check(section + ".spectrum." + key, locus, expected == actual, flag(expected), flag(actual));
    }
    if (s.contains("char_poly_factor")) {
      std::vector<Rational> coeffs;
      for (const auto& x : s.at("char_poly_factor")) coeffs.push_back(io::rational_from_json(x));
      RatPoly f(coeffs);
      bool divides = divmod(c.char_poly, f).second.is_zero();
      rec.check(section + ".spectrum.factor", locus, divides, f.to_string() + " divides the characteristic polynomial",
                c.char_poly.to_string());
    }
  });
}

inline void verify_klein(Recorder& rec, const std::filesystem::path& dir, const json& e) {
  NamedGroup ng = load(dir, e.at("group"));
  const CrystGroup& G = ng.group;
  AffineMap alpha = load_map(dir, e.at("map"));
  check_generator_images(rec, "klein", ng, alpha, e.at("generator_images"));
  check_spectrum(rec, "klein", alpha, e.at("spectrum"));

  const auto& ab = e.at("abelianization");
  const std::string al = ab.at("locus").get<std::string>();
  rec.guarded("klein.abelianization", al, [&] {
    FinAbGroup Q = abelianization(G);
    auto expected = factors_from_json(ab.at("factors"));
    rec.check("klein.abelianization.factors", al, Q.invariant_factors == expected, factors_text(expected),
              factors_text(Q.invariant_factors));
    std::vector<IntVector> gens;
    for (const auto& w : ab.at("generated_by")) gens.push_back(quotient_coords(G, Q, evaluate_word(ng, w)));
    rec.check("klein.abelianization.generators", al, generates(Q, gens), "listed images generate", 
              generates(Q, gens) ? "listed images generate" : "listed images do not generate");
    IntVector t = quotient_coords(G, Q, evaluate_word(ng, ab.at("torsion")));
    bool torsion = !Q.is_zero(t) && Q.is_zero(t + t);
    rec.check("klein.abelianization.torsion", al, torsion, "image of order 2", to_string(t));
  });

  const auto& ind = e.at("induced");
  const std::string il = ind.at("locus").get<std::string>();
  rec.guarded("klein.induced", il, [&] {
    QuotientMap m = induced_on_quotient(G, alpha, QuotientSpec::parse(ind.at("quotient").get<std::string>()));
    for (const auto& pair : ind.at("images")) {
      IntVector of = quotient_coords(G, m.quotient, evaluate_word(ng, pair.at("of")));
      IntVector is = quotient_coords(G, m.quotient, evaluate_word(ng, pair.at("is")));
      IntVector actual = apply_quotient_map(m.quotient, m.matrix, of);
      rec.check("klein.induced." + word_text(pair.at("of")), il, actual == is, to_string(is), to_string(actual));
    }
  });
  verify_obstruction(rec, "klein", G, alpha, e.at("obstruction"));
}

inline void verify_anosov(Recorder& rec, const std::filesystem::path& dir, const json& e) {
  NamedGroup ng = load(dir, e.at("group"));
  const CrystGroup& G = ng.group;
  AffineMap alpha = load_map(dir, e.at("map"));
  const auto& au = e.at("automorphism");
  EndoStatus st = conjugation_endo(G, alpha);
  bool expected_aut = au.at("expected").get<bool>();
  rec.check("anosov.automorphism", au.at("locus").get<std::string>(), st.is_automorphism == expected_aut,
            expected_aut ? "true" : "false", st.is_automorphism ? "true" : "false");
  check_generator_images(rec, "anosov", ng, alpha, e.at("generator_images"));
  check_spectrum(rec, "anosov", alpha, e.at("spectrum"));

  const auto& c = e.at("center");
  rec.guarded("anosov.center", c.at("locus").get<std::string>(), [&] {
    std::vector<IntVector> expected;
    for (const auto& v : c.at("basis")) expected.push_back(*to_integer(io::vector_from_json(v)));
    expected = hermite_basis(expected, G.dim());
    auto actual = center_lattice(G);
    auto text = [](const std::vector<IntVector>& b) {
      std::string s;
      for (const auto& v : b) s += to_string(v);
      return s;
    };
    rec.check("anosov.center", c.at("locus").get<std::string>(), actual == expected, text(expected), text(actual));
  });

  const auto& q = e.at("quotient");
  rec.guarded("anosov.quotient", q.at("locus").get<std::string>(), [&] {
    FinAbGroup Q = quotient_of(G, QuotientSpec::parse(q.at("spec").get<std::string>()));
    auto expected = factors_from_json(q.at("factors"));
    rec.check("anosov.quotient", q.at("locus").get<std::string>(), Q.invariant_factors == expected, factors_text(expected),
              factors_text(Q.invariant_factors));
  });

  const auto& ma = e.at("M_alpha");
  const std::string ml = ma.at("locus").get<std::string>();
  rec.guarded("anosov.M_alpha", ml, [&] {
    QuotientMap m = induced_on_quotient(G, alpha, QuotientSpec::parse(ma.at("spec").get<std::string>()));
    std::vector<IntVector> basis;
    for (const auto& w : ma.at("basis")) basis.push_back(quotient_coords(G, m.quotient, evaluate_word(ng, w)));
    auto actual = matrix_in_basis(m.quotient, m.matrix, basis);
    auto expected = to_integer(io::matrix_from_json(ma.at("matrix")));
    if (!expected) throw InputError("M_alpha expectation must be an integer matrix");
    rec.check("anosov.M_alpha", ml, actual && *actual == *expected, to_string(*expected),
              actual ? to_string(*actual) : "named elements do not form a basis");
  });
  verify_obstruction(rec, "anosov", G, alpha, e.at("obstruction"));
}

}  // namespace verify_detail

/// Runs every check in <dir>/expectations.json.
inline VerifyReport paper_verify(const std::filesystem::path& corpus_dir) {
  using namespace verify_detail;
  json e = io::read_json_file((corpus_dir / "expectations.json").string());
  VerifyReport report;
  Recorder rec(report);
  try {
    verify_auslander(rec, e.at("auslander"));
    rec.guarded("franks", "Hantzsche-Wendt data", [&] { verify_franks(rec, corpus_dir, e.at("franks")); });
    rec.guarded("klein", "Klein bottle data", [&] { verify_klein(rec, corpus_dir, e.at("klein_expanding")); });
    rec.guarded("anosov", "four-dimensional data", [&] { verify_anosov(rec, corpus_dir, e.at("anosov")); });
  } catch (const json::exception& ex) {
    throw InputError(std::string("malformed expectations file: ") + ex.what());
  }
  return report;
}

}  // namespace flatendo
