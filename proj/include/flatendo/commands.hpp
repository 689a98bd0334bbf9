#pragma once

// Command implementations behind the flatendo CLI. Each returns an exit code,
// a JSON report and a human-readable rendering of the same data.

#include "paper_verify.hpp"

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

namespace flatendo {

/// 0 = answered, 1 = verification mismatch, 2 = input error, 3 = internal invariant violation.
enum ExitCode : int { exit_ok = 0, exit_mismatch = 1, exit_input = 2, exit_invariant = 3 };

struct CommandResult {
  int exit_code = exit_ok;
  io::json report;
  std::string text;

  std::string render(bool as_json) const { return as_json ? report.dump(2) + "\n" : text; }
};

struct CommandOptions {
  long bound = 2;
  std::string quotient = "ab";
  std::vector<long> grid_denominators = default_grid_denominators();
  unsigned depth = 2;
  std::size_t holonomy_cap = 1024;
  std::string corpus_dir =
#ifdef FLATENDO_CORPUS_DIR
      FLATENDO_CORPUS_DIR;
#else
      "corpus";
#endif
};

/// Maps exceptions to exit codes; the report carries the message.
template <typename F>
CommandResult run_command(F&& body) {
  auto fail = [](int code, const std::string& kind, const std::string& msg) {
    CommandResult r;
    r.exit_code = code;
    r.report = io::json{{"error", kind}, {"message", msg}};
    r.text = kind + ": " + msg + "\n";
    return r;
  };
  try {
    return body();
  } catch (const InputError& e) {
    return fail(exit_input, "input error", e.what());
  } catch (const io::json::exception& e) {
    return fail(exit_input, "input error", e.what());
  } catch (const InvariantError& e) {
    return fail(exit_invariant, "invariant violation", e.what());
  } catch (const std::exception& e) {
    return fail(exit_invariant, "invariant violation", e.what());
  }
}

namespace cmd_detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline CrystGroup load_group(const std::string& path, const CommandOptions& opt) {
  return io::build_group(io::read_group_spec(path), GroupOptions{opt.holonomy_cap});
}

inline std::vector<std::string> generator_names(const std::string& path) { return io::read_group_spec(path).names; }

inline AffineMap load_map_for(const CrystGroup& G, const std::string& path) {
  AffineMap f = io::read_affine_map(path);
  if (f.dim() != G.dim()) throw InputError("map dimension " + std::to_string(f.dim()) + " does not match group dimension " +
                                           std::to_string(G.dim()));
  return f;
}

inline RatVector parse_point(const std::string& s, std::size_t n) {
  RatVector v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_rational(item));
  if (v.size() != n) throw InputError("point '" + s + "' must have " + std::to_string(n) + " coordinates");
  return v;
}

inline std::string element_text(const CrystGroup& G, const GroupElement& e) {
  return "t" + to_string(e.lattice_part) + " * g" + std::to_string(e.holonomy_index) + " = " + G.to_affine(e).to_string();
}

}  // namespace cmd_detail

inline CommandResult cmd_validate(const std::string& group_file, const CommandOptions& opt = {}) {
  return run_command([&] {
    CrystGroup G = cmd_detail::load_group(group_file, opt);
    auto torsion = torsion_witness(G);
    CommandResult r;
    r.report = io::json{{"dimension", G.dim()},
                        {"holonomy_order", G.holonomy_order()},
                        {"torsion_free", !torsion.has_value()},
                        {"canonical", io::canonical_json(G)}};
    r.report["torsion_witness"] = torsion ? io::to_json(*torsion) : io::json(nullptr);
    std::ostringstream t;
    t << "dimension: " << G.dim() << "\n"
      << "holonomy order: " << G.holonomy_order() << "\n"
      << "torsion-free: " << cmd_detail::yes_no(!torsion) << "\n";
    if (torsion) t << "torsion element: " << cmd_detail::element_text(G, *torsion) << "\n";
    t << "lattice: " << to_string(G.lattice()) << "\n";
    for (std::size_t i = 0; i < G.holonomy_order(); ++i)
      t << "holonomy " << i << ": " << to_string(G.holonomy(i).linear) << " rep " << to_string(G.holonomy(i).rep_translation)
        << "\n";
    r.text = t.str();
    return r;
  });
}

inline CommandResult cmd_check_endo(const std::string& group_file, const std::string& map_file,
                                    const CommandOptions& opt = {}) {
  return run_command([&] {
    CrystGroup G = cmd_detail::load_group(group_file, opt);
    AffineMap alpha = cmd_detail::load_map_for(G, map_file);
    EndoStatus st = conjugation_endo(G, alpha);
    const auto names = cmd_detail::generator_names(group_file);
    CommandResult r;
    r.report = io::to_json(st);
    std::ostringstream t;
    t << "induces endomorphism: " << cmd_detail::yes_no(st.induces) << "\n"
      << "automorphism: " << cmd_detail::yes_no(st.is_automorphism) << "\n"
      << "Hirsch: " << cmd_detail::yes_no(st.is_hirsch) << "\n";
    for (std::size_t i = 0; i < st.conjugated_generators.size(); ++i) {
      const auto& e = st.conjugated_generators[i];
      t << "alpha " << names[i] << " alpha^-1 = " << (e ? cmd_detail::element_text(G, *e) : "not in Gamma") << "\n";
    }
    if (alpha.is_pure_linear()) {
      HirschResult h = hirsch_check(G, alpha.linear_part());
      r.report["hirsch_detail"] = io::to_json(h);
      t << "Hirsch detail: " << h.detail << "\n";
    }
    if (st.induces) {
      bool full = holonomy_image_check(G, alpha);
      r.report["holonomy_image_full"] = full;
      t << "holonomy of image generates F: " << cmd_detail::yes_no(full) << "\n";
    } else {
      auto w = well_defined_witness(G, alpha, sample_grid(G, opt.grid_denominators), opt.depth);
      r.report["well_defined_witness"] = w ? io::to_json(*w) : io::json(nullptr);
      if (w)
        t << "not well defined: n = " << to_string(w->point) << ", gamma = " << cmd_detail::element_text(G, w->element)
          << ", phi(gamma n) = " << to_string(w->moved_image) << " is not in Gamma phi(n), phi(n) = "
          << to_string(w->image) << "\n";
      else
        t << "no well-definedness witness on the sample grid (depth " << opt.depth << ")\n";
    }
    r.text = t.str();
    return r;
  });
}

inline CommandResult cmd_classify(const std::string& map_file, const CommandOptions& = {}) {
  return run_command([&] {
    AffineMap alpha = io::read_affine_map(map_file);
    SpectralClass s = classify_spectrum(alpha);
    CommandResult r;
    r.report = io::to_json(s);
    std::ostringstream t;
    t << "characteristic polynomial: " << s.char_poly.to_string() << "\n"
      << "eigenvalue 1: " << cmd_detail::yes_no(s.has_eigenvalue_one) << "\n"
      << "eigenvalues on the unit circle: " << s.unit_circle_count << "\n"
      << "hyperbolic: " << cmd_detail::yes_no(s.hyperbolic) << "\n"
      << "expanding: " << cmd_detail::yes_no(s.expanding) << "\n";
    r.text = t.str();
    return r;
  });
}

inline CommandResult cmd_fixed_point(const std::string& map_file, const CommandOptions& = {}) {
  return run_command([&] {
    AffineMap alpha = io::read_affine_map(map_file);
    FixedPointResult f = fixed_point(alpha);
    CommandResult r;
    r.report = io::to_json(f);
    std::ostringstream t;
    if (f.point) {
      t << "unique fixed point: " << to_string(*f.point) << "\n";
    } else {
      t << "eigenvalue 1 present\n";
      if (f.solution_set) {
        t << "fixed points: " << to_string(f.solution_set->particular);
        for (const auto& k : f.solution_set->kernel) t << " + span " << to_string(k);
        t << "\n";
      } else {
        t << "no fixed points\n";
      }
    }
    r.text = t.str();
    return r;
  });
}

inline CommandResult cmd_orbit_eq(const std::string& group_file, const std::string& x, const std::string& y,
                                  const CommandOptions& opt = {}) {
  return run_command([&] {
    CrystGroup G = cmd_detail::load_group(group_file, opt);
    RatVector px = cmd_detail::parse_point(x, G.dim()), py = cmd_detail::parse_point(y, G.dim());
    auto w = orbit_witness(G, px, py);
    CommandResult r;
    r.report = io::json{{"equal", w.has_value()}};
    r.report["witness"] = w ? io::to_json(*w) : io::json(nullptr);
    r.text = w ? "same orbit: gamma = " + cmd_detail::element_text(G, *w) + " maps y to x\n" : "different orbits\n";
    return r;
  });
}

inline CommandResult cmd_quotient(const std::string& group_file, const CommandOptions& opt = {}) {
  return run_command([&] {
    CrystGroup G = cmd_detail::load_group(group_file, opt);
    QuotientSpec spec = QuotientSpec::parse(opt.quotient);
    FinAbGroup Q = quotient_of(G, spec);
    CommandResult r;
    r.report = io::to_json(Q);
    r.report["spec"] = spec.to_string();
    std::ostringstream t;
    t << "quotient (" << spec.to_string() << "): " << Q.to_string() << "\n";
    for (std::size_t i = 0; i < G.dim(); ++i) t << "t" << i + 1 << " -> " << to_string(Q.generator_images.row(i)) << "\n";
    for (std::size_t mu = 0; mu < G.holonomy_order(); ++mu)
      t << "g" << mu << " -> " << to_string(Q.generator_images.row(G.dim() + mu)) << "\n";
    r.text = t.str();
    return r;
  });
}

inline CommandResult cmd_abelianize(const std::string& group_file, CommandOptions opt = {}) {
  opt.quotient = "ab";
  return cmd_quotient(group_file, opt);
}

inline CommandResult cmd_induced(const std::string& group_file, const std::string& map_file,
                                 const CommandOptions& opt = {}) {
  return run_command([&] {
    CrystGroup G = cmd_detail::load_group(group_file, opt);
    AffineMap alpha = cmd_detail::load_map_for(G, map_file);
    QuotientSpec spec = QuotientSpec::parse(opt.quotient);
    QuotientMap m = induced_on_quotient(G, alpha, spec);
    CommandResult r;
    r.report = io::to_json(m);
    r.report["spec"] = spec.to_string();
    r.text = "quotient (" + spec.to_string() + "): " + m.quotient.to_string() + "\ninduced matrix: " + to_string(m.matrix) + "\n";
    return r;
  });
}

inline CommandResult cmd_realize(const std::string& group_file, const std::string& psi_file,
                                 const CommandOptions& opt = {}) {
  return run_command([&] {
    CrystGroup G = cmd_detail::load_group(group_file, opt);
    io::json j = io::read_json_file(psi_file);
    if (!j.contains("images") || !j.at("images").is_array()) throw InputError("endomorphism file needs an \"images\" array");
    std::vector<GroupElement> images;
    for (const auto& a : j.at("images")) {
      AffineMap f = io::affine_from_json(a);
      if (f.dim() != G.dim()) throw InputError("image dimension does not match group");
      auto e = member(G, f);
      if (!e) throw InputError("image " + f.to_string() + " is not an element of Gamma");
      images.push_back(*e);
    }
    std::vector<IntVector> lattice_images;
    if (j.contains("lattice_images"))
      for (const auto& v : j.at("lattice_images")) {
        auto z = to_integer(io::vector_from_json(v));
        if (!z) throw InputError("lattice images must be integer vectors in lattice coordinates");
        lattice_images.push_back(*z);
      }
    RealizeResult res = realize_endo(G, images, lattice_images);
    CommandResult r;
    r.report = io::to_json(res);
    if (res.map) {
      r.text = "realized by alpha = " + res.map->to_string() + "\n";
      for (const auto& k : res.translation_freedom) r.text += "translation may move along " + to_string(k) + "\n";
    } else {
      r.text = "not realizable: " + res.reason + "\n";
    }
    return r;
  });
}

inline CommandResult cmd_linearize(const std::string& group_file, const std::string& map_file,
                                   const CommandOptions& opt = {}) {
  return run_command([&] {
    CrystGroup G = cmd_detail::load_group(group_file, opt);
    AffineMap alpha = cmd_detail::load_map_for(G, map_file);
    Linearization lin = linearize_at_fixed_point(G, alpha);
    CommandResult r;
    io::json gens = io::json::array();
    for (const auto& g : lin.generators) gens.push_back(io::to_json(g));
    r.report = io::json{{"fixed_point", io::to_json(lin.fixed_point)},
                        {"delta", io::to_json(lin.delta)},
                        {"generators", gens},
                        {"group", io::canonical_json(lin.group)}};
    std::ostringstream t;
    t << "fixed point: " << to_string(lin.fixed_point) << "\n" << "delta: " << to_string(lin.delta) << "\n";
    for (std::size_t i = 0; i < lin.generators.size(); ++i) t << "g" << i + 1 << "' = " << lin.generators[i].to_string() << "\n";
    r.text = t.str();
    return r;
  });
}

inline CommandResult cmd_obstruct(const std::string& group_file, const std::string& map_file,
                                  const CommandOptions& opt = {}) {
  return run_command([&] {
    CrystGroup G = cmd_detail::load_group(group_file, opt);
    AffineMap alpha = cmd_detail::load_map_for(G, map_file);
    QuotientSpec spec = QuotientSpec::parse(opt.quotient);
    ObstructionReport rep = obstruction_search(G, alpha, spec, opt.bound);
    CommandResult r;
    r.report = io::to_json(rep);
    const auto& b = rep.search_bounds;
    std::ostringstream t;
    t << "quotient (" << b.quotient << "): order " << b.quotient_order.get_str() << ", alpha acts by "
      << to_string(rep.alpha_quotient) << "\n"
      << "searched: " << rep.candidates_tested << " linear candidates (coefficient bound " << b.coefficient_bound << ", "
      << b.holonomy_automorphisms << " holonomy automorphisms), " << rep.distinct_quotient_maps
      << " distinct quotient maps, " << b.quotient_automorphisms << " quotient automorphisms preserving the lattice image\n";
    if (rep.intertwiner_found)
      t << "intertwiner found: phi = " << to_string(rep.intertwiner_found->phi) << ", h = "
        << to_string(rep.intertwiner_found->h) << "\n";
    else
      t << "no intertwiner within these bounds\n";
    r.text = t.str();
    return r;
  });
}

inline CommandResult cmd_paper_verify(const CommandOptions& opt = {}) {
  return run_command([&] {
    VerifyReport v = paper_verify(opt.corpus_dir);
    CommandResult r;
    io::json checks = io::json::array();
    std::ostringstream t;
    for (const auto& c : v.checks) {
      checks.push_back(io::json{{"id", c.id}, {"locus", c.locus}, {"passed", c.passed}, {"expected", c.expected},
                                {"actual", c.actual}});
      t << (c.passed ? "PASS " : "FAIL ") << c.id << ": " << c.locus;
      if (!c.passed) t << "\n     expected: " << c.expected << "\n     actual:   " << c.actual;
      t << "\n";
    }
    std::size_t passed = 0;
    for (const auto& c : v.checks) passed += c.passed;
    t << passed << "/" << v.checks.size() << " checks passed\n";
    r.report = io::json{{"checks", checks}, {"all_passed", v.all_passed()}};
    r.text = t.str();
    r.exit_code = v.all_passed() ? exit_ok : exit_mismatch;
    return r;
  });
}

}  // namespace flatendo
