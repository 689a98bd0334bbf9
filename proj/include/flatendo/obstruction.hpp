#pragma once

// Bounded searches for linear maps satisfying the Hirsch criterion and for
// quotient automorphisms intertwining two induced maps.

#include "quotient.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace flatendo {

/// Automorphisms of the holonomy group as index permutations, identity first.
inline std::vector<std::vector<std::size_t>> holonomy_automorphisms(const CrystGroup& G) {
  const std::size_t k = G.holonomy_order();
  std::vector<std::size_t> gens;
  for (const auto& g : G.generators()) {
    std::size_t h = *G.find_holonomy(g.linear_part());
    if (h != 0 && std::find(gens.begin(), gens.end(), h) == gens.end()) gens.push_back(h);
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> choice(gens.size(), 0);
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < gens.size() && ok; ++i) ok = G.element_order(choice[i]) == G.element_order(gens[i]);
    std::vector<std::size_t> map(k, k);
    if (ok) {
      map[0] = 0;
      std::vector<std::size_t> frontier{0};
      while (!frontier.empty() && ok) {
        std::vector<std::size_t> next;
        for (std::size_t x : frontier)
          for (std::size_t i = 0; i < gens.size() && ok; ++i) {
            std::size_t y = G.product_index(x, gens[i]);
            std::size_t img = G.product_index(map[x], choice[i]);
            if (map[y] == k) {
              map[y] = img;
              next.push_back(y);
            } else if (map[y] != img) {
              ok = false;
            }
          }
        frontier = std::move(next);
      }
    }
    if (ok) {
      std::vector<bool> hit(k, false);
      for (std::size_t x = 0; x < k && ok; ++x) {
        if (map[x] == k || hit[map[x]]) ok = false;
        else hit[map[x]] = true;
      }
      for (std::size_t x = 0; x < k && ok; ++x)
        for (std::size_t y = 0; y < k && ok; ++y) ok = map[G.product_index(x, y)] == G.product_index(map[x], map[y]);
    }
    if (ok) out.push_back(map);
    std::size_t i = gens.size();
    while (i > 0 && ++choice[i - 1] == k) choice[--i] = 0;
    if (i == 0) break;
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    auto is_id = [](const auto& m) {
      for (std::size_t x = 0; x < m.size(); ++x)
        if (m[x] != x) return false;
      return true;
    };
    return is_id(a) && !is_id(b);
  });
  return out;
}

struct Candidate {
  RatMatrix phi;                   // standard coordinates
  IntMatrix phi_lattice;           // lattice coordinates
  std::vector<std::size_t> pi;     // induced automorphism of F
};

namespace detail {

/// Integer matrices X (row-major unknowns) with X mu_lat = pi(mu)_lat X for all mu.
inline std::vector<IntMatrix> intertwiner_basis(const CrystGroup& G, const std::vector<std::size_t>& pi) {
  const std::size_t n = G.dim();
  std::vector<IntVector> rows;
  for (std::size_t mu = 0; mu < G.holonomy_order(); ++mu) {
    const IntMatrix& a = G.holonomy(mu).lattice_linear;
    const IntMatrix& b = G.holonomy(pi[mu]).lattice_linear;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        IntVector r(n * n, Integer(0));
        for (std::size_t l = 0; l < n; ++l) {
          r[i * n + l] += a(l, j);
          r[l * n + j] -= b(i, l);
        }
        if (!is_zero_vector(r)) rows.push_back(std::move(r));
      }
  }
  std::vector<IntMatrix> basis;
  for (const auto& v : integer_kernel(rows_to_matrix(rows, n * n))) basis.emplace_back(n, n, v);
  return basis;
}

/// Coset reps in lattice coordinates scaled to integers by a common denominator.
struct ScaledReps {
  Integer denominator{1};
  std::vector<IntVector> reps;
};

inline ScaledReps scaled_reps(const CrystGroup& G) {
  ScaledReps s;
  std::vector<RatVector> lat;
  for (std::size_t mu = 0; mu < G.holonomy_order(); ++mu) {
    lat.push_back(G.lattice_coords(G.holonomy(mu).rep_translation));
    for (const auto& x : lat.back()) mpz_lcm(s.denominator.get_mpz_t(), s.denominator.get_mpz_t(), x.get_den_mpz_t());
  }
  for (const auto& v : lat) {
    IntVector w;
    for (const auto& x : v) w.push_back(Integer(x.get_num() * (s.denominator / x.get_den())));
    s.reps.push_back(std::move(w));
  }
  return s;
}

/// phi_lat a~_mu - a~_pi(mu) integral for every coset rep. Together with the
/// intertwining constraint and integrality of phi_lat this is exactly the
/// Hirsch criterion.
inline bool reps_compatible(const IntMatrix& phi_lat, const std::vector<std::size_t>& pi, const ScaledReps& s) {
  const std::size_t n = phi_lat.rows();
  for (std::size_t mu = 1; mu < s.reps.size(); ++mu)
    for (std::size_t i = 0; i < n; ++i) {
      Integer acc = -s.reps[pi[mu]][i];
      for (std::size_t j = 0; j < n; ++j) acc += phi_lat(i, j) * s.reps[mu][j];
      if (mpz_divisible_p(acc.get_mpz_t(), s.denominator.get_mpz_t()) == 0) return false;
    }
  return true;
}

}  // namespace detail

/// Linear maps phi satisfying the Hirsch criterion whose lattice-coordinate matrix has
/// coefficients of max-norm <= bound over an integer kernel basis of the
/// constraint phi mu = pi(mu) phi, for each automorphism pi of F.
/// Order: the identity first, then by max-norm shell, then pi, then
/// coefficient vectors lexicographically.
inline std::vector<Candidate> enumerate_candidate_data(const CrystGroup& G, long bound) {
  if (bound < 1) throw InputError("enumerate_candidates: bound must be >= 1");
  const std::size_t n = G.dim();
  auto pis = holonomy_automorphisms(G);
  std::vector<std::vector<IntMatrix>> bases;
  for (const auto& pi : pis) bases.push_back(detail::intertwiner_basis(G, pi));
  const detail::ScaledReps reps = detail::scaled_reps(G);

  std::vector<Candidate> out;
  std::set<IntMatrix> seen;
  auto consider = [&](const IntMatrix& x, std::size_t p) {
    if (determinant(x) == 0 || seen.count(x)) return;
    if (!detail::reps_compatible(x, pis[p], reps)) return;
    RatMatrix phi = G.lattice() * to_rational(x) * G.lattice_inverse();
    seen.insert(x);
    out.push_back({std::move(phi), x, pis[p]});
  };
  consider(IntMatrix::identity(n), 0);
  for (long s = 1; s <= bound; ++s)
    for (std::size_t p = 0; p < pis.size(); ++p) {
      const auto& basis = bases[p];
      const std::size_t k = basis.size();
      if (k == 0) continue;
      std::vector<long> c(k, -s);
      for (;;) {
        bool on_shell = false;
        for (long v : c) on_shell |= (v == s || v == -s);
        if (on_shell) {
          IntMatrix x(n, n);
          for (std::size_t i = 0; i < k; ++i) {
            if (c[i] == 0) continue;
            for (std::size_t r = 0; r < n; ++r)
              for (std::size_t q = 0; q < n; ++q)
                if (basis[i](r, q) != 0) x(r, q) += c[i] * basis[i](r, q);
          }
          consider(x, p);
        }
        std::size_t i = k;
        while (i > 0 && ++c[i - 1] > s) c[--i] = -s;
        if (i == 0) break;
      }
    }
  return out;
}

inline std::vector<RatMatrix> enumerate_candidates(const CrystGroup& G, long bound) {
  std::vector<RatMatrix> out;
  for (auto& c : enumerate_candidate_data(G, bound)) out.push_back(std::move(c.phi));
  return out;
}

/// Source-vector images under conjugation by a candidate, without inverting.
inline std::vector<IntVector> candidate_source_images(const CrystGroup& G, const Candidate& c) {
  const std::size_t n = G.dim();
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    GroupElement e = G.translation_element(c.phi_lattice.column(i));
    out.push_back(source_vector(G, e));
  }
  RatMatrix phi_lat = to_rational(c.phi_lattice);
  for (std::size_t mu = 0; mu < G.holonomy_order(); ++mu) {
    RatVector z = phi_lat * G.lattice_coords(G.holonomy(mu).rep_translation) -
                  G.lattice_coords(G.holonomy(c.pi[mu]).rep_translation);
    auto zi = to_integer(z);
    if (!zi) throw InvariantError("candidate_source_images: coset image is not in Gamma");
    out.push_back(source_vector(G, {*zi, c.pi[mu]}));
  }
  return out;
}

struct SearchBounds {
  long coefficient_bound = 0;
  std::string quotient;
  std::vector<Integer> invariant_factors;
  Integer quotient_order{0};
  std::size_t holonomy_automorphisms = 0;
  std::size_t quotient_automorphisms = 0;
  AutomorphismLimits limits;
};

struct Intertwiner {
  RatMatrix phi;
  IntMatrix phi_quotient;
  IntMatrix h;
};

struct ObstructionReport {
  std::size_t candidates_tested = 0;
  std::size_t distinct_quotient_maps = 0;
  IntMatrix alpha_quotient;
  std::optional<Intertwiner> intertwiner_found;
  SearchBounds search_bounds;
};

/// Looks for a candidate phi and a quotient automorphism h preserving the
/// lattice image with h * alpha_Q = phi_Q * h. First hit in candidate order,
/// then automorphism order.
inline ObstructionReport obstruction_search(const CrystGroup& G, const AffineMap& alpha, const QuotientSpec& spec,
                                            long bound, const AutomorphismLimits& limits = {}) {
  if (!conjugation_endo(G, alpha).induces) throw InputError("obstruction_search: alpha does not induce an endomorphism");
  QuotientMap aq = induced_on_quotient(G, alpha, spec);
  const FinAbGroup& Q = aq.quotient;
  auto auts = quotient_automorphisms(Q, lattice_image(G, Q), limits);

  ObstructionReport rep;
  rep.alpha_quotient = aq.matrix;
  rep.search_bounds = {bound, spec.to_string(), Q.invariant_factors, Q.order(), holonomy_automorphisms(G).size(),
                       auts.size(), limits};

  const std::size_t base = abelianization_relations(G).size();
  std::map<IntMatrix, std::optional<IntMatrix>> tried;
  for (const auto& c : enumerate_candidate_data(G, bound)) {
    ++rep.candidates_tested;
    IntMatrix pq = detail::induced_matrix(Q, candidate_source_images(G, c), base);
    auto it = tried.find(pq);
    if (it == tried.end()) {
      std::optional<IntMatrix> hit;
      for (const auto& h : auts)
        if (compose_quotient_maps(Q, h, aq.matrix) == compose_quotient_maps(Q, pq, h)) {
          hit = h;
          break;
        }
      it = tried.emplace(pq, hit).first;
    }
    if (it->second) {
      rep.intertwiner_found = Intertwiner{c.phi, pq, *it->second};
      break;
    }
  }
  rep.distinct_quotient_maps = tried.size();
  return rep;
}

}  // namespace flatendo
