#pragma once

// Abelian quotients of a crystallographic group and the maps induced on them.
//
// Source generators are t_1..t_n (lattice basis) followed by g_mu for every
// holonomy element mu in canonical order (g_0 is the identity coset rep).
// The element (a_mu + L z, mu) has source vector (z, e_mu).

#include "endo.hpp"
#include "smith.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace flatendo {

/// Z^m / (row span of the relations), presented as Z_{d_1} + ... + Z^r.
struct FinAbGroup {
  /// Nontrivial factors in chain order; 0 denotes Z.
  std::vector<Integer> invariant_factors;
  /// Row k: canonical coordinates of source generator k.
  IntMatrix generator_images;
  /// Row j: a source vector mapping to canonical basis vector j.
  IntMatrix basis_preimages;
  IntMatrix relations;

  std::size_t rank() const { return invariant_factors.size(); }
  std::size_t source_rank() const { return generator_images.rows(); }
  bool is_finite() const {
    for (const auto& d : invariant_factors)
      if (d == 0) return false;
    return true;
  }
  /// |Q|, or 0 when infinite.
  Integer order() const {
    Integer o(1);
    for (const auto& d : invariant_factors) {
      if (d == 0) return Integer(0);
      o *= d;
    }
    return o;
  }
  IntVector reduce(IntVector y) const {
    for (std::size_t j = 0; j < y.size(); ++j)
      if (invariant_factors[j] != 0) y[j] = mod_floor(y[j], invariant_factors[j]);
    return y;
  }
  /// Canonical coordinates of a source vector.
  IntVector coords(const IntVector& x) const {
    if (x.size() != source_rank()) throw InputError("FinAbGroup: source vector length mismatch");
    IntVector y(rank(), Integer(0));
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k] == 0) continue;
      for (std::size_t j = 0; j < rank(); ++j) y[j] += x[k] * generator_images(k, j);
    }
    return reduce(std::move(y));
  }
  bool is_zero(const IntVector& y) const { return is_zero_vector(reduce(y)); }
  std::string to_string() const {
    if (invariant_factors.empty()) return "0";
    std::string s;
    for (const auto& d : invariant_factors) {
      if (!s.empty()) s += " + ";
      s += d == 0 ? std::string("Z") : "Z_" + d.get_str();
    }
    return s;
  }
};

/// Presents Z^m / rowspan(relations). Uses U R V = D: y = x V, factors d_j,
/// columns with d_j = 1 are dropped.
inline FinAbGroup present_abelian(const IntMatrix& relations, std::size_t m) {
  if (relations.cols() != m) throw InputError("present_abelian: relation width mismatch");
  FinAbGroup q;
  q.relations = relations;
  SNFResult snf = relations.rows() == 0 ? SNFResult{relations, IntMatrix(0, 0), IntMatrix::identity(m)}
                                        : smith_normal_form(relations);
  auto v_inv = to_integer(*inverse(to_rational(snf.V)));
  if (!v_inv) throw InvariantError("present_abelian: V is not unimodular");
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < m; ++j) {
    Integer d = j < std::min(snf.D.rows(), snf.D.cols()) ? Integer(abs(snf.D(j, j))) : Integer(0);
    if (d == 1) continue;
    kept.push_back(j);
    q.invariant_factors.push_back(d);
  }
  q.generator_images = IntMatrix(m, kept.size());
  q.basis_preimages = IntMatrix(kept.size(), m);
  for (std::size_t c = 0; c < kept.size(); ++c) {
    for (std::size_t k = 0; k < m; ++k) {
      q.generator_images(k, c) = snf.V(k, kept[c]);
      q.basis_preimages(c, k) = (*v_inv)(kept[c], k);
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    IntVector row = q.reduce(q.generator_images.row(k));
    for (std::size_t c = 0; c < kept.size(); ++c) q.generator_images(k, c) = row[c];
  }
  for (std::size_t r = 0; r < relations.rows(); ++r)
    if (!q.is_zero(q.coords(relations.row(r)))) throw InvariantError("present_abelian: relation survives in quotient");
  return q;
}

inline std::size_t source_rank(const CrystGroup& G) { return G.dim() + G.holonomy_order(); }

inline IntVector source_vector(const CrystGroup& G, const GroupElement& e) {
  IntVector x(source_rank(G), Integer(0));
  for (std::size_t i = 0; i < G.dim(); ++i) x[i] = e.lattice_part[i];
  x[G.dim() + e.holonomy_index] += 1;
  return x;
}

inline std::vector<IntVector> abelianization_relations(const CrystGroup& G) {
  const std::size_t n = G.dim(), m = source_rank(G);
  std::vector<IntVector> rows;
  for (std::size_t mu = 0; mu < G.holonomy_order(); ++mu) {
    const IntMatrix& ml = G.holonomy(mu).lattice_linear;
    for (std::size_t i = 0; i < n; ++i) {
      IntVector r(m, Integer(0));
      for (std::size_t k = 0; k < n; ++k) r[k] = ml(k, i) - (k == i ? 1 : 0);
      if (!is_zero_vector(r)) rows.push_back(std::move(r));
    }
  }
  // g_mu g_nu = t^{c(mu,nu)} g_{mu nu}
  for (std::size_t mu = 0; mu < G.holonomy_order(); ++mu)
    for (std::size_t nu = 0; nu < G.holonomy_order(); ++nu) {
      IntVector r(m, Integer(0));
      r[n + mu] += 1;
      r[n + nu] += 1;
      r[n + G.product_index(mu, nu)] -= 1;
      const IntVector& c = G.cocycle(mu, nu);
      for (std::size_t k = 0; k < n; ++k) r[k] -= c[k];
      if (!is_zero_vector(r)) rows.push_back(std::move(r));
    }
  return rows;
}

inline IntMatrix rows_to_matrix(const std::vector<IntVector>& rows, std::size_t m) {
  return rows.empty() ? IntMatrix(0, m) : IntMatrix::from_rows(rows, m);
}

inline FinAbGroup abelianization(const CrystGroup& G) {
  return present_abelian(rows_to_matrix(abelianization_relations(G), source_rank(G)), source_rank(G));
}

struct QuotientSpec {
  enum class Kind { abelianization, mod_k, center };
  Kind kind = Kind::abelianization;
  long k = 0;

  static QuotientSpec mod(long k) {
    if (k < 2) throw InputError("quotient mod k requires k >= 2");
    return {Kind::mod_k, k};
  }
  static QuotientSpec center() { return {Kind::center, 0}; }
  /// "ab", "mod:k" (also "modk"), or "center".
  static QuotientSpec parse(const std::string& s) {
    if (s == "ab" || s == "abelianization") return {};
    if (s == "center") return center();
    std::string digits;
    if (s.rfind("mod:", 0) == 0)
      digits = s.substr(4);
    else if (s.rfind("mod", 0) == 0)
      digits = s.substr(3);
    else
      throw InputError("unknown quotient spec '" + s + "' (expected mod:k or center)");
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("invalid modulus in quotient spec '" + s + "'");
    return mod(std::stol(digits));
  }
  std::string to_string() const {
    switch (kind) {
      case Kind::abelianization: return "ab";
      case Kind::mod_k: return "mod:" + std::to_string(k);
      case Kind::center: return "center";
    }
    return "";
  }
};

inline std::vector<IntVector> quotient_extra_relations(const CrystGroup& G, const QuotientSpec& spec) {
  const std::size_t m = source_rank(G);
  std::vector<IntVector> rows;
  if (spec.kind == QuotientSpec::Kind::mod_k) {
    if (spec.k < 2) throw InputError("quotient mod k requires k >= 2");
    for (std::size_t j = 0; j < m; ++j) {
      IntVector r(m, Integer(0));
      r[j] = spec.k;
      rows.push_back(std::move(r));
    }
  } else if (spec.kind == QuotientSpec::Kind::center) {
    for (const auto& z : center_lattice(G)) {
      IntVector r(m, Integer(0));
      for (std::size_t i = 0; i < G.dim(); ++i) r[i] = z[i];
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

inline FinAbGroup finite_quotient(const CrystGroup& G, const QuotientSpec& spec) {
  auto rows = abelianization_relations(G);
  for (auto& r : quotient_extra_relations(G, spec)) rows.push_back(std::move(r));
  return present_abelian(rows_to_matrix(rows, source_rank(G)), source_rank(G));
}

inline FinAbGroup quotient_of(const CrystGroup& G, const QuotientSpec& spec) {
  return spec.kind == QuotientSpec::Kind::abelianization ? abelianization(G) : finite_quotient(G, spec);
}

/// Column j is the image of canonical basis vector j; entry (i, j) reduced mod factor i.
struct QuotientMap {
  FinAbGroup quotient;
  IntMatrix matrix;
};

/// Canonical coordinates of a group element in Q.
inline IntVector quotient_coords(const CrystGroup& G, const FinAbGroup& Q, const GroupElement& e) {
  return Q.coords(source_vector(G, e));
}

namespace detail {

inline IntMatrix reduce_columns(const FinAbGroup& Q, IntMatrix m) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    IntVector c = Q.reduce(m.column(j));
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = c[i];
  }
  return m;
}

/// Builds the induced matrix from the images (as source vectors) of every
/// source generator. Checks that each relation of Q maps into the relations.
inline IntMatrix induced_matrix(const FinAbGroup& Q, const std::vector<IntVector>& source_images,
                                std::size_t base_relation_count) {
  const std::size_t m = Q.source_rank();
  auto push = [&](const IntVector& x) {
    IntVector img(m, Integer(0));
    for (std::size_t k = 0; k < m; ++k) {
      if (x[k] == 0) continue;
      for (std::size_t l = 0; l < m; ++l) img[l] += x[k] * source_images[k][l];
    }
    return Q.coords(img);
  };
  for (std::size_t r = 0; r < Q.relations.rows(); ++r) {
    if (Q.is_zero(push(Q.relations.row(r)))) continue;
    if (r < base_relation_count) throw InvariantError("induced map does not respect the group relations");
    throw InputError("quotient subgroup is not invariant under the map (center not preserved)");
  }
  IntMatrix out(Q.rank(), Q.rank());
  for (std::size_t j = 0; j < Q.rank(); ++j) {
    IntVector c = push(Q.basis_preimages.row(j));
    for (std::size_t i = 0; i < Q.rank(); ++i) out(i, j) = c[i];
  }
  return out;
}

}  // namespace detail

/// Source-vector images of every source generator under gamma -> alpha gamma alpha^-1.
inline std::vector<IntVector> conjugation_source_images(const CrystGroup& G, const AffineMap& alpha) {
  detail::Conjugator conj(alpha);
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < G.dim(); ++i) {
    auto e = member(G, conj(AffineMap::translation(G.lattice().column(i))));
    if (!e) throw InputError("induced_on_quotient: alpha does not induce an endomorphism");
    out.push_back(source_vector(G, *e));
  }
  for (std::size_t mu = 0; mu < G.holonomy_order(); ++mu) {
    auto e = member(G, conj(G.to_affine(G.coset_rep(mu))));
    if (!e) throw InputError("induced_on_quotient: alpha does not induce an endomorphism");
    out.push_back(source_vector(G, *e));
  }
  return out;
}

inline QuotientMap induced_on_quotient(const CrystGroup& G, const AffineMap& alpha, const QuotientSpec& spec) {
  if (alpha.dim() != G.dim()) throw InputError("induced_on_quotient: dimension mismatch");
  FinAbGroup Q = quotient_of(G, spec);
  auto images = conjugation_source_images(G, alpha);
  IntMatrix m = detail::induced_matrix(Q, images, abelianization_relations(G).size());
  return {std::move(Q), std::move(m)};
}

/// Applies a quotient map matrix to canonical coordinates.
inline IntVector apply_quotient_map(const FinAbGroup& Q, const IntMatrix& m, const IntVector& y) {
  return Q.reduce(m * y);
}

/// Composite a*b reduced modulo the factors.
inline IntMatrix compose_quotient_maps(const FinAbGroup& Q, const IntMatrix& a, const IntMatrix& b) {
  return detail::reduce_columns(Q, a * b);
}

namespace detail {

/// Calls f on every element of a finite Q in odometer order; stops when f returns false.
inline void for_each_element(const FinAbGroup& Q, const std::function<bool(const IntVector&)>& f) {
  if (!Q.is_finite()) throw InputError("quotient is infinite");
  IntVector y(Q.rank(), Integer(0));
  for (;;) {
    if (!f(y)) return;
    std::size_t i = Q.rank();
    while (i > 0) {
      --i;
      y[i] += 1;
      if (y[i] < Q.invariant_factors[i]) break;
      y[i] = 0;
      if (i == 0) return;
    }
    if (Q.rank() == 0) return;
  }
}

inline std::vector<IntVector> all_elements(const FinAbGroup& Q) {
  std::vector<IntVector> out;
  for_each_element(Q, [&](const IntVector& y) {
    out.push_back(y);
    return true;
  });
  return out;
}

}  // namespace detail

/// Additive order of y in a finite Q.
inline Integer element_order(const FinAbGroup& Q, const IntVector& y) {
  Integer o(1);
  for (std::size_t j = 0; j < y.size(); ++j) {
    const Integer& d = Q.invariant_factors[j];
    if (d == 0) throw InputError("element_order: infinite factor");
    Integer r = mod_floor(y[j], d);
    if (r == 0) continue;
    Integer g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), d.get_mpz_t());
    Integer oj = d / g;
    mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), oj.get_mpz_t());
  }
  return o;
}

/// Matrix of a quotient map in a basis of named elements: column j holds the
/// coefficients of the image of basis[j], each coefficient in [0, order(basis[i])).
/// Absent when the elements do not form a basis (brute force over Q).
inline std::optional<IntMatrix> matrix_in_basis(const FinAbGroup& Q, const IntMatrix& m,
                                                const std::vector<IntVector>& basis) {
  if (!Q.is_finite()) throw InputError("matrix_in_basis: quotient is infinite");
  const std::size_t k = basis.size();
  std::vector<Integer> orders;
  Integer product(1);
  for (const auto& b : basis) {
    orders.push_back(element_order(Q, b));
    product *= orders.back();
  }
  if (product != Q.order()) return std::nullopt;
  // Every element as a combination of the basis.
  std::map<IntVector, IntVector> decomposition;
  IntVector c(k, Integer(0));
  for (;;) {
    IntVector y(Q.rank(), Integer(0));
    for (std::size_t i = 0; i < k; ++i) y = y + scaled(c[i], basis[i]);
    if (!decomposition.emplace(Q.reduce(y), c).second) return std::nullopt;
    std::size_t i = k;
    bool done = true;
    while (i > 0) {
      --i;
      c[i] += 1;
      if (c[i] < orders[i]) {
        done = false;
        break;
      }
      c[i] = 0;
    }
    if (done) break;
  }
  IntMatrix out(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    const IntVector& coeffs = decomposition.at(apply_quotient_map(Q, m, basis[j]));
    for (std::size_t i = 0; i < k; ++i) out(i, j) = coeffs[i];
  }
  return out;
}

/// True iff the elements generate Q.
inline bool generates(const FinAbGroup& Q, const std::vector<IntVector>& elements) {
  const std::size_t r = Q.rank();
  if (r == 0) return true;
  std::vector<IntVector> rows = elements;
  for (std::size_t j = 0; j < r; ++j) {
    if (Q.invariant_factors[j] == 0) continue;
    IntVector e(r, Integer(0));
    e[j] = Q.invariant_factors[j];
    rows.push_back(std::move(e));
  }
  if (rows.empty()) return false;
  SNFResult snf = smith_normal_form(IntMatrix::from_rows(rows, r));
  if (snf.rank() != r) return false;
  for (std::size_t j = 0; j < r; ++j)
    if (abs(snf.D(j, j)) != 1) return false;
  return true;
}

struct AutomorphismLimits {
  Integer max_order{4096};
  Integer max_endomorphisms{10000000};
};

/// All automorphisms of a finite Q fixing the subgroup generated by `preserved`
/// setwise, identity first, then in odometer order over column choices.
inline std::vector<IntMatrix> quotient_automorphisms(const FinAbGroup& Q, const std::vector<IntVector>& preserved,
                                                     const AutomorphismLimits& limits = {}) {
  if (!Q.is_finite()) throw InputError("quotient is infinite; use mod:k or center");
  if (Q.order() > limits.max_order)
    throw InputError("quotient too large: |Q| = " + Q.order().get_str() + " exceeds cap " + limits.max_order.get_str());
  const std::size_t r = Q.rank();
  auto elements = detail::all_elements(Q);
  // Column j must be killed by d_j.
  std::vector<std::vector<IntVector>> choices(r);
  Integer total(1);
  for (std::size_t j = 0; j < r; ++j) {
    for (const auto& y : elements)
      if (Q.is_zero(scaled(Q.invariant_factors[j], y))) choices[j].push_back(y);
    total *= static_cast<unsigned long>(choices[j].size());
  }
  if (total > limits.max_endomorphisms)
    throw InputError("quotient too large: " + total.get_str() + " endomorphisms exceed cap " +
                     limits.max_endomorphisms.get_str());

  // Subgroup T generated by `preserved`.
  std::set<IntVector> T{IntVector(r, Integer(0))};
  std::vector<IntVector> frontier{IntVector(r, Integer(0))};
  while (!frontier.empty()) {
    std::vector<IntVector> next;
    for (const auto& x : frontier)
      for (const auto& g : preserved) {
        IntVector y = Q.reduce(x + g);
        if (T.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }

  const std::size_t order = elements.size();
  std::vector<IntMatrix> out;
  IntMatrix identity = IntMatrix::identity(r);
  auto accept = [&](const IntMatrix& h) {
    for (const auto& g : preserved)
      if (!T.count(apply_quotient_map(Q, h, g))) return false;
    std::set<IntVector> image;
    for (const auto& y : elements) image.insert(apply_quotient_map(Q, h, y));
    return image.size() == order;
  };
  if (accept(identity)) out.push_back(identity);
  std::vector<std::size_t> idx(r, 0);
  IntMatrix h(r, r);
  for (;;) {
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < r; ++i) h(i, j) = choices[j][idx[j]][i];
    if (h != identity && accept(h)) out.push_back(h);
    std::size_t j = r;
    while (j > 0 && ++idx[j - 1] == choices[j - 1].size()) idx[--j] = 0;
    if (j == 0) break;
  }
  return out;
}

/// Image of the lattice subgroup in Q.
inline std::vector<IntVector> lattice_image(const CrystGroup& G, const FinAbGroup& Q) {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < G.dim(); ++i) {
    IntVector z(G.dim(), Integer(0));
    z[i] = 1;
    out.push_back(quotient_coords(G, Q, G.translation_element(z)));
  }
  return out;
}

}  // namespace flatendo
