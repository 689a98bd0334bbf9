#pragma once

// Judgments about affine self-maps of a flat manifold Gamma \ R^n: which
// affine maps induce endomorphisms, the Hirsch criterion, pointwise
// well-definedness, spectra, fixed points, linearization and realization of
// abstract endomorphisms as conjugations.

#include "group.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace flatendo {

struct EndoStatus {
  bool induces = false;
  bool is_automorphism = false;
  bool is_hirsch = false;
  /// alpha g alpha^-1 for every stored generator g; empty slots are non-members.
  std::vector<std::optional<GroupElement>> conjugated_generators;
  /// alpha t alpha^-1 for the lattice basis translations t.
  std::vector<std::optional<GroupElement>> lattice_images;
};

namespace detail {

/// Conjugates by alpha with alpha^-1 computed once.
class Conjugator {
 public:
  explicit Conjugator(const AffineMap& alpha) : alpha_(alpha), inv_(inverse(alpha)) {}
  AffineMap operator()(const AffineMap& g) const { return compose(compose(alpha_, g), inv_); }
  AffineMap inverse_conjugate(const AffineMap& g) const { return compose(compose(inv_, g), alpha_); }
  const AffineMap& inverse_map() const { return inv_; }

 private:
  AffineMap alpha_;
  AffineMap inv_;
};

inline std::vector<AffineMap> lattice_translations(const CrystGroup& G) {
  std::vector<AffineMap> out;
  for (std::size_t i = 0; i < G.dim(); ++i) out.push_back(AffineMap::translation(G.lattice().column(i)));
  return out;
}

}  // namespace detail

namespace detail {

/// alpha Gamma alpha^-1 in Gamma, with no bookkeeping.
inline bool conjugation_induces(const CrystGroup& G, const Conjugator& conj) {
  for (const auto& g : G.generators())
    if (!member(G, conj(g))) return false;
  for (std::size_t i = 0; i < G.dim(); ++i)
    if (!member(G, conj(AffineMap::translation(G.lattice().column(i))))) return false;
  return true;
}

}  // namespace detail

/// Decides alpha Gamma alpha^-1 in Gamma by checking the stored generators
/// and the lattice basis (together they generate Gamma).
inline EndoStatus conjugation_endo(const CrystGroup& G, const AffineMap& alpha) {
  if (alpha.dim() != G.dim()) throw InputError("conjugation_endo: dimension mismatch");
  detail::Conjugator conj(alpha);
  EndoStatus st;
  st.induces = true;
  for (const auto& g : G.generators()) {
    st.conjugated_generators.push_back(member(G, conj(g)));
    st.induces &= st.conjugated_generators.back().has_value();
  }
  const auto translations = detail::lattice_translations(G);
  for (const auto& t : translations) {
    st.lattice_images.push_back(member(G, conj(t)));
    st.induces &= st.lattice_images.back().has_value();
  }
  if (!st.induces) return st;

  st.is_automorphism = true;
  for (const auto& g : G.generators()) st.is_automorphism &= member(G, conj.inverse_conjugate(g)).has_value();
  for (const auto& t : translations) st.is_automorphism &= member(G, conj.inverse_conjugate(t)).has_value();

  if (alpha.is_pure_linear()) {
    const RatMatrix& phi = alpha.linear_part();
    const RatMatrix& phi_inv = conj.inverse_map().linear_part();
    st.is_hirsch = std::all_of(G.holonomy().begin(), G.holonomy().end(),
                               [&](const HolonomyElement& h) { return G.find_holonomy(phi * h.linear * phi_inv).has_value(); });
  }
  return st;
}

struct HirschResult {
  bool holds = false;
  bool conjugation_invariant = false;  // phi Gamma phi^-1 in Gamma
  bool normalizes_holonomy = false;    // phi F phi^-1 = F
  std::string detail;
};

/// Hirsch criterion for a pure linear map phi.
inline HirschResult hirsch_check(const CrystGroup& G, const RatMatrix& phi) {
  if (!phi.is_square() || phi.rows() != G.dim()) throw InputError("hirsch_check: dimension mismatch");
  if (determinant(phi) == 0) throw InputError("hirsch_check: linear map is singular");
  const detail::Conjugator conj(AffineMap::linear(phi));
  const RatMatrix& phi_inv = conj.inverse_map().linear_part();
  HirschResult r;
  std::set<std::size_t> image;
  for (const auto& h : G.holonomy()) {
    auto idx = G.find_holonomy(phi * h.linear * phi_inv);
    if (idx) image.insert(*idx);
  }
  r.normalizes_holonomy = image.size() == G.holonomy_order();
  r.conjugation_invariant = detail::conjugation_induces(G, conj);
  r.holds = r.normalizes_holonomy && r.conjugation_invariant;
  if (!r.normalizes_holonomy)
    r.detail = "phi F phi^-1 != F";
  else if (!r.conjugation_invariant)
    r.detail = "phi Gamma phi^-1 is not contained in Gamma";
  else
    r.detail = "phi Gamma phi^-1 in Gamma and phi F phi^-1 = F";
  return r;
}

/// Grid of points with lattice coordinates k/q in [0, 1) for the given
/// denominators q, sorted and deduplicated per axis.
inline std::vector<RatVector> sample_grid(const CrystGroup& G, const std::vector<long>& denominators) {
  std::set<Rational> values{Rational(0)};
  for (long q : denominators) {
    if (q <= 0) throw InputError("grid denominators must be positive");
    for (long k = 0; k < q; ++k) values.insert(make_rational(Integer(k), Integer(q)));
  }
  std::vector<Rational> axis(values.begin(), values.end());
  const std::size_t n = G.dim();
  std::vector<RatVector> grid;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    RatVector c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = axis[idx[i]];
    grid.push_back(G.lattice() * c);
    std::size_t i = n;
    while (i > 0 && ++idx[i - 1] == axis.size()) idx[--i] = 0;
    if (i == 0) break;
  }
  return grid;
}

inline const std::vector<long>& default_grid_denominators() {
  static const std::vector<long> d{2, 3, 4, 6};
  return d;
}

/// Distinct elements of word length <= depth in the stored generators and
/// their inverses, ordered by length then by generation order.
inline std::vector<GroupElement> elements_up_to_depth(const CrystGroup& G, unsigned depth) {
  std::vector<GroupElement> letters;
  for (std::size_t g = 0; g < G.generators().size(); ++g) {
    GroupElement e = generator_element(G, g);
    letters.push_back(e);
    letters.push_back(G.invert(e));
  }
  std::vector<GroupElement> out{G.identity_element()};
  std::set<GroupElement> seen{G.identity_element()};
  std::vector<GroupElement> frontier{G.identity_element()};
  for (unsigned d = 0; d < depth; ++d) {
    std::vector<GroupElement> next;
    for (const auto& w : frontier)
      for (const auto& l : letters) {
        GroupElement e = G.multiply(w, l);
        if (seen.insert(e).second) {
          out.push_back(e);
          next.push_back(e);
        }
      }
    frontier = std::move(next);
  }
  return out;
}

struct WellDefinedWitness {
  RatVector point;           // n
  GroupElement element;      // gamma
  RatVector moved_image;     // phi(gamma . n)
  RatVector image;           // phi(n)
};

/// Searches for n, gamma with Gamma . phi(gamma . n) != Gamma . phi(n).
/// Outer loop over group elements, inner loop over the sample points.
inline std::optional<WellDefinedWitness> well_defined_witness(const CrystGroup& G, const AffineMap& phi,
                                                             const std::vector<RatVector>& samples, unsigned depth) {
  if (phi.dim() != G.dim()) throw InputError("well_defined_witness: dimension mismatch");
  for (const auto& gamma : elements_up_to_depth(G, depth)) {
    AffineMap g = G.to_affine(gamma);
    for (const auto& n : samples) {
      if (n.size() != G.dim()) throw InputError("well_defined_witness: sample dimension mismatch");
      RatVector moved = phi(g(n));
      RatVector image = phi(n);
      if (!orbit_equal(G, moved, image)) return WellDefinedWitness{n, gamma, std::move(moved), std::move(image)};
    }
  }
  return std::nullopt;
}

struct SpectralClass {
  bool has_eigenvalue_one = false;
  int unit_circle_count = 0;
  bool expanding = false;
  bool hyperbolic = false;
  RatPoly char_poly;
};

/// Depends only on the linear part: translations do not move eigenvalues.
inline SpectralClass classify_spectrum(const AffineMap& alpha) {
  SpectralClass s;
  s.char_poly = flatendo::char_poly(alpha.linear_part());
  if (s.char_poly.constant() == 0) throw InputError("classify_spectrum: linear part is singular");
  s.has_eigenvalue_one = s.char_poly(Rational(1)) == 0;
  s.unit_circle_count = unit_circle_root_count(s.char_poly);
  s.hyperbolic = s.unit_circle_count == 0;
  // Roots of the reciprocal are the inverses of the eigenvalues.
  s.expanding = schur_cohn_all_inside(s.char_poly.reciprocal());
  if (s.expanding && !s.hyperbolic) throw InvariantError("classify_spectrum: expanding but not hyperbolic");
  return s;
}

struct FixedPointResult {
  bool eigenvalue_one = false;
  /// Set when 1 is not an eigenvalue.
  std::optional<RatVector> point;
  /// Solutions of (I - delta) x = d when 1 is an eigenvalue and the system is consistent.
  std::optional<LinearSolution> solution_set;
};

inline FixedPointResult fixed_point(const AffineMap& alpha) {
  const std::size_t n = alpha.dim();
  RatMatrix a = RatMatrix::identity(n) - alpha.linear_part();
  FixedPointResult r;
  r.eigenvalue_one = determinant(a) == 0;
  auto sol = solve_exact(a, alpha.translation_part());
  if (!r.eigenvalue_one) {
    if (!sol || !sol->kernel.empty()) throw InvariantError("fixed_point: nonsingular system without unique solution");
    if (alpha(sol->particular) != sol->particular) throw InvariantError("fixed_point: solution is not fixed");
    r.point = sol->particular;
  } else {
    r.solution_set = std::move(sol);
  }
  return r;
}

struct Linearization {
  CrystGroup group;               // Gamma' = x0^-1 Gamma x0
  std::vector<AffineMap> generators;
  RatMatrix delta;
  RatVector fixed_point;
};

/// Conjugates Gamma by the translation to the unique fixed point x0 of alpha,
/// after which the pure linear part delta induces the same self-map.
inline Linearization linearize_at_fixed_point(const CrystGroup& G, const AffineMap& alpha) {
  if (!conjugation_endo(G, alpha).induces) throw InputError("linearize: alpha does not induce an endomorphism");
  auto fp = fixed_point(alpha);
  if (!fp.point) throw InputError("linearize: alpha has eigenvalue 1, no unique fixed point");
  const RatVector& x0 = *fp.point;
  AffineMap shift = AffineMap::translation(x0);
  AffineMap unshift = AffineMap::translation(-x0);
  std::vector<AffineMap> gens;
  for (const auto& g : G.generators()) gens.push_back(unshift * g * shift);
  CrystGroup shifted = build_group(G.lattice(), gens, GroupOptions{std::max<std::size_t>(G.holonomy_order(), 1024)});
  const RatMatrix& delta = alpha.linear_part();
  if (!conjugation_endo(shifted, AffineMap::linear(delta)).induces)
    throw InvariantError("linearize: delta Gamma' delta^-1 is not contained in Gamma'");
  return {std::move(shifted), std::move(gens), delta, x0};
}

struct RealizeResult {
  std::optional<AffineMap> map;
  /// Translations d that also realize psi form map.translation + span(this).
  std::vector<RatVector> translation_freedom;
  std::string reason;
};

/// Finds alpha with alpha g alpha^-1 = psi(g) for every stored generator g
/// (and alpha t alpha^-1 = psi(t) on the lattice basis when those images are
/// supplied). Unknowns are the entries of delta and d, which enter linearly:
///   delta mu_g - mu'_g delta = 0   and   delta t_g + (I - mu'_g) d = t'_g.
inline RealizeResult realize_endo(const CrystGroup& G, const std::vector<GroupElement>& generator_images,
                                  const std::vector<IntVector>& lattice_images = {}) {
  const std::size_t n = G.dim();
  if (generator_images.size() != G.generators().size())
    throw InputError("realize_endo: need exactly one image per stored generator");
  if (!lattice_images.empty() && lattice_images.size() != n)
    throw InputError("realize_endo: lattice images must cover the whole lattice basis");
  for (const auto& e : generator_images)
    if (e.lattice_part.size() != n || e.holonomy_index >= G.holonomy_order())
      throw InputError("realize_endo: image is not a valid group element");

  const std::size_t nd = n * n, unknowns = nd + n;
  auto delta_var = [n](std::size_t i, std::size_t j) { return i * n + j; };
  std::vector<RatVector> rows;
  RatVector rhs;
  RealizeResult out;

  // Holonomy part alone first, to report a mismatch precisely.
  std::vector<RatVector> hol_rows;
  for (std::size_t k = 0; k < G.generators().size(); ++k) {
    const RatMatrix& mu = G.generators()[k].linear_part();
    const RatMatrix& mu2 = G.holonomy(generator_images[k].holonomy_index).linear;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        // (delta mu)_ij - (mu2 delta)_ij
        RatVector row(unknowns, Rational(0));
        for (std::size_t l = 0; l < n; ++l) {
          row[delta_var(i, l)] += mu(l, j);
          row[delta_var(l, j)] -= mu2(i, l);
        }
        hol_rows.push_back(row);
      }
  }
  {
    std::vector<RatVector> just_delta;
    for (const auto& r : hol_rows) just_delta.emplace_back(r.begin(), r.begin() + nd);
    RatMatrix h = just_delta.empty() ? RatMatrix(0, nd) : RatMatrix::from_rows(just_delta, nd);
    auto ker = rational_kernel(h);
    bool any_invertible_direction = false;
    // delta = 0 only => no invertible intertwiner of the holonomy parts.
    any_invertible_direction = !ker.empty();
    if (!any_invertible_direction) {
      out.reason = "holonomy mismatch: no linear map intertwines the generator holonomies with their images";
      return out;
    }
  }
  for (auto& r : hol_rows) {
    rows.push_back(std::move(r));
    rhs.push_back(Rational(0));
  }
  for (std::size_t k = 0; k < G.generators().size(); ++k) {
    const RatVector& t = G.generators()[k].translation_part();
    AffineMap image = G.to_affine(generator_images[k]);
    const RatMatrix& mu2 = image.linear_part();
    for (std::size_t i = 0; i < n; ++i) {
      RatVector row(unknowns, Rational(0));
      for (std::size_t j = 0; j < n; ++j) row[delta_var(i, j)] += t[j];
      for (std::size_t j = 0; j < n; ++j) row[nd + j] += (i == j ? Rational(1) : Rational(0)) - mu2(i, j);
      rows.push_back(std::move(row));
      rhs.push_back(image.translation_part()[i]);
    }
  }
  for (std::size_t b = 0; b < lattice_images.size(); ++b) {
    if (lattice_images[b].size() != n) throw InputError("realize_endo: lattice image length mismatch");
    RatVector src = G.lattice().column(b);
    RatVector dst = G.lattice_vector(lattice_images[b]);
    for (std::size_t i = 0; i < n; ++i) {
      RatVector row(unknowns, Rational(0));
      for (std::size_t j = 0; j < n; ++j) row[delta_var(i, j)] += src[j];
      rows.push_back(std::move(row));
      rhs.push_back(dst[i]);
    }
  }

  auto sol = solve_exact(RatMatrix::from_rows(rows, unknowns), rhs);
  if (!sol) {
    out.reason = "inconsistent conjugation equations: the images do not come from a conjugation (not a homomorphism)";
    return out;
  }
  for (const auto& k : sol->kernel) {
    if (!std::all_of(k.begin(), k.begin() + nd, [](const Rational& x) { return x == 0; })) {
      out.reason = "linear part underdetermined: supply images of the lattice basis";
      return out;
    }
    out.translation_freedom.emplace_back(k.begin() + nd, k.end());
  }
  RatMatrix delta(n, n, RatVector(sol->particular.begin(), sol->particular.begin() + nd));
  if (determinant(delta) == 0) {
    out.reason = "the forced linear part is singular";
    out.translation_freedom.clear();
    return out;
  }
  AffineMap alpha(RatVector(sol->particular.begin() + nd, sol->particular.end()), delta);
  detail::Conjugator conj(alpha);
  for (std::size_t k = 0; k < G.generators().size(); ++k)
    if (conj(G.generators()[k]) != G.to_affine(generator_images[k]))
      throw InvariantError("realize_endo: solution does not reproduce a generator image");
  if (!conjugation_endo(G, alpha).induces) {
    out.reason = "conjugation maps lattice translations outside Gamma";
    out.translation_freedom.clear();
    return out;
  }
  out.map = std::move(alpha);
  return out;
}

/// True iff the holonomies of the conjugated generators (and lattice images)
/// generate all of F.
inline bool holonomy_image_check(const CrystGroup& G, const AffineMap& alpha) {
  EndoStatus st = conjugation_endo(G, alpha);
  if (!st.induces) throw InputError("holonomy_image_check: alpha does not induce an endomorphism");
  std::vector<std::size_t> gens;
  for (const auto& e : st.conjugated_generators) gens.push_back(e->holonomy_index);
  std::set<std::size_t> reached{0};
  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t x : frontier)
      for (std::size_t g : gens) {
        std::size_t y = G.product_index(x, g);
        if (reached.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return reached.size() == G.holonomy_order();
}

}  // namespace flatendo
