#pragma once

// Crystallographic groups Gamma in R^n x| F: a full-rank translation lattice L
// together with a finite holonomy group F and, for every mu in F, a coset
// representative translation a_mu with (a_mu, mu) in Gamma.

#include "affine.hpp"
#include "smith.hpp"

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flatendo {

struct HolonomyElement {
  RatMatrix linear;
  /// Reduced into the half-open unit box in lattice coordinates.
  RatVector rep_translation;
  /// L^-1 * linear * L, integral.
  IntMatrix lattice_linear;
};

/// The element (a_mu + L z, mu) of Gamma, with z the lattice part.
struct GroupElement {
  IntVector lattice_part;
  std::size_t holonomy_index = 0;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    if (a.holonomy_index != b.holonomy_index) return a.holonomy_index < b.holonomy_index;
    return a.lattice_part < b.lattice_part;
  }
};

struct GroupOptions {
  std::size_t holonomy_cap = 1024;
};

class CrystGroup;
CrystGroup build_group(const RatMatrix& lattice, const std::vector<AffineMap>& generators,
                       const GroupOptions& options = {});

/// Gamma is generated by the lattice translations together with the stored
/// generators. Immutable once built.
class CrystGroup {
 public:
  std::size_t dim() const { return lattice_.rows(); }
  const RatMatrix& lattice() const { return lattice_; }
  const RatMatrix& lattice_inverse() const { return lattice_inv_; }
  const std::vector<HolonomyElement>& holonomy() const { return holonomy_; }
  const HolonomyElement& holonomy(std::size_t i) const { return holonomy_[i]; }
  const std::vector<AffineMap>& generators() const { return generators_; }
  std::size_t holonomy_order() const { return holonomy_.size(); }

  std::optional<std::size_t> find_holonomy(const RatMatrix& linear) const {
    auto it = index_.find(linear);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t product_index(std::size_t i, std::size_t j) const { return table_[i][j]; }
  std::size_t inverse_index(std::size_t i) const { return inverse_[i]; }
  /// Order of the holonomy element mu_i.
  std::size_t element_order(std::size_t i) const {
    std::size_t k = 1, cur = i;
    while (cur != 0) {
      cur = table_[cur][i];
      ++k;
    }
    return k;
  }
  /// Integer vector c(mu_i, mu_j) = L^-1 (a_i + mu_i a_j - a_{ij}).
  const IntVector& cocycle(std::size_t i, std::size_t j) const { return cocycle_[i][j]; }

  RatVector lattice_coords(const RatVector& x) const { return lattice_inv_ * x; }
  RatVector lattice_vector(const IntVector& z) const { return lattice_ * to_rational(z); }

  AffineMap to_affine(const GroupElement& e) const {
    const auto& h = holonomy_[e.holonomy_index];
    return AffineMap(h.rep_translation + lattice_vector(e.lattice_part), h.linear);
  }

  GroupElement identity_element() const { return {IntVector(dim(), Integer(0)), 0}; }
  GroupElement translation_element(IntVector z) const { return {std::move(z), 0}; }
  /// The coset representative (a_mu, mu).
  GroupElement coset_rep(std::size_t i) const { return {IntVector(dim(), Integer(0)), i}; }

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const {
    const std::size_t ij = table_[a.holonomy_index][b.holonomy_index];
    IntVector z = a.lattice_part + holonomy_[a.holonomy_index].lattice_linear * b.lattice_part +
                  cocycle_[a.holonomy_index][b.holonomy_index];
    return {std::move(z), ij};
  }

  GroupElement invert(const GroupElement& a) const {
    // (c + L z, mu)^-1 = (-mu^-1 (c + L z), mu^-1).
    return *member_impl(flatendo::inverse(to_affine(a)));
  }

  /// Canonical equality: dimension, lattice basis and holonomy table.
  friend bool operator==(const CrystGroup& a, const CrystGroup& b) {
    if (a.lattice_ != b.lattice_ || a.holonomy_.size() != b.holonomy_.size()) return false;
    for (std::size_t i = 0; i < a.holonomy_.size(); ++i)
      if (a.holonomy_[i].linear != b.holonomy_[i].linear ||
          a.holonomy_[i].rep_translation != b.holonomy_[i].rep_translation)
        return false;
    return true;
  }

  std::optional<GroupElement> member_impl(const AffineMap& f) const {
    if (f.dim() != dim()) throw InputError("member: dimension mismatch");
    auto idx = find_holonomy(f.linear_part());
    if (!idx) return std::nullopt;
    auto z = to_integer(lattice_coords(f.translation_part() - holonomy_[*idx].rep_translation));
    if (!z) return std::nullopt;
    return GroupElement{std::move(*z), *idx};
  }

 private:
  friend CrystGroup build_group(const RatMatrix&, const std::vector<AffineMap>&, const GroupOptions&);

  RatMatrix lattice_;
  RatMatrix lattice_inv_;
  std::vector<HolonomyElement> holonomy_;
  std::vector<AffineMap> generators_;
  std::map<RatMatrix, std::size_t> index_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::vector<IntVector>> cocycle_;
};

/// Reduce t modulo L into the half-open unit box of lattice coordinates.
inline RatVector reduce_mod_lattice(const RatMatrix& lattice, const RatMatrix& lattice_inv, const RatVector& t) {
  RatVector c = lattice_inv * t;
  for (auto& x : c) x -= Rational(floor_of(x));
  return lattice * c;
}

/// Closes the generator linear parts into F, derives coset representatives
/// and verifies every structural invariant of a crystallographic group.
inline CrystGroup build_group(const RatMatrix& lattice, const std::vector<AffineMap>& generators,
                              const GroupOptions& options) {
  if (!lattice.is_square() || lattice.rows() == 0) throw InputError("lattice basis must be a nonempty square matrix");
  const std::size_t n = lattice.rows();
  auto lattice_inv = inverse(lattice);
  if (!lattice_inv) throw InputError("lattice basis is singular");
  for (const auto& g : generators)
    if (g.dim() != n) throw InputError("generator dimension does not match lattice dimension");

  const RatMatrix id = RatMatrix::identity(n);
  std::map<RatMatrix, RatVector> reps;
  std::deque<RatMatrix> queue;
  reps.emplace(id, RatVector(n, Rational(0)));
  queue.push_back(id);
  while (!queue.empty()) {
    RatMatrix mu = queue.front();
    queue.pop_front();
    const RatVector rep = reps.at(mu);
    for (const auto& g : generators) {
      RatMatrix nu = mu * g.linear_part();
      if (reps.count(nu)) continue;
      if (reps.size() >= options.holonomy_cap)
        throw InputError("holonomy closure exceeds bound of " + std::to_string(options.holonomy_cap) +
                         " elements (linear parts do not generate a finite group)");
      reps.emplace(nu, reduce_mod_lattice(lattice, *lattice_inv, rep + mu * g.translation_part()));
      queue.push_back(std::move(nu));
    }
  }

  CrystGroup G;
  G.lattice_ = lattice;
  G.lattice_inv_ = *lattice_inv;
  G.generators_ = generators;

  // Identity first, then lexicographic on row-major entries.
  std::vector<RatMatrix> order;
  order.push_back(id);
  for (const auto& [mu, rep] : reps)
    if (mu != id) order.push_back(mu);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const RatMatrix& mu = order[i];
    auto lat = to_integer(*lattice_inv * mu * lattice);
    if (!lat) throw InputError("holonomy element " + to_string(mu) + " does not preserve the lattice");
    G.holonomy_.push_back({mu, reps.at(mu), std::move(*lat)});
    G.index_.emplace(mu, i);
  }

  const std::size_t k = order.size();
  G.table_.assign(k, std::vector<std::size_t>(k));
  G.inverse_.assign(k, 0);
  G.cocycle_.assign(k, std::vector<IntVector>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const auto& hi = G.holonomy_[i];
      const auto& hj = G.holonomy_[j];
      auto ij = G.find_holonomy(hi.linear * hj.linear);
      if (!ij) throw InvariantError("holonomy set is not closed under multiplication");
      G.table_[i][j] = *ij;
      if (*ij == 0) G.inverse_[i] = j;
      RatVector c = *lattice_inv * (hi.rep_translation + hi.linear * hj.rep_translation -
                                    G.holonomy_[*ij].rep_translation);
      auto cz = to_integer(c);
      if (!cz)
        throw InputError("cocycle condition violated for holonomy pair (" + to_string(hi.linear) + ", " +
                         to_string(hj.linear) + ")");
      G.cocycle_[i][j] = std::move(*cz);
    }

  // Two words reaching the same mu must give representatives that differ by
  // a lattice vector; otherwise Gamma contains translations outside L.
  for (const auto& g : generators) {
    for (std::size_t i = 0; i < k; ++i) {
      const auto& hi = G.holonomy_[i];
      auto j = G.find_holonomy(hi.linear * g.linear_part());
      RatVector diff = hi.rep_translation + hi.linear * g.translation_part() - G.holonomy_[*j].rep_translation;
      if (!to_integer(*lattice_inv * diff))
        throw InputError("inconsistent coset representatives: generator " + g.to_string() +
                         " produces a translation outside the lattice");
    }
  }
  return G;
}

/// Unique decomposition of f as an element of Gamma, if f belongs to Gamma.
inline std::optional<GroupElement> member(const CrystGroup& G, const AffineMap& f) { return G.member_impl(f); }

inline std::size_t holonomy_project(const CrystGroup& G, const GroupElement& e) {
  if (e.holonomy_index >= G.holonomy_order()) throw InputError("holonomy index out of range");
  return e.holonomy_index;
}

/// gamma with gamma . y = x, if x and y lie in the same Gamma-orbit.
inline std::optional<GroupElement> orbit_witness(const CrystGroup& G, const RatVector& x, const RatVector& y) {
  if (x.size() != G.dim() || y.size() != G.dim()) throw InputError("orbit_equal: dimension mismatch");
  for (std::size_t i = 0; i < G.holonomy_order(); ++i) {
    const auto& h = G.holonomy(i);
    auto z = to_integer(G.lattice_coords(x - h.rep_translation - h.linear * y));
    if (z) return GroupElement{std::move(*z), i};
  }
  return std::nullopt;
}

inline bool orbit_equal(const CrystGroup& G, const RatVector& x, const RatVector& y) {
  return orbit_witness(G, x, y).has_value();
}

/// A nontrivial element of finite order, or nullopt when Gamma is torsion-free.
///
/// For mu of order k and S = 1 + mu + ... + mu^(k-1), the element
/// g = (a_mu + L z, mu) satisfies g^k = (S (a_mu + L z), 1), so g is torsion
/// iff S_L z = -S_L c has an integer solution (lattice coordinates, c = L^-1 a_mu).
inline std::optional<GroupElement> torsion_witness(const CrystGroup& G) {
  const std::size_t n = G.dim();
  for (std::size_t i = 1; i < G.holonomy_order(); ++i) {
    const auto& h = G.holonomy(i);
    const std::size_t k = G.element_order(i);
    IntMatrix s(n, n);
    IntMatrix p = IntMatrix::identity(n);
    for (std::size_t j = 0; j < k; ++j) {
      s = s + p;
      p = p * h.lattice_linear;
    }
    RatVector rhs = -(to_rational(s) * G.lattice_coords(h.rep_translation));
    auto rhs_int = to_integer(rhs);
    if (!rhs_int) continue;
    auto sol = integer_solve(s, *rhs_int);
    if (sol) return GroupElement{std::move(sol->particular), i};
  }
  return std::nullopt;
}

/// Primitive basis (lattice coordinates) of {z in L : mu z = z for all mu in F}.
inline std::vector<IntVector> center_lattice(const CrystGroup& G) {
  const std::size_t n = G.dim();
  IntMatrix stacked(n * G.holonomy_order(), n);
  for (std::size_t i = 0; i < G.holonomy_order(); ++i) {
    IntMatrix d = G.holonomy(i).lattice_linear - IntMatrix::identity(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) stacked(i * n + r, c) = d(r, c);
  }
  return integer_kernel(stacked);
}

/// Word in the stored generators (index, inverted?) evaluated in Gamma.
inline GroupElement generator_element(const CrystGroup& G, std::size_t gen) {
  auto e = member(G, G.generators().at(gen));
  if (!e) throw InvariantError("stored generator is not a member of its own group");
  return *e;
}

}  // namespace flatendo
