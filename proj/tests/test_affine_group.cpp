#include <flatendo/group.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "corpus_util.hpp"
#include "test_util.hpp"

using namespace flatendo;
using namespace flatendo::testing;

namespace {

AffineMap random_affine(Gen& gen, std::size_t n) {
  for (;;) {
    RatMatrix m = gen.rat_matrix(n, n);
    if (determinant(m) != 0) return AffineMap(gen.rat_vector(n), m);
  }
}

/// Random word of length <= len in the generators and their inverses.
AffineMap random_word(Gen& gen, const CrystGroup& G, int len) {
  AffineMap w = AffineMap::identity(G.dim());
  for (int i = 0; i < len; ++i) {
    const auto& g = G.generators()[gen.integer(0, G.generators().size() - 1)];
    w = compose(w, gen.integer(0, 1) ? g : inverse(g));
  }
  // Sprinkle in a lattice translation.
  IntVector z(G.dim());
  for (auto& x : z) x = gen.integer(-3, 3);
  return compose(AffineMap::translation(G.lattice_vector(z)), w);
}

}  // namespace

TEST(AffineMap, ComposeExamples) {
  AffineMap id = AffineMap::identity(3);
  AffineMap D = corpus_map("hw_D.json");
  EXPECT_EQ(compose(id, D), D);
  EXPECT_EQ(compose(D, D), AffineMap(V({Q(1, 2), Q(0), Q(0)}), RatMatrix::identity(3)));

  CrystGroup klein = corpus_group("klein.json");
  const AffineMap& b = klein.generators()[1];
  EXPECT_EQ(compose(b, b), AffineMap::translation(V({Q(0), Q(1)})));
  EXPECT_THROW(compose(b, D), InputError);
}

TEST(AffineMap, InverseExamples) {
  EXPECT_EQ(inverse(AffineMap::identity(2)), AffineMap::identity(2));
  AffineMap f(V({Q(1, 2), Q(0)}), RM({{3, 0}, {0, 3}}));
  AffineMap inv = inverse(f);
  EXPECT_EQ(inv.translation_part(), V({Q(-1, 6), Q(0)}));
  EXPECT_EQ(inv.linear_part(), Rational(1, 3) * RatMatrix::identity(2));
  CrystGroup klein = corpus_group("klein.json");
  const AffineMap& b = klein.generators()[1];
  EXPECT_EQ(inverse(b), AffineMap(V({Q(0), Q(-1, 2)}), b.linear_part()));
}

TEST(AffineMap, ApplyExamples) {
  CrystGroup hw = corpus_group("hantzsche_wendt.json");
  const AffineMap& B = hw.generators()[1];
  EXPECT_EQ(B(V({Q(1, 3), Q(1, 3), Q(1, 3)})), V({Q(-1, 3), Q(5, 6), Q(1, 6)}));
  AffineMap alpha = corpus_map("klein_alpha.json");
  EXPECT_EQ(alpha(V({Q(-1, 4), Q(0)})), V({Q(-1, 4), Q(0)}));
  RatVector x = V({Q(7, 3), Q(-2, 5)});
  EXPECT_EQ(AffineMap::identity(2)(x), x);
  EXPECT_THROW(alpha(V({Q(1)})), InputError);
}

TEST(AffineMap, SingularLinearPartRejected) {
  EXPECT_THROW(AffineMap(V({Q(0), Q(0)}), RM({{1, 2}, {2, 4}})), InputError);
}

TEST(AffineMap, GroupLawProperties) {
  Gen gen(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = gen.integer(1, 3);
    AffineMap f = random_affine(gen, n), g = random_affine(gen, n), h = random_affine(gen, n);
    RatVector x = gen.rat_vector(n);
    EXPECT_EQ(compose(compose(f, g), h), compose(f, compose(g, h)));
    EXPECT_EQ(compose(f, inverse(f)), AffineMap::identity(n));
    EXPECT_EQ(compose(inverse(f), f), AffineMap::identity(n));
    EXPECT_EQ(compose(f, g)(x), f(g(x)));
  }
}

TEST(BuildGroup, CorpusHolonomyOrders) {
  EXPECT_EQ(corpus_group("klein.json").holonomy_order(), 2u);
  EXPECT_EQ(corpus_group("hantzsche_wendt.json").holonomy_order(), 4u);
  EXPECT_EQ(corpus_group("dim4_anosov.json").holonomy_order(), 2u);
}

TEST(BuildGroup, CanonicalTableLayout) {
  CrystGroup hw = corpus_group("hantzsche_wendt.json");
  EXPECT_EQ(hw.holonomy(0).linear, RatMatrix::identity(3));
  EXPECT_TRUE(is_zero_vector(hw.holonomy(0).rep_translation));
  for (std::size_t i = 2; i < hw.holonomy_order(); ++i) EXPECT_TRUE(hw.holonomy(i - 1).linear < hw.holonomy(i).linear);
  for (const auto& h : hw.holonomy())
    for (const auto& c : hw.lattice_coords(h.rep_translation)) {
      EXPECT_GE(c, 0);
      EXPECT_LT(c, 1);
    }
}

TEST(BuildGroup, RejectsInfiniteHolonomy) {
  // Z^2 x| Z with the generator acting by [[2,1],[1,1]]: not virtually abelian.
  RatMatrix lin = RM({{2, 1, 0}, {1, 1, 0}, {0, 0, 1}});
  AffineMap g(V({Q(0), Q(0), Q(1)}), lin);
  EXPECT_THROW(build_group(RatMatrix::identity(3), {g}), InputError);
  GroupOptions small;
  small.holonomy_cap = 3;
  AffineMap rot6(V({Q(0), Q(0)}), RM({{1, -1}, {1, 0}}));
  EXPECT_THROW(build_group(RatMatrix::identity(2), {rot6}, small), InputError);
  EXPECT_EQ(build_group(RatMatrix::identity(2), {rot6}).holonomy_order(), 6u);
}

TEST(BuildGroup, RejectsStructuralViolations) {
  // Order-2 linear part that does not preserve Z^2.
  AffineMap skew(V({Q(0), Q(0)}), RM({{0, 1}, {1, 0}}));
  RatMatrix bad = RatMatrix(2, 2);
  bad(0, 1) = Q(1, 2);
  bad(1, 0) = Q(2);
  EXPECT_THROW(build_group(RatMatrix::identity(2), {AffineMap(V({Q(0), Q(0)}), bad)}), InputError);
  // A translation that is not in the declared lattice.
  EXPECT_THROW(build_group(RatMatrix::identity(2), {AffineMap::translation(V({Q(1, 3), Q(0)}))}), InputError);
  // Two words for diag(-1,1) whose translations differ by (0,1/3).
  AffineMap r1(V({Q(0), Q(0)}), RM({{-1, 0}, {0, 1}}));
  AffineMap r2(V({Q(0), Q(1, 3)}), RM({{-1, 0}, {0, 1}}));
  EXPECT_THROW(build_group(RatMatrix::identity(2), {r1, r2}), InputError);
  EXPECT_NO_THROW(build_group(RatMatrix::identity(2), {skew}));
  EXPECT_THROW(build_group(RM({{1, 2}, {2, 4}}), {}), InputError);
}

TEST(BuildGroup, DeterministicUnderGeneratorPermutation) {
  for (const char* name : {"klein.json", "hantzsche_wendt.json", "dim4_anosov.json"}) {
    auto spec = io::read_group_spec(corpus_path(name));
    CrystGroup base = io::build_group(spec);
    auto gens = spec.generators;
    std::sort(gens.begin(), gens.end(), [](const AffineMap& a, const AffineMap& b) { return a.to_string() < b.to_string(); });
    do {
      EXPECT_EQ(build_group(spec.lattice, gens), base);
    } while (std::next_permutation(gens.begin(), gens.end(),
                                   [](const AffineMap& a, const AffineMap& b) { return a.to_string() < b.to_string(); }));
  }
}

TEST(BuildGroup, StoredGeneratorsGenerateHolonomy) {
  for (const char* name : {"klein.json", "hantzsche_wendt.json", "dim4_anosov.json"}) {
    CrystGroup G = corpus_group(name);
    std::set<std::size_t> reached{0};
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t i : std::set<std::size_t>(reached))
        for (std::size_t g = 0; g < G.generators().size(); ++g) {
          std::size_t j = G.product_index(i, generator_element(G, g).holonomy_index);
          grew |= reached.insert(j).second;
        }
    }
    EXPECT_EQ(reached.size(), G.holonomy_order()) << name;
  }
}

TEST(Member, Examples) {
  CrystGroup klein = corpus_group("klein.json");
  AffineMap alpha = corpus_map("klein_alpha.json");
  auto e = member(klein, conjugate(alpha, klein.generators()[0]));
  ASSERT_TRUE(e);
  EXPECT_EQ(e->lattice_part, Z({3, 0}));
  EXPECT_EQ(e->holonomy_index, 0u);
  EXPECT_FALSE(member(klein, AffineMap::translation(V({Q(1, 3), Q(0)}))));

  CrystGroup g4 = corpus_group("dim4_anosov.json");
  AffineMap a4 = corpus_map("dim4_alpha.json");
  const AffineMap& f = g4.generators()[4];
  AffineMap image = conjugate(a4, f);
  EXPECT_EQ(image.translation_part(), V({Q(1), Q(1), Q(21, 2), Q(13, 2)}));
  auto fe = member(g4, image);
  ASSERT_TRUE(fe);
  // a b c^10 d^6 f = ((1,1,10,6) + (0,0,1/2,1/2), L_f)
  AffineMap word = AffineMap::translation(V({Q(1), Q(1), Q(10), Q(6)})) * f;
  EXPECT_EQ(g4.to_affine(*fe), word);
  EXPECT_EQ(fe->lattice_part, Z({1, 1, 10, 6}));
}

TEST(Member, RoundTripOnRandomWords) {
  Gen gen(4);
  for (const char* name : {"klein.json", "hantzsche_wendt.json", "dim4_anosov.json"}) {
    CrystGroup G = corpus_group(name);
    for (int trial = 0; trial < 60; ++trial) {
      AffineMap w = random_word(gen, G, gen.integer(0, 6));
      auto e = member(G, w);
      ASSERT_TRUE(e) << name << " " << w.to_string();
      EXPECT_EQ(G.to_affine(*e), w);
    }
  }
}

TEST(Member, ElementArithmeticMatchesAffineComposition) {
  Gen gen(41);
  for (const char* name : {"klein.json", "hantzsche_wendt.json", "dim4_anosov.json"}) {
    CrystGroup G = corpus_group(name);
    for (int trial = 0; trial < 40; ++trial) {
      AffineMap u = random_word(gen, G, 4), v = random_word(gen, G, 4);
      GroupElement eu = *member(G, u), ev = *member(G, v);
      EXPECT_EQ(G.to_affine(G.multiply(eu, ev)), compose(u, v));
      EXPECT_EQ(G.to_affine(G.invert(eu)), inverse(u));
    }
  }
}

TEST(OrbitEqual, Examples) {
  CrystGroup hw = corpus_group("hantzsche_wendt.json");
  RatVector third = V({Q(1, 3), Q(1, 3), Q(1, 3)});
  EXPECT_FALSE(orbit_equal(hw, V({Q(-1, 3), Q(1, 6), Q(5, 6)}), third));
  auto w = orbit_witness(hw, third, third);
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, hw.identity_element());
  w = orbit_witness(hw, V({Q(4, 3), Q(1, 3), Q(1, 3)}), third);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->lattice_part, Z({1, 0, 0}));
  EXPECT_EQ(w->holonomy_index, 0u);
}

TEST(OrbitEqual, EquivalenceRelationLaws) {
  Gen gen(12);
  for (const char* name : {"klein.json", "hantzsche_wendt.json"}) {
    CrystGroup G = corpus_group(name);
    std::vector<RatVector> pts;
    for (int i = 0; i < 6; ++i) {
      RatVector p = gen.rat_vector(G.dim());
      pts.push_back(p);
      pts.push_back(random_word(gen, G, 3)(p));  // guaranteed same orbit as p
    }
    for (const auto& x : pts) {
      EXPECT_TRUE(orbit_equal(G, x, x));
      for (const auto& y : pts) {
        auto wxy = orbit_witness(G, x, y);
        auto wyx = orbit_witness(G, y, x);
        ASSERT_EQ(wxy.has_value(), wyx.has_value());
        if (wxy) {
          EXPECT_EQ(G.to_affine(*wxy)(y), x);
          // Symmetry via the inverse witness.
          EXPECT_EQ(G.to_affine(G.invert(*wxy))(x), y);
        }
        for (const auto& z : pts) {
          auto wyz = orbit_witness(G, y, z);
          if (wxy && wyz) {
            GroupElement comp = G.multiply(*wxy, *wyz);
            EXPECT_EQ(G.to_affine(comp)(z), x);
          }
        }
      }
    }
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) EXPECT_TRUE(orbit_equal(G, pts[i + 1], pts[i]));
  }
}

TEST(HolonomyProject, Examples) {
  CrystGroup klein = corpus_group("klein.json");
  EXPECT_EQ(holonomy_project(klein, klein.translation_element(Z({2, -1}))), 0u);
  std::size_t bi = holonomy_project(klein, generator_element(klein, 1));
  EXPECT_EQ(klein.holonomy(bi).linear, RM({{-1, 0}, {0, 1}}));
  CrystGroup g4 = corpus_group("dim4_anosov.json");
  std::size_t fi = holonomy_project(g4, generator_element(g4, 4));
  EXPECT_EQ(g4.holonomy(fi).linear, RM({{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
}

TEST(TorsionWitness, Examples) {
  EXPECT_FALSE(torsion_witness(corpus_group("klein.json")));
  EXPECT_FALSE(torsion_witness(corpus_group("hantzsche_wendt.json")));
  EXPECT_FALSE(torsion_witness(corpus_group("dim4_anosov.json")));
  CrystGroup bad = corpus_group("klein_torsion.json");
  auto w = torsion_witness(bad);
  ASSERT_TRUE(w);
  AffineMap t = bad.to_affine(*w);
  EXPECT_EQ(t.linear_part(), RM({{-1, 0}, {0, 1}}));
  EXPECT_EQ(compose(t, t), AffineMap::identity(2));
}

TEST(CenterLattice, Examples) {
  auto c4 = center_lattice(corpus_group("dim4_anosov.json"));
  ASSERT_EQ(c4.size(), 2u);
  EXPECT_EQ(c4[0], Z({0, 0, 1, 0}));
  EXPECT_EQ(c4[1], Z({0, 0, 0, 1}));
  auto ck = center_lattice(corpus_group("klein.json"));
  ASSERT_EQ(ck.size(), 1u);
  EXPECT_EQ(ck[0], Z({0, 1}));
  CrystGroup torus = build_group(RatMatrix::identity(2), {});
  EXPECT_EQ(center_lattice(torus).size(), 2u);
  EXPECT_TRUE(center_lattice(corpus_group("hantzsche_wendt.json")).empty());
}

TEST(CrystGroup, NonStandardLatticeBasis) {
  // Klein group written in the lattice basis {(1,0), (1,1)}: same group.
  auto spec = io::read_group_spec(corpus_path("klein.json"));
  CrystGroup std_basis = io::build_group(spec);
  CrystGroup skew = build_group(RM({{1, 1}, {0, 1}}), spec.generators);
  Gen gen(9);
  for (int trial = 0; trial < 30; ++trial) {
    AffineMap w = random_word(gen, std_basis, 4);
    EXPECT_TRUE(member(skew, w));
  }
  EXPECT_FALSE(member(skew, AffineMap::translation(V({Q(1, 2), Q(0)}))));
  EXPECT_FALSE(torsion_witness(skew));
}
