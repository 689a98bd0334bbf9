#include <flatendo/obstruction.hpp>

#include <gtest/gtest.h>

#include <set>

#include "corpus_util.hpp"
#include "test_util.hpp"

using namespace flatendo;
using namespace flatendo::testing;

namespace {

// All integer matrices with entries in [-b, b] that pass the full Hirsch check.
std::set<RatMatrix> brute_force_hirsch(const CrystGroup& G, long b) {
  const std::size_t n = G.dim();
  std::set<RatMatrix> out;
  std::vector<long> e(n * n, -b);
  for (;;) {
    RatMatrix x(n, n);
    for (std::size_t k = 0; k < n * n; ++k) x(k / n, k % n) = e[k];
    if (determinant(x) != 0 && hirsch_check(G, x).holds) out.insert(x);
    std::size_t k = 0;
    while (k < e.size() && e[k] == b) e[k++] = -b;
    if (k == e.size()) break;
    ++e[k];
  }
  return out;
}

std::set<RatMatrix> as_set(const std::vector<RatMatrix>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(HolonomyAutomorphisms, Counts) {
  auto k = holonomy_automorphisms(corpus_group("klein.json"));
  ASSERT_EQ(k.size(), 1u);
  auto hw = holonomy_automorphisms(corpus_group("hantzsche_wendt.json"));
  EXPECT_EQ(hw.size(), 6u);  // Aut(Z_2 + Z_2)
  for (const auto& pi : {k.front(), hw.front()})
    for (std::size_t i = 0; i < pi.size(); ++i) EXPECT_EQ(pi[i], i);
}

TEST(EnumerateCandidates, KleinBoundThreeIsDiagonal) {
  CrystGroup K = corpus_group("klein.json");
  auto c = enumerate_candidates(K, 3);
  std::set<RatMatrix> expected;
  for (long k : {-3, -2, -1, 1, 2, 3})
    for (long l : {-3, -1, 1, 3}) expected.insert(RM({{k, 0}, {0, l}}));
  EXPECT_EQ(c.size(), 24u);
  EXPECT_EQ(as_set(c), expected);
  EXPECT_EQ(c.front(), RatMatrix::identity(2));
  EXPECT_THROW(enumerate_candidates(K, 0), InputError);
}

TEST(EnumerateCandidates, NestedInBound) {
  for (const char* name : {"klein.json", "hantzsche_wendt.json"}) {
    CrystGroup G = corpus_group(name);
    auto small = as_set(enumerate_candidates(G, 1)), big = as_set(enumerate_candidates(G, 2));
    EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end())) << name;
  }
  CrystGroup K = corpus_group("klein.json");
  EXPECT_EQ(enumerate_candidates(K, 1).size(), 4u);
  EXPECT_EQ(enumerate_candidates(K, 2).size(), 8u);
}

TEST(EnumerateCandidates, FastFilterAgreesWithHirschCheck) {
  CrystGroup K = corpus_group("klein.json");
  EXPECT_EQ(as_set(enumerate_candidates(K, 2)), brute_force_hirsch(K, 2));
  CrystGroup H = corpus_group("hantzsche_wendt.json");
  EXPECT_EQ(as_set(enumerate_candidates(H, 1)), brute_force_hirsch(H, 1));
}

TEST(EnumerateCandidates, EveryCandidatePassesHirsch) {
  CrystGroup G = corpus_group("dim4_anosov.json");
  auto c = enumerate_candidate_data(G, 1);
  ASSERT_FALSE(c.empty());
  for (std::size_t i = 0; i < c.size(); i += 97) EXPECT_TRUE(hirsch_check(G, c[i].phi).holds) << i;
  EXPECT_EQ(c.front().phi, RatMatrix::identity(4));
}

TEST(EnumerateCandidates, Deterministic) {
  CrystGroup H = corpus_group("hantzsche_wendt.json");
  EXPECT_EQ(enumerate_candidates(H, 2), enumerate_candidates(H, 2));
}

TEST(ObstructionSearch, KleinExpandingMapHasNoIntertwiner) {
  CrystGroup K = corpus_group("klein.json");
  auto rep = obstruction_search(K, corpus_map("klein_alpha.json"), QuotientSpec::mod(4), 3);
  EXPECT_FALSE(rep.intertwiner_found);
  EXPECT_EQ(rep.candidates_tested, 24u);
  EXPECT_EQ(rep.search_bounds.invariant_factors, (std::vector<Integer>{Integer(2), Integer(4)}));
  EXPECT_EQ(rep.search_bounds.quotient_order, 8);
}

TEST(ObstructionSearch, AnosovCenterQuotientSmallBound) {
  CrystGroup G = corpus_group("dim4_anosov.json");
  auto rep = obstruction_search(G, corpus_map("dim4_alpha.json"), QuotientSpec::center(), 1);
  EXPECT_FALSE(rep.intertwiner_found);
  EXPECT_GT(rep.candidates_tested, 0u);
  EXPECT_LE(rep.distinct_quotient_maps, rep.candidates_tested);
  EXPECT_EQ(rep.search_bounds.quotient_order, 8);
}

TEST(ObstructionSearch, IdentityIsItsOwnIntertwiner) {
  for (const char* name : {"klein.json", "hantzsche_wendt.json", "dim4_anosov.json"}) {
    CrystGroup G = corpus_group(name);
    auto rep = obstruction_search(G, AffineMap::identity(G.dim()), QuotientSpec::mod(2), 1);
    ASSERT_TRUE(rep.intertwiner_found) << name;
    EXPECT_EQ(rep.intertwiner_found->phi, RatMatrix::identity(G.dim())) << name;
    EXPECT_EQ(rep.candidates_tested, 1u) << name;
    EXPECT_EQ(rep.intertwiner_found->h, IntMatrix::identity(rep.alpha_quotient.rows())) << name;
  }
}

TEST(ObstructionSearch, FoundIntertwinerSatisfiesEquation) {
  // A linear Hirsch map is conjugate to itself on every quotient.
  CrystGroup K = corpus_group("klein.json");
  for (const auto& phi : enumerate_candidates(K, 2)) {
    auto rep = obstruction_search(K, AffineMap::linear(phi), QuotientSpec::mod(4), 2);
    ASSERT_TRUE(rep.intertwiner_found);
    QuotientMap aq = induced_on_quotient(K, AffineMap::linear(phi), QuotientSpec::mod(4));
    const auto& w = *rep.intertwiner_found;
    EXPECT_EQ(compose_quotient_maps(aq.quotient, w.h, rep.alpha_quotient),
              compose_quotient_maps(aq.quotient, w.phi_quotient, w.h));
    EXPECT_EQ(w.phi_quotient, induced_on_quotient(K, AffineMap::linear(w.phi), QuotientSpec::mod(4)).matrix);
  }
}

TEST(ObstructionSearch, Errors) {
  CrystGroup K = corpus_group("klein.json");
  AffineMap alpha = corpus_map("klein_alpha.json");
  EXPECT_THROW(obstruction_search(K, alpha, QuotientSpec{}, 2), InputError);  // infinite quotient
  EXPECT_THROW(obstruction_search(K, alpha, QuotientSpec::mod(4), 2, AutomorphismLimits{Integer(4), Integer(10)}),
               InputError);
  EXPECT_THROW(obstruction_search(corpus_group("hantzsche_wendt.json"), corpus_map("hw_phi.json"),
                                  QuotientSpec::mod(2), 1),
               InputError);
}

TEST(ObstructionSearch, Deterministic) {
  CrystGroup K = corpus_group("klein.json");
  auto a = obstruction_search(K, corpus_map("klein_alpha.json"), QuotientSpec::mod(4), 3);
  auto b = obstruction_search(K, corpus_map("klein_alpha.json"), QuotientSpec::mod(4), 3);
  EXPECT_EQ(a.candidates_tested, b.candidates_tested);
  EXPECT_EQ(a.distinct_quotient_maps, b.distinct_quotient_maps);
  EXPECT_EQ(a.alpha_quotient, b.alpha_quotient);
}
