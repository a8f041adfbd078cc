#include <gtest/gtest.h>

#include "legfront/legfront.hpp"

using namespace legfront;

TEST(Poset, Counts) {
  const auto Z = build_poset(PosetKind::ZigzagInDisk);
  EXPECT_EQ(Z.strata.size(), 7u);
  EXPECT_EQ(Z.edges.size(), 14u);
  EXPECT_EQ(Z.positive_edges().size(), 5u);
  const auto S = build_poset(PosetKind::SaucerSlice);
  EXPECT_EQ(S.strata.size(), 6u);
  EXPECT_EQ(S.positive_edges().size(), 6u);
  const auto E = build_poset(PosetKind::EmptyDisk);
  EXPECT_EQ(E.strata.size(), 1u);
  EXPECT_TRUE(E.edges.empty());
}

TEST(Poset, DimensionsIncreaseAndRelationsComplete) {
  for (auto k : {PosetKind::ZigzagInDisk, PosetKind::SaucerSlice, PosetKind::EmptyDisk}) {
    const auto P = build_poset(k);
    for (const auto& e : P.edges) EXPECT_LT(P.strata[e.from].dim, P.strata[e.to].dim);
    // brute-force count of composable pairs
    std::size_t pairs = 0;
    for (const auto& a : P.edges)
      for (const auto& b : P.edges)
        if (a.to == b.from) {
          ++pairs;
          EXPECT_GE(P.edge(a.from, b.to), 0);
        }
    EXPECT_EQ(P.relations.size(), pairs);
  }
}

TEST(Poset, NamesRoundTrip) {
  for (auto k : {PosetKind::ZigzagInDisk, PosetKind::SaucerSlice, PosetKind::EmptyDisk})
    EXPECT_EQ(poset_kind_from(to_string(k)), k);
  EXPECT_THROW(poset_kind_from("torus"), SchemaError);
  const auto Z = build_poset(PosetKind::ZigzagInDisk);
  EXPECT_EQ(Z.edge_name(Z.edge(Z.stratum("c1"), Z.stratum("e2"))), "c1->e2");
  EXPECT_THROW(Z.stratum("nope"), SchemaError);
}

TEST(Microsupport, ConstantSheafIsZeroSection) {
  for (auto k : {PosetKind::ZigzagInDisk, PosetKind::SaucerSlice})
    for (int p : {2, 3, 5}) {
      const auto m = microsupport(constant_sheaf(build_poset(k), p, 2));
      EXPECT_TRUE(m.failing.empty());
      EXPECT_TRUE(m.zero_section_only);
    }
}

TEST(Microsupport, SaucerInteriorSheaf) {
  const auto S = build_poset(PosetKind::SaucerSlice);
  const auto m = microsupport(indicator_sheaf(S, {"top", "inner"}));
  EXPECT_EQ(m.failing, S.positive_edges());
  EXPECT_FALSE(m.zero_section_only);
}

TEST(Microsupport, CuspSkyscraperLeavesPositiveSet) {
  const auto Z = build_poset(PosetKind::ZigzagInDisk);
  const auto m = microsupport(indicator_sheaf(Z, {"c1"}));
  bool outside = false;
  for (int e : m.failing) outside |= !Z.edges[e].positive;
  EXPECT_TRUE(outside);
}

TEST(Microsupport, BrokenRelationRejected) {
  const auto Z = build_poset(PosetKind::ZigzagInDisk);
  auto r = constant_sheaf(Z, 3);
  r.maps[0].a[0] = 2;
  EXPECT_THROW(microsupport(r), DomainError);
  auto s = constant_sheaf(Z, 4);
  EXPECT_THROW(check_rep(s), DomainError);
  auto t = constant_sheaf(Z, 2);
  t.maps[1].a[0] = 7;
  EXPECT_THROW(check_rep(t), SchemaError);
}

TEST(Search, ZigzagHasNoWitness) {
  for (int rank : {1, 2}) {
    const auto c = search_witness(build_poset(PosetKind::ZigzagInDisk), rank, 2);
    EXPECT_FALSE(c.found);
    EXPECT_EQ(c.verdict(), "NoWitnessAtRank(" + std::to_string(rank) + ")");
    EXPECT_GT(c.candidates, 0);
  }
  EXPECT_FALSE(search_witness(build_poset(PosetKind::ZigzagInDisk), 1, 3).found);
}

TEST(Search, SaucerWitness) {
  const auto S = build_poset(PosetKind::SaucerSlice);
  const auto c = search_witness(S, 1, 2);
  ASSERT_TRUE(c.found);
  EXPECT_EQ(c.verdict(), "NonLooseWitnessFound");
  ASSERT_TRUE(c.witness);
  EXPECT_EQ(c.witness->dims, (std::vector<int>{0, 0, 1, 0, 1, 0}));
  const auto m = microsupport(*c.witness);
  EXPECT_FALSE(m.failing.empty());
  for (int e : m.failing) EXPECT_TRUE(S.edges[e].positive);
  EXPECT_EQ(m.failing, c.failing);
}

TEST(Search, AllPositiveEdgeHasWitness) {
  const auto P = detail::make_poset(PosetKind::EmptyDisk, {{"a", 1}, {"b", 2}}, {{"a", "b"}}, {{"a", "b"}});
  const auto c = search_witness(P, 1, 2);
  ASSERT_TRUE(c.found);
  EXPECT_EQ(c.failing, std::set<int>{0});
}

TEST(Search, EmptyDiskHasNoWitness) {
  EXPECT_FALSE(search_witness(build_poset(PosetKind::EmptyDisk), 2, 2).found);
}

TEST(Search, Preconditions) {
  const auto Z = build_poset(PosetKind::ZigzagInDisk);
  EXPECT_THROW(search_witness(Z, 0, 2), DomainError);
  EXPECT_THROW(search_witness(Z, 1, 6), DomainError);
  EXPECT_THROW(search_witness(Z, 2, 3, 50), BudgetError);
}

TEST(Closure, ForcedIsomorphisms) {
  const auto Z = build_poset(PosetKind::ZigzagInDisk);
  EXPECT_EQ(forced_iso_closure(Z).size(), Z.edges.size());
  const auto S = build_poset(PosetKind::SaucerSlice);
  EXPECT_LT(forced_iso_closure(S).size(), S.edges.size());
  EXPECT_TRUE(forced_iso_closure(build_poset(PosetKind::EmptyDisk)).empty());
}

TEST(Fp, Helpers) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(7));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(9));
  for (int p : {2, 3, 5, 7})
    for (int v = 1; v < p; ++v) EXPECT_EQ(v * fp_inv(v, p) % p, 1);
  const FpMatrix A{2, 2, {1, 1, 0, 1}};
  EXPECT_EQ(fp_rank(A, 2), 2);
  EXPECT_EQ(fp_mul(A, fp_inverse(A, 2), 2), fp_identity(2));
  EXPECT_EQ(fp_rank(FpMatrix{2, 2, {1, 1, 1, 1}}, 2), 1);
  EXPECT_FALSE(fp_bijective(FpMatrix{1, 2, {1, 0}}, 2));
  // GL(2, F_2) has 6 elements, all 2x2 matrices 16
  EXPECT_EQ(all_matrices(2, 2, 2, true).size(), 6u);
  EXPECT_EQ(all_matrices(2, 2, 2, false).size(), 16u);
  EXPECT_EQ(all_matrices(0, 3, 2, false).size(), 1u);
}
