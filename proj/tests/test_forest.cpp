#include <gtest/gtest.h>

#include <map>
#include <set>

#include "tcoal/exact_laws.hpp"
#include "tcoal/forest.hpp"
#include "tcoal/oracle.hpp"

using namespace tcoal;

TEST(Forest, ApplyRSmallTree) {
  // Root 1 labelled 1 with leaves 2 and 3.
  const auto t = LabeledBinaryForest::from_parents({0, 0, 1, 1}, {0, 1, 0, 0});
  EXPECT_EQ(t.components(), 1);
  EXPECT_EQ(t.apply_R(), LabeledBinaryForest::edgeless(3));
  EXPECT_THROW(LabeledBinaryForest::edgeless(3).apply_R(), std::logic_error);
}

TEST(Forest, FromParentsValidates) {
  EXPECT_THROW(LabeledBinaryForest::from_parents({0, 0, 1}, {0, 1, 0}), std::invalid_argument);
  EXPECT_THROW(LabeledBinaryForest::from_parents({0, 0, 1, 1}, {0, 2, 0, 0}),
               std::invalid_argument);
}

TEST(Forest, FiberSizes) {
  // Every element of F(3,5) has exactly 4 preimages in F(1,5).
  std::map<std::string, int> fiber;
  for (const auto& f : enumerate_forests(5, 1)) fiber[f.apply_R().key()]++;
  EXPECT_EQ(fiber.size(), 30u);
  for (const auto& [k, c] : fiber) EXPECT_EQ(c, 4);
}

TEST(Forest, InverseRUniform) {
  Rng rng(1);
  std::map<std::string, int> counts;
  const auto start = LabeledBinaryForest::edgeless(5);
  for (int i = 0; i < 30000; ++i) {
    const auto f = inverse_R_step(start, rng);
    EXPECT_EQ(f.components(), 3);
    EXPECT_EQ(f.apply_R(), start);
    counts[f.key()]++;
  }
  EXPECT_EQ(counts.size(), 30u);
  for (const auto& [k, c] : counts) EXPECT_NEAR(c, 1000, 160);
}

TEST(Forest, UniformTrees) {
  Rng rng(2);
  std::map<std::string, int> counts;
  for (int i = 0; i < 30000; ++i) counts[sample_uniform_tree(3, rng).key()]++;
  EXPECT_EQ(counts.size(), 3u);
  for (const auto& [k, c] : counts) EXPECT_NEAR(c, 10000, 500);
  std::set<std::string> five;
  for (int i = 0; i < 20000; ++i) five.insert(sample_uniform_tree(5, rng).key());
  EXPECT_EQ(five.size(), 120u);
  EXPECT_EQ(sample_uniform_tree(1, rng).vertices(), 1);
  EXPECT_THROW(sample_uniform_tree(4, rng), std::invalid_argument);
}

TEST(Forest, ChainSizes) {
  Rng rng(3);
  const auto chain = forest_chain(3, rng);
  EXPECT_EQ(chain, (std::vector<MassPartition>{MassPartition::units(3), MassPartition({3})}));
  for (const auto& p : forest_chain(41, rng)) {
    for (Mass m : p.masses()) EXPECT_EQ(m % 2, 1);
  }
}

TEST(Forest, LukasiewiczSingleVertex) {
  PlaneForest f;
  f.children = {{}};
  f.roots = {0};
  EXPECT_EQ(lukasiewicz_encode(f).values, (std::vector<std::int64_t>{0, -1}));
}

TEST(Forest, LukasiewiczThreeTrees) {
  // Three trees of sizes 7, 1 and 3.
  const LatticePath path{{0, 1, 2, 1, 0, 1, 0, -1, -2, -1, -2, -3}};
  const PlaneForest f = lukasiewicz_decode(path);
  EXPECT_EQ(f.size(), 11u);
  EXPECT_EQ(f.roots.size(), 3u);
  EXPECT_TRUE(f.is_full_binary());
  const auto v = lukasiewicz_encode(f).values;
  EXPECT_EQ(v, path.values);
  auto first_hit = [&](std::int64_t level) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == level) return static_cast<std::int64_t>(i);
    return std::int64_t{-1};
  };
  EXPECT_EQ(first_hit(-1), 7);
  EXPECT_EQ(first_hit(-2), 8);
  EXPECT_EQ(first_hit(-3), 11);
}

TEST(Forest, LukasiewiczRejectsMalformed) {
  EXPECT_THROW(lukasiewicz_decode(LatticePath{{0, 2, 1, 0, -1}}), std::invalid_argument);
  EXPECT_THROW(lukasiewicz_decode(LatticePath{{0, -1, 0, -1}}), std::invalid_argument);
  EXPECT_THROW(lukasiewicz_decode(LatticePath{{0, 1, 0}}), std::invalid_argument);
}

TEST(Forest, LukasiewiczRoundTrip) {
  Rng rng(6);
  for (int i = 0; i < 100000; ++i) {
    const int N = 1 + 2 * static_cast<int>(rng.uniform_below(12));
    const PlaneForest f = to_plane(sample_uniform_tree(N, rng), rng);
    EXPECT_EQ(lukasiewicz_decode(lukasiewicz_encode(f)), f);
  }
}

TEST(Forest, UniformPlaneTrees) {
  Rng rng(7);
  std::map<std::vector<std::int64_t>, int> counts;
  for (int i = 0; i < 50000; ++i)
    counts[lukasiewicz_encode(sample_uniform_plane_tree(7, rng)).values]++;
  EXPECT_EQ(counts.size(), 5u);
  for (const auto& [k, c] : counts) EXPECT_NEAR(c, 10000, 500);
}
