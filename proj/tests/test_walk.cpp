#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <map>

#include "tcoal/oracle.hpp"
#include "tcoal/walk.hpp"

using namespace tcoal;

namespace {
SiteConfiguration three_arcs() { return make_configuration(8, 3, {0, 4, 7, 8, 9, 11, 12}); }
}  // namespace

TEST(Walk, PathOfEmpty) {
  const auto p = path_of(make_configuration(1, 3, {}));
  EXPECT_EQ(p.values, (std::vector<std::int64_t>{0, -1, -2, -3}));
}

TEST(Walk, ThreeArcs) {
  const auto x = three_arcs();
  const auto p = path_of(x);
  EXPECT_EQ(p.values.size(), 18u);
  EXPECT_EQ(p.terminal(), -3);
  const ArcPartition arcs = phi1(x);
  EXPECT_EQ(arcs.cycle_length, 17);
  EXPECT_EQ(arcs.starts, (std::vector<std::int64_t>{3, 4, 7}));
  EXPECT_EQ(arcs.lengths(), (std::vector<std::int64_t>{1, 3, 13}));
  EXPECT_EQ(phi(x), MassPartition({13, 3, 1}));
  EXPECT_EQ(decode(p, 8, 3), x);
}

TEST(Walk, ExtremeConfigurations) {
  EXPECT_EQ(phi(make_configuration(1, 3, {})), MassPartition::units(3));
  EXPECT_EQ(phi1(make_configuration(1, 3, {})).starts.size(), 3u);
  const auto full = make_configuration(3, 3, {1, 2, 5});
  EXPECT_EQ(path_of(full).terminal(), -1);
  EXPECT_EQ(phi(full), MassPartition({7}));
  EXPECT_EQ(phi(make_configuration(2, 4, {0, 3})), MassPartition({7}));
}

TEST(Walk, RotationInvariance) {
  const auto x = three_arcs();
  for (std::int64_t j = 0; j < 17; ++j) EXPECT_EQ(phi(rotate(x, j)), phi(x));
}

TEST(Walk, Validation) {
  EXPECT_THROW(make_configuration(1, 3, {3}), std::invalid_argument);
  EXPECT_THROW(make_configuration(1, 3, {0, 1}), std::invalid_argument);
  EXPECT_THROW(make_configuration(2, 3, {1, 1}), std::invalid_argument);
}

TEST(Walk, Steps) {
  Rng rng(3);
  const auto empty = make_configuration(1, 3, {});
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < 30000; ++i) counts[step_X(empty, rng).occupied.at(0)]++;
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
  const auto y = make_configuration(2, 3, {0, 1});
  int zero = 0;
  for (int i = 0; i < 20000; ++i) zero += step_Y(y, rng).occupied.at(0) == 0;
  EXPECT_NEAR(zero, 10000, 500);
  EXPECT_THROW(step_Y(empty, rng), std::invalid_argument);
}

TEST(Walk, Transitions) {
  Rng rng(8);
  EXPECT_EQ(frag_transition(MassPartition({5, 1, 1}), 1, 3, rng), MassPartition({3, 1, 1, 1, 1}));
  EXPECT_EQ(frag_transition(MassPartition({3}), 0, 1, rng), MassPartition::units(3));
  EXPECT_EQ(coal_transition(MassPartition::units(3), 0, 1, rng), MassPartition({3}));
  EXPECT_EQ(coal_transition(MassPartition({5, 1, 1}), 2, 3, rng), MassPartition({7}));
  EXPECT_THROW(frag_transition(MassPartition({5, 1, 1}), 0, 3, rng), std::invalid_argument);
}

TEST(Walk, Chains) {
  const auto build = run_chain(ChainDirection::build, 1, 3, 1);
  EXPECT_EQ(build, (std::vector<MassPartition>{MassPartition::units(3), MassPartition({3})}));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto destroy = run_chain(ChainDirection::destroy, 2, 3, seed);
    EXPECT_EQ(destroy.front(), MassPartition({5}));
    EXPECT_EQ(destroy.back(), MassPartition::units(5));
  }
  EXPECT_EQ(parse_direction(direction_name(ChainDirection::destroy)), ChainDirection::destroy);
  EXPECT_THROW(parse_direction("sideways"), std::invalid_argument);
}

TEST(Walk, UniformConfigurationIsUniform) {
  Rng rng(12);
  std::map<std::vector<std::int64_t>, int> counts;
  for (int i = 0; i < 21000; ++i) counts[uniform_configuration(3, 3, 2, rng).occupied]++;
  EXPECT_EQ(counts.size(), 21u);
  for (const auto& [k, c] : counts) EXPECT_NEAR(c, 1000, 150);
}

TEST(Walk, DislocationSampler) {
  Rng rng(4);
  int big = 0;
  for (int i = 0; i < 30000; ++i) big += sample_dislocation(7, rng)[0] == 5;
  EXPECT_NEAR(big / 30000.0, 2.0 / 3.0, 0.015);
}

TEST(Walk, ArcLengthsExchangeable) {
  // Read the arcs in cyclic order from a uniformly chosen arc. Over all
  // l-subsets the law of the length vector depends only on its multiset.
  const std::int64_t n = 4;
  const std::int64_t S = 2 * n + 1;
  for (std::int64_t l = 0; l <= n; ++l) {
    std::map<std::vector<std::int64_t>, Rational> law;
    for (std::uint32_t mask = 0; mask < (1u << S); ++mask) {
      if (std::popcount(mask) != l) continue;
      std::vector<std::int64_t> sites;
      for (std::int64_t i = 0; i < S; ++i)
        if (mask >> i & 1u) sites.push_back(i);
      auto lengths = phi1(make_configuration(n, 3, sites)).lengths();
      const Rational w(1, static_cast<long>(lengths.size()));
      for (std::size_t r = 0; r < lengths.size(); ++r) {
        law[lengths] += w;
        std::rotate(lengths.begin(), lengths.begin() + 1, lengths.end());
      }
    }
    for (const auto& [tuple, q] : law) {
      auto other = tuple;
      while (std::next_permutation(other.begin(), other.end())) EXPECT_EQ(law[other], q);
    }
  }
}
