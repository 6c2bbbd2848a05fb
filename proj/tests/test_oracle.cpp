#include <gtest/gtest.h>

#include "tcoal/exact_laws.hpp"
#include "tcoal/oracle.hpp"

using namespace tcoal;

TEST(Oracle, Skeleton) {
  const auto d = enumerate_skeleton(7, 2);
  EXPECT_EQ(d.at("5,1,1"), Rational(2, 3));
  EXPECT_EQ(d.at("3,3,1"), Rational(1, 3));
  EXPECT_EQ(enumerate_skeleton(5, 1).at("3,1,1"), 1);
  EXPECT_EQ(enumerate_skeleton(9, 0).at("1,1,1,1,1,1,1,1,1"), 1);
  EXPECT_EQ(total_probability(enumerate_skeleton(11, 3)), 1);
  EXPECT_THROW(enumerate_skeleton(13, 1), std::out_of_range);
}

TEST(Oracle, Fragmentation) {
  const auto d = enumerate_frag(7, 1);
  EXPECT_EQ(d.at("5,1,1"), Rational(2, 3));
  EXPECT_EQ(d.at("3,3,1"), Rational(1, 3));
  EXPECT_EQ(enumerate_frag(9, 0).at("9"), 1);
  EXPECT_EQ(enumerate_frag(3, 1).at("1,1,1"), 1);
}

TEST(Oracle, Duality) {
  for (Mass N : {3, 5, 7, 9}) EXPECT_EQ(reversed(enumerate_frag_paths(N)), enumerate_skeleton_paths(N));
}

TEST(Oracle, ConfigurationChains) {
  const auto one = enumerate_configuration_chain(1);
  EXPECT_EQ(one.x_law.size(), 3u);
  for (const auto& [seq, p] : one.x_law) EXPECT_EQ(p, Rational(1, 3));
  const auto two = enumerate_configuration_chain(2);
  EXPECT_EQ(two.phi_y_reversed, two.phi_x);
  const auto three = enumerate_configuration_chain(3);
  EXPECT_EQ(three.phi_y_reversed, three.phi_x);
  for (std::int64_t l = 0; l <= 3; ++l)
    EXPECT_EQ(walk_marginal_law(3, l), enumerate_skeleton(7, l));
  EXPECT_THROW(enumerate_configuration_chain(4), std::out_of_range);
}

TEST(Oracle, Forests) {
  EXPECT_EQ(enumerate_forests(3, 1).size(), 3u);
  EXPECT_EQ(enumerate_forests(5, 3).size(), 30u);
  EXPECT_EQ(enumerate_forests(5, 5).size(), 1u);
  EXPECT_EQ(enumerate_forests(7, 1).size(), forest_count(1, 7).get_ui());
  EXPECT_EQ(enumerate_plane_forests(5, 1).size(), 2u);
  EXPECT_EQ(enumerate_plane_forests(5, 3).size(), 3u);
  EXPECT_THROW(enumerate_forests(9, 1), std::out_of_range);
}

TEST(Oracle, FirstPassage) {
  EXPECT_EQ(brute_first_passage(3, 1, 3), 1);
  EXPECT_EQ(brute_first_passage(3, 3, 5), 3);
  EXPECT_EQ(brute_first_passage(4, 1, 4), 1);
  EXPECT_EQ(brute_first_passage(5, 1, 1), 1);
}

TEST(Oracle, BlockLaw) {
  const auto d = enumerate_block_law(MassPartition::units(5), 1);
  EXPECT_EQ(d.size(), 10u);
  EXPECT_EQ(total_probability(d), 1);
  EXPECT_EQ(d.at(block_key(canonical({{1, 2, 3}, {4}, {5}}))), Rational(1, 10));
}

TEST(Oracle, Csv) {
  const std::string csv = distribution_csv(enumerate_skeleton(7, 2));
  EXPECT_NE(csv.find("numerator,denominator"), std::string::npos);
  EXPECT_NE(csv.find("2,3"), std::string::npos);
}
