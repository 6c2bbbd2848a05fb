#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "tcoal/exact_laws.hpp"

using namespace tcoal;

TEST(ExactLaws, TotalRate) {
  EXPECT_EQ(total_rate(3, 3, 1), 6);
  EXPECT_EQ(total_rate(4, 3, 1), 7);
  EXPECT_EQ(total_rate(5, 5, 1), 60);
  EXPECT_EQ(mono_rate(5, 1), 60);
  EXPECT_EQ(mono_rate(5, 2), 8);
  EXPECT_EQ(mono_rate(3, 1), 6);
}

TEST(ExactLaws, HittingPmf) {
  EXPECT_EQ(hitting_time_pmf(-1, 1), Rational(1, 2));
  EXPECT_EQ(hitting_time_pmf(-1, 3), Rational(1, 8));
  EXPECT_EQ(hitting_time_pmf(-3, 5), Rational(3, 32));
  EXPECT_EQ(hitting_time_pmf(-1, 2), 0);
}

TEST(ExactLaws, HittingAsymptotic) {
  EXPECT_NEAR(hitting_time_asymptotic(50), 7.979e-4, 1e-6);
  EXPECT_NEAR(hitting_time_asymptotic(1), 0.28209, 1e-5);
  const double ratio = hitting_time_pmf(-1, 2 * 200 - 1).get_d() / hitting_time_asymptotic(200);
  EXPECT_GT(ratio, 0.99);
  EXPECT_LT(ratio, 1.01);
}

TEST(ExactLaws, ParticleCount) {
  EXPECT_NEAR(particle_count_pmf(3, 3, 0, 0.2), std::exp(-1.2), 1e-12);
  EXPECT_DOUBLE_EQ(particle_count_pmf(3, 3, 0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(particle_count_pmf(9, 9, 0, 0.0), 1.0);
  const double expected = 15.0 / 13.0 * (std::exp(-0.4) - std::exp(-3.0));
  EXPECT_NEAR(particle_count_pmf(5, 5, 1, 0.05), expected, 1e-12);
  EXPECT_NEAR(particle_count_pmf(5, 5, 1, 0.05), 0.7160, 5e-5);
}

TEST(ExactLaws, SkeletonMarginal) {
  EXPECT_EQ(skeleton_marginal(7, 2, MassPartition({5, 1, 1})), Rational(2, 3));
  EXPECT_EQ(skeleton_marginal(7, 2, MassPartition({3, 3, 1})), Rational(1, 3));
  EXPECT_EQ(skeleton_marginal(9, 0, MassPartition::units(9)), 1);
  Rational total = 0;
  for (const auto& p : skeleton_support(11, 3)) total += skeleton_marginal(11, 3, p);
  EXPECT_EQ(total, 1);
}

TEST(ExactLaws, Dislocation) {
  EXPECT_EQ(dislocation_pmf(3, {1, 1, 1}), 1);
  EXPECT_EQ(dislocation_pmf(5, {3, 1, 1}), 1);
  EXPECT_EQ(dislocation_pmf(7, {5, 1, 1}), Rational(2, 3));
  EXPECT_EQ(dislocation_pmf(7, {3, 3, 1}), Rational(1, 3));
  Rational total = 0;
  for (const auto& r : dislocation_support(41)) total += dislocation_pmf(41, r);
  EXPECT_EQ(total, 1);
}

TEST(ExactLaws, BlockLaw) {
  EXPECT_EQ(block_coagulation_prob(MassPartition::units(3), {{1, 2, 3}}), 1);
  EXPECT_EQ(block_coagulation_prob(MassPartition::units(5), {{1, 2, 3}, {4}, {5}}),
            Rational(1, 10));
  EXPECT_EQ(block_coagulation_prob(MassPartition::units(5), {{1}, {2}, {3}, {4}, {5}}), 1);
  EXPECT_DOUBLE_EQ(partition_event_prob(MassPartition::units(5), {{1}, {2}, {3}, {4}, {5}}, 0.0),
                   1.0);
  EXPECT_NEAR(partition_event_prob(MassPartition::units(3), {{1, 2, 3}}, 0.1),
              1.0 - std::exp(-0.6), 1e-12);
  EXPECT_NEAR(partition_event_prob(MassPartition::units(5), {{1, 2, 3}, {4}, {5}}, 0.05),
              0.0716, 5e-5);
}

TEST(ExactLaws, ForestCounts) {
  EXPECT_EQ(forest_count(5, 5), 1);
  EXPECT_EQ(forest_count(1, 3), 3);
  EXPECT_EQ(forest_count(3, 5), 30);
  EXPECT_EQ(forest_count(1, 5), 120);
  EXPECT_EQ(plane_forest_count(1, 5), 2);
  EXPECT_EQ(plane_forest_count(1, 3), 1);
  EXPECT_EQ(plane_forest_count(3, 5), 3);
}

TEST(ExactLaws, KaryCount) {
  EXPECT_EQ(kary_first_passage_count(3, 1, 3), 1);
  EXPECT_EQ(kary_first_passage_count(4, 1, 4), 1);
  EXPECT_EQ(kary_first_passage_count(5, 1, 1), 1);
  EXPECT_EQ(kary_first_passage_count(3, 3, 5), 3);
}

TEST(ExactLaws, OutOfRange) {
  EXPECT_THROW(skeleton_marginal(8, 1, MassPartition({3, 1, 1, 1, 1, 1})), std::invalid_argument);
  EXPECT_THROW(dislocation_pmf(4, {2, 1, 1}), std::invalid_argument);
}

TEST(ExactLaws, JumpRatesDistinct) {
  for (Mass N = 3; N <= 401; N += 2) {
    for (Mass M : {N, N + 1, 3 * N}) {
      std::set<Rational> seen;
      for (std::int64_t k = 1; k <= (N - 1) / 2; ++k) seen.insert(total_rate(M, N, k));
      EXPECT_EQ(seen.size(), static_cast<std::size_t>((N - 1) / 2));
    }
  }
}
