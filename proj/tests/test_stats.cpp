#include <gtest/gtest.h>

#include <cmath>

#include "tcoal/ctmc.hpp"
#include "tcoal/stats.hpp"

using namespace tcoal;

TEST(Stats, ChiSquareExactProportion) {
  EmpiricalDistribution emp;
  emp.add("a", 500);
  emp.add("b", 500);
  const auto r = chi_square(emp, {{"a", Rational(1, 2)}, {"b", Rational(1, 2)}});
  EXPECT_DOUBLE_EQ(r.statistic, 0.0);
  EXPECT_DOUBLE_EQ(r.p_value, 1.0);
}

TEST(Stats, ChiSquareOutsideSupport) {
  EmpiricalDistribution emp;
  emp.add("a", 500);
  emp.add("c", 1);
  emp.add("b", 500);
  EXPECT_EQ(chi_square(emp, {{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}).p_value, 0.0);
}

TEST(Stats, ChiSquarePools) {
  const std::vector<std::uint64_t> obs{990, 5, 3, 2};
  const std::vector<double> p{0.99, 0.004, 0.003, 0.003};
  EXPECT_EQ(chi_square(obs, p).bins, 2u);
}

TEST(Stats, FairCoinCalibration) {
  int rejections = 0;
  const int runs = 200;
  for (int s = 0; s < runs; ++s) {
    Rng rng(static_cast<std::uint64_t>(s));
    std::vector<std::uint64_t> obs(2, 0);
    for (int i = 0; i < 100000; ++i) obs[rng.uniform_below(2)]++;
    rejections += chi_square(obs, {0.5, 0.5}).p_value < 0.05;
  }
  EXPECT_LT(rejections, 25);
}

TEST(Stats, TwoSampleIdentical) {
  EmpiricalDistribution a;
  a.add("x", 300);
  a.add("y", 700);
  EXPECT_DOUBLE_EQ(chi_square_two_sample(a, a).statistic, 0.0);
}

TEST(Stats, KolmogorovQ) {
  EXPECT_DOUBLE_EQ(kolmogorov_q(0.0), 1.0);
  EXPECT_NEAR(kolmogorov_q(1.0), 0.26999967, 1e-7);
  EXPECT_NEAR(kolmogorov_q(1.36), 0.0494, 1e-3);
  EXPECT_LT(kolmogorov_q(3.0), 1e-7);
}

TEST(Stats, KsSeparates) {
  Rng rng(9);
  std::vector<double> a, b;
  for (int i = 0; i < 1000; ++i) {
    a.push_back(rng.uniform01());
    b.push_back(0.5 + rng.uniform01());
  }
  EXPECT_LT(ks_two_sample(a, b).p_value, 1e-6);
  EXPECT_DOUBLE_EQ(ks_two_sample(a, a).statistic, 0.0);
  EXPECT_THROW(ks_two_sample({0.1}, {0.2}), std::invalid_argument);
}

TEST(Stats, KsCalibration) {
  int passes = 0;
  const int runs = 100;
  for (int s = 0; s < runs; ++s) {
    Rng rng(static_cast<std::uint64_t>(1000 + s));
    std::vector<double> a, b;
    for (int i = 0; i < 500; ++i) a.push_back(rng.uniform01());
    for (int i = 0; i < 500; ++i) b.push_back(rng.uniform01());
    passes += ks_two_sample(a, b).p_value > 0.01;
  }
  EXPECT_GE(passes, 95);
}

TEST(Stats, BinaryAdditive) {
  Rng rng(10);
  const auto early = simulate_binary_additive(200, -50.0, rng);
  ASSERT_EQ(early.values.size(), 200u);
  EXPECT_DOUBLE_EQ(early.values.front(), 1.0 / 200.0);
  const auto late = simulate_binary_additive(200, 50.0, rng);
  ASSERT_EQ(late.values.size(), 1u);
  EXPECT_DOUBLE_EQ(late.values.front(), 1.0);
  for (int i = 0; i < 50; ++i)
    EXPECT_NEAR(simulate_binary_additive(300, 0.0, rng).sum(), 1.0, 1e-12);
}

TEST(Stats, ScalingMonotone) {
  const auto rows = particle_scaling_experiment({201}, {0.5, 1.0, 2.0}, 200, 5);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_GT(rows[0].mean, rows[1].mean);
  EXPECT_GT(rows[1].mean, rows[2].mean);
}

TEST(Stats, MarginalSumsToOne) {
  const auto s = ternary_marginal_sample(101, 0.0, 200, 3);
  EXPECT_LE(s.max_mass_sum_error, 1e-12);
  EXPECT_EQ(s.largest.size(), 200u);
}

TEST(Stats, KaryThreeIsTernary) {
  EXPECT_EQ(KernelSpec::of_arity(3).constant(), 3);
  const auto rep = kary_experiment(3, 3, 2, 20000, 4);
  EXPECT_TRUE(rep.mass_conserved);
  EXPECT_GT(rep.agreement.p_value, 0.001);
}
