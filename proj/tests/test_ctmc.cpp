#include <gtest/gtest.h>

#include <cmath>

#include "tcoal/ctmc.hpp"
#include "tcoal/exact_laws.hpp"
#include "tcoal/stats.hpp"

using namespace tcoal;

TEST(Ctmc, SetLawUnits) {
  const auto law = direct_set_law(MassPartition::units(5), KernelSpec{3});
  EXPECT_EQ(law.size(), 10u);
  for (const auto& [set, p] : law) EXPECT_EQ(p, Rational(1, 10));
  const auto forced = direct_set_law(MassPartition({3, 1, 1}), KernelSpec{3});
  ASSERT_EQ(forced.size(), 1u);
  EXPECT_EQ(forced.begin()->second, 1);
}

TEST(Ctmc, SetLawExample) {
  const MassPartition p({5, 3, 3, 1, 1});
  const auto law = direct_set_law(p, KernelSpec{3});
  EXPECT_EQ(KernelSpec{3}.state_rate_exact(p), 108);
  EXPECT_EQ(law.at({0, 1, 2}), Rational(7, 54));
}

TEST(Ctmc, MixtureMatchesKernel) {
  for (int k = 3; k <= 5; ++k) {
    const KernelSpec kernel = KernelSpec::of_arity(k);
    for (const MassPartition& p :
         {MassPartition({5, 3, 3, 1, 1}), MassPartition({7, 4, 2, 1, 1, 1}),
          MassPartition::units(7)}) {
      EXPECT_EQ(direct_set_law(p, kernel), mixture_set_law(p, kernel));
    }
  }
}

TEST(Ctmc, StateRateMatchesTotalRate) {
  EXPECT_DOUBLE_EQ(KernelSpec{3}.state_rate(MassPartition::units(5)), 60.0);
  EXPECT_EQ(KernelSpec{3}.state_rate_exact(MassPartition({2, 1, 1})), 7);
}

TEST(Ctmc, SimulateAbsorbs) {
  const Trajectory t3 = simulate(MassPartition::units(3), KernelSpec{3}, 1);
  ASSERT_EQ(t3.events.size(), 1u);
  EXPECT_EQ(t3.final_state(), MassPartition({3}));
  const Trajectory t5 = simulate(MassPartition::units(5), KernelSpec{3}, 7);
  EXPECT_EQ(t5.events.size(), 2u);
  EXPECT_EQ(t5.final_state(), MassPartition({5}));
  const Trajectory big = simulate(MassPartition::units(31), KernelSpec::of_arity(4), 3);
  EXPECT_EQ(big.events.size(), 10u);
  for (const auto& e : big.events) EXPECT_EQ(e.state.total_mass(), 31);
}

TEST(Ctmc, SimulateDeterministic) {
  const auto a = simulate(MassPartition::units(51), KernelSpec{3}, 99);
  const auto b = simulate(MassPartition::units(51), KernelSpec{3}, 99);
  EXPECT_EQ(trajectory_jsonl(a, {}), trajectory_jsonl(b, {}));
  EXPECT_THROW(simulate(MassPartition::units(5), KernelSpec{3}, 1, 0.0), std::invalid_argument);
}

TEST(Ctmc, FirstEventMean) {
  const std::size_t count = 100000;
  double sum = 0.0;
  for (std::size_t r = 0; r < count; ++r) {
    const auto t = simulate(MassPartition::units(5), KernelSpec{3}, 11, std::nullopt, r);
    sum += t.events.front().time;
  }
  const double mean = sum / count;
  EXPECT_NEAR(mean, 1.0 / 60.0, 3.0 * (1.0 / 60.0) / std::sqrt(double(count)));
}

TEST(Ctmc, CoagTimes) {
  Rng rng(5);
  const auto times = sample_coag_times(3, 3, 100000, rng);
  double sum = 0.0;
  for (const auto& t : times) sum += t.at(0);
  EXPECT_NEAR(sum / times.size(), 1.0 / 6.0, 1.0 / 600.0);
  EXPECT_TRUE(sample_coag_times(5, 5, 0, rng).empty());

  // P(T2 > t) - P(T1 > t) is the probability of exactly one jump by time t.
  const auto t5 = sample_coag_times(5, 5, 100000, rng);
  std::size_t hits = 0;
  for (const auto& t : t5) hits += (t[0] <= 0.05 && t[1] > 0.05);
  const double p = particle_count_pmf(5, 5, 1, 0.05);
  const double sigma = std::sqrt(p * (1 - p) / t5.size());
  EXPECT_NEAR(double(hits) / t5.size(), p, 3 * sigma);
}

TEST(Ctmc, ObserveConservesMass) {
  Rng rng(17);
  const std::vector<double> times{0.0, 1e-4, 1e-3, 1e9};
  const auto states = observe(MassPartition::units(201), KernelSpec{3}, times, rng);
  ASSERT_EQ(states.size(), 4u);
  EXPECT_EQ(states[0], MassPartition::units(201));
  for (const auto& s : states) EXPECT_EQ(s.total_mass(), 201);
  EXPECT_EQ(states[3], MassPartition({201}));
  for (std::size_t i = 1; i < states.size(); ++i) EXPECT_LE(states[i].size(), states[i - 1].size());
}

TEST(Ctmc, SkeletonFit) {
  const std::size_t samples = 100000;
  EmpiricalDistribution emp;
  for (std::size_t r = 0; r < samples; ++r) {
    Rng rng = Rng::for_stream(2024, r);
    emp.add(skeleton_after(MassPartition::units(9), KernelSpec{3}, 2, rng).key());
  }
  ExactDistribution exact;
  for (const auto& p : skeleton_support(9, 2)) exact[p.key()] = skeleton_marginal(9, 2, p);
  EXPECT_GT(chi_square(emp, exact).p_value, 0.001);
}
