#include <gtest/gtest.h>

#include <vector>

#include "tcoal/partition.hpp"

using namespace tcoal;

TEST(Partition, RankSorts) {
  const std::vector<Mass> v{1, 3, 1};
  EXPECT_EQ(rank(v), MassPartition({3, 1, 1}));
  const std::vector<Mass> one{7};
  EXPECT_EQ(rank(one), MassPartition({7}));
  const std::vector<Mass> fig{1, 3, 13};
  EXPECT_EQ(rank(fig), MassPartition({13, 3, 1}));
}

TEST(Partition, RejectsNonPositive) {
  const std::vector<Mass> bad{3, 0, 1};
  EXPECT_THROW(rank(bad), std::invalid_argument);
}

TEST(Partition, MergeIndices) {
  const std::vector<std::size_t> first{0, 1, 2};
  EXPECT_EQ(merge_indices(MassPartition::units(5), first), MassPartition({3, 1, 1}));
  EXPECT_EQ(merge_indices(MassPartition({3, 1, 1}), first), MassPartition({5}));
  const std::vector<std::size_t> idx{1, 3, 4};
  EXPECT_EQ(merge_indices(MassPartition({5, 3, 3, 1, 1}), idx), MassPartition({5, 5, 3}));
  const std::vector<std::size_t> dup{0, 0, 1};
  EXPECT_THROW(merge_indices(MassPartition::units(5), dup), std::invalid_argument);
}

TEST(Partition, MultiplicityGamma) {
  EXPECT_EQ(multiplicity_gamma(MassPartition({3, 1, 1})), 3);
  EXPECT_EQ(multiplicity_gamma(MassPartition::units(5)), 1);
  EXPECT_EQ(multiplicity_gamma(MassPartition({5, 3, 1})), 6);
}

TEST(Partition, Rescale) {
  const auto r = rescale(MassPartition({3, 1, 1}), 5);
  ASSERT_EQ(r.values.size(), 3u);
  EXPECT_DOUBLE_EQ(r.values[0], 0.6);
  EXPECT_DOUBLE_EQ(r.values[1], 0.2);
  EXPECT_NEAR(r.sum(), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(rescale(MassPartition({7}), 7).values[0], 1.0);
  const auto f = rescale(MassPartition({13, 3, 1}), 17);
  EXPECT_DOUBLE_EQ(f.values[0], 13.0 / 17.0);
  EXPECT_NEAR(f.sum(), 1.0, 1e-12);
}

TEST(Partition, KeyRoundTrip) {
  const MassPartition p({5, 3, 3, 1, 1});
  EXPECT_EQ(p.key(), "5,3,3,1,1");
  EXPECT_EQ(partition_from_key(p.key()), p);
  EXPECT_EQ(p.total_mass(), 13);
}
