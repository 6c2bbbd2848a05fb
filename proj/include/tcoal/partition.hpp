#ifndef TCOAL_PARTITION_HPP_
#define TCOAL_PARTITION_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tcoal/rational.hpp"

namespace tcoal {

using Mass = std::int64_t;

// Ranked finite mass partition: positive integer masses in non-increasing
// order. The zero tail is implicit. Immutable once built.
class MassPartition {
 public:
  MassPartition() = default;

  // Throws std::invalid_argument unless `masses` is non-empty, positive and
  // non-increasing. Use rank() for unsorted input.
  explicit MassPartition(std::vector<Mass> masses);

  // `count` atoms of mass 1.
  static MassPartition units(std::size_t count);

  const std::vector<Mass>& masses() const { return masses_; }
  std::size_t size() const { return masses_.size(); }
  bool empty() const { return masses_.empty(); }
  Mass operator[](std::size_t i) const { return masses_[i]; }
  Mass largest() const { return masses_.front(); }
  Mass total_mass() const;

  // Canonical key, e.g. "5,1,1". Used for hashing in distributions.
  std::string key() const;

  friend bool operator==(const MassPartition&, const MassPartition&) = default;
  friend auto operator<=>(const MassPartition&, const MassPartition&) = default;

 private:
  std::vector<Mass> masses_;
};

// Non-increasing rearrangement (stable). Throws on empty input or a value < 1.
MassPartition rank(std::span<const Mass> values);

// Removes the entries at `indices` (two or more distinct positions), inserts
// their sum and re-ranks.
MassPartition merge_indices(const MassPartition& p,
                            std::span<const std::size_t> indices);

// m! / (k_1! ... k_p!) where k_i are the multiplicities of the distinct
// masses: the number of distinct orderings of p.
BigInt multiplicity_gamma(const MassPartition& p);

// Partition with masses scaled to (0, 1]: values[i] = masses[i] / N.
struct RescaledPartition {
  std::vector<double> values;

  double sum() const;
};

RescaledPartition rescale(const MassPartition& p, Mass total);

// Parses the key() form back into a partition.
MassPartition partition_from_key(const std::string& key);

void to_json(nlohmann::json& j, const MassPartition& p);
void from_json(const nlohmann::json& j, MassPartition& p);
void to_json(nlohmann::ordered_json& j, const MassPartition& p);

}  // namespace tcoal

#endif  // TCOAL_PARTITION_HPP_
