#ifndef TCOAL_CLUSTER_SET_HPP_
#define TCOAL_CLUSTER_SET_HPP_

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "tcoal/partition.hpp"

namespace tcoal {

// Disjoint-set forest over the initial particles with a swap-remove list of
// live cluster roots.
class ClusterSet {
 public:
  explicit ClusterSet(const MassPartition& initial)
      : parent_(initial.size()), mass_(initial.masses()), live_(initial.size()),
        pos_(initial.size()), prefix_(initial.size()) {
    std::iota(parent_.begin(), parent_.end(), 0);
    std::iota(live_.begin(), live_.end(), 0);
    std::iota(pos_.begin(), pos_.end(), 0);
    std::partial_sum(mass_.begin(), mass_.end(), prefix_.begin());
  }

  std::size_t live_count() const { return live_.size(); }
  Mass total() const { return prefix_.empty() ? 0 : prefix_.back(); }
  std::size_t live_at(std::size_t i) const { return live_[i]; }

  std::size_t find(std::size_t u) {
    while (parent_[u] != u) {
      parent_[u] = parent_[parent_[u]];
      u = parent_[u];
    }
    return u;
  }

  // Cluster holding mass unit `unit` in [0, total).
  std::size_t cluster_of_unit(Mass unit) {
    const auto it = std::upper_bound(prefix_.begin(), prefix_.end(), unit);
    return find(static_cast<std::size_t>(it - prefix_.begin()));
  }

  // Moves `root` to the last slot of the live list.
  void move_to_back(std::size_t root) { swap_slots(pos_[root], live_.size() - 1); }

  void merge(std::span<const std::size_t> roots) {
    std::size_t keep = roots[0];
    for (std::size_t r : roots) {
      if (mass_[r] > mass_[keep]) keep = r;
    }
    for (std::size_t r : roots) {
      if (r == keep) continue;
      parent_[r] = keep;
      mass_[keep] += mass_[r];
      swap_slots(pos_[r], live_.size() - 1);
      live_.pop_back();
    }
  }

  MassPartition snapshot() const {
    std::vector<Mass> v;
    v.reserve(live_.size());
    for (std::size_t r : live_) v.push_back(mass_[r]);
    return rank(v);
  }

 private:
  void swap_slots(std::size_t a, std::size_t b) {
    std::swap(live_[a], live_[b]);
    pos_[live_[a]] = a;
    pos_[live_[b]] = b;
  }

  std::vector<std::size_t> parent_;
  std::vector<Mass> mass_;
  std::vector<std::size_t> live_;
  std::vector<std::size_t> pos_;
  std::vector<Mass> prefix_;
};

}  // namespace tcoal

#endif  // TCOAL_CLUSTER_SET_HPP_
