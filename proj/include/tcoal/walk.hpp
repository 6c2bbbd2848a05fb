#ifndef TCOAL_WALK_HPP_
#define TCOAL_WALK_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "tcoal/exact_laws.hpp"
#include "tcoal/partition.hpp"
#include "tcoal/rng.hpp"

namespace tcoal {

// Subset of the sites {0, ..., (k-1)n} holding at most n elements.
struct SiteConfiguration {
  std::int64_t n = 0;
  int arity = 3;
  std::vector<std::int64_t> occupied;  // sorted ascending

  std::int64_t sites() const { return (arity - 1) * n + 1; }
  std::size_t size() const { return occupied.size(); }
  bool contains(std::int64_t site) const;

  // Throws std::invalid_argument on out-of-range, duplicate or excess sites.
  void validate() const;

  friend bool operator==(const SiteConfiguration&, const SiteConfiguration&) = default;
  friend auto operator<=>(const SiteConfiguration&, const SiteConfiguration&) = default;
};

SiteConfiguration make_configuration(std::int64_t n, int arity,
                                     std::vector<std::int64_t> occupied);

// values[0] = 0 and values[j] - values[j-1] is +(k-2) when site j-1 is
// occupied, -1 otherwise.
struct LatticePath {
  std::vector<std::int64_t> values;

  std::int64_t terminal() const { return values.back(); }
};

// Cyclically ordered arcs of Z/LZ, given by their start points in increasing
// order. Arc i is [starts[i], starts[i+1]); the last arc wraps past L - 1.
struct ArcPartition {
  std::int64_t cycle_length = 0;
  std::vector<std::int64_t> starts;

  std::vector<std::int64_t> lengths() const;
};

LatticePath path_of(const SiteConfiguration& x);
SiteConfiguration decode(const LatticePath& path, std::int64_t n, int arity);

// Cut points a_i = m_{M-i}, where M = -terminal and m_i is the first time the
// path reaches (min + i).
ArcPartition phi1(const SiteConfiguration& x);

// Ranked arc lengths of phi1(x).
MassPartition phi(const SiteConfiguration& x);

// Cyclic shift of every site by j.
SiteConfiguration rotate(const SiteConfiguration& x, std::int64_t j);

// Occupy a uniform vacant site / vacate a uniform occupied site.
SiteConfiguration step_X(const SiteConfiguration& x, Rng& rng);
SiteConfiguration step_Y(const SiteConfiguration& x, Rng& rng);

// Uniform n-subset of the sites (partial Fisher-Yates).
SiteConfiguration uniform_configuration(std::int64_t n, int arity, std::size_t count,
                                        Rng& rng);

// Split of an odd mass s >= 3 into three odd parts, drawn from mu_s.
Triple sample_dislocation(Mass s, Rng& rng);

// One step of the fragmentation chain phi(Y) at time l (ternary, total 2n+1):
// part i is chosen with probability (s_i - 1) / (2(n - l)) and split by mu.
MassPartition frag_transition(const MassPartition& p, std::int64_t l, std::int64_t n,
                              Rng& rng);

// One step of the coalescent chain phi(X) at time l: the triple {i, j, k} is
// merged with probability
//   (s_i + s_j + s_k + 3) / ((2n+1-l) 2(n-l) (2(n-l)-1)).
MassPartition coal_transition(const MassPartition& p, std::int64_t l, std::int64_t n,
                              Rng& rng);

enum class ChainDirection { build, destroy };

// build: X_0 = empty, step_X n times. destroy: Y_0 uniform of size n, step_Y
// n times. Returns the configurations at times 0..n.
std::vector<SiteConfiguration> configuration_chain(ChainDirection direction,
                                                   std::int64_t n, int arity, Rng& rng);

// phi applied to configuration_chain. build gives the coalescent chain in
// forward order, destroy gives the fragmentation chain in forward order.
std::vector<MassPartition> run_chain(ChainDirection direction, std::int64_t n, int arity,
                                     std::uint64_t seed);

// The same chains driven by the partition-level transitions instead of the
// walk: coalescent from 2n+1 units, fragmentation from (2n+1).
std::vector<MassPartition> coalescent_chain(std::int64_t n, Rng& rng);
std::vector<MassPartition> fragmentation_chain(std::int64_t n, Rng& rng);

std::string direction_name(ChainDirection direction);
ChainDirection parse_direction(const std::string& name);

// JSON-lines: header, then {"step", "state"} per element.
std::string chain_jsonl(const std::vector<MassPartition>& chain,
                        const nlohmann::ordered_json& config);

void to_json(nlohmann::ordered_json& j, const SiteConfiguration& x);

}  // namespace tcoal

#endif  // TCOAL_WALK_HPP_
