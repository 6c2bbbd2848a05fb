#ifndef TCOAL_ORACLE_HPP_
#define TCOAL_ORACLE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tcoal/ctmc.hpp"
#include "tcoal/exact_laws.hpp"
#include "tcoal/forest.hpp"
#include "tcoal/partition.hpp"
#include "tcoal/rational.hpp"
#include "tcoal/walk.hpp"

namespace tcoal {

// Brute-force reference computations. Nothing here uses the closed forms of
// exact_laws except where stated; they exist to be compared against them.

// Exact law keyed by the canonical string of a state (MassPartition::key(),
// block_key(), ...).
using ExactDistribution = std::map<std::string, Rational>;

// Law of a whole state sequence, keyed by the sequence of state keys.
using PathDistribution = std::map<std::vector<std::string>, Rational>;

inline constexpr Mass kMaxEnumeratedMass = 11;
inline constexpr int kMaxEnumeratedForest = 7;
inline constexpr std::int64_t kMaxConfigurationN = 3;
inline constexpr std::int64_t kMaxPathLength = 40;

Rational total_probability(const ExactDistribution& d);
Rational total_probability(const PathDistribution& d);

// Law of X'_l from N unit masses, by dynamic programming over the transition
// law of the k-ary kernel (all k-subsets enumerated). N = (k-1)n + 1. A
// replacement kernel constant may be supplied; it is only used for negative
// controls. Throws "enumeration bound exceeded" for N > 11 (N > 13 when k > 3).
ExactDistribution enumerate_skeleton(Mass N, std::int64_t l, int arity = 3,
                                     std::optional<Rational> constant = std::nullopt);

// Joint law of (X'_0, ..., X'_n) from N unit masses, ternary.
PathDistribution enumerate_skeleton_paths(Mass N,
                                          std::optional<Rational> constant = std::nullopt);

// Law of phi(Y_l) from (N), splitting a part s with probability (s-1)/(2(n-l))
// and then by mu_s.
ExactDistribution enumerate_frag(Mass N, std::int64_t l);

// Joint law of (phi(Y_0), ..., phi(Y_n)) from (N).
PathDistribution enumerate_frag_paths(Mass N);

// Sequence reversed element-wise.
PathDistribution reversed(const PathDistribution& d);

// Exact laws of the configuration chains for n <= 3.
struct ConfigurationChainLaw {
  std::map<std::vector<SiteConfiguration>, Rational> x_law;             // (X_0..X_n)
  std::map<std::vector<SiteConfiguration>, Rational> y_reversed_law;   // (Y_n..Y_0)
  PathDistribution phi_x;           // (phi(X_0), ..., phi(X_n))
  PathDistribution phi_y_reversed;  // (phi(Y_n), ..., phi(Y_0))
};

ConfigurationChainLaw enumerate_configuration_chain(std::int64_t n, int arity = 3);

// Law of phi(X_l): X_l is uniform over the l-subsets of the sites.
ExactDistribution walk_marginal_law(std::int64_t n, std::int64_t l, int arity = 3);

// Ranked law of `parts` i.i.d. copies of H_{-1} (first passage of simple
// random walk below 0) conditioned on their sum being `total`. Exhaustive
// over compositions, weights from the path count of each hitting time.
ExactDistribution hitting_order_statistics(Mass total, std::size_t parts);

// All elements of F(m, N), N <= 7, from all parent arrays and labelings.
std::vector<LabeledBinaryForest> enumerate_forests(int vertices, int components);

// All full binary plane forests with m ordered trees on N vertices, N <= 7.
std::vector<PlaneForest> enumerate_plane_forests(int vertices, int components);

// Number of walks with steps +(k-2) and -1 first hitting -j at time m, by
// dynamic programming over paths. m <= 40.
BigInt brute_first_passage(int arity, std::int64_t j, std::int64_t m);

// Law of the block partition of the labels 1..N after l ternary
// coagulations from r, by dynamic programming over set partitions.
ExactDistribution enumerate_block_law(const MassPartition& r, std::int64_t l);

// CSV: "state,numerator,denominator,value", states in map order.
std::string distribution_csv(const ExactDistribution& d);

}  // namespace tcoal

#endif  // TCOAL_ORACLE_HPP_
