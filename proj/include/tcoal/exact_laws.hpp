#ifndef TCOAL_EXACT_LAWS_HPP_
#define TCOAL_EXACT_LAWS_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "tcoal/partition.hpp"
#include "tcoal/rational.hpp"

namespace tcoal {

// Closed-form laws of the ternary coalescent started from N = 2n+1 particles.
// Combinatorial quantities are exact rationals; anything involving time is a
// double.

// Total jump rate before the k-th coagulation, for total mass M and N
// initial particles: (M+N+2-2k)(N+1-2k)(N-2k)/2. Requires N odd, M >= N and
// 1 <= k <= (N-1)/2; throws "no k-th coagulation" otherwise.
Rational total_rate(Mass M, Mass N, std::int64_t k);

// Monodisperse special case (M = N): (N+1-i)(N+1-2i)(N-2i).
Rational mono_rate(Mass N, std::int64_t i);

// P(H_k = m) for simple random walk: (|k|/m) C(m, (m+|k|)/2) 2^-m, zero on the
// wrong parity or m < |k|.
Rational hitting_time_pmf(std::int64_t k, std::int64_t m);

// (1/2) (pi n^3)^(-1/2), the large-n behaviour of P(H_k = 2n+1), k odd.
double hitting_time_asymptotic(std::int64_t n);

// P(#(t) = N - 2l): hypoexponential law of the number of particles at time t.
// Coefficients are exact for l <= 30 and the alternating sum is evaluated in
// MPFR at a precision that covers the cancellation; larger l fall back to
// long double with compensated summation.
double particle_count_pmf(Mass M, Mass N, std::int64_t l, double t);

// P(X'_l = p) for the skeleton chain from N unit masses:
//   gamma(p) N/(N-2l) C(N,l)^-1 prod_i C(s_i, (s_i+1)/2) / s_i.
Rational skeleton_marginal(Mass N, std::int64_t l, const MassPartition& p);

// Ranked partitions of `total` into `parts` parts, each congruent to 1 modulo
// `step` (step = 2: odd parts). Generated in decreasing lexicographic order.
std::vector<MassPartition> partitions_into(Mass total, std::size_t parts, Mass step = 2);

// Support of X'_l from N unit masses (odd parts, N - 2l of them).
std::vector<MassPartition> skeleton_support(Mass N, std::int64_t l);

using Triple = std::array<Mass, 3>;

// mu_s(R): law of the split of an odd mass s >= 3 into three odd parts.
// R is taken as a multiset. Zero when R does not sum to s or has an even
// entry; throws for s even or < 3 and for non-positive entries.
Rational dislocation_pmf(Mass s, Triple r);

// Omega_s as descending triples.
std::vector<Triple> dislocation_support(Mass s);

// Partition of the labels {1, ..., N} of the initial particles into blocks.
using BlockPartition = std::vector<std::vector<int>>;

// Canonical form: blocks sorted internally, then by smallest element.
BlockPartition canonical(BlockPartition blocks);
std::string block_key(const BlockPartition& blocks);

// P(Lambda'_pi(N-2l)): probability that the atoms after l coagulations are
// exactly the merged blocks of pi, starting from r (labels index r's
// entries, 1-based). Gamma ratios are evaluated as exact rising factorials.
Rational block_coagulation_prob(const MassPartition& r, const BlockPartition& blocks);

// P(Lambda_pi(t)) = P(#(t) = N-2l) * P(Lambda'_pi(N-2l)).
double partition_event_prob(const MassPartition& r, const BlockPartition& blocks,
                            double t);

// |F(m, N)|: labeled binary forests on N vertices with m trees.
BigInt forest_count(Mass m, Mass N);

// Full binary plane forests on N vertices with m trees.
BigInt plane_forest_count(Mass m, Mass N);

// Kemperman count for walks with steps {+(arity-2), -1} first hitting -j at
// time m: (j/m) C(m, (m-j)/(arity-1)), zero off the lattice.
Rational kary_first_passage_count(int arity, std::int64_t j, std::int64_t m);

}  // namespace tcoal

#endif  // TCOAL_EXACT_LAWS_HPP_
