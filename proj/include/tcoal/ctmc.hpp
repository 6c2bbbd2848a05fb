#ifndef TCOAL_CTMC_HPP_
#define TCOAL_CTMC_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tcoal/partition.hpp"
#include "tcoal/rational.hpp"
#include "tcoal/rng.hpp"

namespace tcoal {

inline constexpr const char* kVersion = "tcoal 1.0.0";

// k-ary additive kernel: a k-set of masses r_1..r_k merges at rate
// r_1 + ... + r_k + k/(k-2). Arity 3 is the ternary kernel r+s+t+3.
struct KernelSpec {
  int arity = 3;

  static KernelSpec of_arity(int k);

  Rational constant() const { return make_rational(arity, arity - 2); }

  // Rate of the set `members` of p, exact.
  Rational set_rate(const MassPartition& p, std::span<const std::size_t> members) const;

  // Total jump rate of state p: C(L-1, k-1) * (M + L/(k-2)).
  double state_rate(const MassPartition& p) const;
  Rational state_rate_exact(const MassPartition& p) const;
};

struct TrajectoryEvent {
  double time = 0.0;
  std::vector<std::size_t> merged;  // indices into the previous state
  MassPartition state;              // state after the merge
};

struct Trajectory {
  MassPartition initial;
  std::vector<TrajectoryEvent> events;
  std::uint64_t seed = 0;
  int arity = 3;

  const MassPartition& final_state() const {
    return events.empty() ? initial : events.back().state;
  }
};

struct Step {
  std::vector<std::size_t> merged;  // sorted
  MassPartition next;
};

// One jump of the skeleton chain. The k-set is drawn as: one index with
// probability proportional to (k-2) s_i + 1, then k-1 distinct others
// uniformly. Summed over the k members this gives weight proportional to
// sum s_i + k/(k-2), i.e. exactly the kernel. Throws "absorbed" when fewer
// than k particles remain.
Step skeleton_step(const MassPartition& p, const KernelSpec& kernel, Rng& rng);

// Gillespie simulation until fewer than k particles remain or, when given,
// until t_max (no terminal pseudo-event is recorded). Uses replica stream
// `stream` of `seed`.
Trajectory simulate(const MassPartition& initial, const KernelSpec& kernel,
                    std::uint64_t seed, std::optional<double> t_max = std::nullopt,
                    std::uint64_t stream = 0);

// Coagulation times T_1 < ... < T_n of the ternary coalescent with total mass
// M and N particles: T_k is a sum of independent Exp(alpha(i)), i <= k.
std::vector<std::vector<double>> sample_coag_times(Mass M, Mass N, std::size_t count,
                                                   Rng& rng);

// State of the skeleton chain after `steps` jumps.
MassPartition skeleton_after(const MassPartition& initial, const KernelSpec& kernel,
                             std::size_t steps, Rng& rng);

// Union-find simulator for large systems. Observes the state at the given
// nondecreasing times without recording the whole trajectory. Same law as
// simulate(); O(k log N) per event plus O(L log L) per observation.
std::vector<MassPartition> observe(const MassPartition& initial, const KernelSpec& kernel,
                                   std::span<const double> times, Rng& rng);

using SetLaw = std::map<std::vector<std::size_t>, Rational>;

// Law of the merged k-set from p, computed two ways: from the kernel weights
// directly, and from the one-biased-plus-uniform decomposition used by the
// samplers. Exhaustive over all k-subsets; keep L small.
SetLaw direct_set_law(const MassPartition& p, const KernelSpec& kernel);
SetLaw mixture_set_law(const MassPartition& p, const KernelSpec& kernel);

// JSON-lines form: a header record, then one record per event.
std::string trajectory_jsonl(const Trajectory& trajectory,
                             const nlohmann::ordered_json& config);

}  // namespace tcoal

#endif  // TCOAL_CTMC_HPP_
