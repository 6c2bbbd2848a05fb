#include "tcoal/ctmc.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cluster_set.hpp"
#include "tcoal/exact_laws.hpp"

namespace tcoal {
namespace {

// Uniform (k)-subset of {0, ..., n-1}, Floyd's algorithm. Sorted output.
std::vector<std::size_t> floyd_subset(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> chosen;
  chosen.reserve(k);
  for (std::size_t j = n - k; j < n; ++j) {
    const auto t = static_cast<std::size_t>(rng.uniform_below(j + 1));
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
      chosen.push_back(t);
    } else {
      chosen.push_back(j);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::uint64_t index_weight(Mass s, int arity) {
  return static_cast<std::uint64_t>((arity - 2) * s + 1);
}

}  // namespace

KernelSpec KernelSpec::of_arity(int k) {
  if (k < 3) throw std::invalid_argument("arity must be at least 3");
  return KernelSpec{k};
}

Rational KernelSpec::set_rate(const MassPartition& p,
                              std::span<const std::size_t> members) const {
  Rational r = constant();
  for (std::size_t i : members) r += p[i];
  return r;
}

double KernelSpec::state_rate(const MassPartition& p) const {
  const auto L = static_cast<double>(p.size());
  if (p.size() < static_cast<std::size_t>(arity)) return 0.0;
  const double sets = binomial(static_cast<std::int64_t>(p.size()) - 1, arity - 1).get_d();
  return sets * (static_cast<double>(p.total_mass()) + L / (arity - 2));
}

Rational KernelSpec::state_rate_exact(const MassPartition& p) const {
  const auto L = static_cast<std::int64_t>(p.size());
  if (L < arity) return 0;
  return Rational(binomial(L - 1, arity - 1)) *
         (Rational(p.total_mass()) + make_rational(L, arity - 2));
}

Step skeleton_step(const MassPartition& p, const KernelSpec& kernel, Rng& rng) {
  const auto k = static_cast<std::size_t>(kernel.arity);
  if (p.size() < k) throw std::logic_error("absorbed");
  std::vector<std::uint64_t> w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) w[i] = index_weight(p[i], kernel.arity);
  const std::size_t first = rng.weighted_index(w);
  // k-1 distinct others among the remaining L-1 positions.
  auto others = floyd_subset(p.size() - 1, k - 1, rng);
  std::vector<std::size_t> merged{first};
  for (std::size_t o : others) merged.push_back(o < first ? o : o + 1);
  std::sort(merged.begin(), merged.end());
  return Step{merged, merge_indices(p, merged)};
}

Trajectory simulate(const MassPartition& initial, const KernelSpec& kernel,
                    std::uint64_t seed, std::optional<double> t_max,
                    std::uint64_t stream) {
  if (initial.empty()) throw std::invalid_argument("empty partition");
  if (t_max && !(*t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  Rng rng = Rng::for_stream(seed, stream);
  Trajectory tr{initial, {}, seed, kernel.arity};
  MassPartition state = initial;
  double t = 0.0;
  while (state.size() >= static_cast<std::size_t>(kernel.arity)) {
    t += rng.exponential(kernel.state_rate(state));
    if (t_max && t > *t_max) break;
    Step step = skeleton_step(state, kernel, rng);
    state = step.next;
    tr.events.push_back({t, std::move(step.merged), state});
  }
  return tr;
}

std::vector<std::vector<double>> sample_coag_times(Mass M, Mass N, std::size_t count,
                                                   Rng& rng) {
  const std::int64_t n = (N - 1) / 2;
  std::vector<double> rate;
  rate.reserve(n);
  for (std::int64_t k = 1; k <= n; ++k) rate.push_back(total_rate(M, N, k).get_d());
  std::vector<std::vector<double>> out(count);
  for (auto& times : out) {
    times.reserve(n);
    double t = 0.0;
    for (double a : rate) {
      t += rng.exponential(a);
      times.push_back(t);
    }
  }
  return out;
}

MassPartition skeleton_after(const MassPartition& initial, const KernelSpec& kernel,
                             std::size_t steps, Rng& rng) {
  MassPartition state = initial;
  for (std::size_t i = 0; i < steps; ++i) state = skeleton_step(state, kernel, rng).next;
  return state;
}

std::vector<MassPartition> observe(const MassPartition& initial, const KernelSpec& kernel,
                                   std::span<const double> times, Rng& rng) {
  if (!std::is_sorted(times.begin(), times.end()))
    throw std::invalid_argument("observation times must be nondecreasing");
  const auto k = static_cast<std::size_t>(kernel.arity);
  const auto biased = static_cast<std::uint64_t>(kernel.arity - 2);
  ClusterSet clusters(initial);
  const Mass M = clusters.total();
  std::vector<MassPartition> out;
  out.reserve(times.size());
  std::size_t next_obs = 0;
  double t = 0.0;
  std::vector<std::size_t> roots(k);
  while (next_obs < times.size()) {
    const std::size_t L = clusters.live_count();
    if (L < k) break;
    const double Ld = static_cast<double>(L);
    const double rate = binomial(static_cast<std::int64_t>(L) - 1, kernel.arity - 1).get_d() *
                        (static_cast<double>(M) + Ld / (kernel.arity - 2));
    t += rng.exponential(rate);
    while (next_obs < times.size() && times[next_obs] < t) {
      out.push_back(clusters.snapshot());
      ++next_obs;
    }
    if (next_obs == times.size()) break;
    // First member with weight (k-2) s + 1.
    const std::uint64_t u = rng.uniform_below(biased * static_cast<std::uint64_t>(M) + L);
    if (u < biased * static_cast<std::uint64_t>(M)) {
      roots[0] = clusters.cluster_of_unit(static_cast<Mass>(u / biased));
    } else {
      roots[0] = clusters.live_at(u - biased * static_cast<std::uint64_t>(M));
    }
    clusters.move_to_back(roots[0]);
    const auto others = floyd_subset(L - 1, k - 1, rng);
    for (std::size_t j = 0; j < k - 1; ++j) roots[j + 1] = clusters.live_at(others[j]);
    clusters.merge(roots);
  }
  while (out.size() < times.size()) out.push_back(clusters.snapshot());
  return out;
}

SetLaw direct_set_law(const MassPartition& p, const KernelSpec& kernel) {
  SetLaw law;
  const auto k = static_cast<std::size_t>(kernel.arity);
  if (p.size() < k) return law;
  const Rational total = kernel.state_rate_exact(p);
  for_each_subset(p.size(), k, [&](const std::vector<std::size_t>& s) {
    law[s] = kernel.set_rate(p, s) / total;
  });
  return law;
}

SetLaw mixture_set_law(const MassPartition& p, const KernelSpec& kernel) {
  SetLaw law;
  const auto k = static_cast<std::size_t>(kernel.arity);
  const std::size_t L = p.size();
  if (L < k) return law;
  Rational weight_total = 0;
  for (Mass s : p.masses()) weight_total += static_cast<long>(index_weight(s, kernel.arity));
  const Rational uniform_others = Rational(1) / Rational(binomial(L - 1, k - 1));
  for (std::size_t first = 0; first < L; ++first) {
    const Rational p_first =
        Rational(static_cast<long>(index_weight(p[first], kernel.arity))) / weight_total;
    for_each_subset(L - 1, k - 1, [&](const std::vector<std::size_t>& o) {
      std::vector<std::size_t> s{first};
      for (std::size_t x : o) s.push_back(x < first ? x : x + 1);
      std::sort(s.begin(), s.end());
      law[s] += p_first * uniform_others;
    });
  }
  return law;
}

std::string trajectory_jsonl(const Trajectory& trajectory,
                             const nlohmann::ordered_json& config) {
  std::ostringstream out;
  nlohmann::ordered_json header;
  header["type"] = "header";
  header["version"] = kVersion;
  header["config"] = config;
  header["initial"] = trajectory.initial.masses();
  header["seed"] = trajectory.seed;
  header["arity"] = trajectory.arity;
  out << header.dump() << '\n';
  for (const auto& e : trajectory.events) {
    nlohmann::ordered_json rec;
    rec["t"] = e.time;
    rec["merged"] = e.merged;
    rec["state"] = e.state.masses();
    out << rec.dump() << '\n';
  }
  return out.str();
}

}  // namespace tcoal
