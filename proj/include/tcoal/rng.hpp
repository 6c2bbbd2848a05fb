#ifndef TCOAL_RNG_HPP_
#define TCOAL_RNG_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace tcoal {

// Seed used by every command when none is given on the command line.
inline constexpr std::uint64_t kDefaultSeed = 20240611;

// SplitMix64 finalizer. Used to turn (seed, replica) pairs into engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed of replica stream `stream` in a batch started from `seed`:
//   splitmix64(splitmix64(seed) ^ (stream * 0xD1B54A32D192ED03)).
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ (stream * 0xD1B54A32D192ED03ULL));
}

// Random source for every sampler in the library.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The derived distributions are implemented here rather than taken
// from <random>, because the standard library distributions are
// implementation-defined; with these, a (seed, stream) pair produces the same
// draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for replica `stream` of a batch seeded with `seed`.
  static Rng for_stream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(stream_seed(seed, stream));
  }

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). Lemire's multiply-and-reject; bound > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Uniform double in the open interval (0, 1) with 53 random bits.
  double uniform01();

  // Exponential variate with the given rate (> 0).
  double exponential(double rate);

  // Index drawn with probability proportional to weights[i] (nonnegative,
  // positive total). Exact for integer weights.
  std::size_t weighted_index(const std::vector<std::uint64_t>& weights);

 private:
  std::mt19937_64 engine_;
};

// Runs `fn(replica, rng)` for replica = 0..count-1, each with its own stream,
// across hardware threads. Results land at their replica index, so the output
// does not depend on thread count or scheduling.
template <typename Result, typename Fn>
std::vector<Result> run_replicas(std::size_t count, std::uint64_t seed, Fn fn) {
  std::vector<Result> results(count);
  const std::size_t workers = std::max<std::size_t>(
      1, std::min<std::size_t>(std::thread::hardware_concurrency(), count));
  auto work = [&](std::size_t first) {
    for (std::size_t r = first; r < count; r += workers) {
      Rng rng = Rng::for_stream(seed, r);
      results[r] = fn(r, rng);
    }
  };
  if (workers == 1) {
    work(0);
    return results;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
  for (auto& t : threads) t.join();
  return results;
}

}  // namespace tcoal

#endif  // TCOAL_RNG_HPP_
