#ifndef TCOAL_STATS_HPP_
#define TCOAL_STATS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "tcoal/oracle.hpp"
#include "tcoal/partition.hpp"
#include "tcoal/rng.hpp"

namespace tcoal {

inline constexpr double kSignificance = 0.01;
inline constexpr double kPoolThreshold = 5.0;

struct EmpiricalDistribution {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(const std::string& state, std::uint64_t times = 1) {
    counts[state] += times;
    total += times;
  }
};

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  std::size_t bins = 0;
};

// Goodness of fit of `emp` against `exact`. Bins with expected count below 5
// are pooled into one; an observation outside the support gives p = 0.
// A point-mass law gives p = 1 when every observation hits it. Otherwise
// throws "degenerate test" if fewer than two bins remain.
ChiSquareResult chi_square(const EmpiricalDistribution& emp, const ExactDistribution& exact);
ChiSquareResult chi_square(const std::vector<std::uint64_t>& observed,
                           const std::vector<double>& probabilities);

// Homogeneity test of two samples over the union of their states, with the
// same pooling rule applied to the expected counts.
ChiSquareResult chi_square_two_sample(const EmpiricalDistribution& a,
                                      const EmpiricalDistribution& b);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value
// Q_KS((sqrt(e) + 0.12 + 0.11/sqrt(e)) D), e = nm/(n+m). Needs 20 samples
// on each side.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Kolmogorov survival function Q(x) = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 x^2).
double kolmogorov_q(double x);

// Binary additive coalescent from n atoms of mass 1/n (pairs merge at rate
// x + y), observed at time t + (1/2) ln n. Ranked masses.
RescaledPartition simulate_binary_additive(std::int64_t n, double t, Rng& rng);
RescaledPartition simulate_binary_additive(std::int64_t n, double t, std::uint64_t seed);

struct ScalingRow {
  std::int64_t N = 0;
  double t = 0.0;
  std::size_t replicas = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double variance = 0.0;
  double target = 0.0;
  double relative_deviation = 0.0;
  bool within_tolerance = false;
};

struct KsRow {
  std::string functional;
  std::string left;
  std::string right;
  std::size_t samples = 0;
  std::uint64_t left_seed = 0;
  std::uint64_t right_seed = 0;
  double statistic = 0.0;
  double p_value = 1.0;
  bool pass = false;
};

struct ConvergenceReport {
  std::vector<ScalingRow> scaling;
  std::vector<KsRow> ks;
  double max_mass_sum_error = 0.0;
};

inline constexpr double kScalingTolerance = 0.05;

// Mean and variance over replicas of #(t / N^(3/2)) / sqrt(N) for the
// ternary coalescent from N unit masses.
std::vector<ScalingRow> particle_scaling_experiment(const std::vector<std::int64_t>& Ns,
                                                    const std::vector<double>& ts,
                                                    std::size_t replicas, std::uint64_t seed);

// Samples of the largest rescaled mass (and other one-dimensional
// functionals) of (1/N) X(e^t / N^(3/2)).
struct MarginalSample {
  std::vector<double> largest;
  std::vector<double> second;
  std::vector<double> top5;
  double max_mass_sum_error = 0.0;
};

MarginalSample ternary_marginal_sample(std::int64_t N, double t, std::size_t replicas,
                                       std::uint64_t seed);
MarginalSample binary_marginal_sample(std::int64_t n, double t, std::size_t replicas,
                                      std::uint64_t seed);

// KS comparisons of the largest, second-largest and top-5 masses between
// consecutive N values and, when binary_n > 0, between each N and the binary
// additive coalescent with binary_n atoms.
ConvergenceReport marginal_convergence_experiment(const std::vector<std::int64_t>& Ns,
                                                  const std::vector<double>& ts,
                                                  std::size_t replicas, std::uint64_t seed,
                                                  std::int64_t binary_n);

struct KaryReport {
  int arity = 3;
  std::int64_t n = 0;
  std::int64_t l = 0;
  std::size_t replicas = 0;
  std::uint64_t seed = 0;
  ChiSquareResult agreement;  // CTMC skeleton vs walk representation
  ChiSquareResult ctmc_fit;   // CTMC skeleton vs exact law
  ChiSquareResult walk_fit;   // walk representation vs exact law
  bool mass_conserved = true;
};

// k-ary skeleton chain after l steps from (k-1)n+1 units vs phi(X_l) of the
// k-ary walk.
KaryReport kary_experiment(int arity, std::int64_t n, std::int64_t l, std::size_t replicas,
                           std::uint64_t seed);

nlohmann::ordered_json report_json(const ConvergenceReport& report,
                                   const nlohmann::ordered_json& config);
nlohmann::ordered_json to_ordered_json(const ChiSquareResult& r);
nlohmann::ordered_json to_ordered_json(const KaryReport& r);

}  // namespace tcoal

#endif  // TCOAL_STATS_HPP_
