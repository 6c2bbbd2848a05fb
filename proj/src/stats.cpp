#include "tcoal/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "cluster_set.hpp"
#include "tcoal/ctmc.hpp"
#include "tcoal/walk.hpp"

namespace tcoal {
namespace {

struct Bin {
  double observed = 0.0;
  double expected = 0.0;
};

// Pools bins with expected count below the threshold. If the pooled bin is
// itself too small it joins the smallest remaining bin.
std::vector<Bin> pool(const std::vector<Bin>& bins) {
  std::vector<Bin> kept;
  Bin small;
  bool any_small = false;
  for (const Bin& b : bins) {
    if (b.expected >= kPoolThreshold) {
      kept.push_back(b);
    } else {
      small.observed += b.observed;
      small.expected += b.expected;
      any_small = true;
    }
  }
  if (any_small && small.expected > 0.0) {
    if (small.expected >= kPoolThreshold || kept.empty()) {
      kept.push_back(small);
    } else {
      auto it = std::min_element(kept.begin(), kept.end(), [](const Bin& x, const Bin& y) {
        return x.expected < y.expected;
      });
      it->observed += small.observed;
      it->expected += small.expected;
    }
  }
  return kept;
}

ChiSquareResult finish(const std::vector<Bin>& bins, int lost_dof) {
  if (bins.size() < 2) throw std::invalid_argument("degenerate test");
  ChiSquareResult r;
  r.bins = bins.size();
  for (const Bin& b : bins) {
    const double d = b.observed - b.expected;
    r.statistic += d * d / b.expected;
  }
  r.dof = static_cast<int>(bins.size()) - 1 - lost_dof;
  if (r.dof < 1) throw std::invalid_argument("degenerate test");
  r.p_value = boost::math::gamma_q(0.5 * r.dof, 0.5 * r.statistic);
  return r;
}

ChiSquareResult impossible_observation() {
  ChiSquareResult r;
  r.statistic = std::numeric_limits<double>::infinity();
  r.p_value = 0.0;
  return r;
}

double largest_or_zero(const RescaledPartition& p, std::size_t i) {
  return i < p.values.size() ? p.values[i] : 0.0;
}

double top_sum(const RescaledPartition& p, std::size_t count) {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(count, p.values.size()); ++i) s += p.values[i];
  return s;
}

std::string format_label(const std::string& kind, std::int64_t size) {
  return kind + std::to_string(size);
}

}  // namespace

ChiSquareResult chi_square(const std::vector<std::uint64_t>& observed,
                           const std::vector<double>& probabilities) {
  if (observed.size() != probabilities.size())
    throw std::invalid_argument("observed and probabilities differ in length");
  double total = 0.0;
  for (auto o : observed) total += static_cast<double>(o);
  if (total < 1.0) throw std::invalid_argument("empty sample");
  std::vector<Bin> bins;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (probabilities[i] <= 0.0) {
      if (observed[i] > 0) return impossible_observation();
      continue;
    }
    bins.push_back({static_cast<double>(observed[i]), total * probabilities[i]});
  }
  return finish(pool(bins), 0);
}

ChiSquareResult chi_square(const EmpiricalDistribution& emp, const ExactDistribution& exact) {
  std::vector<std::uint64_t> observed;
  std::vector<double> probabilities;
  for (const auto& [state, prob] : exact) {
    const auto it = emp.counts.find(state);
    observed.push_back(it == emp.counts.end() ? 0 : it->second);
    probabilities.push_back(prob.get_d());
  }
  for (const auto& [state, count] : emp.counts) {
    if (count > 0 && exact.find(state) == exact.end()) return impossible_observation();
  }
  if (exact.size() == 1) {
    // Point mass: every observation is in the support, so the fit is exact.
    ChiSquareResult r;
    r.bins = 1;
    return r;
  }
  return chi_square(observed, probabilities);
}

ChiSquareResult chi_square_two_sample(const EmpiricalDistribution& a,
                                      const EmpiricalDistribution& b) {
  if (a.total == 0 || b.total == 0) throw std::invalid_argument("empty sample");
  std::map<std::string, std::pair<double, double>> joint;
  for (const auto& [s, c] : a.counts) joint[s].first += static_cast<double>(c);
  for (const auto& [s, c] : b.counts) joint[s].second += static_cast<double>(c);
  const double na = static_cast<double>(a.total);
  const double nb = static_cast<double>(b.total);
  const double n = na + nb;
  // A state becomes a bin pair; pooling uses the smaller expected count.
  std::vector<Bin> bins_a;
  std::vector<Bin> bins_b;
  Bin small_a;
  Bin small_b;
  bool any_small = false;
  for (const auto& [s, c] : joint) {
    const double row = c.first + c.second;
    const Bin ea{c.first, row * na / n};
    const Bin eb{c.second, row * nb / n};
    if (std::min(ea.expected, eb.expected) >= kPoolThreshold) {
      bins_a.push_back(ea);
      bins_b.push_back(eb);
    } else {
      small_a.observed += ea.observed;
      small_a.expected += ea.expected;
      small_b.observed += eb.observed;
      small_b.expected += eb.expected;
      any_small = true;
    }
  }
  if (any_small) {
    bins_a.push_back(small_a);
    bins_b.push_back(small_b);
  }
  if (bins_a.size() < 2) throw std::invalid_argument("degenerate test");
  std::vector<Bin> cells(bins_a);
  cells.insert(cells.end(), bins_b.begin(), bins_b.end());
  // (rows - 1)(cols - 1) = bins - 1 degrees of freedom.
  ChiSquareResult r;
  r.bins = bins_a.size();
  for (const Bin& c : cells) {
    if (c.expected <= 0.0) continue;
    const double d = c.observed - c.expected;
    r.statistic += d * d / c.expected;
  }
  r.dof = static_cast<int>(bins_a.size()) - 1;
  r.p_value = boost::math::gamma_q(0.5 * r.dof, 0.5 * r.statistic);
  return r;
}

double kolmogorov_q(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 1.18) {
    const double pi = std::numbers::pi;
    const double y = std::exp(-pi * pi / (8.0 * x * x));
    double s = 0.0;
    for (int j = 1; j <= 20; ++j) s += std::pow(y, (2 * j - 1) * (2 * j - 1));
    return std::clamp(1.0 - std::sqrt(2.0 * pi) / x * s, 0.0, 1.0);
  }
  double s = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * x * x);
    s += (j % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.size() < 20 || b.size() < 20) throw std::invalid_argument("too few samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double en = std::sqrt(na * nb / (na + nb));
  return {d, kolmogorov_q((en + 0.12 + 0.11 / en) * d)};
}

RescaledPartition simulate_binary_additive(std::int64_t n, double t, Rng& rng) {
  if (n < 2) throw std::invalid_argument("need at least two atoms");
  const double horizon = t + 0.5 * std::log(static_cast<double>(n));
  ClusterSet clusters(MassPartition::units(static_cast<std::size_t>(n)));
  double time = 0.0;
  std::size_t pair[2];
  while (clusters.live_count() >= 2) {
    const std::size_t L = clusters.live_count();
    // Pair rates x + y with total mass 1 sum to L - 1.
    time += rng.exponential(static_cast<double>(L - 1));
    if (time > horizon) break;
    // Size-biased first cluster via a uniform atom, then a uniform other one.
    pair[0] = clusters.cluster_of_unit(static_cast<Mass>(rng.uniform_below(n)));
    clusters.move_to_back(pair[0]);
    pair[1] = clusters.live_at(rng.uniform_below(L - 1));
    clusters.merge(pair);
  }
  return rescale(clusters.snapshot(), n);
}

RescaledPartition simulate_binary_additive(std::int64_t n, double t, std::uint64_t seed) {
  Rng rng(seed);
  return simulate_binary_additive(n, t, rng);
}

std::vector<ScalingRow> particle_scaling_experiment(const std::vector<std::int64_t>& Ns,
                                                    const std::vector<double>& ts,
                                                    std::size_t replicas, std::uint64_t seed) {
  if (Ns.empty() || ts.empty()) throw std::invalid_argument("empty N or t list");
  if (replicas == 0) throw std::invalid_argument("replicas must be positive");
  std::vector<std::size_t> order(ts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return ts[x] < ts[y]; });
  std::vector<ScalingRow> rows;
  for (std::int64_t N : Ns) {
    if (N < 3 || N % 2 == 0) throw std::invalid_argument("N must be odd");
    const double scale = std::pow(static_cast<double>(N), 1.5);
    std::vector<double> times;
    for (std::size_t i : order) times.push_back(ts[i] / scale);
    const std::uint64_t batch = stream_seed(seed, static_cast<std::uint64_t>(N));
    const MassPartition start = MassPartition::units(static_cast<std::size_t>(N));
    const auto counts = run_replicas<std::vector<double>>(
        replicas, batch, [&](std::size_t, Rng& rng) {
          const auto states = observe(start, KernelSpec{3}, times, rng);
          std::vector<double> out(ts.size());
          for (std::size_t i = 0; i < order.size(); ++i)
            out[order[i]] = static_cast<double>(states[i].size()) /
                            std::sqrt(static_cast<double>(N));
          return out;
        });
    for (std::size_t i = 0; i < ts.size(); ++i) {
      ScalingRow row;
      row.N = N;
      row.t = ts[i];
      row.replicas = replicas;
      row.seed = batch;
      double sum = 0.0;
      for (const auto& c : counts) sum += c[i];
      row.mean = sum / static_cast<double>(replicas);
      double sq = 0.0;
      for (const auto& c : counts) sq += (c[i] - row.mean) * (c[i] - row.mean);
      row.variance = replicas > 1 ? sq / static_cast<double>(replicas - 1) : 0.0;
      row.target = 1.0 / ts[i];
      row.relative_deviation = (row.mean - row.target) / row.target;
      row.within_tolerance = std::abs(row.relative_deviation) <= kScalingTolerance;
      rows.push_back(row);
    }
  }
  return rows;
}

MarginalSample ternary_marginal_sample(std::int64_t N, double t, std::size_t replicas,
                                       std::uint64_t seed) {
  if (N < 3 || N % 2 == 0) throw std::invalid_argument("N must be odd");
  const double at = std::exp(t) / std::pow(static_cast<double>(N), 1.5);
  const MassPartition start = MassPartition::units(static_cast<std::size_t>(N));
  const auto parts = run_replicas<RescaledPartition>(replicas, seed, [&](std::size_t, Rng& rng) {
    const double times[1] = {at};
    return rescale(observe(start, KernelSpec{3}, times, rng).front(), N);
  });
  MarginalSample s;
  for (const auto& p : parts) {
    s.largest.push_back(largest_or_zero(p, 0));
    s.second.push_back(largest_or_zero(p, 1));
    s.top5.push_back(top_sum(p, 5));
    s.max_mass_sum_error = std::max(s.max_mass_sum_error, std::abs(p.sum() - 1.0));
  }
  return s;
}

MarginalSample binary_marginal_sample(std::int64_t n, double t, std::size_t replicas,
                                      std::uint64_t seed) {
  const auto parts = run_replicas<RescaledPartition>(
      replicas, seed, [&](std::size_t, Rng& rng) { return simulate_binary_additive(n, t, rng); });
  MarginalSample s;
  for (const auto& p : parts) {
    s.largest.push_back(largest_or_zero(p, 0));
    s.second.push_back(largest_or_zero(p, 1));
    s.top5.push_back(top_sum(p, 5));
    s.max_mass_sum_error = std::max(s.max_mass_sum_error, std::abs(p.sum() - 1.0));
  }
  return s;
}

ConvergenceReport marginal_convergence_experiment(const std::vector<std::int64_t>& Ns,
                                                  const std::vector<double>& ts,
                                                  std::size_t replicas, std::uint64_t seed,
                                                  std::int64_t binary_n) {
  if (Ns.empty() || ts.empty()) throw std::invalid_argument("empty N or t list");
  ConvergenceReport report;
  auto compare = [&](const std::string& left, const MarginalSample& a, std::uint64_t sa,
                     const std::string& right, const MarginalSample& b, std::uint64_t sb,
                     double t) {
    const std::pair<std::string, const std::vector<double>*> fa[] = {
        {"largest", &a.largest}, {"second", &a.second}, {"top5", &a.top5}};
    const std::vector<double>* fb[] = {&b.largest, &b.second, &b.top5};
    for (std::size_t f = 0; f < 3; ++f) {
      const KsResult ks = ks_two_sample(*fa[f].second, *fb[f]);
      KsRow row;
      row.functional = fa[f].first;
      row.left = left + " t=" + nlohmann::json(t).dump();
      row.right = right + " t=" + nlohmann::json(t).dump();
      row.samples = fa[f].second->size();
      row.left_seed = sa;
      row.right_seed = sb;
      row.statistic = ks.statistic;
      row.p_value = ks.p_value;
      row.pass = ks.p_value > kSignificance;
      report.ks.push_back(row);
    }
  };
  for (std::size_t ti = 0; ti < ts.size(); ++ti) {
    std::vector<MarginalSample> samples;
    std::vector<std::uint64_t> seeds;
    for (std::int64_t N : Ns) {
      seeds.push_back(stream_seed(seed, static_cast<std::uint64_t>(N) * 1000 + ti));
      samples.push_back(ternary_marginal_sample(N, ts[ti], replicas, seeds.back()));
      report.max_mass_sum_error =
          std::max(report.max_mass_sum_error, samples.back().max_mass_sum_error);
    }
    for (std::size_t i = 0; i + 1 < Ns.size(); ++i) {
      compare(format_label("ternary N=", Ns[i]), samples[i], seeds[i],
              format_label("ternary N=", Ns[i + 1]), samples[i + 1], seeds[i + 1], ts[ti]);
    }
    if (binary_n > 0) {
      const std::uint64_t bseed = stream_seed(seed ^ 0xB1AA27ULL, ti);
      const MarginalSample b = binary_marginal_sample(binary_n, ts[ti], replicas, bseed);
      report.max_mass_sum_error = std::max(report.max_mass_sum_error, b.max_mass_sum_error);
      for (std::size_t i = 0; i < Ns.size(); ++i) {
        compare(format_label("ternary N=", Ns[i]), samples[i], seeds[i],
                format_label("binary n=", binary_n), b, bseed, ts[ti]);
      }
    }
  }
  return report;
}

KaryReport kary_experiment(int arity, std::int64_t n, std::int64_t l, std::size_t replicas,
                           std::uint64_t seed) {
  const KernelSpec kernel = KernelSpec::of_arity(arity);
  if (n < 1 || l < 0 || l > n) throw std::invalid_argument("need 0 <= l <= n, n >= 1");
  const Mass N = (arity - 1) * n + 1;
  KaryReport report;
  report.arity = arity;
  report.n = n;
  report.l = l;
  report.replicas = replicas;
  report.seed = seed;
  const MassPartition start = MassPartition::units(static_cast<std::size_t>(N));
  const auto ctmc = run_replicas<MassPartition>(
      replicas, stream_seed(seed, 1), [&](std::size_t, Rng& rng) {
        return skeleton_after(start, kernel, static_cast<std::size_t>(l), rng);
      });
  const auto walk = run_replicas<MassPartition>(
      replicas, stream_seed(seed, 2), [&](std::size_t, Rng& rng) {
        SiteConfiguration x{n, arity, {}};
        for (std::int64_t i = 0; i < l; ++i) x = step_X(x, rng);
        return phi(x);
      });
  EmpiricalDistribution a;
  EmpiricalDistribution b;
  for (const auto& p : ctmc) {
    report.mass_conserved = report.mass_conserved && p.total_mass() == N;
    a.add(p.key());
  }
  for (const auto& p : walk) {
    report.mass_conserved = report.mass_conserved && p.total_mass() == N;
    b.add(p.key());
  }
  const ExactDistribution exact = enumerate_skeleton(N, l, arity);
  report.agreement = chi_square_two_sample(a, b);
  report.ctmc_fit = chi_square(a, exact);
  report.walk_fit = chi_square(b, exact);
  return report;
}

nlohmann::ordered_json to_ordered_json(const ChiSquareResult& r) {
  nlohmann::ordered_json j;
  j["statistic"] = r.statistic;
  j["dof"] = r.dof;
  j["p_value"] = r.p_value;
  j["bins"] = r.bins;
  return j;
}

nlohmann::ordered_json to_ordered_json(const KaryReport& r) {
  nlohmann::ordered_json j;
  j["arity"] = r.arity;
  j["n"] = r.n;
  j["l"] = r.l;
  j["replicas"] = r.replicas;
  j["seed"] = r.seed;
  j["agreement"] = to_ordered_json(r.agreement);
  j["ctmc_fit"] = to_ordered_json(r.ctmc_fit);
  j["walk_fit"] = to_ordered_json(r.walk_fit);
  j["mass_conserved"] = r.mass_conserved;
  return j;
}

nlohmann::ordered_json report_json(const ConvergenceReport& report,
                                   const nlohmann::ordered_json& config) {
  nlohmann::ordered_json j;
  j["type"] = "convergence_report";
  j["version"] = kVersion;
  j["note"] =
      "Convergence to the standard additive coalescent is checked through one-dimensional "
      "functionals only (largest, second-largest and top-5 rescaled masses) together with "
      "the particle-count scaling; the full finite-dimensional statement is not tested.";
  j["config"] = config;
  nlohmann::ordered_json scaling = nlohmann::ordered_json::array();
  for (const auto& r : report.scaling) {
    nlohmann::ordered_json row;
    row["N"] = r.N;
    row["t"] = r.t;
    row["replicas"] = r.replicas;
    row["seed"] = r.seed;
    row["mean"] = r.mean;
    row["variance"] = r.variance;
    row["target"] = r.target;
    row["relative_deviation"] = r.relative_deviation;
    row["within_tolerance"] = r.within_tolerance;
    scaling.push_back(row);
  }
  j["scaling"] = scaling;
  nlohmann::ordered_json ks = nlohmann::ordered_json::array();
  for (const auto& r : report.ks) {
    nlohmann::ordered_json row;
    row["functional"] = r.functional;
    row["left"] = r.left;
    row["right"] = r.right;
    row["samples"] = r.samples;
    row["left_seed"] = r.left_seed;
    row["right_seed"] = r.right_seed;
    row["statistic"] = r.statistic;
    row["p_value"] = r.p_value;
    row["pass"] = r.pass;
    ks.push_back(row);
  }
  j["ks"] = ks;
  j["max_mass_sum_error"] = report.max_mass_sum_error;
  return j;
}

}  // namespace tcoal
