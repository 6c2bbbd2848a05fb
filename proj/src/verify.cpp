#include "tcoal/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "tcoal/ctmc.hpp"
#include "tcoal/exact_laws.hpp"
#include "tcoal/forest.hpp"
#include "tcoal/oracle.hpp"
#include "tcoal/stats.hpp"
#include "tcoal/walk.hpp"

namespace tcoal {
namespace {

using json = nlohmann::ordered_json;

std::optional<Rational> fault_constant(const VerifyOptions& opt) {
  if (!opt.inject_fault) return std::nullopt;
  return Rational(301, 100);
}

template <typename Map>
std::string compare_maps(const Map& expected, const Map& actual,
                         const std::function<std::string(const typename Map::key_type&)>& show) {
  for (const auto& [k, v] : expected) {
    const auto it = actual.find(k);
    if (it == actual.end()) return "missing " + show(k);
    if (it->second != v)
      return show(k) + ": " + to_string(it->second) + " != " + to_string(v);
  }
  for (const auto& [k, v] : actual) {
    if (expected.find(k) == expected.end()) return "unexpected " + show(k);
  }
  return {};
}

std::string show_key(const std::string& k) { return k; }

std::string show_path(const std::vector<std::string>& path) {
  std::string s;
  for (const auto& p : path) s += (s.empty() ? "" : " -> ") + std::string("(") + p + ")";
  return s;
}

std::string show_configs(const std::vector<SiteConfiguration>& seq) {
  std::string s;
  for (const auto& x : seq) {
    s += s.empty() ? "{" : " -> {";
    for (std::size_t i = 0; i < x.occupied.size(); ++i)
      s += (i ? "," : "") + std::to_string(x.occupied[i]);
    s += "}";
  }
  return s;
}

CheckResult make(int criterion, const std::string& section, const std::string& name,
                 const std::string& mismatch, std::size_t compared) {
  CheckResult r{criterion, section, name, mismatch.empty(), {}, json::object()};
  r.detail = mismatch.empty() ? std::to_string(compared) + " cases equal" : mismatch;
  r.data["compared"] = compared;
  return r;
}

ExactDistribution closed_form_skeleton(Mass N, std::int64_t l) {
  ExactDistribution out;
  for (const auto& p : skeleton_support(N, l)) out[p.key()] = skeleton_marginal(N, l, p);
  return out;
}

json chi_json(const ChiSquareResult& c, std::uint64_t seed) {
  json j = to_ordered_json(c);
  j["seed"] = seed;
  return j;
}

// Runs a statistical check at the first seed and, if it fails, once more at
// the retry seed. Two failures make the check red.
CheckResult with_retry(const VerifyOptions& opt,
                       const std::function<CheckResult(std::uint64_t)>& run) {
  CheckResult first = run(opt.seed);
  if (first.pass) return first;
  CheckResult second = run(opt.retry_seed);
  second.data["first_attempt"] = first.data;
  second.detail += second.pass ? " (passed on retry seed)" : " (failed at both seeds)";
  return second;
}

std::string p_detail(double p) {
  std::ostringstream s;
  s << "p = " << p;
  return s.str();
}

std::string path_key(const std::vector<MassPartition>& path) {
  std::string s;
  for (const auto& p : path) s += (s.empty() ? "" : "|") + p.key();
  return s;
}

}  // namespace

const std::vector<std::string>& all_sections() {
  static const std::vector<std::string> s{"exact",   "duality",     "representations",
                                          "counting", "scaling",    "convergence",
                                          "kary",     "determinism"};
  return s;
}

const std::vector<std::string>& default_sections() {
  static const std::vector<std::string> s{"exact",    "duality", "representations",
                                          "counting", "kary",    "determinism"};
  return s;
}

std::vector<CheckResult> check_exact_laws(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const auto fault = fault_constant(opt);

  {
    std::string bad;
    std::size_t cases = 0;
    for (Mass N = 3; N <= 9 && bad.empty(); N += 2) {
      for (std::int64_t l = 0; l <= (N - 1) / 2 && bad.empty(); ++l) {
        bad = compare_maps<ExactDistribution>(enumerate_skeleton(N, l, 3, fault),
                                              closed_form_skeleton(N, l), show_key);
        if (!bad.empty()) bad = "N=" + std::to_string(N) + " l=" + std::to_string(l) + " " + bad;
        ++cases;
      }
    }
    out.push_back(make(1, "exact", "skeleton marginal vs chain enumeration", bad, cases));
  }
  {
    std::string bad;
    std::size_t cases = 0;
    for (Mass N = 3; N <= 9 && bad.empty(); N += 2) {
      for (std::int64_t l = 0; l <= (N - 1) / 2 && bad.empty(); ++l) {
        bad = compare_maps<ExactDistribution>(
            hitting_order_statistics(N, static_cast<std::size_t>(N - 2 * l)),
            closed_form_skeleton(N, l), show_key);
        if (!bad.empty()) bad = "N=" + std::to_string(N) + " l=" + std::to_string(l) + " " + bad;
        ++cases;
      }
    }
    out.push_back(
        make(1, "exact", "skeleton marginal vs conditioned hitting times", bad, cases));
  }
  {
    std::string bad;
    std::size_t cases = 0;
    for (Mass s = 3; s <= 41 && bad.empty(); s += 2) {
      ExactDistribution closed;
      for (const Triple& r : dislocation_support(s))
        closed[MassPartition({r[0], r[1], r[2]}).key()] = dislocation_pmf(s, r);
      bad = compare_maps<ExactDistribution>(hitting_order_statistics(s, 3), closed, show_key);
      if (!bad.empty()) bad = "s=" + std::to_string(s) + " " + bad;
      cases += closed.size();
    }
    out.push_back(make(1, "exact", "dislocation law vs conditioned hitting times", bad, cases));
  }
  {
    const std::vector<MassPartition> starts{
        MassPartition::units(3), MassPartition::units(5), MassPartition::units(7),
        MassPartition::units(9), MassPartition({3, 1, 1, 1, 1}), MassPartition({2, 2, 1, 1, 1}),
        MassPartition({4, 2, 1, 1, 1, 1, 1})};
    std::string bad;
    std::size_t cases = 0;
    for (const auto& r : starts) {
      const auto N = static_cast<std::int64_t>(r.size());
      for (std::int64_t l = 0; 2 * l <= N - 1 && bad.empty(); ++l) {
        const ExactDistribution oracle = enumerate_block_law(r, l);
        ExactDistribution closed;
        for (const auto& [key, prob] : oracle) {
          BlockPartition blocks;
          std::istringstream in(key);
          std::string block;
          while (std::getline(in, block, '|')) {
            std::vector<int> labels;
            std::istringstream bs(block);
            std::string label;
            while (std::getline(bs, label, ',')) labels.push_back(std::stoi(label));
            blocks.push_back(labels);
          }
          closed[key] = block_coagulation_prob(r, blocks);
          ++cases;
        }
        if (opt.inject_fault && l == 1) closed.begin()->second += Rational(1, 1000);
        bad = compare_maps<ExactDistribution>(oracle, closed, show_key);
        if (!bad.empty()) bad = "r=" + r.key() + " l=" + std::to_string(l) + " " + bad;
      }
    }
    out.push_back(make(1, "exact", "block coagulation law vs set-partition chain", bad, cases));
  }
  {
    std::string bad;
    std::size_t cases = 0;
    for (std::int64_t j = 1; j <= 9 && bad.empty(); ++j) {
      for (std::int64_t m = 1; m <= kMaxPathLength && bad.empty(); ++m) {
        BigInt pow2;
        mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(m));
        const Rational count(brute_first_passage(3, j, m));
        for (std::int64_t k : {-j, j}) {
          const Rational closed = hitting_time_pmf(k, m) * Rational(pow2);
          if (closed != count) {
            bad = "k=" + std::to_string(k) + " m=" + std::to_string(m) + ": " +
                  to_string(closed) + " != " + to_string(count);
          }
          ++cases;
        }
      }
    }
    out.push_back(make(1, "exact", "hitting time pmf vs path counting", bad, cases));
  }
  {
    std::string bad;
    std::size_t cases = 0;
    for (int N = 1; N <= kMaxEnumeratedForest && bad.empty(); N += 2) {
      for (int m = 1; m <= N && bad.empty(); m += 2) {
        const BigInt labeled(static_cast<unsigned long>(enumerate_forests(N, m).size()));
        const BigInt plane(static_cast<unsigned long>(enumerate_plane_forests(N, m).size()));
        if (labeled != forest_count(m, N)) {
          bad = "|F(" + std::to_string(m) + "," + std::to_string(N) + ")| " +
                forest_count(m, N).get_str() + " != " + labeled.get_str();
        } else if (plane != plane_forest_count(m, N)) {
          bad = "plane(" + std::to_string(m) + "," + std::to_string(N) + ") " +
                plane_forest_count(m, N).get_str() + " != " + plane.get_str();
        }
        cases += 2;
      }
    }
    out.push_back(make(1, "exact", "forest counts vs exhaustive enumeration", bad, cases));
  }
  return out;
}

std::vector<CheckResult> check_duality(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const auto fault = fault_constant(opt);
  const std::int64_t top = std::clamp<std::int64_t>(opt.n, 1, kMaxConfigurationN);
  for (std::int64_t n = 1; n <= top; ++n) {
    const ConfigurationChainLaw law = enumerate_configuration_chain(n);
    const std::string tag = " (n=" + std::to_string(n) + ")";
    out.push_back(make(2, "duality", "configuration chains: X law = reversed Y law" + tag,
                       compare_maps<std::map<std::vector<SiteConfiguration>, Rational>>(
                           law.x_law, law.y_reversed_law, show_configs),
                       law.x_law.size()));
    out.push_back(make(2, "duality", "phi(X) law = reversed phi(Y) law" + tag,
                       compare_maps<PathDistribution>(law.phi_x, law.phi_y_reversed, show_path),
                       law.phi_x.size()));
    out.push_back(make(2, "duality", "phi(X) law = skeleton chain law" + tag,
                       compare_maps<PathDistribution>(enumerate_skeleton_paths(2 * n + 1, fault),
                                                      law.phi_x, show_path),
                       law.phi_x.size()));
  }
  {
    std::string bad;
    std::size_t cases = 0;
    for (Mass N = 3; N <= 9 && bad.empty(); N += 2) {
      const PathDistribution coal = enumerate_skeleton_paths(N, fault);
      bad = compare_maps<PathDistribution>(coal, reversed(enumerate_frag_paths(N)), show_path);
      if (!bad.empty()) bad = "N=" + std::to_string(N) + " " + bad;
      cases += coal.size();
    }
    out.push_back(make(2, "duality", "reversed fragmentation paths = coalescent paths", bad,
                       cases));
  }
  out.push_back(with_retry(opt, [&](std::uint64_t seed) {
    const std::int64_t n = 4;
    const MassPartition start = MassPartition::units(2 * n + 1);
    const std::uint64_t coal_seed = stream_seed(seed, 21);
    const std::uint64_t frag_seed = stream_seed(seed, 22);
    const auto coal = run_replicas<std::string>(opt.samples, coal_seed, [&](std::size_t r, Rng&) {
      const Trajectory tr = simulate(start, KernelSpec{3}, coal_seed, std::nullopt, r);
      std::vector<MassPartition> path{tr.initial};
      for (const auto& e : tr.events) path.push_back(e.state);
      return path_key(path);
    });
    const auto frag = run_replicas<std::string>(opt.samples, frag_seed, [&](std::size_t, Rng& rng) {
      auto path = fragmentation_chain(n, rng);
      std::reverse(path.begin(), path.end());
      return path_key(path);
    });
    EmpiricalDistribution a;
    EmpiricalDistribution b;
    for (const auto& k : coal) a.add(k);
    for (const auto& k : frag) b.add(k);
    const ChiSquareResult c = chi_square_two_sample(a, b);
    CheckResult r{2, "duality", "simulated reversed fragmentation vs coalescent paths, N=9",
                  c.p_value > kSignificance, p_detail(c.p_value), chi_json(c, seed)};
    r.data["samples"] = opt.samples;
    return r;
  }));
  return out;
}

std::vector<CheckResult> check_representations(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const Mass N = 9;
  const std::int64_t n = 4;
  const std::vector<std::int64_t> levels{1, 2, 3};
  using Sampler = std::function<std::vector<MassPartition>(std::size_t, Rng&, std::uint64_t)>;
  const MassPartition start = MassPartition::units(N);
  const std::vector<std::pair<std::string, Sampler>> reps{
      {"ctmc",
       [&](std::size_t r, Rng&, std::uint64_t batch) {
         const Trajectory tr = simulate(start, KernelSpec{3}, batch, std::nullopt, r);
         std::vector<MassPartition> path{tr.initial};
         for (const auto& e : tr.events) path.push_back(e.state);
         return path;
       }},
      {"walk",
       [&](std::size_t, Rng& rng, std::uint64_t) {
         std::vector<MassPartition> path;
         for (const auto& x : configuration_chain(ChainDirection::build, n, 3, rng))
           path.push_back(phi(x));
         return path;
       }},
      {"forest", [&](std::size_t, Rng& rng, std::uint64_t) { return forest_chain(N, rng); }}};
  for (std::size_t ri = 0; ri < reps.size(); ++ri) {
    for (std::int64_t l : levels) {
      out.push_back(with_retry(opt, [&](std::uint64_t seed) {
        const std::uint64_t batch = stream_seed(seed, 31 + ri);
        const auto& sampler = reps[ri].second;
        const auto states = run_replicas<std::string>(
            opt.samples, batch,
            [&](std::size_t r, Rng& rng) { return sampler(r, rng, batch)[l].key(); });
        EmpiricalDistribution emp;
        for (const auto& s : states) emp.add(s);
        const ChiSquareResult c = chi_square(emp, closed_form_skeleton(N, l));
        CheckResult res{3,
                        "representations",
                        reps[ri].first + " X'_" + std::to_string(l) + " vs skeleton marginal, N=9",
                        c.p_value > kSignificance,
                        p_detail(c.p_value),
                        chi_json(c, batch)};
        res.data["samples"] = opt.samples;
        return res;
      }));
    }
  }
  return out;
}

std::vector<CheckResult> check_counting(const VerifyOptions&) {
  std::vector<CheckResult> out;
  {
    std::string bad;
    std::size_t cases = 0;
    for (Mass N = 3; N <= 101 && bad.empty(); N += 2) {
      const std::int64_t n = (N - 1) / 2;
      for (std::int64_t k = 1; 2 * k + 1 <= N && bad.empty(); ++k) {
        const BigInt lhs = forest_count(2 * k - 1, N);
        const BigInt rhs = BigInt((n + k + 1) * k * (2 * k - 1)) * forest_count(2 * k + 1, N);
        if (lhs != rhs) bad = "N=" + std::to_string(N) + " k=" + std::to_string(k);
        ++cases;
      }
    }
    out.push_back(make(4, "counting", "fiber recursion |F(2k-1,N)| = (n+k+1)k(2k-1)|F(2k+1,N)|",
                       bad, cases));
  }
  {
    std::string bad;
    const auto f13 = enumerate_forests(3, 1).size();
    const auto f35 = enumerate_forests(5, 3).size();
    if (f13 != 3 || forest_count(1, 3) != 3) bad = "|F(1,3)| != 3";
    if (f35 != 30 || forest_count(3, 5) != 30) bad = "|F(3,5)| != 30";
    out.push_back(make(4, "counting", "|F(1,3)| = 3 and |F(3,5)| = 30", bad, 2));
  }
  {
    std::string bad;
    const auto planes = enumerate_plane_forests(5, 1).size();
    if (planes != 2 || plane_forest_count(1, 5) != 2) bad = "plane trees on 5 vertices != 2";
    out.push_back(make(4, "counting", "plane trees on 5 vertices = Catalan C_2 = 2", bad, 1));
  }
  {
    std::string bad;
    std::size_t cases = 0;
    for (int N = 3; N <= kMaxEnumeratedForest && bad.empty(); N += 2) {
      const int n = (N - 1) / 2;
      for (int k = 1; 2 * k + 1 <= N && bad.empty(); ++k) {
        std::map<std::string, long> hits;
        for (const auto& f : enumerate_forests(N, 2 * k - 1)) ++hits[f.apply_R().key()];
        const auto targets = enumerate_forests(N, 2 * k + 1);
        const long fiber = static_cast<long>(n + k + 1) * k * (2 * k - 1);
        if (hits.size() != targets.size()) bad = "R not surjective";
        for (const auto& t : targets) {
          if (hits[t.key()] != fiber) {
            bad = "N=" + std::to_string(N) + " k=" + std::to_string(k) + " fiber " +
                  std::to_string(hits[t.key()]) + " != " + std::to_string(fiber);
            break;
          }
        }
        cases += targets.size();
      }
    }
    out.push_back(make(4, "counting", "R has constant fibers (n+k+1)k(2k-1), N <= 7", bad, cases));
  }
  return out;
}

std::vector<CheckResult> check_scaling(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const std::vector<double> ts{0.5, 1.0, 2.0};
  const auto first = particle_scaling_experiment({2001}, ts, 1000, opt.seed);
  std::optional<std::vector<ScalingRow>> retry;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    ScalingRow row = first[i];
    json data;
    if (!row.within_tolerance) {
      if (!retry) retry = particle_scaling_experiment({2001}, ts, 1000, opt.retry_seed);
      data["first_attempt"] = {{"seed", row.seed}, {"mean", row.mean}};
      row = (*retry)[i];
    }
    std::ostringstream detail;
    detail << "mean " << row.mean << " vs 1/t = " << row.target << ", deviation "
           << 100.0 * row.relative_deviation << "%";
    data["N"] = row.N;
    data["t"] = row.t;
    data["replicas"] = row.replicas;
    data["seed"] = row.seed;
    data["mean"] = row.mean;
    data["variance"] = row.variance;
    data["relative_deviation"] = row.relative_deviation;
    std::ostringstream name;
    name << "#(t/N^1.5)/sqrt(N) within 5% of 1/t, N=2001, t=" << row.t;
    out.push_back({5, "scaling", name.str(), row.within_tolerance, detail.str(), data});
  }
  return out;
}

std::vector<CheckResult> check_convergence(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const std::size_t samples = 2000;
  auto ks_check = [&](const std::string& name, auto&& left, auto&& right) {
    return with_retry(opt, [&](std::uint64_t seed) {
      const std::uint64_t sa = stream_seed(seed, 61);
      const std::uint64_t sb = stream_seed(seed, 62);
      const MarginalSample a = left(sa);
      const MarginalSample b = right(sb);
      const KsResult ks = ks_two_sample(a.largest, b.largest);
      double mean_a = 0.0;
      double mean_b = 0.0;
      for (double x : a.largest) mean_a += x / static_cast<double>(samples);
      for (double x : b.largest) mean_b += x / static_cast<double>(samples);
      json data;
      data["samples"] = samples;
      data["left_seed"] = sa;
      data["right_seed"] = sb;
      data["statistic"] = ks.statistic;
      data["p_value"] = ks.p_value;
      data["left_mean_largest"] = mean_a;
      data["right_mean_largest"] = mean_b;
      data["max_mass_sum_error"] = std::max(a.max_mass_sum_error, b.max_mass_sum_error);
      std::ostringstream detail;
      detail << "KS D = " << ks.statistic << ", " << p_detail(ks.p_value) << "; mean largest "
             << mean_a << " vs " << mean_b;
      return CheckResult{6, "convergence", name, ks.p_value > kSignificance, detail.str(), data};
    });
  };
  out.push_back(ks_check(
      "largest rescaled mass, ternary N=501 vs N=2001 at t=0",
      [&](std::uint64_t s) { return ternary_marginal_sample(501, 0.0, samples, s); },
      [&](std::uint64_t s) { return ternary_marginal_sample(2001, 0.0, samples, s); }));
  out.push_back(ks_check(
      "largest rescaled mass, ternary N=2001 vs binary additive n=1000 at t=0",
      [&](std::uint64_t s) { return ternary_marginal_sample(2001, 0.0, samples, s); },
      [&](std::uint64_t s) { return binary_marginal_sample(1000, 0.0, samples, s); }));
  return out;
}

std::vector<CheckResult> check_kary(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  out.push_back(with_retry(opt, [&](std::uint64_t seed) {
    const KaryReport rep = kary_experiment(4, 3, 2, opt.samples, seed);
    const bool pass = rep.agreement.p_value > kSignificance && rep.mass_conserved;
    return CheckResult{7,
                       "kary",
                       "k=4, n=3, l=2: CTMC skeleton vs walk representation",
                       pass,
                       p_detail(rep.agreement.p_value) +
                           (rep.mass_conserved ? "" : ", mass not conserved"),
                       to_ordered_json(rep)};
  }));
  std::string bad;
  std::size_t cases = 0;
  for (int k : {3, 4, 5}) {
    for (std::int64_t m = 1; m <= kMaxPathLength && bad.empty(); ++m) {
      for (std::int64_t j = 1; j <= m && bad.empty(); ++j) {
        const Rational closed = kary_first_passage_count(k, j, m);
        const Rational brute(brute_first_passage(k, j, m));
        if (closed != brute) {
          bad = "k=" + std::to_string(k) + " j=" + std::to_string(j) + " m=" +
                std::to_string(m) + ": " + to_string(closed) + " != " + to_string(brute);
        }
        ++cases;
      }
    }
  }
  out.push_back(make(7, "kary", "Kemperman counts vs path counting, k in {3,4,5}, m <= 40", bad,
                     cases));
  return out;
}

std::vector<CheckResult> check_determinism(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const json config = {{"seed", opt.seed}};
  auto twice = [&](const std::string& name, const std::function<std::string()>& produce) {
    const std::string a = produce();
    const std::string b = produce();
    out.push_back(make(8, "determinism", name, a == b ? "" : "outputs differ", 1));
  };
  twice("simulate, N=101", [&] {
    return trajectory_jsonl(simulate(MassPartition::units(101), KernelSpec{3}, opt.seed),
                            config);
  });
  twice("walk chain, n=50", [&] {
    return chain_jsonl(run_chain(ChainDirection::destroy, 50, 3, opt.seed), config);
  });
  twice("forest chain, N=101", [&] { return chain_jsonl(forest_chain(101, opt.seed), config); });
  twice("particle scaling batch", [&] {
    ConvergenceReport rep;
    rep.scaling = particle_scaling_experiment({501}, {1.0}, 50, opt.seed);
    return report_json(rep, config).dump();
  });
  return out;
}

std::vector<CheckResult> check_section(const std::string& section, const VerifyOptions& opt) {
  if (section == "exact") return check_exact_laws(opt);
  if (section == "duality") return check_duality(opt);
  if (section == "representations") return check_representations(opt);
  if (section == "counting") return check_counting(opt);
  if (section == "scaling") return check_scaling(opt);
  if (section == "convergence") return check_convergence(opt);
  if (section == "kary") return check_kary(opt);
  if (section == "determinism") return check_determinism(opt);
  throw std::invalid_argument("unknown section " + section);
}

std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
  for (const auto& s : opt.only) {
    if (std::find(all_sections().begin(), all_sections().end(), s) == all_sections().end())
      throw std::invalid_argument("unknown section " + s);
  }
  std::vector<CheckResult> out;
  for (const auto& s : all_sections()) {
    const bool wanted = opt.only.empty()
                            ? std::find(default_sections().begin(), default_sections().end(),
                                        s) != default_sections().end()
                            : opt.only.count(s) > 0;
    if (!wanted) continue;
    auto part = check_section(s, opt);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

json verify_report(const std::vector<CheckResult>& results, const json& config) {
  json j;
  j["type"] = "verify_report";
  j["version"] = kVersion;
  j["config"] = config;
  json checks = json::array();
  bool all = true;
  for (const auto& r : results) {
    json c;
    c["criterion"] = r.criterion;
    c["section"] = r.section;
    c["name"] = r.name;
    c["pass"] = r.pass;
    c["detail"] = r.detail;
    c["data"] = r.data;
    checks.push_back(c);
    all = all && r.pass;
  }
  j["checks"] = checks;
  j["all_pass"] = all;
  return j;
}

}  // namespace tcoal
