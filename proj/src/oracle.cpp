#include "tcoal/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tcoal {
namespace {

using PartitionLaw = std::map<MassPartition, Rational>;

void subsets(std::size_t n, std::size_t k,
             const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      fn(cur);
      return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

void check_mass_bound(Mass N, int arity) {
  const Mass bound = arity == 3 ? kMaxEnumeratedMass : kMaxEnumeratedMass + 2;
  if (N > bound) throw std::out_of_range("enumeration bound exceeded");
}

std::int64_t chain_length(Mass N, int arity) {
  if (arity < 3) throw std::invalid_argument("arity must be at least 3");
  if (N < 1 || (N - 1) % (arity - 1) != 0)
    throw std::invalid_argument("N must be (k-1)n+1");
  return (N - 1) / (arity - 1);
}

// Successor law of p under the k-ary kernel with additive constant c. The
// total rate is summed from the subsets, not taken from the closed form.
PartitionLaw coalescent_successors(const MassPartition& p, int arity, const Rational& c) {
  std::vector<std::pair<std::vector<std::size_t>, Rational>> weights;
  Rational total = 0;
  subsets(p.size(), static_cast<std::size_t>(arity), [&](const std::vector<std::size_t>& s) {
    Rational w = c;
    for (std::size_t i : s) w += p[i];
    total += w;
    weights.emplace_back(s, w);
  });
  PartitionLaw out;
  for (const auto& [s, w] : weights) out[merge_indices(p, s)] += w / total;
  return out;
}

const PartitionLaw& mu_oracle(Mass s) {
  static std::map<Mass, PartitionLaw> cache;
  auto it = cache.find(s);
  if (it == cache.end()) {
    PartitionLaw law;
    for (const auto& [key, prob] : hitting_order_statistics(s, 3))
      law[partition_from_key(key)] = prob;
    it = cache.emplace(s, std::move(law)).first;
  }
  return it->second;
}

PartitionLaw fragmentation_successors(const MassPartition& p) {
  Rational budget = 0;
  for (Mass s : p.masses()) budget += s - 1;
  PartitionLaw out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 1) continue;
    const Rational pick = Rational(p[i] - 1) / budget;
    for (const auto& [split, prob] : mu_oracle(p[i])) {
      std::vector<Mass> next;
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (j != i) next.push_back(p[j]);
      }
      next.insert(next.end(), split.masses().begin(), split.masses().end());
      out[rank(next)] += pick * prob;
    }
  }
  return out;
}

ExactDistribution keyed(const PartitionLaw& law) {
  ExactDistribution out;
  for (const auto& [p, prob] : law) out[p.key()] = prob;
  return out;
}

using PartitionPaths = std::map<std::vector<MassPartition>, Rational>;

PathDistribution keyed(const PartitionPaths& law) {
  PathDistribution out;
  for (const auto& [path, prob] : law) {
    std::vector<std::string> keys;
    for (const auto& p : path) keys.push_back(p.key());
    out[keys] += prob;
  }
  return out;
}

template <typename Successors>
PartitionPaths extend_paths(const MassPartition& start, std::int64_t steps, Successors next) {
  PartitionPaths paths{{{start}, Rational(1)}};
  for (std::int64_t l = 0; l < steps; ++l) {
    PartitionPaths grown;
    for (const auto& [path, prob] : paths) {
      for (const auto& [q, w] : next(path.back())) {
        auto longer = path;
        longer.push_back(q);
        grown[longer] += prob * w;
      }
    }
    paths = std::move(grown);
  }
  return paths;
}

}  // namespace

Rational total_probability(const ExactDistribution& d) {
  Rational s = 0;
  for (const auto& [k, v] : d) s += v;
  return s;
}

Rational total_probability(const PathDistribution& d) {
  Rational s = 0;
  for (const auto& [k, v] : d) s += v;
  return s;
}

ExactDistribution enumerate_skeleton(Mass N, std::int64_t l, int arity,
                                     std::optional<Rational> constant) {
  const std::int64_t n = chain_length(N, arity);
  check_mass_bound(N, arity);
  if (l < 0 || l > n) throw std::out_of_range("l out of range");
  const Rational c = constant.value_or(make_rational(arity, arity - 2));
  PartitionLaw law{{MassPartition::units(static_cast<std::size_t>(N)), Rational(1)}};
  for (std::int64_t step = 0; step < l; ++step) {
    PartitionLaw next;
    for (const auto& [p, prob] : law) {
      for (const auto& [q, w] : coalescent_successors(p, arity, c)) next[q] += prob * w;
    }
    law = std::move(next);
  }
  return keyed(law);
}

PathDistribution enumerate_skeleton_paths(Mass N, std::optional<Rational> constant) {
  const std::int64_t n = chain_length(N, 3);
  check_mass_bound(N, 3);
  const Rational c = constant.value_or(Rational(3));
  return keyed(extend_paths(MassPartition::units(static_cast<std::size_t>(N)), n,
                            [&](const MassPartition& p) {
                              return coalescent_successors(p, 3, c);
                            }));
}

ExactDistribution enumerate_frag(Mass N, std::int64_t l) {
  const std::int64_t n = chain_length(N, 3);
  check_mass_bound(N, 3);
  if (l < 0 || l > n) throw std::out_of_range("l out of range");
  PartitionLaw law{{MassPartition({N}), Rational(1)}};
  for (std::int64_t step = 0; step < l; ++step) {
    PartitionLaw next;
    for (const auto& [p, prob] : law) {
      for (const auto& [q, w] : fragmentation_successors(p)) next[q] += prob * w;
    }
    law = std::move(next);
  }
  return keyed(law);
}

PathDistribution enumerate_frag_paths(Mass N) {
  const std::int64_t n = chain_length(N, 3);
  check_mass_bound(N, 3);
  return keyed(extend_paths(MassPartition({N}), n, fragmentation_successors));
}

PathDistribution reversed(const PathDistribution& d) {
  PathDistribution out;
  for (const auto& [path, prob] : d) out[{path.rbegin(), path.rend()}] += prob;
  return out;
}

ConfigurationChainLaw enumerate_configuration_chain(std::int64_t n, int arity) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  if (n > kMaxConfigurationN) throw std::out_of_range("enumeration bound exceeded");
  ConfigurationChainLaw law;
  const std::int64_t S = (arity - 1) * n + 1;

  std::vector<SiteConfiguration> seq{SiteConfiguration{n, arity, {}}};
  std::function<void(const Rational&)> grow = [&](const Rational& prob) {
    const SiteConfiguration x = seq.back();
    if (static_cast<std::int64_t>(x.size()) == n) {
      law.x_law[seq] += prob;
      return;
    }
    const Rational p = prob / Rational(S - static_cast<std::int64_t>(x.size()));
    for (std::int64_t site = 0; site < S; ++site) {
      if (x.contains(site)) continue;
      SiteConfiguration y = x;
      y.occupied.insert(std::upper_bound(y.occupied.begin(), y.occupied.end(), site), site);
      seq.push_back(std::move(y));
      grow(p);
      seq.pop_back();
    }
  };
  grow(Rational(1));

  std::function<void(const Rational&)> shrink = [&](const Rational& prob) {
    const SiteConfiguration x = seq.back();
    if (x.occupied.empty()) {
      law.y_reversed_law[{seq.rbegin(), seq.rend()}] += prob;
      return;
    }
    const Rational p = prob / Rational(static_cast<long>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
      SiteConfiguration y = x;
      y.occupied.erase(y.occupied.begin() + static_cast<std::ptrdiff_t>(i));
      seq.push_back(std::move(y));
      shrink(p);
      seq.pop_back();
    }
  };
  const Rational start = Rational(1) / Rational(binomial(S, n));
  subsets(static_cast<std::size_t>(S), static_cast<std::size_t>(n),
          [&](const std::vector<std::size_t>& s) {
            SiteConfiguration y0{n, arity, {}};
            for (std::size_t i : s) y0.occupied.push_back(static_cast<std::int64_t>(i));
            seq.assign(1, y0);
            shrink(start);
          });

  auto push = [](const std::map<std::vector<SiteConfiguration>, Rational>& src) {
    PathDistribution out;
    for (const auto& [path, prob] : src) {
      std::vector<std::string> keys;
      for (const auto& x : path) keys.push_back(phi(x).key());
      out[keys] += prob;
    }
    return out;
  };
  law.phi_x = push(law.x_law);
  law.phi_y_reversed = push(law.y_reversed_law);
  return law;
}

ExactDistribution walk_marginal_law(std::int64_t n, std::int64_t l, int arity) {
  if (l < 0 || l > n) throw std::out_of_range("l out of range");
  const std::int64_t S = (arity - 1) * n + 1;
  if (S > 16) throw std::out_of_range("enumeration bound exceeded");
  const Rational each = Rational(1) / Rational(binomial(S, l));
  ExactDistribution out;
  subsets(static_cast<std::size_t>(S), static_cast<std::size_t>(l),
          [&](const std::vector<std::size_t>& s) {
            SiteConfiguration x{n, arity, {}};
            for (std::size_t i : s) x.occupied.push_back(static_cast<std::int64_t>(i));
            out[phi(x).key()] += each;
          });
  return out;
}

ExactDistribution hitting_order_statistics(Mass total, std::size_t parts) {
  if (parts == 0 || total < static_cast<Mass>(parts))
    throw std::invalid_argument("no composition of total into parts");
  if (total - static_cast<Mass>(parts) + 1 > kMaxPathLength)
    throw std::out_of_range("enumeration bound exceeded");
  std::vector<BigInt> count(total + 1);
  const Mass largest = total - static_cast<Mass>(parts) + 1;
  for (Mass m = 1; m <= largest; m += 2) count[m] = brute_first_passage(3, 1, m);
  std::map<std::string, BigInt> weight;
  BigInt sum = 0;
  std::vector<Mass> cur;
  std::function<void(Mass, const BigInt&)> rec = [&](Mass left, const BigInt& w) {
    if (cur.size() + 1 == parts) {
      if (left % 2 == 0) return;
      cur.push_back(left);
      const BigInt full = w * count[left];
      weight[rank(cur).key()] += full;
      sum += full;
      cur.pop_back();
      return;
    }
    for (Mass m = 1; m < left; m += 2) {
      cur.push_back(m);
      rec(left - m, w * count[m]);
      cur.pop_back();
    }
  };
  rec(total, BigInt(1));
  if (sum == 0) throw std::invalid_argument("parity mismatch");
  ExactDistribution out;
  for (const auto& [k, w] : weight) out[k] = make_rational(w, sum);
  return out;
}

std::vector<LabeledBinaryForest> enumerate_forests(int vertices, int components) {
  if (vertices < 1) throw std::invalid_argument("N must be positive");
  if (vertices > kMaxEnumeratedForest) throw std::out_of_range("enumeration bound exceeded");
  const int N = vertices;
  std::vector<int> parent(N + 1, 0);
  std::vector<int> degree(N + 1, 0);
  std::vector<LabeledBinaryForest> out;
  int roots = 0;

  auto acyclic = [&]() {
    for (int v = 1; v <= N; ++v) {
      int u = v;
      for (int steps = 0; parent[u] != 0; ++steps) {
        if (steps > N) return false;
        u = parent[u];
      }
    }
    return true;
  };

  std::function<void(int)> rec = [&](int v) {
    if (v > N) {
      if (roots != components) return;
      for (int u = 1; u <= N; ++u) {
        if (degree[u] == 1) return;
      }
      if (!acyclic()) return;
      std::vector<int> internal;
      for (int u = 1; u <= N; ++u) {
        if (degree[u] == 2) internal.push_back(u);
      }
      std::vector<int> labels(internal.size());
      std::iota(labels.begin(), labels.end(), 1);
      do {
        std::vector<int> label(N + 1, 0);
        for (std::size_t i = 0; i < internal.size(); ++i) label[internal[i]] = labels[i];
        out.push_back(LabeledBinaryForest::from_parents(parent, label));
      } while (std::next_permutation(labels.begin(), labels.end()));
      return;
    }
    for (int p = 0; p <= N; ++p) {
      if (p == v) continue;
      if (p == 0) {
        if (roots == components) continue;
        ++roots;
        parent[v] = 0;
        rec(v + 1);
        --roots;
        continue;
      }
      if (degree[p] == 2) continue;
      ++degree[p];
      parent[v] = p;
      rec(v + 1);
      --degree[p];
      parent[v] = 0;
    }
  };
  rec(1);
  return out;
}

std::vector<PlaneForest> enumerate_plane_forests(int vertices, int components) {
  if (vertices < 1 || components < 1) throw std::invalid_argument("bad forest size");
  if (vertices > kMaxEnumeratedForest) throw std::out_of_range("enumeration bound exceeded");
  // trees[v]: increment sequences of all full binary plane trees on v vertices.
  std::vector<std::vector<std::vector<int>>> trees(vertices + 1);
  trees[1] = {{-1}};
  for (int v = 3; v <= vertices; v += 2) {
    for (int a = 1; a <= v - 2; a += 2) {
      for (const auto& left : trees[a]) {
        for (const auto& right : trees[v - 1 - a]) {
          std::vector<int> t{1};
          t.insert(t.end(), left.begin(), left.end());
          t.insert(t.end(), right.begin(), right.end());
          trees[v].push_back(std::move(t));
        }
      }
    }
  }
  std::vector<PlaneForest> out;
  std::vector<int> code;
  std::function<void(int, int)> rec = [&](int left, int parts) {
    if (parts == 0) {
      if (left != 0) return;
      LatticePath path{{0}};
      for (int d : code) path.values.push_back(path.values.back() + d);
      out.push_back(lukasiewicz_decode(path));
      return;
    }
    for (int v = 1; v <= left; v += 2) {
      for (const auto& t : trees[v]) {
        const std::size_t mark = code.size();
        code.insert(code.end(), t.begin(), t.end());
        rec(left - v, parts - 1);
        code.resize(mark);
      }
    }
  };
  rec(vertices, components);
  return out;
}

BigInt brute_first_passage(int arity, std::int64_t j, std::int64_t m) {
  if (arity < 3 || j < 1 || m < 1) throw std::invalid_argument("bad first-passage query");
  if (m > kMaxPathLength) throw std::out_of_range("enumeration bound exceeded");
  const std::int64_t up = arity - 2;
  const std::int64_t offset = j - 1;  // value v stored at v + offset; v > -j
  std::vector<BigInt> ways(static_cast<std::size_t>(offset + up * m + 1), 0);
  ways[offset] = 1;
  for (std::int64_t step = 1; step < m; ++step) {
    std::vector<BigInt> next(ways.size(), 0);
    for (std::size_t i = 0; i < ways.size(); ++i) {
      if (ways[i] == 0) continue;
      if (i + up < next.size()) next[i + up] += ways[i];
      if (i > 0) next[i - 1] += ways[i];
    }
    ways = std::move(next);
  }
  // Last step goes from -j+1 down to -j.
  return ways[0];
}

ExactDistribution enumerate_block_law(const MassPartition& r, std::int64_t l) {
  const auto N = static_cast<std::int64_t>(r.size());
  if (N > kMaxEnumeratedMass) throw std::out_of_range("enumeration bound exceeded");
  if (l < 0 || 2 * l > N - 1) throw std::out_of_range("l out of range");
  BlockPartition singletons;
  for (int i = 1; i <= N; ++i) singletons.push_back({i});
  std::map<BlockPartition, Rational> law{{singletons, Rational(1)}};
  for (std::int64_t step = 0; step < l; ++step) {
    std::map<BlockPartition, Rational> next;
    for (const auto& [blocks, prob] : law) {
      std::vector<Mass> mass;
      for (const auto& b : blocks) {
        Mass s = 0;
        for (int label : b) s += r[label - 1];
        mass.push_back(s);
      }
      std::vector<std::pair<BlockPartition, Rational>> moves;
      Rational total = 0;
      subsets(blocks.size(), 3, [&](const std::vector<std::size_t>& s) {
        const Rational w = Rational(mass[s[0]] + mass[s[1]] + mass[s[2]] + 3);
        BlockPartition merged;
        std::vector<int> joined;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
          if (std::find(s.begin(), s.end(), i) != s.end()) {
            joined.insert(joined.end(), blocks[i].begin(), blocks[i].end());
          } else {
            merged.push_back(blocks[i]);
          }
        }
        merged.push_back(joined);
        moves.emplace_back(canonical(std::move(merged)), w);
        total += w;
      });
      for (const auto& [b, w] : moves) next[b] += prob * w / total;
    }
    law = std::move(next);
  }
  ExactDistribution out;
  for (const auto& [b, prob] : law) out[block_key(b)] = prob;
  return out;
}

std::string distribution_csv(const ExactDistribution& d) {
  std::ostringstream out;
  out << "state,numerator,denominator,value\n";
  out.precision(17);
  for (const auto& [state, prob] : d) {
    out << '"' << state << "\"," << prob.get_num().get_str() << ','
        << prob.get_den().get_str() << ',' << prob.get_d() << '\n';
  }
  return out.str();
}

}  // namespace tcoal
