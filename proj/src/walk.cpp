#include "tcoal/walk.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tcoal/ctmc.hpp"

namespace tcoal {
namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

void check_ternary_state(const MassPartition& p, std::size_t parts, std::int64_t n) {
  if (p.size() != parts || p.total_mass() != 2 * n + 1) {
    throw std::invalid_argument("inconsistent state");
  }
  for (Mass s : p.masses()) {
    if (s % 2 == 0) throw std::invalid_argument("inconsistent state");
  }
}

}  // namespace

bool SiteConfiguration::contains(std::int64_t site) const {
  return std::binary_search(occupied.begin(), occupied.end(), site);
}

void SiteConfiguration::validate() const {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  if (arity < 3) throw std::invalid_argument("arity must be at least 3");
  if (static_cast<std::int64_t>(occupied.size()) > n)
    throw std::invalid_argument("more than n occupied sites");
  for (std::size_t i = 0; i < occupied.size(); ++i) {
    if (occupied[i] < 0 || occupied[i] >= sites())
      throw std::invalid_argument("site out of range");
    if (i > 0 && occupied[i] <= occupied[i - 1])
      throw std::invalid_argument("sites must be distinct");
  }
}

SiteConfiguration make_configuration(std::int64_t n, int arity,
                                     std::vector<std::int64_t> occupied) {
  std::sort(occupied.begin(), occupied.end());
  SiteConfiguration x{n, arity, std::move(occupied)};
  x.validate();
  return x;
}

std::vector<std::int64_t> ArcPartition::lengths() const {
  std::vector<std::int64_t> out(starts.size());
  for (std::size_t i = 0; i + 1 < starts.size(); ++i) out[i] = starts[i + 1] - starts[i];
  if (!starts.empty()) out.back() = cycle_length - starts.back() + starts.front();
  return out;
}

LatticePath path_of(const SiteConfiguration& x) {
  const std::int64_t S = x.sites();
  LatticePath path;
  path.values.resize(S + 1);
  path.values[0] = 0;
  auto it = x.occupied.begin();
  for (std::int64_t j = 0; j < S; ++j) {
    std::int64_t step = -1;
    if (it != x.occupied.end() && *it == j) {
      step = x.arity - 2;
      ++it;
    }
    path.values[j + 1] = path.values[j] + step;
  }
  return path;
}

SiteConfiguration decode(const LatticePath& path, std::int64_t n, int arity) {
  SiteConfiguration x{n, arity, {}};
  if (static_cast<std::int64_t>(path.values.size()) != x.sites() + 1 || path.values[0] != 0)
    throw std::invalid_argument("path length does not match n");
  for (std::size_t j = 1; j < path.values.size(); ++j) {
    const std::int64_t d = path.values[j] - path.values[j - 1];
    if (d == arity - 2) {
      x.occupied.push_back(static_cast<std::int64_t>(j) - 1);
    } else if (d != -1) {
      throw std::invalid_argument("bad path increment");
    }
  }
  x.validate();
  return x;
}

ArcPartition phi1(const SiteConfiguration& x) {
  const LatticePath path = path_of(x);
  const std::int64_t S = x.sites();
  const std::int64_t M = -path.terminal();
  const std::int64_t low = *std::min_element(path.values.begin(), path.values.end());
  // first[i] = first time the path reaches low + i, for i < M.
  std::vector<std::int64_t> first(M, -1);
  for (std::int64_t j = 0; j <= S; ++j) {
    const std::int64_t level = path.values[j] - low;
    if (level < M && first[level] < 0) first[level] = j;
  }
  ArcPartition arcs{S, {}};
  arcs.starts.reserve(M);
  for (std::int64_t i = 1; i <= M; ++i) arcs.starts.push_back(mod(first[M - i], S));
  std::sort(arcs.starts.begin(), arcs.starts.end());
  return arcs;
}

MassPartition phi(const SiteConfiguration& x) {
  const auto lengths = phi1(x).lengths();
  return rank(lengths);
}

SiteConfiguration rotate(const SiteConfiguration& x, std::int64_t j) {
  SiteConfiguration y{x.n, x.arity, {}};
  y.occupied.reserve(x.size());
  for (std::int64_t s : x.occupied) y.occupied.push_back(mod(s + j, x.sites()));
  std::sort(y.occupied.begin(), y.occupied.end());
  return y;
}

SiteConfiguration step_X(const SiteConfiguration& x, Rng& rng) {
  if (static_cast<std::int64_t>(x.size()) >= x.n)
    throw std::invalid_argument("no vacant site to occupy");
  const auto vacant = static_cast<std::int64_t>(x.sites() - x.size());
  std::int64_t target = static_cast<std::int64_t>(rng.uniform_below(vacant));
  // target-th vacant site: skip the occupied sites at or below it.
  std::int64_t site = target;
  for (std::int64_t s : x.occupied) {
    if (s <= site) {
      ++site;
    } else {
      break;
    }
  }
  SiteConfiguration y = x;
  y.occupied.insert(std::upper_bound(y.occupied.begin(), y.occupied.end(), site), site);
  return y;
}

SiteConfiguration step_Y(const SiteConfiguration& x, Rng& rng) {
  if (x.occupied.empty()) throw std::invalid_argument("no occupied site to vacate");
  SiteConfiguration y = x;
  y.occupied.erase(y.occupied.begin() +
                   static_cast<std::ptrdiff_t>(rng.uniform_below(x.size())));
  return y;
}

SiteConfiguration uniform_configuration(std::int64_t n, int arity, std::size_t count,
                                        Rng& rng) {
  SiteConfiguration x{n, arity, {}};
  if (static_cast<std::int64_t>(count) > n) throw std::invalid_argument("more than n sites");
  std::vector<std::int64_t> sites(x.sites());
  std::iota(sites.begin(), sites.end(), 0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.uniform_below(sites.size() - i);
    std::swap(sites[i], sites[j]);
  }
  x.occupied.assign(sites.begin(), sites.begin() + static_cast<std::ptrdiff_t>(count));
  std::sort(x.occupied.begin(), x.occupied.end());
  return x;
}

Triple sample_dislocation(Mass s, Rng& rng) {
  const auto support = dislocation_support(s);
  double u = rng.uniform01();
  for (const Triple& r : support) {
    u -= dislocation_pmf(s, r).get_d();
    if (u < 0) return r;
  }
  return support.back();
}

MassPartition frag_transition(const MassPartition& p, std::int64_t l, std::int64_t n,
                              Rng& rng) {
  if (l < 0 || l >= n) throw std::invalid_argument("inconsistent state");
  check_ternary_state(p, static_cast<std::size_t>(2 * l + 1), n);
  std::vector<std::uint64_t> w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) w[i] = static_cast<std::uint64_t>(p[i] - 1);
  const std::size_t i = rng.weighted_index(w);
  const Triple r = sample_dislocation(p[i], rng);
  std::vector<Mass> next;
  next.reserve(p.size() + 2);
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j != i) next.push_back(p[j]);
  }
  next.insert(next.end(), r.begin(), r.end());
  return rank(next);
}

MassPartition coal_transition(const MassPartition& p, std::int64_t l, std::int64_t n,
                              Rng& rng) {
  if (l < 0 || l >= n) throw std::invalid_argument("inconsistent state");
  check_ternary_state(p, static_cast<std::size_t>(2 * (n - l) + 1), n);
  return skeleton_step(p, KernelSpec{3}, rng).next;
}

std::vector<SiteConfiguration> configuration_chain(ChainDirection direction,
                                                   std::int64_t n, int arity, Rng& rng) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  std::vector<SiteConfiguration> out;
  out.reserve(n + 1);
  if (direction == ChainDirection::build) {
    out.push_back(SiteConfiguration{n, arity, {}});
    for (std::int64_t l = 0; l < n; ++l) out.push_back(step_X(out.back(), rng));
  } else {
    out.push_back(uniform_configuration(n, arity, static_cast<std::size_t>(n), rng));
    for (std::int64_t l = 0; l < n; ++l) out.push_back(step_Y(out.back(), rng));
  }
  return out;
}

std::vector<MassPartition> run_chain(ChainDirection direction, std::int64_t n, int arity,
                                     std::uint64_t seed) {
  Rng rng(seed);
  std::vector<MassPartition> out;
  for (const auto& x : configuration_chain(direction, n, arity, rng)) out.push_back(phi(x));
  return out;
}

std::vector<MassPartition> coalescent_chain(std::int64_t n, Rng& rng) {
  std::vector<MassPartition> out{MassPartition::units(static_cast<std::size_t>(2 * n + 1))};
  for (std::int64_t l = 0; l < n; ++l) out.push_back(coal_transition(out.back(), l, n, rng));
  return out;
}

std::vector<MassPartition> fragmentation_chain(std::int64_t n, Rng& rng) {
  std::vector<MassPartition> out{MassPartition({2 * n + 1})};
  for (std::int64_t l = 0; l < n; ++l) out.push_back(frag_transition(out.back(), l, n, rng));
  return out;
}

std::string direction_name(ChainDirection direction) {
  return direction == ChainDirection::build ? "build" : "destroy";
}

ChainDirection parse_direction(const std::string& name) {
  if (name == "build") return ChainDirection::build;
  if (name == "destroy") return ChainDirection::destroy;
  throw std::invalid_argument("direction must be build or destroy");
}

std::string chain_jsonl(const std::vector<MassPartition>& chain,
                        const nlohmann::ordered_json& config) {
  std::ostringstream out;
  nlohmann::ordered_json header;
  header["type"] = "header";
  header["version"] = kVersion;
  header["config"] = config;
  out << header.dump() << '\n';
  for (std::size_t i = 0; i < chain.size(); ++i) {
    nlohmann::ordered_json rec;
    rec["step"] = i;
    rec["state"] = chain[i].masses();
    out << rec.dump() << '\n';
  }
  return out.str();
}

void to_json(nlohmann::ordered_json& j, const SiteConfiguration& x) {
  j = nlohmann::ordered_json::object();
  j["n"] = x.n;
  j["arity"] = x.arity;
  j["occupied"] = x.occupied;
}

}  // namespace tcoal
