#include "tcoal/forest.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace tcoal {

LabeledBinaryForest LabeledBinaryForest::edgeless(int vertices) {
  if (vertices < 1) throw std::invalid_argument("forest needs at least one vertex");
  LabeledBinaryForest f;
  f.parent_.assign(vertices + 1, 0);
  f.label_.assign(vertices + 1, 0);
  f.rebuild();
  return f;
}

LabeledBinaryForest LabeledBinaryForest::from_parents(std::vector<int> parent,
                                                      std::vector<int> label) {
  if (parent.size() < 2 || parent.size() != label.size())
    throw std::invalid_argument("parent and label arrays must have size N+1");
  LabeledBinaryForest f;
  f.parent_ = std::move(parent);
  f.label_ = std::move(label);
  f.parent_[0] = 0;
  f.label_[0] = 0;
  f.rebuild();
  return f;
}

void LabeledBinaryForest::rebuild() {
  const int N = vertices();
  children_.assign(N + 1, {0, 0});
  roots_.clear();
  std::vector<int> degree(N + 1, 0);
  for (int v = 1; v <= N; ++v) {
    const int p = parent_[v];
    if (p < 0 || p > N || p == v) throw std::invalid_argument("bad parent");
    if (p == 0) {
      roots_.push_back(v);
      continue;
    }
    if (degree[p] == 2) throw std::invalid_argument("vertex with more than two children");
    children_[p][degree[p]++] = v;
  }
  by_label_.clear();
  int internal = 0;
  for (int v = 1; v <= N; ++v) {
    if (degree[v] == 1) throw std::invalid_argument("vertex with exactly one child");
    if (degree[v] == 2) {
      ++internal;
      if (children_[v][0] > children_[v][1]) std::swap(children_[v][0], children_[v][1]);
    }
  }
  by_label_.assign(internal, 0);
  for (int v = 1; v <= N; ++v) {
    const int l = label_[v];
    if (degree[v] == 0) {
      if (l != 0) throw std::invalid_argument("leaf carries a label");
      continue;
    }
    if (l < 1 || l > internal || by_label_[l - 1] != 0)
      throw std::invalid_argument("labels must be a bijection onto 1..q");
    by_label_[l - 1] = v;
  }
  // Every vertex must reach a root within N steps.
  for (int v = 1; v <= N; ++v) {
    int u = v;
    for (int steps = 0; parent_[u] != 0; ++steps) {
      if (steps > N) throw std::invalid_argument("parent array has a cycle");
      u = parent_[u];
    }
  }
}

int LabeledBinaryForest::root_of(int v) const {
  while (parent_[v] != 0) v = parent_[v];
  return v;
}

std::vector<std::vector<int>> LabeledBinaryForest::component_vertices() const {
  std::vector<std::vector<int>> out(roots_.size());
  for (int v = 1; v <= vertices(); ++v) {
    const int r = root_of(v);
    const auto it = std::lower_bound(roots_.begin(), roots_.end(), r);
    out[static_cast<std::size_t>(it - roots_.begin())].push_back(v);
  }
  return out;
}

MassPartition LabeledBinaryForest::component_sizes() const {
  std::vector<Mass> sizes;
  for (const auto& c : component_vertices()) sizes.push_back(static_cast<Mass>(c.size()));
  return rank(sizes);
}

std::vector<std::array<int, 2>> LabeledBinaryForest::edges() const {
  std::vector<std::array<int, 2>> out;
  for (int v = 1; v <= vertices(); ++v) {
    if (!is_leaf(v)) {
      out.push_back({v, children_[v][0]});
      out.push_back({v, children_[v][1]});
    }
  }
  return out;
}

std::string LabeledBinaryForest::key() const {
  std::ostringstream out;
  for (int v = 1; v <= vertices(); ++v) out << (v > 1 ? "," : "") << parent_[v];
  out << '|';
  for (int v = 1; v <= vertices(); ++v) out << (v > 1 ? "," : "") << label_[v];
  return out.str();
}

LabeledBinaryForest LabeledBinaryForest::apply_R() const {
  if (by_label_.empty()) throw std::logic_error("no internal vertex");
  LabeledBinaryForest f = *this;
  const int v = by_label_.back();
  f.parent_[children_[v][0]] = 0;
  f.parent_[children_[v][1]] = 0;
  f.label_[v] = 0;
  f.rebuild();
  return f;
}

LabeledBinaryForest LabeledBinaryForest::graft(int leaf, int r1, int r2) const {
  const int N = vertices();
  if (leaf < 1 || leaf > N || !is_leaf(leaf)) throw std::invalid_argument("not a leaf");
  if (r1 == r2 || r1 < 1 || r2 < 1 || r1 > N || r2 > N || parent_[r1] != 0 ||
      parent_[r2] != 0)
    throw std::invalid_argument("need two distinct roots");
  const int home = root_of(leaf);
  if (r1 == home || r2 == home) throw std::invalid_argument("root in the leaf's own tree");
  LabeledBinaryForest f = *this;
  f.parent_[r1] = leaf;
  f.parent_[r2] = leaf;
  f.label_[leaf] = internal_count() + 1;
  f.rebuild();
  return f;
}

LabeledBinaryForest inverse_R_step(const LabeledBinaryForest& f, Rng& rng) {
  if (f.components() < 3) throw std::invalid_argument("need at least 3 components");
  std::vector<int> leaves;
  leaves.reserve(f.leaf_count());
  for (int v = 1; v <= f.vertices(); ++v) {
    if (f.is_leaf(v)) leaves.push_back(v);
  }
  const int leaf = leaves[rng.uniform_below(leaves.size())];
  const int home = f.root_of(leaf);
  std::vector<int> others;
  others.reserve(f.roots().size() - 1);
  for (int r : f.roots()) {
    if (r != home) others.push_back(r);
  }
  const std::size_t a = rng.uniform_below(others.size());
  std::size_t b = rng.uniform_below(others.size() - 1);
  if (b >= a) ++b;
  return f.graft(leaf, others[a], others[b]);
}

LabeledBinaryForest sample_uniform_tree(int vertices, Rng& rng) {
  if (vertices < 1 || vertices % 2 == 0) throw std::invalid_argument("N must be odd");
  LabeledBinaryForest f = LabeledBinaryForest::edgeless(vertices);
  while (f.components() > 1) f = inverse_R_step(f, rng);
  return f;
}

LabeledBinaryForest sample_uniform_tree(int vertices, std::uint64_t seed) {
  Rng rng(seed);
  return sample_uniform_tree(vertices, rng);
}

std::vector<MassPartition> forest_chain(int vertices, Rng& rng) {
  if (vertices < 1 || vertices % 2 == 0) throw std::invalid_argument("N must be odd");
  LabeledBinaryForest f = LabeledBinaryForest::edgeless(vertices);
  std::vector<MassPartition> out{f.component_sizes()};
  while (f.components() > 1) {
    f = inverse_R_step(f, rng);
    out.push_back(f.component_sizes());
  }
  return out;
}

std::vector<MassPartition> forest_chain(int vertices, std::uint64_t seed) {
  Rng rng(seed);
  return forest_chain(vertices, rng);
}

bool PlaneForest::is_full_binary() const {
  return std::all_of(children.begin(), children.end(),
                     [](const auto& c) { return c.empty() || c.size() == 2; });
}

bool operator==(const PlaneForest& a, const PlaneForest& b) {
  return a.size() == b.size() && a.roots.size() == b.roots.size() &&
         lukasiewicz_encode(a).values == lukasiewicz_encode(b).values;
}

PlaneForest to_plane(const LabeledBinaryForest& f) {
  PlaneForest p;
  p.children.resize(f.vertices());
  for (int v = 1; v <= f.vertices(); ++v) {
    if (!f.is_leaf(v)) p.children[v - 1] = {f.children(v)[0] - 1, f.children(v)[1] - 1};
  }
  for (int r : f.roots()) p.roots.push_back(r - 1);
  return p;
}

PlaneForest to_plane(const LabeledBinaryForest& f, Rng& rng) {
  PlaneForest p = to_plane(f);
  for (auto& c : p.children) {
    if (!c.empty() && rng.uniform_below(2) == 1) std::swap(c[0], c[1]);
  }
  for (std::size_t i = p.roots.size(); i > 1; --i) {
    std::swap(p.roots[i - 1], p.roots[rng.uniform_below(i)]);
  }
  return p;
}

PlaneForest sample_uniform_plane_tree(int vertices, Rng& rng) {
  return to_plane(sample_uniform_tree(vertices, rng), rng);
}

LatticePath lukasiewicz_encode(const PlaneForest& f) {
  LatticePath path;
  path.values.reserve(f.size() + 1);
  path.values.push_back(0);
  std::vector<int> stack;
  for (int r : f.roots) {
    stack.push_back(r);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      const auto& c = f.children.at(v);
      path.values.push_back(path.values.back() + static_cast<std::int64_t>(c.size()) - 1);
      for (auto it = c.rbegin(); it != c.rend(); ++it) stack.push_back(*it);
    }
  }
  return path;
}

PlaneForest lukasiewicz_decode(const LatticePath& path) {
  if (path.values.empty() || path.values[0] != 0) throw std::invalid_argument("malformed path");
  PlaneForest f;
  const std::size_t V = path.values.size() - 1;
  f.children.resize(V);
  std::vector<std::pair<int, int>> open;  // vertex, children still to attach
  for (std::size_t j = 1; j <= V; ++j) {
    const std::int64_t d = path.values[j] - path.values[j - 1];
    if (d != 1 && d != -1) throw std::invalid_argument("malformed path");
    const int v = static_cast<int>(j - 1);
    if (open.empty()) {
      f.roots.push_back(v);
    } else {
      f.children[open.back().first].push_back(v);
      if (--open.back().second == 0) open.pop_back();
    }
    if (d == 1) open.emplace_back(v, 2);
  }
  if (!open.empty()) throw std::invalid_argument("malformed path");
  return f;
}

void to_json(nlohmann::ordered_json& j, const LabeledBinaryForest& f) {
  j = nlohmann::ordered_json::object();
  j["vertices"] = f.vertices();
  j["edges"] = f.edges();
  nlohmann::ordered_json labels = nlohmann::ordered_json::object();
  for (int v = 1; v <= f.vertices(); ++v) {
    if (f.label(v) != 0) labels[std::to_string(v)] = f.label(v);
  }
  j["labels"] = labels;
}

void to_json(nlohmann::ordered_json& j, const PlaneForest& f) {
  j = nlohmann::ordered_json::object();
  j["vertices"] = f.size();
  j["roots"] = f.roots;
  j["children"] = f.children;
}

}  // namespace tcoal
