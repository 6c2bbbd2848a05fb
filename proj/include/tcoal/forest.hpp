#ifndef TCOAL_FOREST_HPP_
#define TCOAL_FOREST_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "tcoal/partition.hpp"
#include "tcoal/rng.hpp"
#include "tcoal/walk.hpp"

namespace tcoal {

// Forest of full binary trees on the vertices 1..N. Internal vertices carry
// distinct labels 1..q, q = (N - m)/2 for m components. Children of a vertex
// are unordered and kept sorted by vertex number.
class LabeledBinaryForest {
 public:
  // N isolated vertices.
  static LabeledBinaryForest edgeless(int vertices);

  // Builds from explicit data and validates all invariants. parent[v] == 0
  // marks a root; label[v] == 0 marks a leaf. Index 0 of both is ignored.
  static LabeledBinaryForest from_parents(std::vector<int> parent, std::vector<int> label);

  int vertices() const { return static_cast<int>(parent_.size()) - 1; }
  int components() const { return static_cast<int>(roots_.size()); }
  int internal_count() const { return static_cast<int>(by_label_.size()); }
  int leaf_count() const { return vertices() - internal_count(); }

  int parent(int v) const { return parent_[v]; }
  int label(int v) const { return label_[v]; }
  const std::array<int, 2>& children(int v) const { return children_[v]; }
  bool is_leaf(int v) const { return children_[v][0] == 0; }
  const std::vector<int>& roots() const { return roots_; }  // ascending

  int root_of(int v) const;

  // Vertices of each component, components in root order.
  std::vector<std::vector<int>> component_vertices() const;
  MassPartition component_sizes() const;

  // (parent, child) pairs, sorted.
  std::vector<std::array<int, 2>> edges() const;

  // Canonical string form: parents then labels.
  std::string key() const;

  // Deletes the two outgoing edges of the internal vertex with the highest
  // label. Throws "no internal vertex" on an edgeless forest.
  LabeledBinaryForest apply_R() const;

  // Attaches roots r1 != r2 (both outside the component of `leaf`) below
  // `leaf` and gives it the next label.
  LabeledBinaryForest graft(int leaf, int r1, int r2) const;

  friend bool operator==(const LabeledBinaryForest& a, const LabeledBinaryForest& b) {
    return a.parent_ == b.parent_ && a.label_ == b.label_;
  }

 private:
  LabeledBinaryForest() = default;
  void rebuild();

  std::vector<int> parent_;
  std::vector<int> label_;
  std::vector<std::array<int, 2>> children_;
  std::vector<int> roots_;
  std::vector<int> by_label_;  // by_label_[i] = vertex labelled i+1
};

// Uniform preimage under R: a uniform leaf (isolated vertices included), then
// a uniform pair of roots of other components. Needs >= 3 components.
LabeledBinaryForest inverse_R_step(const LabeledBinaryForest& f, Rng& rng);

// Uniform element of F(1, N), built by (N-1)/2 inverse steps from the
// edgeless forest. Throws for even N.
LabeledBinaryForest sample_uniform_tree(int vertices, std::uint64_t seed);
LabeledBinaryForest sample_uniform_tree(int vertices, Rng& rng);

// Ranked component sizes along the inverse construction, from N units to (N).
std::vector<MassPartition> forest_chain(int vertices, std::uint64_t seed);
std::vector<MassPartition> forest_chain(int vertices, Rng& rng);

// Rooted plane forest: ordered trees, ordered children. Vertex ids are
// 0..size()-1; structure, not numbering, is what counts for equality.
struct PlaneForest {
  std::vector<std::vector<int>> children;
  std::vector<int> roots;

  std::size_t size() const { return children.size(); }
  bool is_full_binary() const;
};

bool operator==(const PlaneForest& a, const PlaneForest& b);

// Forgets labels. Canonical order: children and roots by vertex number.
PlaneForest to_plane(const LabeledBinaryForest& f);
// Forgets labels and orders every child pair and the roots uniformly at
// random. Maps the uniform law on F(m, N) to the uniform law on plane forests.
PlaneForest to_plane(const LabeledBinaryForest& f, Rng& rng);

// Uniform full binary plane tree with `vertices` vertices.
PlaneForest sample_uniform_plane_tree(int vertices, Rng& rng);

// Depth-first increments (children - 1); values[0] = 0.
LatticePath lukasiewicz_encode(const PlaneForest& f);
// Inverse of encode for full binary forests: increments must be +1 or -1 and
// the path must end on its first visit to its minimum.
PlaneForest lukasiewicz_decode(const LatticePath& path);

void to_json(nlohmann::ordered_json& j, const LabeledBinaryForest& f);
void to_json(nlohmann::ordered_json& j, const PlaneForest& f);

}  // namespace tcoal

#endif  // TCOAL_FOREST_HPP_
