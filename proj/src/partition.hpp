#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"

namespace geodiam {

using NodeId = uint32_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

// One node of the recursive partition.  `block` and `boundary` are sorted by
// vertex id; `separator` is the concatenation of the children's boundaries
// (children's blocks are disjoint, so no vertex repeats).
struct PartitionNode {
  std::vector<Vertex> block;
  std::vector<Vertex> boundary;   // block vertices with a neighbor outside the block
  std::vector<Vertex> separator;  // union of children's boundaries; empty for leaves
  Cell cell;
  int level = 0;  // cell level (word length)
  std::vector<NodeId> children;
  NodeId parent = kNoNode;

  bool is_leaf() const { return children.empty(); }
  uint32_t size() const { return static_cast<uint32_t>(block.size()); }
};

// Rooted tree of blocks: leaf blocks partition V, every internal block is the
// disjoint union of its children, and (after contraction of single-child
// chains) every internal node has 2..4 children.
class RecursivePartition {
 public:
  const std::vector<PartitionNode>& nodes() const { return nodes_; }
  const PartitionNode& node(NodeId id) const { return nodes_[id]; }
  NodeId root() const { return root_; }
  NodeId leaf_of(Vertex v) const { return leaf_of_[v]; }
  Vertex num_vertices() const { return static_cast<Vertex>(leaf_of_.size()); }
  uint32_t num_nodes() const { return static_cast<uint32_t>(nodes_.size()); }

  // True when the whole partition is the single root block.
  bool trivial() const { return nodes_.size() == 1; }

  uint32_t max_leaf_size() const;

  // Euler interval test: is vertex v inside the block of node u?
  bool block_contains(NodeId u, Vertex v) const {
    const uint32_t t = tin_[leaf_of_[v]];
    return t >= tin_[u] && t < tout_[u];
  }

  // Builds the partition induced by the level-`leaf_level` quadtree cells:
  // each vertex goes to the cell containing its coordinates, empty cells are
  // dropped, and single-child chains are contracted.  On the torus a leaf
  // cell side below 2r only degrades the separator-size guarantees, so it
  // sets small_cell_warning (when the radius is provided), never errors.
  static RecursivePartition induce(const GeometricGraph& g, int leaf_level,
                                   std::optional<double> radius_hint = std::nullopt);

  // Test/bench hook: two-level partition with the given leaf blocks (must
  // partition V).  Cells carry the root rectangle; level is tree depth.
  static RecursivePartition from_leaf_blocks(const GeometricGraph& g,
                                             std::vector<std::vector<Vertex>> leaf_blocks);

  // Set when induce() clamped to a single-node partition or the leaf cells
  // were smaller than the torus separator-strip precondition.
  bool trivial_flagged = false;
  bool small_cell_warning = false;

  std::string to_json() const;  // debug dump; not a stability contract

 private:
  friend class DistanceOracle;
  void finalize(const GeometricGraph& g);  // euler tour + boundaries + separators

  std::vector<PartitionNode> nodes_;
  NodeId root_ = 0;
  std::vector<NodeId> leaf_of_;
  std::vector<uint32_t> tin_, tout_;  // euler intervals per node
};

// Largest leaf level whose cell side is at least cell_factor * r, clamped to
// be nonnegative.
int leaf_level_for(uint32_t n, double r, double cell_factor);

// Default leaf level: cell side at least 8r.
int default_leaf_level(uint32_t n, double r);

// An antichain of nodes whose blocks partition V.
struct FlatPartition {
  std::vector<NodeId> blocks;
};

// All blocks B with |B| <= k whose parent is larger than k (the root counts
// as having an infinitely large parent).  Throws NeedSmallerLeavesError when
// k is below the largest leaf block.
FlatPartition flat_partition_by_size(const RecursivePartition& p, uint32_t k);

struct BalanceReport {
  double max_excess = 0.0;  // max over internal nodes of (max child / min child) - 1
  NodeId argmax = kNoNode;
};

BalanceReport check_balance(const RecursivePartition& p);

struct SeparatorReport {
  double max_ratio = 0.0;  // max over nodes of |sep| / (|B|^alpha * n^beta)
  NodeId argmax = kNoNode;
};

SeparatorReport check_separators(const RecursivePartition& p, double alpha, double beta);

}  // namespace geodiam
