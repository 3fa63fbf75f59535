#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "partition.hpp"

namespace geodiam {

// Work tally threaded through the oracle and the diameter engines.  All
// counts are deterministic (no wall-clock anywhere).
struct WorkTally {
  uint64_t bfs_edges = 0;       // adjacency entries scanned by BFS runs
  uint64_t oracle_entries = 0;  // separator entries touched by queries / written at build
  uint64_t heap_ops = 0;        // priority-queue pushes and pops

  uint64_t total() const { return bfs_edges + oracle_entries + heap_ops; }
  WorkTally& operator+=(const WorkTally& o) {
    bfs_edges += o.bfs_edges;
    oracle_entries += o.oracle_entries;
    heap_ops += o.heap_ops;
    return *this;
  }
};

struct OracleBuildOptions {
  // Refuse to build when sum over blocks of |sep(B)|*|B| exceeds this.
  uint64_t max_entries = 500'000'000;
};

// Exact distance oracle over a recursive partition: for every block B and
// every separator vertex s of B it stores d_{G[B]}(s, .) as a dense array
// over B's local vertex indexing, plus one eccentricity representative per
// block and an O(1) LCA structure over the partition tree.
class DistanceOracle {
 public:
  DistanceOracle(const GeometricGraph& g, const RecursivePartition& p,
                 OracleBuildOptions options = {}, WorkTally* work = nullptr);

  const GeometricGraph& graph() const { return *g_; }
  const RecursivePartition& partition() const { return *p_; }

  struct QueryResult {
    Dist value;                // min over stored separator detours; >= d_G(u,v)
    bool same_leaf_interior;   // both endpoints interior to one leaf: value is
                               // only an upper bound
  };

  // Min over all separator vertices of LCA(u,v)'s block and every ancestor
  // block of D[s][u] + D[s][v].  Equals d_G(u,v) unless both endpoints are
  // non-boundary vertices of the same leaf block.
  QueryResult query_distance(Vertex u, Vertex v, WorkTally* work = nullptr) const;

  // Always exact: completes query_distance with a BFS restricted to the
  // shared leaf when both endpoints are interior to it.
  Dist query_distance_exact(Vertex u, Vertex v, BfsScratch& scratch,
                            WorkTally* work = nullptr) const;

  // Stored (representative vertex, ecc within G[B]) pair; O(1).
  std::pair<Vertex, Dist> ecc_rep(NodeId block) const { return ecc_rep_[block]; }

  NodeId lca(NodeId a, NodeId b) const;

  // Raw distance table of a block (row per separator vertex, column per
  // local block index); used by the batched maxdist engine.
  const Dist* table(NodeId node) const { return tables_[node].data(); }

  // Local indices within `node`'s block of a sorted vertex subset.
  std::vector<uint32_t> local_indices(NodeId node,
                                      std::span<const Vertex> vertices) const;

  // Sum of separator sizes on the path from `u` to the root (inclusive);
  // the per-query entry count for pairs whose LCA block is `u`.
  uint64_t chain_entries(NodeId u) const { return chain_entries_[u]; }

  // Accounted table size: sum over blocks of |sep(B)|*|B|.
  uint64_t total_entries() const { return total_entries_; }

  // Max degree of the underlying graph, the degeneracy surrogate used by
  // cost estimates.
  uint32_t degree_surrogate() const { return degree_surrogate_; }

  bool is_boundary_of_leaf(Vertex v) const;

 private:
  uint32_t local_index(NodeId node, Vertex v) const;

  const GeometricGraph* g_;
  const RecursivePartition* p_;

  // Per node: dense distance table, row per separator vertex (in separator
  // order), column per local block index.
  std::vector<std::vector<Dist>> tables_;
  std::vector<std::pair<Vertex, Dist>> ecc_rep_;
  std::vector<uint64_t> chain_entries_;
  uint64_t total_entries_ = 0;
  uint32_t degree_surrogate_ = 1;

  // LCA: euler tour + sparse table over tree depths.
  std::vector<uint32_t> euler_pos_;
  std::vector<NodeId> euler_nodes_;
  std::vector<std::vector<uint32_t>> sparse_;  // argmin depth positions
  std::vector<uint32_t> depth_;
};

}  // namespace geodiam
