#include "oracle.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

#include "errors.hpp"

namespace geodiam {

uint32_t DistanceOracle::local_index(NodeId node, Vertex v) const {
  const auto& block = p_->node(node).block;
  auto it = std::lower_bound(block.begin(), block.end(), v);
  assert(it != block.end() && *it == v);
  return static_cast<uint32_t>(it - block.begin());
}

bool DistanceOracle::is_boundary_of_leaf(Vertex v) const {
  const auto& boundary = p_->node(p_->leaf_of(v)).boundary;
  return std::binary_search(boundary.begin(), boundary.end(), v);
}

std::vector<uint32_t> DistanceOracle::local_indices(
    NodeId node, std::span<const Vertex> vertices) const {
  const auto& block = p_->node(node).block;
  std::vector<uint32_t> out(vertices.size());
  size_t pos = 0;
  for (size_t i = 0; i < vertices.size(); ++i) {
    while (block[pos] != vertices[i]) ++pos;  // both sorted, subset guaranteed
    out[i] = static_cast<uint32_t>(pos);
  }
  return out;
}

DistanceOracle::DistanceOracle(const GeometricGraph& g, const RecursivePartition& p,
                               OracleBuildOptions options, WorkTally* work)
    : g_(&g), p_(&p) {
  const uint32_t nn = p.num_nodes();

  // Account the table size first and refuse to build past the cap.
  for (NodeId u = 0; u < nn; ++u)
    total_entries_ += static_cast<uint64_t>(p.node(u).separator.size()) * p.node(u).size();
  if (total_entries_ > options.max_entries)
    throw OracleSizeError(total_entries_, options.max_entries);

  tables_.resize(nn);
  ecc_rep_.resize(nn);
  chain_entries_.resize(nn);
  depth_.assign(nn, 0);
  degree_surrogate_ = std::max(1u, max_degree(g));

  BfsScratch scratch;
  scratch.reset(g.num_vertices());

  for (NodeId u = 0; u < nn; ++u) {
    const auto& node = p.node(u);
    const auto& block = node.block;
    const uint32_t bs = node.size();

    scratch.clear_members();
    for (Vertex v : block) scratch.add_member(v);

    auto& table = tables_[u];
    table.resize(static_cast<size_t>(node.separator.size()) * bs);
    for (size_t si = 0; si < node.separator.size(); ++si) {
      bfs_restricted(g, node.separator[si], block, scratch,
                     work ? &work->bfs_edges : nullptr);
      Dist* row = table.data() + si * bs;
      for (uint32_t j = 0; j < bs; ++j) row[j] = scratch.dist[block[j]];
      if (work) work->oracle_entries += bs;
    }

    // Representative: first separator vertex of the parent lying in this
    // block (= lowest boundary vertex), or the lowest-id vertex at the root
    // and for blocks with empty boundary.
    const Vertex rep = node.boundary.empty() ? block.front() : node.boundary.front();
    const Dist ecc =
        bfs_restricted(g, rep, block, scratch, work ? &work->bfs_edges : nullptr);
    ecc_rep_[u] = {rep, ecc};
  }

  // Depths and query chains (preorder ids: parents precede children).
  for (NodeId u = 0; u < nn; ++u) {
    const NodeId par = p.node(u).parent;
    depth_[u] = par == kNoNode ? 0 : depth_[par] + 1;
    chain_entries_[u] =
        p.node(u).separator.size() + (par == kNoNode ? 0 : chain_entries_[par]);
  }

  // Euler tour + sparse table for O(1) LCA.
  euler_pos_.assign(nn, 0);
  euler_nodes_.reserve(2 * nn);
  std::vector<std::pair<NodeId, size_t>> stack{{p.root(), 0}};
  euler_pos_[p.root()] = 0;
  euler_nodes_.push_back(p.root());
  while (!stack.empty()) {
    auto& [u, next_child] = stack.back();
    if (next_child < p.node(u).children.size()) {
      const NodeId c = p.node(u).children[next_child++];
      euler_pos_[c] = static_cast<uint32_t>(euler_nodes_.size());
      euler_nodes_.push_back(c);
      stack.emplace_back(c, 0);
    } else {
      stack.pop_back();
      if (!stack.empty()) euler_nodes_.push_back(stack.back().first);
    }
  }
  const size_t len = euler_nodes_.size();
  const int levels = std::bit_width(len) == 0 ? 1 : std::bit_width(len);
  sparse_.assign(levels, std::vector<uint32_t>(len));
  for (size_t i = 0; i < len; ++i) sparse_[0][i] = static_cast<uint32_t>(i);
  for (int k = 1; k < levels; ++k) {
    const size_t span = size_t{1} << k;
    for (size_t i = 0; i + span <= len; ++i) {
      const uint32_t a = sparse_[k - 1][i];
      const uint32_t b = sparse_[k - 1][i + span / 2];
      sparse_[k][i] = depth_[euler_nodes_[a]] <= depth_[euler_nodes_[b]] ? a : b;
    }
  }
}

NodeId DistanceOracle::lca(NodeId a, NodeId b) const {
  if (a == b) return a;
  uint32_t lo = euler_pos_[a], hi = euler_pos_[b];
  if (lo > hi) std::swap(lo, hi);
  const uint32_t width = hi - lo + 1;
  const int k = std::bit_width(width) - 1;
  const uint32_t x = sparse_[k][lo];
  const uint32_t y = sparse_[k][hi + 1 - (uint32_t{1} << k)];
  return depth_[euler_nodes_[x]] <= depth_[euler_nodes_[y]] ? euler_nodes_[x]
                                                            : euler_nodes_[y];
}

DistanceOracle::QueryResult DistanceOracle::query_distance(Vertex u, Vertex v,
                                                           WorkTally* work) const {
  if (u == v) return {0, false};
  const NodeId lu = p_->leaf_of(u), lv = p_->leaf_of(v);
  Dist best = kUnreachable;
  for (NodeId b = lca(lu, lv); b != kNoNode; b = p_->node(b).parent) {
    const auto& node = p_->node(b);
    if (node.separator.empty()) continue;
    const uint32_t bs = node.size();
    const uint32_t iu = local_index(b, u);
    const uint32_t iv = local_index(b, v);
    const Dist* table = tables_[b].data();
    for (size_t si = 0; si < node.separator.size(); ++si) {
      const Dist* row = table + si * bs;
      best = std::min(best, sat_add(row[iu], row[iv]));
    }
    if (work) work->oracle_entries += node.separator.size();
  }
  const bool interior =
      lu == lv && !is_boundary_of_leaf(u) && !is_boundary_of_leaf(v);
  return {best, interior};
}

Dist DistanceOracle::query_distance_exact(Vertex u, Vertex v, BfsScratch& scratch,
                                          WorkTally* work) const {
  const QueryResult q = query_distance(u, v, work);
  if (!q.same_leaf_interior) return q.value;
  const auto& block = p_->node(p_->leaf_of(u)).block;
  scratch.clear_members();
  for (Vertex x : block) scratch.add_member(x);
  bfs_restricted(*g_, u, block, scratch, work ? &work->bfs_edges : nullptr);
  return std::min(q.value, scratch.dist[v]);
}

}  // namespace geodiam
