#include "partition.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "errors.hpp"
#include "json.hpp"

namespace geodiam {

namespace {

// Packs a quadtree word (digits 1..4) into a sortable integer key: two bits
// per digit, most significant first.  Levels up to 31 fit.
uint64_t word_key(const std::vector<uint8_t>& word) {
  uint64_t key = 0;
  for (uint8_t d : word) key = (key << 2) | (d - 1);
  return key;
}

}  // namespace

int leaf_level_for(uint32_t n, double r, double cell_factor) {
  const double side = std::sqrt(static_cast<double>(n));
  int level = 0;
  while (side / std::pow(2.0, level + 1) >= cell_factor * r) ++level;
  if (side < cell_factor * r) return 0;  // even the root cell is too small
  return level;
}

int default_leaf_level(uint32_t n, double r) { return leaf_level_for(n, r, 8.0); }

uint32_t RecursivePartition::max_leaf_size() const {
  uint32_t best = 0;
  for (const auto& nd : nodes_)
    if (nd.is_leaf()) best = std::max(best, nd.size());
  return best;
}

RecursivePartition RecursivePartition::induce(const GeometricGraph& g, int leaf_level,
                                              std::optional<double> radius_hint) {
  if (leaf_level < 0) throw InvalidArgumentError("leaf level must be nonnegative");
  const Vertex n = g.num_vertices();
  if (n == 0) throw InvalidArgumentError("cannot partition an empty graph");

  // Sort vertices by their level-l cell word.
  std::vector<std::pair<uint64_t, Vertex>> keyed(n);
  for (Vertex v = 0; v < n; ++v) {
    Cell c = cell_of_point(g.coord(v), leaf_level, g.space());
    keyed[v] = {word_key(c.word), v};
  }
  std::sort(keyed.begin(), keyed.end());

  RecursivePartition p;
  p.leaf_of_.assign(n, kNoNode);

  // Recursive build over the sorted range; single-child chains are
  // contracted by descending without emitting a node, keeping the cell of
  // the shallowest contracted ancestor.
  struct Builder {
    const std::vector<std::pair<uint64_t, Vertex>>& keyed;
    int leaf_level;
    RecursivePartition& p;

    NodeId build(Cell entry_cell, Cell cur_cell, size_t lo, size_t hi, NodeId parent) {
      while (cur_cell.level() < leaf_level) {
        // Split [lo,hi) by the next digit.
        size_t bounds[5];
        bounds[0] = lo;
        const int shift = 2 * (leaf_level - cur_cell.level() - 1);
        size_t pos = lo;
        for (int digit = 0; digit < 4; ++digit) {
          while (pos < hi &&
                 static_cast<int>((keyed[pos].first >> shift) & 3u) == digit)
            ++pos;
          bounds[digit + 1] = pos;
        }
        assert(bounds[4] == hi);
        int nonempty = 0, only_digit = -1;
        for (int digit = 0; digit < 4; ++digit) {
          if (bounds[digit] != bounds[digit + 1]) {
            ++nonempty;
            only_digit = digit;
          }
        }
        if (nonempty > 1) {
          const NodeId id = emit(entry_cell, lo, hi, parent);
          for (int digit = 0; digit < 4; ++digit) {
            if (bounds[digit] == bounds[digit + 1]) continue;
            Cell child = cell_child(cur_cell, digit + 1);
            const NodeId cid = build(child, child, bounds[digit], bounds[digit + 1], id);
            p.nodes_[id].children.push_back(cid);
          }
          return id;
        }
        cur_cell = cell_child(cur_cell, only_digit + 1);  // contract
      }
      return emit(entry_cell, lo, hi, parent);  // leaf
    }

    NodeId emit(const Cell& cell, size_t lo, size_t hi, NodeId parent) {
      const NodeId id = static_cast<NodeId>(p.nodes_.size());
      PartitionNode node;
      node.cell = cell;
      node.level = cell.level();
      node.parent = parent;
      node.block.reserve(hi - lo);
      for (size_t i = lo; i < hi; ++i) node.block.push_back(keyed[i].second);
      std::sort(node.block.begin(), node.block.end());
      p.nodes_.push_back(std::move(node));
      return id;
    }
  };

  Cell root = root_cell(g.space());
  Builder builder{keyed, leaf_level, p};
  p.root_ = builder.build(root, root, 0, n, kNoNode);
  assert(p.root_ == 0);

  p.trivial_flagged = p.nodes_.size() == 1;
  if (radius_hint && g.space().kind == SpaceKind::Torus) {
    // Leaf cells below the 2r separator-strip width degrade the separator
    // guarantees on the torus; flag it, correctness is unaffected.
    const double leaf_side = g.space().side / std::pow(2.0, leaf_level);
    if (leaf_side < 2.0 * *radius_hint) p.small_cell_warning = true;
  }

  p.finalize(g);
  return p;
}

RecursivePartition RecursivePartition::from_leaf_blocks(
    const GeometricGraph& g, std::vector<std::vector<Vertex>> leaf_blocks) {
  const Vertex n = g.num_vertices();
  RecursivePartition p;
  p.leaf_of_.assign(n, kNoNode);
  PartitionNode root;
  root.cell = root_cell(g.space());
  root.level = 0;
  root.parent = kNoNode;
  root.block.resize(n);
  for (Vertex v = 0; v < n; ++v) root.block[v] = v;
  p.nodes_.push_back(std::move(root));
  if (leaf_blocks.size() == 1) {
    p.trivial_flagged = true;
  } else {
    for (auto& blk : leaf_blocks) {
      std::sort(blk.begin(), blk.end());
      PartitionNode leaf;
      leaf.cell = root_cell(g.space());
      leaf.level = 1;
      leaf.parent = p.root_;
      leaf.block = std::move(blk);
      const NodeId id = static_cast<NodeId>(p.nodes_.size());
      p.nodes_.push_back(std::move(leaf));
      p.nodes_[p.root_].children.push_back(id);
    }
  }
  p.finalize(g);
  for (Vertex v = 0; v < n; ++v)
    if (p.leaf_of_[v] == kNoNode)
      throw InvalidArgumentError("leaf blocks do not cover vertex " + std::to_string(v));
  return p;
}

void RecursivePartition::finalize(const GeometricGraph& g) {
  const uint32_t nn = num_nodes();
  tin_.assign(nn, 0);
  tout_.assign(nn, 0);

  // Iterative DFS assigning euler intervals and leaf ownership.
  uint32_t timer = 0;
  std::vector<std::pair<NodeId, size_t>> stack{{root_, 0}};
  tin_[root_] = timer++;
  while (!stack.empty()) {
    auto& [u, next_child] = stack.back();
    if (nodes_[u].is_leaf() && next_child == 0) {
      for (Vertex v : nodes_[u].block) {
        if (leaf_of_[v] != kNoNode)
          throw InvalidArgumentError("leaf blocks are not disjoint at vertex " +
                                     std::to_string(v));
        leaf_of_[v] = u;
      }
    }
    if (next_child < nodes_[u].children.size()) {
      const NodeId c = nodes_[u].children[next_child++];
      tin_[c] = timer++;
      stack.emplace_back(c, 0);
    } else {
      tout_[u] = timer;
      stack.pop_back();
    }
  }
  // Make the interval test usable on vertices: tin of a leaf covers its
  // whole block, so compare against tin of the owning leaf.

  // Boundaries: one adjacency scan per node.  The root's block is V, so its
  // boundary comes out empty without special-casing.
  for (NodeId u = 0; u < nn; ++u) {
    auto& node = nodes_[u];
    node.boundary.clear();
    if (u == root_) continue;
    for (Vertex v : node.block) {
      for (Vertex w : g.neighbors(v)) {
        if (!block_contains(u, w)) {
          node.boundary.push_back(v);
          break;
        }
      }
    }
  }
  // Separators: concatenation of children's boundaries, sorted.
  for (NodeId u = 0; u < nn; ++u) {
    auto& node = nodes_[u];
    node.separator.clear();
    for (NodeId c : node.children) {
      const auto& b = nodes_[c].boundary;
      node.separator.insert(node.separator.end(), b.begin(), b.end());
    }
    std::sort(node.separator.begin(), node.separator.end());
  }
}

FlatPartition flat_partition_by_size(const RecursivePartition& p, uint32_t k) {
  if (k < p.max_leaf_size()) throw NeedSmallerLeavesError(p.max_leaf_size());
  FlatPartition flat;
  for (NodeId u = 0; u < p.num_nodes(); ++u) {
    const auto& node = p.node(u);
    if (node.size() > k) continue;
    if (node.parent == kNoNode || p.node(node.parent).size() > k)
      flat.blocks.push_back(u);
  }
  return flat;
}

BalanceReport check_balance(const RecursivePartition& p) {
  BalanceReport report;
  for (NodeId u = 0; u < p.num_nodes(); ++u) {
    const auto& node = p.node(u);
    if (node.is_leaf()) continue;
    uint32_t lo = ~0u, hi = 0;
    for (NodeId c : node.children) {
      lo = std::min(lo, p.node(c).size());
      hi = std::max(hi, p.node(c).size());
    }
    const double excess = static_cast<double>(hi) / lo - 1.0;
    if (excess > report.max_excess) {
      report.max_excess = excess;
      report.argmax = u;
    }
  }
  return report;
}

SeparatorReport check_separators(const RecursivePartition& p, double alpha, double beta) {
  SeparatorReport report;
  const double n = static_cast<double>(p.num_vertices());
  for (NodeId u = 0; u < p.num_nodes(); ++u) {
    const auto& node = p.node(u);
    if (node.separator.empty()) continue;
    const double ratio = node.separator.size() /
                         (std::pow(static_cast<double>(node.size()), alpha) *
                          std::pow(n, beta));
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.argmax = u;
    }
  }
  return report;
}

std::string RecursivePartition::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (NodeId u = 0; u < num_nodes(); ++u) {
    const auto& node = nodes_[u];
    j.push_back({{"id", u},
                 {"level", node.level},
                 {"cell", node.cell.word_string()},
                 {"size", node.size()},
                 {"boundary", node.boundary.size()},
                 {"separator", node.separator.size()},
                 {"parent", node.parent == kNoNode ? -1 : static_cast<int64_t>(node.parent)},
                 {"children", node.children}});
  }
  return j.dump();
}

}  // namespace geodiam
