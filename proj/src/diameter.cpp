#include "diameter.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <map>
#include <queue>

#include "errors.hpp"

namespace geodiam {

Dist upper_bound(const DistanceOracle& oracle, NodeId a, NodeId b,
                 BfsScratch& scratch, WorkTally* work) {
  const auto [va, ea] = oracle.ecc_rep(a);
  if (a == b) return sat_add(ea, ea);
  const auto [vb, eb] = oracle.ecc_rep(b);
  if (ea >= kUnreachable || eb >= kUnreachable) return kUnreachable;
  const Dist d = oracle.query_distance_exact(va, vb, scratch, work);
  return sat_add(sat_add(sat_add(ea, ea), sat_add(eb, eb)), d);
}

Dist maxdist_direct(const DistanceOracle& oracle, NodeId a, NodeId b,
                    WorkTally* work, uint64_t abort_at) {
  if (a == b)
    throw InvalidArgumentError("maxdist_direct requires distinct blocks");
  const auto& p = oracle.partition();
  // maxdist is symmetric; exact row evaluations cost |B| each, so keep the
  // smaller block on the B side.
  if (p.node(a).size() < p.node(b).size()) std::swap(a, b);
  const auto& block_a = p.node(a).block;
  const auto& block_b = p.node(b).block;

  // Distinct blocks of the hierarchy are disjoint, so d_G(u,v) for u in A,
  // v in B is the min over all separator rows of the LCA-to-root chain.
  // Rather than k^2 full queries, compute per-row maxima over B once; then
  //   ub(u) = min over rows s of D[s][u] + max_{v in B} D[s][v]
  // bounds max_v d(u,v) from above (max-min <= min-max), and only the rows
  // whose bound beats the running best need exact evaluation.
  struct ChainRow {
    const Dist* row;    // ancestor table row
    uint32_t iu;        // filled per u
    Dist row_max_b;
  };
  std::vector<const PartitionNode*> chain_nodes;
  std::vector<NodeId> chain_ids;
  for (NodeId x = oracle.lca(a, b); x != kNoNode; x = p.node(x).parent) {
    chain_ids.push_back(x);
    chain_nodes.push_back(&p.node(x));
  }

  // Per-row maxima over B and local index caches.
  std::vector<std::pair<const Dist*, Dist>> rows;  // (row base over the block, max over B)
  std::vector<std::vector<uint32_t>> local_b(chain_ids.size());
  std::vector<std::vector<uint32_t>> local_a(chain_ids.size());
  for (size_t ci = 0; ci < chain_ids.size(); ++ci) {
    const auto& node = *chain_nodes[ci];
    if (node.separator.empty()) continue;
    local_b[ci] = oracle.local_indices(chain_ids[ci], block_b);
    local_a[ci] = oracle.local_indices(chain_ids[ci], block_a);
  }
  for (size_t ci = 0; ci < chain_ids.size(); ++ci) {
    const auto& node = *chain_nodes[ci];
    const uint32_t bs = node.size();
    const Dist* table = oracle.table(chain_ids[ci]);
    for (size_t si = 0; si < node.separator.size(); ++si) {
      const Dist* row = table + si * bs;
      Dist row_max = 0;
      for (uint32_t ib : local_b[ci]) row_max = std::max(row_max, row[ib]);
      rows.emplace_back(row, row_max);
    }
    if (work) work->oracle_entries += node.separator.size() * block_b.size();
  }

  // Upper bounds per source vertex of A.
  std::vector<std::pair<Dist, uint32_t>> order(block_a.size());
  for (uint32_t ia = 0; ia < block_a.size(); ++ia) {
    Dist ub = kUnreachable;
    size_t row_idx = 0;
    for (size_t ci = 0; ci < chain_ids.size(); ++ci) {
      const auto& node = *chain_nodes[ci];
      for (size_t si = 0; si < node.separator.size(); ++si, ++row_idx) {
        const auto& [row, row_max] = rows[row_idx];
        ub = std::min(ub, sat_add(row[local_a[ci][ia]], row_max));
      }
    }
    order[ia] = {ub, ia};
  }
  if (work) work->oracle_entries += block_a.size() * rows.size();
  std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  });

  Dist best = 0;
  std::vector<Dist> dist_b;
  for (const auto& [ub, ia] : order) {
    if (ub <= best) break;  // no remaining row can improve the max
    if (work && work->total() > abort_at) return kAborted;
    // Exact distances from block_a[ia] to all of B across the chain rows.
    dist_b.assign(block_b.size(), kUnreachable);
    size_t row_idx = 0;
    for (size_t ci = 0; ci < chain_ids.size(); ++ci) {
      const auto& node = *chain_nodes[ci];
      for (size_t si = 0; si < node.separator.size(); ++si, ++row_idx) {
        const Dist* row = rows[row_idx].first;
        const Dist du = row[local_a[ci][ia]];
        if (du >= kUnreachable) continue;
        const auto& lb = local_b[ci];
        for (size_t j = 0; j < lb.size(); ++j)
          dist_b[j] = std::min(dist_b[j], du + row[lb[j]]);
      }
    }
    if (work) work->oracle_entries += block_b.size() * rows.size();
    for (Dist d : dist_b) best = std::max(best, d);
  }
  return best;
}

uint32_t OverlayGraph::local_of(Vertex v) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  assert(it != vertices.end() && *it == v);
  return static_cast<uint32_t>(it - vertices.begin());
}

OverlayGraph build_overlay(const DistanceOracle& oracle, NodeId a, NodeId b,
                           BfsScratch& scratch, WorkTally* work, uint64_t abort_at) {
  const auto& p = oracle.partition();
  const GeometricGraph& g = oracle.graph();

  OverlayGraph h;
  {
    const auto& block_a = p.node(a).block;
    h.vertices = block_a;
    if (b != a) {
      const auto& block_b = p.node(b).block;
      std::vector<Vertex> merged;
      merged.reserve(block_a.size() + block_b.size());
      std::merge(block_a.begin(), block_a.end(), block_b.begin(), block_b.end(),
                 std::back_inserter(merged));
      h.vertices = std::move(merged);
    }
  }
  const uint32_t vn = h.size();
  std::vector<uint32_t> local(g.num_vertices(), 0);
  scratch.clear_members();
  for (uint32_t i = 0; i < vn; ++i) {
    scratch.add_member(h.vertices[i]);
    local[h.vertices[i]] = i;
  }

  // Boundary union; disjoint unless a == b.
  std::vector<Vertex> bnd = p.node(a).boundary;
  if (b != a) {
    const auto& bb = p.node(b).boundary;
    std::vector<Vertex> merged;
    merged.reserve(bnd.size() + bb.size());
    std::merge(bnd.begin(), bnd.end(), bb.begin(), bb.end(), std::back_inserter(merged));
    bnd = std::move(merged);
  }

  // Weighted clique among boundary vertices; skipped entries are pairs
  // disconnected in G.  Boundary vertices are never leaf-interior, but fall
  // back to the exact query if that ever surfaces.
  std::vector<std::tuple<uint32_t, uint32_t, Dist>> weighted;
  BfsScratch clique_scratch;
  clique_scratch.reset(g.num_vertices());
  for (size_t i = 0; i < bnd.size(); ++i) {
    if (work && work->total() > abort_at) {
      h.aborted = true;
      return h;
    }
    for (size_t j = i + 1; j < bnd.size(); ++j) {
      const auto q = oracle.query_distance(bnd[i], bnd[j], work);
      const Dist d = q.same_leaf_interior
                         ? oracle.query_distance_exact(bnd[i], bnd[j], clique_scratch, work)
                         : q.value;
      if (d >= kUnreachable) continue;
      assert(d >= 1);
      weighted.emplace_back(local[bnd[i]], local[bnd[j]], d);
    }
  }
  h.has_weighted_edges = !weighted.empty();

  // CSR: unit edges of G[A u B] plus the weighted clique, both directions.
  std::vector<uint32_t> deg(vn, 0);
  for (uint32_t i = 0; i < vn; ++i)
    for (Vertex w : g.neighbors(h.vertices[i]))
      if (scratch.is_member(w)) ++deg[i];
  for (const auto& [x, y, d] : weighted) {
    ++deg[x];
    ++deg[y];
  }
  h.offsets.assign(vn + 1, 0);
  for (uint32_t i = 0; i < vn; ++i) h.offsets[i + 1] = h.offsets[i] + deg[i];
  h.targets.resize(h.offsets[vn]);
  h.weights.resize(h.offsets[vn]);
  std::vector<uint32_t> cursor(h.offsets.begin(), h.offsets.end() - 1);
  for (uint32_t i = 0; i < vn; ++i) {
    for (Vertex w : g.neighbors(h.vertices[i])) {
      if (!scratch.is_member(w)) continue;
      h.targets[cursor[i]] = local[w];
      h.weights[cursor[i]] = 1;
      ++cursor[i];
    }
  }
  for (const auto& [x, y, d] : weighted) {
    h.targets[cursor[x]] = y;
    h.weights[cursor[x]++] = d;
    h.targets[cursor[y]] = x;
    h.weights[cursor[y]++] = d;
  }
  if (work) work->bfs_edges += h.offsets[vn];
  return h;
}

namespace {

// Single-source shortest paths on the overlay into dist[] (local ids).
void overlay_sssp(const OverlayGraph& h, uint32_t source, std::vector<Dist>& dist,
                  std::vector<uint32_t>& queue, WorkTally* work) {
  std::fill(dist.begin(), dist.end(), kUnreachable);
  if (!h.has_weighted_edges) {
    // Unit weights: plain BFS.
    queue.clear();
    queue.push_back(source);
    dist[source] = 0;
    size_t head = 0;
    uint64_t scanned = 0;
    while (head < queue.size()) {
      const uint32_t u = queue[head++];
      const Dist du = dist[u];
      for (uint32_t e = h.offsets[u]; e < h.offsets[u + 1]; ++e) {
        ++scanned;
        const uint32_t w = h.targets[e];
        if (dist[w] == kUnreachable) {
          dist[w] = du + 1;
          queue.push_back(w);
        }
      }
    }
    if (work) work->bfs_edges += scanned;
    return;
  }
  using Item = std::pair<Dist, uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.emplace(0, source);
  dist[source] = 0;
  uint64_t heap_ops = 1, scanned = 0;
  while (!pq.empty()) {
    const auto [du, u] = pq.top();
    pq.pop();
    ++heap_ops;
    if (du != dist[u]) continue;  // stale entry
    for (uint32_t e = h.offsets[u]; e < h.offsets[u + 1]; ++e) {
      ++scanned;
      const uint32_t w = h.targets[e];
      const Dist dw = sat_add(du, h.weights[e]);
      if (dw < dist[w]) {
        dist[w] = dw;
        pq.emplace(dw, w);
        ++heap_ops;
      }
    }
  }
  if (work) {
    work->heap_ops += heap_ops;
    work->bfs_edges += scanned;
  }
}

}  // namespace

Dist maxdist_overlay(const OverlayGraph& h, std::span<const Vertex> a,
                     std::span<const Vertex> b, WorkTally* work, uint64_t abort_at) {
  if (a.empty() || b.empty())
    throw InvalidArgumentError("maxdist over an empty set");
  if (h.aborted) return kAborted;
  // Run from the smaller side.
  std::span<const Vertex> sources = a.size() <= b.size() ? a : b;
  std::span<const Vertex> targets = a.size() <= b.size() ? b : a;
  std::vector<uint32_t> target_locals(targets.size());
  for (size_t i = 0; i < targets.size(); ++i) target_locals[i] = h.local_of(targets[i]);

  std::vector<Dist> dist(h.size());
  std::vector<uint32_t> queue;
  queue.reserve(h.size());
  Dist best = 0;
  for (Vertex s : sources) {
    if (work && work->total() > abort_at) return kAborted;
    overlay_sssp(h, h.local_of(s), dist, queue, work);
    for (uint32_t t : target_locals) best = std::max(best, dist[t]);
  }
  return best;
}

CostEstimate cost_model(const DistanceOracle& oracle, NodeId a, NodeId b) {
  const auto& p = oracle.partition();
  const auto& na = p.node(a);
  const auto& nb = p.node(b);
  const uint64_t size_a = na.size(), size_b = nb.size();
  const uint64_t union_size = a == b ? size_a : size_a + size_b;
  const uint64_t bnd = a == b ? na.boundary.size()
                              : na.boundary.size() + nb.boundary.size();
  const uint64_t query_cost = oracle.chain_entries(oracle.lca(a, b));
  const uint64_t degree = oracle.degree_surrogate();

  // The direct engine batches per separator row: row maxima and a handful of
  // exactly evaluated rows over the smaller block, per-u bounds over the
  // larger one.
  const uint64_t direct_cost =
      a == b ? UINT64_MAX
             : (std::max(size_a, size_b) + 3 * std::min(size_a, size_b)) *
                   std::max<uint64_t>(1, query_cost);

  // Without boundary vertices the overlay has unit weights only and each
  // source runs a plain BFS; the heap factor applies otherwise.
  const uint64_t overlay_edges = union_size * degree + bnd * bnd;
  const uint64_t log_v =
      bnd == 0 ? 1 : std::max<uint64_t>(1, std::bit_width(union_size));
  const uint64_t overlay_cost = union_size * degree + bnd * bnd * query_cost +
                                std::min(size_a, size_b) * overlay_edges * log_v;

  const MaxdistEngine engine = direct_cost <= overlay_cost ? MaxdistEngine::Direct
                                                           : MaxdistEngine::Overlay;
  return {engine, direct_cost, overlay_cost};
}

namespace {

// Candidate bookkeeping for the top-down enumeration.
struct CandidateState {
  // partner sets per block, sorted; a block may partner itself
  std::map<NodeId, std::vector<NodeId>> partners;

  static void insert_sorted(std::vector<NodeId>& v, NodeId x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
  }
  static void erase_sorted(std::vector<NodeId>& v, NodeId x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) v.erase(it);
  }

  void link(NodeId x, NodeId y) {
    insert_sorted(partners[x], y);
    if (x != y) insert_sorted(partners[y], x);
  }
  void unlink_all(NodeId x) {
    auto it = partners.find(x);
    if (it == partners.end()) return;
    for (NodeId q : it->second)
      if (q != x) erase_sorted(partners[q], x);
    partners.erase(it);
    for (auto pit = partners.begin(); pit != partners.end();) {
      if (pit->second.empty())
        pit = partners.erase(pit);
      else
        ++pit;
    }
  }

  uint32_t pair_count() const {
    uint64_t twice = 0, self = 0;
    for (const auto& [x, ps] : partners) {
      twice += ps.size();
      self += std::binary_search(ps.begin(), ps.end(), x) ? 1 : 0;
    }
    return static_cast<uint32_t>((twice - self) / 2 + self);
  }

  std::vector<NodePair> pairs() const {
    std::vector<NodePair> out;
    for (const auto& [x, ps] : partners)
      for (NodeId q : ps)
        if (q >= x) out.push_back({x, q});
    return out;
  }
};

}  // namespace

CandidateStats candidate_stats(const DecideTrace& trace) {
  std::map<NodeId, uint32_t> partners;
  for (const NodePair& pair : trace.final_pairs) {
    ++partners[pair.a];
    if (pair.b != pair.a) ++partners[pair.b];
  }
  CandidateStats stats;
  stats.blocks_with_candidates = static_cast<uint32_t>(partners.size());
  for (const auto& [node, count] : partners)
    stats.max_partners_per_block = std::max(stats.max_partners_per_block, count);
  return stats;
}

DiameterVerdict decide(const DistanceOracle& oracle, Dist ell,
                       const DecideOptions& options, DecideTrace* trace) {
  if (ell < 1) throw InvalidArgumentError("diameter guess must be at least 1");
  const auto& p = oracle.partition();
  if (options.k < p.max_leaf_size()) throw NeedSmallerLeavesError(p.max_leaf_size());

  WorkTally tally;
  BfsScratch scratch;
  scratch.reset(oracle.graph().num_vertices());
  const auto exceeded = [&] { return tally.total() > options.budget; };
  // With an unlimited budget the elapsed-work rule would stop at the root;
  // descend to the size target instead.
  const StopRule stop =
      options.budget == UINT64_MAX ? StopRule::BlockSize : options.stop;

  // Largest block first, ties towards the lowest node id.
  const auto heavier = [&p](NodeId x, NodeId y) {
    const uint32_t sx = p.node(x).size(), sy = p.node(y).size();
    return sx != sy ? sx > sy : x < y;
  };
  std::vector<NodeId> blocks{p.root()};  // kept heap-ordered under `heavier`
  const auto cmp = [&](NodeId x, NodeId y) { return heavier(y, x); };  // max-heap
  CandidateState state;

  const Dist u_root = upper_bound(oracle, p.root(), p.root(), scratch, &tally);
  if (u_root >= ell) state.link(p.root(), p.root());
  if (trace) trace->pairs_after_step.push_back(state.pair_count());

  // Estimated cost of computing maxdist for all current candidate pairs.
  const auto estimated_bill = [&] {
    uint64_t bill = 0;
    for (const auto& [x, ps] : state.partners)
      for (NodeId q : ps)
        if (q >= x) bill += cost_model(oracle, x, q).chosen();
    return bill;
  };

  while (true) {
    std::pop_heap(blocks.begin(), blocks.end(), cmp);
    const NodeId largest = blocks.back();
    const uint32_t largest_size = p.node(largest).size();
    if (largest_size <= options.k) {
      std::push_heap(blocks.begin(), blocks.end(), cmp);
      break;
    }
    if (stop == StopRule::WorkEstimate &&
        tally.total() + estimated_bill() <= options.budget) {
      std::push_heap(blocks.begin(), blocks.end(), cmp);
      break;
    }
    blocks.pop_back();

    const auto& children = p.node(largest).children;
    assert(!children.empty());  // leaves have size <= max leaf size <= k

    // Children inherit candidacy only from the parent's partners (the parent
    // itself included, which produces the child-child pairs).
    std::vector<NodeId> inherited;
    bool self_partner = false;
    if (auto it = state.partners.find(largest); it != state.partners.end()) {
      for (NodeId q : it->second) {
        if (q == largest)
          self_partner = true;
        else
          inherited.push_back(q);
      }
    }
    state.unlink_all(largest);

    for (NodeId c : children) {
      for (NodeId q : inherited) {
        const Dist u = upper_bound(oracle, c, q, scratch, &tally);
        if (u >= ell)
          state.link(c, q);
        else if (trace && options.record_pruned)
          trace->pruned.push_back({std::min(c, q), std::max(c, q)});
      }
    }
    if (self_partner) {
      for (size_t i = 0; i < children.size(); ++i) {
        for (size_t j = i; j < children.size(); ++j) {
          const Dist u = upper_bound(oracle, children[i], children[j], scratch, &tally);
          if (u >= ell)
            state.link(children[i], children[j]);
          else if (trace && options.record_pruned)
            trace->pruned.push_back({children[i], children[j]});
        }
      }
    }
    for (NodeId c : children) {
      blocks.push_back(c);
      std::push_heap(blocks.begin(), blocks.end(), cmp);
    }
    if (trace) trace->pairs_after_step.push_back(state.pair_count());
    if (exceeded()) return {Outcome::Timeout, -1, tally.total()};
  }

  if (trace) {
    trace->final_blocks = blocks;
    std::sort(trace->final_blocks.begin(), trace->final_blocks.end());
    trace->final_pairs = state.pairs();
  }

  // Descent has stopped; if the estimated bill cannot fit what is left of
  // the budget, give up now instead of burning it.
  if (options.budget != UINT64_MAX &&
      tally.total() + estimated_bill() > 2 * options.budget)
    return {Outcome::Timeout, -1, tally.total()};

  // Exact maxdist for every surviving candidate pair.  Engines abort at the
  // budget; a completed computation yields its verdict even when the final
  // tally lands past the budget (the result is sound either way).
  Dist best = -1;
  for (const NodePair& pair : state.pairs()) {
    const auto est = cost_model(oracle, pair.a, pair.b);
    Dist md;
    if (est.engine == MaxdistEngine::Direct) {
      md = maxdist_direct(oracle, pair.a, pair.b, &tally, options.budget);
      if (trace) ++trace->direct_used;
    } else {
      OverlayGraph h =
          build_overlay(oracle, pair.a, pair.b, scratch, &tally, options.budget);
      md = maxdist_overlay(h, p.node(pair.a).block, p.node(pair.b).block, &tally,
                           options.budget);
      if (trace) ++trace->overlay_used;
    }
    if (md == kAborted) return {Outcome::Timeout, -1, tally.total()};
    best = std::max(best, md);
  }

  if (best < ell) return {Outcome::Less, -1, tally.total()};
  return {Outcome::EqualOrGreater, best, tally.total()};
}

ComputeResult compute_diameter(const DistanceOracle& oracle,
                               const ComputeOptions& options) {
  const GeometricGraph& g = oracle.graph();
  const Vertex n = g.num_vertices();
  ComputeResult result;
  if (n == 1) {
    result.diameter = 0;
    return result;
  }
  {
    DistArray d = bfs(g, 0);
    for (Vertex v = 0; v < n; ++v)
      if (d.dist[v] == kUnreachable) throw DisconnectedError(0, v);
  }

  const auto& p = oracle.partition();
  const uint32_t k_min =
      options.k_override ? *options.k_override : std::max(1u, p.max_leaf_size());
  // k <= n/2 unless the leaves themselves are larger (tiny instances).  The
  // elapsed-work stop rule adapts the final partition to the budget on its
  // own, so only the size-based rule needs the inner doubling on k.
  const uint32_t k_max = options.k_override
                             ? *options.k_override
                             : (options.stop == StopRule::WorkEstimate
                                    ? k_min
                                    : std::max(k_min, n / 2));

  for (uint64_t budget = options.initial_budget;; budget *= 2) {
    for (uint64_t k = k_min;; k *= 2) {
      const uint32_t k_eff = static_cast<uint32_t>(std::min<uint64_t>(k, k_max));
      Dist lo = 1, hi = static_cast<Dist>(n - 1);
      bool failed = false;
      while (lo <= hi) {
        const Dist mid = lo + (hi - lo) / 2;
        DecideTrace trace;
        DecideOptions dopt;
        dopt.k = k_eff;
        dopt.budget = budget;
        dopt.stop = options.stop;
        const DiameterVerdict verdict = decide(oracle, mid, dopt, &trace);
        result.search_work += verdict.work;
        ++result.decide_calls;
        switch (verdict.outcome) {
          case Outcome::EqualOrGreater:
            result.diameter = verdict.diameter;
            result.chosen_k = k_eff;
            result.final_budget = budget;
            result.final_trace = std::move(trace);
            return result;
          case Outcome::Less:
            hi = mid - 1;
            break;
          case Outcome::Timeout:
            lo = mid + 1;
            break;
        }
        if (lo > hi) failed = true;
      }
      (void)failed;  // binary search failed: try a larger k, then budget
      if (k_eff >= k_max) break;
    }
  }
}

}  // namespace geodiam
