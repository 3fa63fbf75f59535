#include "graph.hpp"

#include <algorithm>
#include <cassert>

#include "errors.hpp"

namespace geodiam {

GeometricGraph::GeometricGraph(GroundSpace space, std::vector<Point> coords,
                               const std::vector<std::pair<Vertex, Vertex>>& edges)
    : n_(static_cast<Vertex>(coords.size())),
      m_(edges.size()),
      space_(space),
      coords_(std::move(coords)) {
  for (Vertex v = 0; v < n_; ++v) {
    if (!space_.contains(coords_[v]))
      throw InvalidArgumentError("coordinate of vertex " + std::to_string(v) +
                                 " lies outside the ground space");
  }
  std::vector<uint32_t> deg(n_, 0);
  for (auto [u, v] : edges) {
    if (u >= n_ || v >= n_)
      throw InvalidArgumentError("edge endpoint out of range");
    if (u == v)
      throw InvalidArgumentError("self-loop at vertex " + std::to_string(u));
    ++deg[u];
    ++deg[v];
  }
  offsets_.assign(n_ + 1, 0);
  for (Vertex v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  targets_.resize(2 * m_);
  std::vector<uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (auto [u, v] : edges) {
    targets_[cursor[u]++] = v;
    targets_[cursor[v]++] = u;
  }
  for (Vertex v = 0; v < n_; ++v)
    std::sort(targets_.begin() + offsets_[v], targets_.begin() + offsets_[v + 1]);
  for (Vertex v = 0; v < n_; ++v) {
    auto adj = neighbors(v);
    if (std::adjacent_find(adj.begin(), adj.end()) != adj.end())
      throw InvalidArgumentError("duplicate edge at vertex " + std::to_string(v));
  }
}

void BfsScratch::reset(Vertex n) {
  if (dist.size() != n) {
    dist.assign(n, kUnreachable);
    member_stamp_.assign(n, 0);
    stamp_ = 0;
    queue.reserve(n);
  }
}

void BfsScratch::clear_members() {
  if (++stamp_ == 0) {  // stamp wrapped; reset lazily
    std::fill(member_stamp_.begin(), member_stamp_.end(), 0);
    stamp_ = 1;
  }
}

namespace {

// Plain BFS into dist[]; dist must be preset to kUnreachable for all
// touched vertices.  Returns number of reached vertices.
uint64_t run_bfs(const GeometricGraph& g, Vertex source, std::vector<Dist>& dist,
                 std::vector<Vertex>& queue, uint64_t* edge_work) {
  queue.clear();
  queue.push_back(source);
  dist[source] = 0;
  size_t head = 0;
  uint64_t scanned = 0;
  while (head < queue.size()) {
    const Vertex u = queue[head++];
    const Dist du = dist[u];
    for (Vertex w : g.neighbors(u)) {
      ++scanned;
      if (dist[w] == kUnreachable) {
        dist[w] = du + 1;
        queue.push_back(w);
      }
    }
  }
  if (edge_work) *edge_work += scanned;
  return queue.size();
}

}  // namespace

DistArray bfs(const GeometricGraph& g, Vertex source, uint64_t* edge_work) {
  if (source >= g.num_vertices())
    throw InvalidArgumentError("BFS source out of range");
  DistArray out;
  out.source = source;
  out.dist.assign(g.num_vertices(), kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(g.num_vertices());
  run_bfs(g, source, out.dist, queue, edge_work);
  return out;
}

Dist bfs_restricted(const GeometricGraph& g, Vertex source,
                    std::span<const Vertex> members, BfsScratch& scratch,
                    uint64_t* edge_work) {
  assert(scratch.is_member(source));
  for (Vertex v : members) scratch.dist[v] = kUnreachable;
  scratch.queue.clear();
  scratch.queue.push_back(source);
  scratch.dist[source] = 0;
  size_t head = 0;
  uint64_t scanned = 0;
  Dist ecc = 0;
  while (head < scratch.queue.size()) {
    const Vertex u = scratch.queue[head++];
    const Dist du = scratch.dist[u];
    ecc = du;
    for (Vertex w : g.neighbors(u)) {
      ++scanned;
      if (scratch.is_member(w) && scratch.dist[w] == kUnreachable) {
        scratch.dist[w] = du + 1;
        scratch.queue.push_back(w);
      }
    }
  }
  if (edge_work) *edge_work += scanned;
  return scratch.queue.size() == members.size() ? ecc : kUnreachable;
}

Dist eccentricity(const GeometricGraph& g, Vertex v) {
  DistArray d = bfs(g, v);
  Dist ecc = 0;
  for (Dist x : d.dist) {
    if (x == kUnreachable) return kUnreachable;
    ecc = std::max(ecc, x);
  }
  return ecc;
}

Dist eccentricity(const GeometricGraph& g, Vertex v, std::span<const Vertex> restriction) {
  BfsScratch scratch;
  scratch.reset(g.num_vertices());
  scratch.clear_members();
  for (Vertex u : restriction) scratch.add_member(u);
  return bfs_restricted(g, v, restriction, scratch);
}

bool is_connected(const GeometricGraph& g) {
  if (g.num_vertices() <= 1) return true;
  DistArray d = bfs(g, 0);
  return std::find(d.dist.begin(), d.dist.end(), kUnreachable) == d.dist.end();
}

uint32_t max_degree(const GeometricGraph& g) {
  uint32_t best = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) best = std::max(best, g.degree(v));
  return best;
}

Dist naive_diameter(const GeometricGraph& g, uint64_t* edge_work) {
  const Vertex n = g.num_vertices();
  if (n == 0) throw InvalidArgumentError("empty graph has no diameter");
  if (n == 1) return 0;
  std::vector<Dist> dist(n, kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(n);
  Dist diam = 0;
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    const uint64_t reached = run_bfs(g, s, dist, queue, edge_work);
    if (reached != n) {
      for (Vertex v = 0; v < n; ++v)
        if (dist[v] == kUnreachable) throw DisconnectedError(s, v);
    }
    diam = std::max(diam, *std::max_element(dist.begin(), dist.end()));
  }
  return diam;
}

namespace {

// Lowest-id vertex with maximum finite distance.
Vertex argmax_dist(const std::vector<Dist>& dist) {
  Vertex best = 0;
  Dist best_d = -1;
  for (Vertex v = 0; v < dist.size(); ++v) {
    if (dist[v] != kUnreachable && dist[v] > best_d) {
      best_d = dist[v];
      best = v;
    }
  }
  return best;
}

}  // namespace

TwoSweepResult two_sweep(const GeometricGraph& g, Vertex start) {
  if (start >= g.num_vertices())
    throw InvalidArgumentError("two_sweep start vertex out of range");
  DistArray from_start = bfs(g, start);
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (from_start.dist[v] == kUnreachable) throw DisconnectedError(start, v);

  const Vertex w = argmax_dist(from_start.dist);
  DistArray from_w = bfs(g, w);
  const Vertex w2 = argmax_dist(from_w.dist);
  const Dist d = from_w.dist[w2];

  // Walk w2 -> w along lowest-id parents, then pick the vertex at position
  // floor(d/2) of the w -> w2 path.
  std::vector<Vertex> path_rev;
  path_rev.reserve(d + 1);
  Vertex cur = w2;
  path_rev.push_back(cur);
  while (cur != w) {
    Vertex parent = cur;
    for (Vertex u : g.neighbors(cur)) {  // neighbors are sorted by id
      if (from_w.dist[u] == from_w.dist[cur] - 1) {
        parent = u;
        break;
      }
    }
    assert(parent != cur);
    cur = parent;
    path_rev.push_back(cur);
  }
  const Vertex center = path_rev[path_rev.size() - 1 - d / 2];
  return TwoSweepResult{w, w2, center, d};
}

Dist maxdist_bruteforce(const GeometricGraph& g, std::span<const Vertex> a,
                        std::span<const Vertex> b) {
  if (a.empty() || b.empty())
    throw InvalidArgumentError("maxdist over an empty set");
  Dist best = 0;
  for (Vertex u : a) {
    DistArray d = bfs(g, u);
    for (Vertex v : b) {
      if (d.dist[v] == kUnreachable) return kUnreachable;
      best = std::max(best, d.dist[v]);
    }
  }
  return best;
}

std::vector<Dist> all_pairs_distances(const GeometricGraph& g) {
  const Vertex n = g.num_vertices();
  std::vector<Dist> out(static_cast<size_t>(n) * n, kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(n);
  for (Vertex s = 0; s < n; ++s) {
    std::vector<Dist> row(n, kUnreachable);
    run_bfs(g, s, row, queue, nullptr);
    std::copy(row.begin(), row.end(), out.begin() + static_cast<size_t>(s) * n);
  }
  return out;
}

}  // namespace geodiam
