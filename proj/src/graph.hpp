#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "geometry.hpp"

namespace geodiam {

using Vertex = uint32_t;
using Dist = int32_t;

// Sentinel for unreachable vertices.  Strictly larger than any attainable
// hop count; chosen so that sums of two distances cannot overflow.
inline constexpr Dist kUnreachable = 1 << 30;

inline Dist sat_add(Dist a, Dist b) {
  if (a >= kUnreachable || b >= kUnreachable) return kUnreachable;
  return a + b;
}

// Immutable geometric graph: flat CSR adjacency (both directions stored),
// per-vertex coordinates, and the ground-space descriptor.
class GeometricGraph {
 public:
  GeometricGraph() = default;

  // Builds the CSR form from an undirected edge list (each edge listed once).
  // Validates: no self-loops, no duplicate edges, endpoints in range,
  // coordinates inside the space.
  GeometricGraph(GroundSpace space, std::vector<Point> coords,
                 const std::vector<std::pair<Vertex, Vertex>>& edges);

  Vertex num_vertices() const { return n_; }
  uint64_t num_edges() const { return m_; }
  const GroundSpace& space() const { return space_; }
  const std::vector<Point>& coords() const { return coords_; }
  Point coord(Vertex v) const { return coords_[v]; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  uint32_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

 private:
  Vertex n_ = 0;
  uint64_t m_ = 0;
  GroundSpace space_;
  std::vector<Point> coords_;
  std::vector<uint64_t> offsets_;
  std::vector<Vertex> targets_;
};

// Distances from one source.  dist[v] = kUnreachable marks vertices that are
// unreachable (or outside the restriction the search was run under).
struct DistArray {
  Vertex source = 0;
  std::vector<Dist> dist;
};

// Scratch buffers for BFS runs; reuse one instance per worker to keep
// traversals allocation-free.
class BfsScratch {
 public:
  void reset(Vertex n);

  // Membership stamps for restricted traversals.
  void clear_members();
  void add_member(Vertex v) { member_stamp_[v] = stamp_; }
  bool is_member(Vertex v) const { return member_stamp_[v] == stamp_; }

  std::vector<Vertex> queue;
  std::vector<Dist> dist;

 private:
  std::vector<uint32_t> member_stamp_;
  uint32_t stamp_ = 0;
};

// BFS over the whole graph.  Returns exact hop distances; counts every
// scanned adjacency entry into *edge_work when given.
DistArray bfs(const GeometricGraph& g, Vertex source, uint64_t* edge_work = nullptr);

// BFS restricted to the induced subgraph G[members]; the caller must have
// loaded `members` into the scratch (clear_members + add_member) and
// source must be a member.  Writes distances for members into
// scratch.dist (kUnreachable elsewhere) and returns the eccentricity of the
// source within the restriction (kUnreachable if some member is unreachable).
Dist bfs_restricted(const GeometricGraph& g, Vertex source,
                    std::span<const Vertex> members, BfsScratch& scratch,
                    uint64_t* edge_work = nullptr);

// Max finite BFS distance from v; kUnreachable when some vertex (of the
// restriction) cannot be reached.
Dist eccentricity(const GeometricGraph& g, Vertex v);
Dist eccentricity(const GeometricGraph& g, Vertex v, std::span<const Vertex> restriction);

// Exact diameter by one BFS per vertex.  Throws DisconnectedError (naming
// representatives of two components) on disconnected input.
Dist naive_diameter(const GeometricGraph& g, uint64_t* edge_work = nullptr);

bool is_connected(const GeometricGraph& g);
uint32_t max_degree(const GeometricGraph& g);

// Double-sweep result: w maximizes dist from the start vertex, w2 maximizes
// dist from w, and center sits at position floor(dist(w,w2)/2) along the
// parent-pointer shortest path from w to w2 (all ties resolved towards the
// lowest vertex id).
struct TwoSweepResult {
  Vertex w;
  Vertex w2;
  Vertex center;
  Dist dist_w_w2;
};

TwoSweepResult two_sweep(const GeometricGraph& g, Vertex start);

// Exact max pairwise distance between vertex sets, one BFS per a in A.
// Test oracle; returns kUnreachable if some pair is disconnected.
Dist maxdist_bruteforce(const GeometricGraph& g, std::span<const Vertex> a,
                        std::span<const Vertex> b);

// All-pairs hop distances (n x n, row-major).  Intended for verification at
// small n.
std::vector<Dist> all_pairs_distances(const GeometricGraph& g);

}  // namespace geodiam
