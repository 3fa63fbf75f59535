#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "graph.hpp"

namespace geodiam {

// Center selection for iFUB: either the midpoint vertex of a double sweep
// started at `start`, or a fixed vertex.
struct TwoSweepCenter {
  Vertex start = 0;
};
struct FixedCenter {
  Vertex center = 0;
};
using CenterStrategy = std::variant<TwoSweepCenter, FixedCenter>;

// Record of one iFUB run, sufficient to replay the analysis without
// re-running: the ordering, each processed vertex with its eccentricity and
// the running lower bound.
struct IfubTrace {
  Vertex center = 0;
  std::vector<Dist> dist_from_center;  // per vertex
  std::vector<Vertex> order;           // descending distance, ties by lowest id
  struct Step {
    Vertex v;
    Dist ecc;
    Dist lower_bound;  // after processing v
  };
  std::vector<Step> steps;      // one per fringe eccentricity computed
  uint64_t fringe_bfs = 0;      // eccentricity BFS runs in the main loop
  uint64_t total_bfs = 0;       // fringe + ordering BFS + sweep BFS runs
  std::vector<Vertex> explored() const;
};

struct IfubResult {
  Dist diameter;
  IfubTrace trace;
};

// iFUB: processes vertices in descending distance from the center,
// maintaining the largest eccentricity seen, and stops at the first vertex v
// with 2*dist(center,v) <= lower bound.  Exact; throws DisconnectedError on
// disconnected input.
IfubResult ifub(const GeometricGraph& g, const CenterStrategy& strategy,
                uint64_t* edge_work = nullptr);

// Exact inclusions of the explored set (a theorem, not a tendency):
//   {v : dist(c,v) >= ceil(D/2)+1}  subset of  explored  subset of
//   {v : dist(c,v) >= ceil(D/2)}.
struct ExploredBoundsReport {
  bool lower_inclusion_holds = false;  // far vertices all explored
  bool upper_inclusion_holds = false;  // explored vertices all far enough
  uint64_t vertices_at_half = 0;       // #{dist >= ceil(D/2)}
  uint64_t vertices_above_half = 0;    // #{dist >= ceil(D/2)+1}
  uint64_t explored_count = 0;
};

ExploredBoundsReport explored_bounds_check(const IfubTrace& trace, Dist diameter);

}  // namespace geodiam
