#include "ifub.hpp"

#include <algorithm>
#include <cassert>

#include "errors.hpp"

namespace geodiam {

std::vector<Vertex> IfubTrace::explored() const {
  std::vector<Vertex> out;
  out.reserve(steps.size());
  for (const Step& s : steps) out.push_back(s.v);
  return out;
}

IfubResult ifub(const GeometricGraph& g, const CenterStrategy& strategy,
                uint64_t* edge_work) {
  const Vertex n = g.num_vertices();
  if (n == 0) throw InvalidArgumentError("empty graph has no diameter");

  IfubResult result;
  IfubTrace& trace = result.trace;

  if (std::holds_alternative<TwoSweepCenter>(strategy)) {
    const auto ts = two_sweep(g, std::get<TwoSweepCenter>(strategy).start);
    trace.center = ts.center;
    trace.total_bfs += 2;  // the two sweep runs
  } else {
    trace.center = std::get<FixedCenter>(strategy).center;
    if (trace.center >= n) throw InvalidArgumentError("center vertex out of range");
  }

  DistArray from_center = bfs(g, trace.center, edge_work);
  trace.total_bfs += 1;  // the ordering BFS
  for (Vertex v = 0; v < n; ++v)
    if (from_center.dist[v] == kUnreachable)
      throw DisconnectedError(trace.center, v);
  trace.dist_from_center = from_center.dist;

  if (n == 1) {
    result.diameter = 0;
    return result;
  }

  // Order by descending distance, lowest id first inside one level:
  // counting sort by distance, then walk levels from the farthest down.
  Dist max_d = 0;
  for (Dist d : from_center.dist) max_d = std::max(max_d, d);
  std::vector<std::vector<Vertex>> levels(max_d + 1);
  for (Vertex v = 0; v < n; ++v) levels[from_center.dist[v]].push_back(v);
  trace.order.reserve(n);
  for (Dist d = max_d; d >= 0; --d)
    for (Vertex v : levels[d]) trace.order.push_back(v);  // ids ascend per level

  // Reused buffers keep the eccentricity runs allocation-free.
  std::vector<Dist> dist(n);
  std::vector<Vertex> queue;
  queue.reserve(n);
  const auto ecc_of = [&](Vertex source) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    queue.clear();
    queue.push_back(source);
    dist[source] = 0;
    size_t head = 0;
    uint64_t scanned = 0;
    Dist ecc = 0;
    while (head < queue.size()) {
      const Vertex u = queue[head++];
      ecc = dist[u];
      for (Vertex w : g.neighbors(u)) {
        ++scanned;
        if (dist[w] == kUnreachable) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    if (edge_work) *edge_work += scanned;
    return ecc;
  };

  Dist lower = 0;
  for (Vertex v : trace.order) {
    if (2 * from_center.dist[v] <= lower) break;  // stopping rule
    const Dist ecc = ecc_of(v);
    ++trace.fringe_bfs;
    ++trace.total_bfs;
    lower = std::max(lower, ecc);
    trace.steps.push_back({v, ecc, lower});
  }
  result.diameter = lower;
  return result;
}

ExploredBoundsReport explored_bounds_check(const IfubTrace& trace, Dist diameter) {
  ExploredBoundsReport report;
  const Dist half = (diameter + 1) / 2;  // ceil(D/2)
  std::vector<bool> explored(trace.dist_from_center.size(), false);
  for (const auto& step : trace.steps) explored[step.v] = true;
  report.explored_count = trace.steps.size();

  report.lower_inclusion_holds = true;
  report.upper_inclusion_holds = true;
  for (Vertex v = 0; v < static_cast<Vertex>(trace.dist_from_center.size()); ++v) {
    const Dist d = trace.dist_from_center[v];
    if (d >= half) ++report.vertices_at_half;
    if (d >= half + 1) {
      ++report.vertices_above_half;
      if (!explored[v]) report.lower_inclusion_holds = false;
    }
    if (explored[v] && d < half) report.upper_inclusion_holds = false;
  }
  return report;
}

}  // namespace geodiam
