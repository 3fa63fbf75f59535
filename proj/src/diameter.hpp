#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oracle.hpp"

namespace geodiam {

// u(A,B) = 2*ecc_{G[A]}(a) + 2*ecc_{G[B]}(b) + d_G(a,b) for the stored
// representatives, or 2*ecc_{G[A]}(a) when A == B.  Satisfies
//   maxdist(A,B) <= u(A,B) <= maxdist(A,B) + 2*diam(G[A]) + 2*diam(G[B]);
// kUnreachable when a block is disconnected (infinite eccentricity).
Dist upper_bound(const DistanceOracle& oracle, NodeId a, NodeId b,
                 BfsScratch& scratch, WorkTally* work = nullptr);

// Sentinel returned by the maxdist engines when the work tally crossed the
// abort threshold mid-computation.
inline constexpr Dist kAborted = -1;

// Exact maxdist over A x B via one oracle call per pair.  Requires distinct
// blocks: cross pairs of disjoint blocks can never be interior to one leaf,
// so every query is exact.  Returns kAborted when `work` crosses `abort_at`.
Dist maxdist_direct(const DistanceOracle& oracle, NodeId a, NodeId b,
                    WorkTally* work = nullptr, uint64_t abort_at = UINT64_MAX);

// Overlay graph H_(A,B): G[A u B] plus a weighted clique among the boundary
// vertices of A and B carrying exact G-distances.  Distances in H equal
// distances in G for all vertices of A u B.
struct OverlayGraph {
  std::vector<Vertex> vertices;  // sorted global ids of A u B
  std::vector<uint32_t> offsets;  // CSR over local ids
  std::vector<uint32_t> targets;
  std::vector<Dist> weights;
  bool has_weighted_edges = false;
  bool aborted = false;  // construction stopped at the abort threshold

  uint32_t size() const { return static_cast<uint32_t>(vertices.size()); }
  uint32_t local_of(Vertex v) const;
};

OverlayGraph build_overlay(const DistanceOracle& oracle, NodeId a, NodeId b,
                           BfsScratch& scratch, WorkTally* work = nullptr,
                           uint64_t abort_at = UINT64_MAX);

// Exact maxdist_G(A,B) on the overlay: one single-source run per vertex of
// the smaller side (Dijkstra, or BFS when no weighted edges exist).
// Returns kAborted when `work` crosses `abort_at`.
Dist maxdist_overlay(const OverlayGraph& h, std::span<const Vertex> a,
                     std::span<const Vertex> b, WorkTally* work = nullptr,
                     uint64_t abort_at = UINT64_MAX);

enum class MaxdistEngine : uint8_t { Direct, Overlay };

struct CostEstimate {
  MaxdistEngine engine;
  uint64_t direct_cost;
  uint64_t overlay_cost;
  uint64_t chosen() const {
    return engine == MaxdistEngine::Direct ? direct_cost : overlay_cost;
  }
};

// Deterministic engine choice from cached block statistics.  Equal pairs
// always use the overlay (the direct engine is cross-pairs only).
CostEstimate cost_model(const DistanceOracle& oracle, NodeId a, NodeId b);

enum class StopRule : uint8_t {
  BlockSize,     // descend until every block has size <= k
  WorkEstimate,  // additionally stop as soon as the estimated maxdist bill
                 // fits the remaining budget (default)
};

struct DecideOptions {
  uint32_t k = 1;             // target block size; must be >= max leaf size
  uint64_t budget = UINT64_MAX;  // elementary-operation budget
  StopRule stop = StopRule::WorkEstimate;
  bool record_pruned = false;  // keep every pruned pair for verification
};

struct NodePair {
  NodeId a, b;  // a <= b
  friend bool operator<(const NodePair& x, const NodePair& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  }
  friend bool operator==(const NodePair& x, const NodePair& y) = default;
};

struct DecideTrace {
  std::vector<uint32_t> pairs_after_step;  // candidate-pair count per intermediate partition
  std::vector<NodePair> pruned;            // filled when record_pruned
  std::vector<NodePair> final_pairs;
  std::vector<NodeId> final_blocks;
  uint32_t direct_used = 0;
  uint32_t overlay_used = 0;
};

struct CandidateStats {
  uint32_t max_partners_per_block = 0;
  uint32_t blocks_with_candidates = 0;
};

// Partner statistics of the final flat partition.
CandidateStats candidate_stats(const DecideTrace& trace);

enum class Outcome : uint8_t { Less, EqualOrGreater, Timeout };

// Three-way comparison of diam(G) against the guess ell.  EqualOrGreater
// carries the exact diameter; Less certifies diam < ell; Timeout means the
// budget ran out (the search driver treats that as evidence for ell < diam).
struct DiameterVerdict {
  Outcome outcome;
  Dist diameter = -1;  // valid iff outcome == EqualOrGreater
  uint64_t work = 0;   // decide-phase work (oracle build not included)
};

DiameterVerdict decide(const DistanceOracle& oracle, Dist ell,
                       const DecideOptions& options, DecideTrace* trace = nullptr);

struct ComputeOptions {
  std::optional<uint32_t> k_override;  // fix k instead of the doubling loop
  uint64_t initial_budget = 4096;
  StopRule stop = StopRule::WorkEstimate;
};

struct ComputeResult {
  Dist diameter = 0;
  uint32_t chosen_k = 0;
  uint64_t final_budget = 0;
  uint64_t oracle_build_work = 0;  // filled by callers that time the build
  uint64_t search_work = 0;        // all decide calls of the search
  uint32_t decide_calls = 0;
  DecideTrace final_trace;         // trace of the successful decide
};

// Exponential search on the budget, inner doubling on k, binary search on
// ell in [1, n-1]; halts decide calls at the budget.  Exact.
ComputeResult compute_diameter(const DistanceOracle& oracle,
                               const ComputeOptions& options = {});

}  // namespace geodiam
