#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "partition.hpp"

namespace geodiam {

// One measurement or invariant-check result.  Exact invariants carry a
// pass/fail verdict; asymptotic properties carry measurements only.
struct ReportRow {
  std::string property;
  std::string instance;
  std::string param;
  std::string stat;
  double value = 0.0;
  bool exact = false;
  std::optional<bool> pass;
};

using PropertyReport = std::vector<ReportRow>;

// Longest geometric edge length; a certified connection-radius bound for
// stretch checks on graphs loaded from disk (the format does not carry r).
double max_edge_length(const GeometricGraph& g);

// All-pairs hop distances for the measurement operations (n <= a few
// thousand).
struct AllPairs {
  Vertex n = 0;
  std::vector<Dist> d;

  Dist at(Vertex u, Vertex v) const { return d[static_cast<size_t>(u) * n + v]; }
  Dist diameter() const;
};

AllPairs compute_all_pairs(const GeometricGraph& g);

// Greedy ball covers over the graph metric, deterministic (centers are the
// lowest-id uncovered targets).
uint32_t greedy_cover_count(const AllPairs& ap, std::span<const Vertex> targets,
                            Dist radius);

struct GrownCover {
  uint32_t count = 0;
  Dist max_radius = 0;
};

// Per-ball radius growth: each ball grows from its center while the next
// uncovered target is at most one hop beyond the current radius.
GrownCover greedy_cover_grow(const AllPairs& ap, std::span<const Vertex> targets);

// Hard invariant d_G(u,v) >= ceil(d_X(u,v)/r): exhaustive for n <= 300 plus
// `sample_pairs` sampled pairs.  Any violation fails.
PropertyReport check_lower_stretch(const GeometricGraph& g, double radius,
                                   const std::string& instance, uint64_t seed = 0,
                                   uint32_t sample_pairs = 10000);

// Measurement of the upper stretch excess d_G*r/d_X - 1 over sampled pairs
// with d_X > r, bucketed by d_X/r.  No assertions.
PropertyReport measure_upper_stretch(const GeometricGraph& g, double radius,
                                     const std::string& instance, uint64_t seed = 0,
                                     uint32_t sample_pairs = 10000);

// Property 1: cover the x-diametric partner sets of sampled vertices.
PropertyReport measure_local_partners(const GeometricGraph& g, const AllPairs& ap,
                                      double radius, std::span<const Dist> x_grid,
                                      const std::string& instance, uint64_t seed = 0,
                                      uint32_t sample_vertices = 16);

// Property 2: cover the set of vertices owning any x-diametric partner.
PropertyReport measure_few_corners(const GeometricGraph& g, const AllPairs& ap,
                                   double radius, std::span<const Dist> x_grid,
                                   const std::string& instance);

// Exact induced diameter per block; kUnreachable marks disconnected blocks.
// Throws InvalidArgumentError when the per-block all-pairs BFS cost would
// exceed `edge_budget` adjacency scans.
std::vector<Dist> block_diameters(const GeometricGraph& g, const RecursivePartition& p,
                                  uint64_t edge_budget = 4'000'000'000ULL);

// Property 4: same-level diameter ratios and the diam * r / sqrt(|B|)
// scaling band.
PropertyReport check_size_dependent_diameters(const GeometricGraph& g,
                                              const RecursivePartition& p,
                                              std::span<const Dist> block_diams,
                                              double radius,
                                              const std::string& instance);

// Property 5: for sampled centers and each radius, count blocks with
// diameter within [radius/2, 2*radius] intersecting the graph ball.
PropertyReport measure_fragmentation(const GeometricGraph& g, const RecursivePartition& p,
                                     std::span<const Dist> block_diams,
                                     std::span<const Dist> radii,
                                     const std::string& instance, uint64_t seed = 0,
                                     uint32_t sample_centers = 16);

// Concentration of block sizes (|B| / cell area) and separator sizes
// (|sep| / (4(s-r)r)); reported, never asserted.
PropertyReport check_block_concentration(const GeometricGraph& g,
                                         const RecursivePartition& p, double radius,
                                         const std::string& instance);

// Property 3 wrapper: balance excess and separator-size ratio rows.
PropertyReport check_partition_shape(const RecursivePartition& p, double alpha,
                                     double beta, const std::string& instance);

}  // namespace geodiam
