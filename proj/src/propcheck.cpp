#include "propcheck.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "errors.hpp"
#include "rng.hpp"

namespace geodiam {

double max_edge_length(const GeometricGraph& g) {
  double best = 0.0;
  for (Vertex u = 0; u < g.num_vertices(); ++u)
    for (Vertex w : g.neighbors(u))
      if (u < w) best = std::max(best, distance(g.space(), g.coord(u), g.coord(w)));
  return best;
}

Dist AllPairs::diameter() const {
  Dist best = 0;
  for (Dist x : d) {
    if (x >= kUnreachable) return kUnreachable;
    best = std::max(best, x);
  }
  return best;
}

AllPairs compute_all_pairs(const GeometricGraph& g) {
  AllPairs ap;
  ap.n = g.num_vertices();
  ap.d = all_pairs_distances(g);
  return ap;
}

uint32_t greedy_cover_count(const AllPairs& ap, std::span<const Vertex> targets,
                            Dist radius) {
  std::vector<Vertex> uncovered(targets.begin(), targets.end());
  std::sort(uncovered.begin(), uncovered.end());
  uint32_t count = 0;
  while (!uncovered.empty()) {
    const Vertex center = uncovered.front();
    ++count;
    std::vector<Vertex> rest;
    rest.reserve(uncovered.size());
    for (Vertex v : uncovered)
      if (ap.at(center, v) > radius) rest.push_back(v);
    uncovered = std::move(rest);
  }
  return count;
}

GrownCover greedy_cover_grow(const AllPairs& ap, std::span<const Vertex> targets) {
  std::vector<Vertex> uncovered(targets.begin(), targets.end());
  std::sort(uncovered.begin(), uncovered.end());
  GrownCover cover;
  while (!uncovered.empty()) {
    const Vertex center = uncovered.front();
    std::vector<Dist> ds;
    ds.reserve(uncovered.size());
    for (Vertex v : uncovered) ds.push_back(ap.at(center, v));
    std::sort(ds.begin(), ds.end());
    // Grow while the next target is at most one hop past the ball.
    Dist radius = 0;
    for (Dist d : ds) {
      if (d >= kUnreachable || d > sat_add(radius, 1)) break;
      radius = std::max(radius, d);
    }
    ++cover.count;
    cover.max_radius = std::max(cover.max_radius, radius);
    std::vector<Vertex> rest;
    rest.reserve(uncovered.size());
    for (Vertex v : uncovered)
      if (ap.at(center, v) > radius) rest.push_back(v);
    uncovered = std::move(rest);
  }
  return cover;
}

namespace {

// Deterministic pair sample: `sources` BFS sources, `per_source` targets each.
struct PairSample {
  std::vector<Vertex> sources;
  std::vector<std::vector<Vertex>> targets;  // per source
};

PairSample sample_pairs(Vertex n, uint32_t total_pairs, uint64_t seed) {
  PairSample sample;
  const uint32_t num_sources =
      std::min<uint32_t>(n, std::max<uint32_t>(1, static_cast<uint32_t>(std::sqrt(total_pairs))));
  const uint32_t per_source = (total_pairs + num_sources - 1) / num_sources;
  SplitMix64 rng = SplitMix64::substream(seed, 0x9a17);
  sample.sources.reserve(num_sources);
  for (uint32_t i = 0; i < num_sources; ++i)
    sample.sources.push_back(static_cast<Vertex>(rng.next_below(n)));
  sample.targets.resize(num_sources);
  for (uint32_t i = 0; i < num_sources; ++i) {
    sample.targets[i].reserve(per_source);
    for (uint32_t j = 0; j < per_source; ++j)
      sample.targets[i].push_back(static_cast<Vertex>(rng.next_below(n)));
  }
  return sample;
}

constexpr double kFloatSlack = 1e-9;

}  // namespace

PropertyReport check_lower_stretch(const GeometricGraph& g, double radius,
                                   const std::string& instance, uint64_t seed,
                                   uint32_t sample_pairs_count) {
  if (!(radius > 0.0)) throw InvalidArgumentError("radius must be positive");
  PropertyReport report;
  uint64_t checked = 0, violations = 0;
  double max_ratio = 0.0;  // ceil(d_X/r) / d_G over finite pairs

  const auto check_pair = [&](Vertex u, Vertex v, Dist dg) {
    if (u == v) return;
    ++checked;
    const double dx = distance(g.space(), g.coord(u), g.coord(v));
    // d_G >= ceil(d_X/r) for integral d_G is equivalent to d_G * r >= d_X.
    if (dg < kUnreachable) {
      if (static_cast<double>(dg) * radius < dx - kFloatSlack) ++violations;
      if (dg > 0) max_ratio = std::max(max_ratio, std::ceil(dx / radius - kFloatSlack) / dg);
    }
  };

  if (g.num_vertices() <= 300) {
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
      DistArray d = bfs(g, u);
      for (Vertex v = 0; v < g.num_vertices(); ++v) check_pair(u, v, d.dist[v]);
    }
  }
  const PairSample sample = sample_pairs(g.num_vertices(), sample_pairs_count, seed);
  for (size_t i = 0; i < sample.sources.size(); ++i) {
    DistArray d = bfs(g, sample.sources[i]);
    for (Vertex v : sample.targets[i]) check_pair(sample.sources[i], v, d.dist[v]);
  }

  report.push_back({"stretch_lower", instance, "", "pairs_checked",
                    static_cast<double>(checked), true, violations == 0});
  report.push_back({"stretch_lower", instance, "", "violations",
                    static_cast<double>(violations), true, violations == 0});
  report.push_back({"stretch_lower", instance, "", "max_bound_to_dist_ratio", max_ratio,
                    false, std::nullopt});
  return report;
}

PropertyReport measure_upper_stretch(const GeometricGraph& g, double radius,
                                     const std::string& instance, uint64_t seed,
                                     uint32_t sample_pairs_count) {
  if (!(radius > 0.0)) throw InvalidArgumentError("radius must be positive");
  PropertyReport report;
  // Buckets of d_X/r: [1,2), [2,4), [4,8), [8,inf)
  constexpr int kBuckets = 4;
  double bucket_max[kBuckets] = {0, 0, 0, 0};
  uint64_t bucket_cnt[kBuckets] = {0, 0, 0, 0};
  std::vector<double> all_excess;

  const PairSample sample = sample_pairs(g.num_vertices(), sample_pairs_count, seed);
  for (size_t i = 0; i < sample.sources.size(); ++i) {
    const Vertex u = sample.sources[i];
    DistArray d = bfs(g, u);
    for (Vertex v : sample.targets[i]) {
      if (u == v || d.dist[v] >= kUnreachable) continue;
      const double dx = distance(g.space(), g.coord(u), g.coord(v));
      if (dx <= radius) continue;
      const double excess = d.dist[v] * radius / dx - 1.0;
      const double scale = dx / radius;
      const int bucket = scale < 2 ? 0 : scale < 4 ? 1 : scale < 8 ? 2 : 3;
      bucket_max[bucket] = std::max(bucket_max[bucket], excess);
      ++bucket_cnt[bucket];
      all_excess.push_back(excess);
    }
  }
  static const char* kBucketNames[kBuckets] = {"dx_r_1_2", "dx_r_2_4", "dx_r_4_8",
                                               "dx_r_8_up"};
  for (int b = 0; b < kBuckets; ++b) {
    if (bucket_cnt[b] == 0) continue;
    report.push_back({"stretch_upper", instance, kBucketNames[b], "max_excess",
                      bucket_max[b], false, std::nullopt});
  }
  if (!all_excess.empty()) {
    std::sort(all_excess.begin(), all_excess.end());
    const size_t p95 = (all_excess.size() * 95) / 100;
    report.push_back({"stretch_upper", instance, "", "p95_excess",
                      all_excess[std::min(p95, all_excess.size() - 1)], false,
                      std::nullopt});
    report.push_back({"stretch_upper", instance, "", "max_excess", all_excess.back(),
                      false, std::nullopt});
  }
  return report;
}

PropertyReport measure_local_partners(const GeometricGraph& g, const AllPairs& ap,
                                      double radius, std::span<const Dist> x_grid,
                                      const std::string& instance, uint64_t seed,
                                      uint32_t sample_vertices) {
  PropertyReport report;
  const Dist diam = ap.diameter();
  if (diam >= kUnreachable) throw DisconnectedError(0, 0);
  const double n = static_cast<double>(g.num_vertices());
  const double d_local = std::sqrt(n) * std::pow(radius, -7.0 / 3.0) + 1.0;

  SplitMix64 rng = SplitMix64::substream(seed, 0x10ca1);
  std::vector<Vertex> samples;
  for (uint32_t i = 0; i < sample_vertices; ++i)
    samples.push_back(static_cast<Vertex>(rng.next_below(g.num_vertices())));

  for (Dist x : x_grid) {
    uint32_t max_count = 0;
    Dist max_radius = 0;
    for (Vertex v : samples) {
      std::vector<Vertex> partners;
      for (Vertex w = 0; w < ap.n; ++w)
        if (ap.at(v, w) >= diam - x && ap.at(v, w) < kUnreachable) partners.push_back(w);
      if (partners.empty()) continue;
      const GrownCover cover = greedy_cover_grow(ap, partners);
      max_count = std::max(max_count, cover.count);
      max_radius = std::max(max_radius, cover.max_radius);
    }
    const std::string param = "x=" + std::to_string(x);
    report.push_back({"p1_local_partners", instance, param, "max_cover_count",
                      static_cast<double>(max_count), false, std::nullopt});
    report.push_back({"p1_local_partners", instance, param, "max_radius_norm",
                      max_radius / (x + d_local), false, std::nullopt});
  }
  return report;
}

PropertyReport measure_few_corners(const GeometricGraph& g, const AllPairs& ap,
                                   double radius, std::span<const Dist> x_grid,
                                   const std::string& instance) {
  PropertyReport report;
  const Dist diam = ap.diameter();
  if (diam >= kUnreachable) throw DisconnectedError(0, 0);
  const double n = static_cast<double>(g.num_vertices());
  const double d_corner = std::sqrt(n) * std::pow(radius, -7.0 / 3.0) + 1.0;

  for (Dist x : x_grid) {
    // Vertices owning at least one x-diametric partner.
    std::vector<Vertex> owners;
    for (Vertex v = 0; v < ap.n; ++v) {
      for (Vertex w = 0; w < ap.n; ++w) {
        if (ap.at(v, w) >= diam - x && ap.at(v, w) < kUnreachable) {
          owners.push_back(v);
          break;
        }
      }
    }
    const std::string param = "x=" + std::to_string(x);
    report.push_back({"p2_few_corners", instance, param, "owner_fraction",
                      owners.size() / n, false, std::nullopt});
    if (!owners.empty()) {
      const GrownCover cover = greedy_cover_grow(ap, owners);
      report.push_back({"p2_few_corners", instance, param, "max_cover_count",
                        static_cast<double>(cover.count), false, std::nullopt});
      report.push_back({"p2_few_corners", instance, param, "max_radius_norm",
                        cover.max_radius / (x + d_corner), false, std::nullopt});
    }
  }
  return report;
}

std::vector<Dist> block_diameters(const GeometricGraph& g, const RecursivePartition& p,
                                  uint64_t edge_budget) {
  // Cost accounting before running: sum over blocks of |B| * vol(B).
  uint64_t cost = 0;
  for (NodeId u = 0; u < p.num_nodes(); ++u) {
    uint64_t vol = 0;
    for (Vertex v : p.node(u).block) vol += g.degree(v);
    cost += vol * p.node(u).size();
  }
  if (cost > edge_budget)
    throw InvalidArgumentError("per-block all-pairs BFS would scan " + std::to_string(cost) +
                               " adjacency entries, over the budget of " +
                               std::to_string(edge_budget));

  std::vector<Dist> diams(p.num_nodes(), 0);
  BfsScratch scratch;
  scratch.reset(g.num_vertices());
  for (NodeId u = 0; u < p.num_nodes(); ++u) {
    const auto& block = p.node(u).block;
    scratch.clear_members();
    for (Vertex v : block) scratch.add_member(v);
    Dist diam = 0;
    for (Vertex v : block) {
      const Dist ecc = bfs_restricted(g, v, block, scratch);
      diam = std::max(diam, ecc);
      if (diam >= kUnreachable) break;
    }
    diams[u] = diam;
  }
  return diams;
}

PropertyReport check_size_dependent_diameters(const GeometricGraph& g,
                                              const RecursivePartition& p,
                                              std::span<const Dist> block_diams,
                                              double radius,
                                              const std::string& instance) {
  PropertyReport report;
  uint32_t disconnected = 0;
  for (NodeId u = 0; u < p.num_nodes(); ++u)
    if (block_diams[u] >= kUnreachable) ++disconnected;

  // Same-cell-level diameter ratios over finite blocks.
  int max_level = 0;
  for (NodeId u = 0; u < p.num_nodes(); ++u)
    max_level = std::max(max_level, p.node(u).level);
  double worst_level_ratio = 1.0;
  for (int level = 0; level <= max_level; ++level) {
    Dist lo = kUnreachable, hi = 0;
    for (NodeId u = 0; u < p.num_nodes(); ++u) {
      if (p.node(u).level != level) continue;
      const Dist d = block_diams[u];
      if (d >= kUnreachable) continue;
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    if (lo < kUnreachable && lo > 0)
      worst_level_ratio =
          std::max(worst_level_ratio, static_cast<double>(hi) / static_cast<double>(lo));
  }
  report.push_back({"p4_size_diameters", instance, "", "max_same_level_ratio",
                    worst_level_ratio, false, std::nullopt});

  // Scaling band diam * r / sqrt(|B|) over finite non-singleton blocks.
  double band_lo = 0.0, band_hi = 0.0;
  bool any = false;
  for (NodeId u = 0; u < p.num_nodes(); ++u) {
    const Dist d = block_diams[u];
    if (d >= kUnreachable || d == 0) continue;
    const double scaled = d * radius / std::sqrt(static_cast<double>(p.node(u).size()));
    if (!any) {
      band_lo = band_hi = scaled;
      any = true;
    } else {
      band_lo = std::min(band_lo, scaled);
      band_hi = std::max(band_hi, scaled);
    }
  }
  if (any) {
    report.push_back(
        {"p4_size_diameters", instance, "", "scaling_band_min", band_lo, false, std::nullopt});
    report.push_back(
        {"p4_size_diameters", instance, "", "scaling_band_max", band_hi, false, std::nullopt});
  }
  report.push_back({"p4_size_diameters", instance, "", "disconnected_blocks",
                    static_cast<double>(disconnected), false, std::nullopt});

  // The root block is the whole graph.
  const Dist root_diam = block_diams[p.root()];
  const Dist g_diam = root_diam;  // by definition of the root block
  (void)g;
  report.push_back({"p4_size_diameters", instance, "", "root_diameter",
                    root_diam >= kUnreachable ? -1.0 : static_cast<double>(g_diam), false,
                    std::nullopt});
  return report;
}

PropertyReport measure_fragmentation(const GeometricGraph& g, const RecursivePartition& p,
                                     std::span<const Dist> block_diams,
                                     std::span<const Dist> radii,
                                     const std::string& instance, uint64_t seed,
                                     uint32_t sample_centers) {
  PropertyReport report;
  SplitMix64 rng = SplitMix64::substream(seed, 0xf4a6);
  std::vector<Vertex> centers;
  for (uint32_t i = 0; i < sample_centers; ++i)
    centers.push_back(static_cast<Vertex>(rng.next_below(g.num_vertices())));

  for (Dist radius : radii) {
    uint32_t max_count = 0;
    for (Vertex c : centers) {
      DistArray d = bfs(g, c);
      uint32_t count = 0;
      for (NodeId u = 0; u < p.num_nodes(); ++u) {
        const Dist bd = block_diams[u];
        if (bd >= kUnreachable || 2 * bd < radius || bd > 2 * radius) continue;
        bool intersects = false;
        for (Vertex v : p.node(u).block) {
          if (d.dist[v] <= radius) {
            intersects = true;
            break;
          }
        }
        if (intersects) ++count;
      }
      max_count = std::max(max_count, count);
    }
    report.push_back({"p5_fragmentation", instance, "radius=" + std::to_string(radius),
                      "max_block_count", static_cast<double>(max_count), false,
                      std::nullopt});
  }
  return report;
}

PropertyReport check_block_concentration(const GeometricGraph& g,
                                         const RecursivePartition& p, double radius,
                                         const std::string& instance) {
  PropertyReport report;
  double size_lo = 0.0, size_hi = 0.0;
  bool any = false;
  for (NodeId u = 0; u < p.num_nodes(); ++u) {
    const double side = p.node(u).cell.side();
    const double ratio = p.node(u).size() / (side * side);
    if (!any) {
      size_lo = size_hi = ratio;
      any = true;
    } else {
      size_lo = std::min(size_lo, ratio);
      size_hi = std::max(size_hi, ratio);
    }
  }
  (void)g;
  if (any) {
    report.push_back({"concentration", instance, "", "block_density_min", size_lo, false,
                      std::nullopt});
    report.push_back({"concentration", instance, "", "block_density_max", size_hi, false,
                      std::nullopt});
  }

  // Separator strips: children's boundaries against the 4(s-r)r strip area,
  // s the child cell side.  Only meaningful when s > r.
  double strip_hi = 0.0;
  bool any_strip = false;
  for (NodeId u = 0; u < p.num_nodes(); ++u) {
    const auto& node = p.node(u);
    if (node.is_leaf()) continue;
    for (NodeId c : node.children) {
      const double s = p.node(c).cell.side();
      if (s <= radius) continue;
      const double strip = 4.0 * (s - radius) * radius;
      if (strip <= 0.0) continue;
      strip_hi = std::max(strip_hi, p.node(c).boundary.size() / strip);
      any_strip = true;
    }
  }
  if (any_strip)
    report.push_back({"concentration", instance, "", "boundary_strip_max", strip_hi,
                      false, std::nullopt});
  return report;
}

PropertyReport check_partition_shape(const RecursivePartition& p, double alpha,
                                     double beta, const std::string& instance) {
  PropertyReport report;
  const BalanceReport balance = check_balance(p);
  const SeparatorReport separators = check_separators(p, alpha, beta);
  report.push_back({"p3_separators", instance, "", "balance_excess_max",
                    balance.max_excess, false, std::nullopt});
  report.push_back({"p3_separators", instance,
                    "alpha=" + std::to_string(alpha) + ",beta=" + std::to_string(beta),
                    "separator_ratio_max", separators.max_ratio, false, std::nullopt});
  return report;
}

}  // namespace geodiam
