#include "doctest.h"

#include <algorithm>
#include <queue>

#include "diameter.hpp"
#include "errors.hpp"
#include "graphgen.hpp"
#include "rng.hpp"
#include "test_helpers.hpp"

using namespace geodiam;
using namespace geodiam::test;

namespace {

struct P5Fixture {
  GeometricGraph g = path_graph(5);
  RecursivePartition p = RecursivePartition::from_leaf_blocks(g, {{0, 1, 2}, {3, 4}});
  DistanceOracle oracle{g, p};
  NodeId block_a = kNoNode, block_b = kNoNode;

  P5Fixture() {
    for (NodeId u : p.node(p.root()).children) {
      if (p.node(u).block.front() == 0)
        block_a = u;
      else
        block_b = u;
    }
  }
};

Dist brute_block_diameter(const GeometricGraph& g, const std::vector<Vertex>& block) {
  BfsScratch scratch;
  scratch.reset(g.num_vertices());
  scratch.clear_members();
  for (Vertex v : block) scratch.add_member(v);
  Dist diam = 0;
  for (Vertex v : block) diam = std::max(diam, bfs_restricted(g, v, block, scratch));
  return diam;
}

}  // namespace

TEST_CASE("upper bound on the p5 fixture") {
  P5Fixture fx;
  BfsScratch scratch;
  scratch.reset(5);
  // u(A,B) = 2*2 + 2*1 + d(2,3) = 7; maxdist(A,B) = 4; sandwich holds
  const Dist u = upper_bound(fx.oracle, fx.block_a, fx.block_b, scratch);
  CHECK(u == 7);
  const Dist maxdist = maxdist_direct(fx.oracle, fx.block_a, fx.block_b);
  CHECK(maxdist == 4);
  CHECK(u >= maxdist);
  CHECK(u <= maxdist + 2 * 2 + 2 * 1);

  // A = B = root: u = 2*ecc(rep) = 8 between diam and 2*diam
  const Dist u_root = upper_bound(fx.oracle, fx.p.root(), fx.p.root(), scratch);
  CHECK(u_root == 8);
}

TEST_CASE("upper bound with singleton blocks is exact") {
  GeometricGraph g = path_graph(5);
  RecursivePartition p =
      RecursivePartition::from_leaf_blocks(g, {{0}, {1}, {2}, {3}, {4}});
  DistanceOracle oracle(g, p);
  NodeId first = kNoNode, last = kNoNode;
  for (NodeId u : p.node(p.root()).children) {
    if (p.node(u).block.front() == 0) first = u;
    if (p.node(u).block.front() == 4) last = u;
  }
  BfsScratch scratch;
  scratch.reset(5);
  CHECK(upper_bound(oracle, first, last, scratch) == 4);
}

TEST_CASE("u-sandwich on random instances") {
  for (uint64_t seed = 0; seed < 6; ++seed) {
    RggParams params;
    params.n = 150;
    params.rho = 0.33;
    params.kind = seed % 2 ? SpaceKind::Torus : SpaceKind::Square;
    params.seed = 600 + seed;
    GeometricGraph g = sample_rgg(params);
    RecursivePartition p = RecursivePartition::induce(g, 2);
    DistanceOracle oracle(g, p);
    BfsScratch scratch;
    scratch.reset(g.num_vertices());
    const auto& nodes = p.nodes();
    for (NodeId a = 0; a < nodes.size(); ++a) {
      for (NodeId b = a; b < nodes.size(); ++b) {
        // restrict to antichain pairs (disjoint or equal blocks)
        if (a != b) {
          const auto& ba = nodes[a].block;
          const auto& bb = nodes[b].block;
          std::vector<Vertex> inter;
          std::set_intersection(ba.begin(), ba.end(), bb.begin(), bb.end(),
                                std::back_inserter(inter));
          if (!inter.empty()) continue;
        }
        const Dist u = upper_bound(oracle, a, b, scratch);
        const Dist maxdist = maxdist_bruteforce(g, nodes[a].block, nodes[b].block);
        const Dist da = brute_block_diameter(g, nodes[a].block);
        const Dist db = brute_block_diameter(g, nodes[b].block);
        if (maxdist >= kUnreachable || da >= kUnreachable || db >= kUnreachable) {
          CHECK(u == kUnreachable);
          continue;
        }
        CHECK(u >= maxdist);
        CHECK(u <= maxdist + 2 * da + 2 * db);
      }
    }
  }
}

TEST_CASE("maxdist_direct matches brute force on random block pairs") {
  SplitMix64 rng(2024);
  for (uint64_t seed = 0; seed < 5; ++seed) {
    RggParams params;
    params.n = 300;
    params.rho = 0.3;
    params.kind = seed % 2 ? SpaceKind::Square : SpaceKind::Torus;
    params.seed = 700 + seed;
    GeometricGraph g = sample_rgg(params);
    RecursivePartition p = RecursivePartition::induce(g, 2);
    DistanceOracle oracle(g, p);
    std::vector<NodeId> leaves;
    for (NodeId u = 0; u < p.num_nodes(); ++u)
      if (p.node(u).is_leaf()) leaves.push_back(u);
    REQUIRE(leaves.size() >= 2);
    for (int trial = 0; trial < 40; ++trial) {
      const NodeId a = leaves[rng.next_below(leaves.size())];
      NodeId b = leaves[rng.next_below(leaves.size())];
      if (a == b) continue;
      CHECK(maxdist_direct(oracle, a, b) ==
            maxdist_bruteforce(g, p.node(a).block, p.node(b).block));
    }
  }
}

TEST_CASE("maxdist_direct rejects equal blocks") {
  P5Fixture fx;
  CHECK_THROWS_AS(maxdist_direct(fx.oracle, fx.block_a, fx.block_a),
                  InvalidArgumentError);
}

TEST_CASE("overlay on the p5 fixture") {
  GeometricGraph g = path_graph(5);
  RecursivePartition p = RecursivePartition::from_leaf_blocks(g, {{0, 1, 2}, {3, 4}});
  DistanceOracle oracle(g, p);
  NodeId a = kNoNode, b = kNoNode;
  for (NodeId u : p.node(p.root()).children) {
    if (p.node(u).block.front() == 0)
      a = u;
    else
      b = u;
  }
  BfsScratch scratch;
  scratch.reset(5);
  OverlayGraph h = build_overlay(oracle, a, b, scratch);
  CHECK(h.size() == 5);
  CHECK(h.has_weighted_edges);  // the (2,3) weight-1 edge
  CHECK(maxdist_overlay(h, p.node(a).block, p.node(b).block) == 4);
}

TEST_CASE("overlay of the root with itself is the graph") {
  GeometricGraph g = grid3x3(SpaceKind::Torus);
  RecursivePartition p = RecursivePartition::induce(g, 0);
  DistanceOracle oracle(g, p);
  BfsScratch scratch;
  scratch.reset(g.num_vertices());
  OverlayGraph h = build_overlay(oracle, p.root(), p.root(), scratch);
  CHECK(h.size() == g.num_vertices());
  CHECK_FALSE(h.has_weighted_edges);
  CHECK(maxdist_overlay(h, p.node(p.root()).block, p.node(p.root()).block) == 2);
}

TEST_CASE("overlay distances equal graph distances") {
  SplitMix64 rng(31337);
  for (uint64_t seed = 0; seed < 6; ++seed) {
    RggParams params;
    params.n = 160;
    params.rho = 0.33;
    params.kind = seed % 2 ? SpaceKind::Torus : SpaceKind::Square;
    params.seed = 800 + seed;
    GeometricGraph g = sample_rgg(params);
    RecursivePartition p = RecursivePartition::induce(g, 2);
    DistanceOracle oracle(g, p);
    std::vector<NodeId> all_nodes(p.num_nodes());
    for (NodeId u = 0; u < p.num_nodes(); ++u) all_nodes[u] = u;
    BfsScratch scratch;
    scratch.reset(g.num_vertices());
    for (int trial = 0; trial < 8; ++trial) {
      const NodeId a = all_nodes[rng.next_below(all_nodes.size())];
      NodeId b = all_nodes[rng.next_below(all_nodes.size())];
      // blocks of an overlay pair must not partially overlap
      if (a != b) {
        const auto& ba = p.node(a).block;
        const auto& bb = p.node(b).block;
        std::vector<Vertex> inter;
        std::set_intersection(ba.begin(), ba.end(), bb.begin(), bb.end(),
                              std::back_inserter(inter));
        if (!inter.empty()) continue;
      }
      OverlayGraph h = build_overlay(oracle, a, b, scratch);
      // test-local Dijkstra over the overlay, checked against BFS in G
      for (uint32_t s = 0; s < h.size(); ++s) {
        DistArray truth = bfs(g, h.vertices[s]);
        std::vector<Dist> hd(h.size(), kUnreachable);
        using Item = std::pair<Dist, uint32_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        hd[s] = 0;
        pq.emplace(0, s);
        while (!pq.empty()) {
          const auto [du, u] = pq.top();
          pq.pop();
          if (du != hd[u]) continue;
          for (uint32_t e = h.offsets[u]; e < h.offsets[u + 1]; ++e) {
            const Dist dw = sat_add(du, h.weights[e]);
            if (dw < hd[h.targets[e]]) {
              hd[h.targets[e]] = dw;
              pq.emplace(dw, h.targets[e]);
            }
          }
        }
        for (uint32_t t = 0; t < h.size(); ++t) CHECK(hd[t] == truth.dist[h.vertices[t]]);
      }
    }
  }
}

TEST_CASE("cost model prefers direct for singletons and fat boundaries") {
  GeometricGraph g = path_graph(5);
  RecursivePartition p =
      RecursivePartition::from_leaf_blocks(g, {{0}, {1}, {2}, {3}, {4}});
  DistanceOracle oracle(g, p);
  NodeId first = kNoNode, last = kNoNode;
  for (NodeId u : p.node(p.root()).children) {
    if (p.node(u).block.front() == 0) first = u;
    if (p.node(u).block.front() == 4) last = u;
  }
  const CostEstimate est = cost_model(oracle, first, last);
  CHECK(est.engine == MaxdistEngine::Direct);
  // equal pair: always the overlay engine
  CHECK(cost_model(oracle, first, first).engine == MaxdistEngine::Overlay);
}

TEST_CASE("decide on p5") {
  P5Fixture fx;
  DecideOptions options;
  options.k = 3;
  options.stop = StopRule::BlockSize;

  SUBCASE("ell at the diameter") {
    DecideTrace trace;
    const auto verdict = decide(fx.oracle, 4, options, &trace);
    CHECK(verdict.outcome == Outcome::EqualOrGreater);
    CHECK(verdict.diameter == 4);
    // pair (A,B) survives with u = 7 >= 4
    CHECK(std::find(trace.final_pairs.begin(), trace.final_pairs.end(),
                    NodePair{std::min(fx.block_a, fx.block_b),
                             std::max(fx.block_a, fx.block_b)}) !=
          trace.final_pairs.end());
  }
  SUBCASE("ell above the diameter") {
    const auto verdict = decide(fx.oracle, 5, options, nullptr);
    CHECK(verdict.outcome == Outcome::Less);
  }
  SUBCASE("ell above twice the root eccentricity prunes immediately") {
    DecideTrace trace;
    const auto verdict = decide(fx.oracle, 9, options, &trace);
    CHECK(verdict.outcome == Outcome::Less);
    CHECK(trace.pairs_after_step.front() == 0);
    CHECK(trace.final_pairs.empty());
  }
  SUBCASE("tiny budget times out") {
    DecideOptions tight = options;
    tight.budget = 1;
    const auto verdict = decide(fx.oracle, 1, tight, nullptr);
    CHECK(verdict.outcome == Outcome::Timeout);
  }
  SUBCASE("k below the leaf size is rejected") {
    DecideOptions bad = options;
    bad.k = 2;
    CHECK_THROWS_AS(decide(fx.oracle, 4, bad, nullptr), NeedSmallerLeavesError);
  }
}

TEST_CASE("decide three-way contract on random instances") {
  for (uint64_t seed = 0; seed < 8; ++seed) {
    RggParams params;
    params.n = 180;
    params.rho = 0.33;
    params.kind = seed % 2 ? SpaceKind::Torus : SpaceKind::Square;
    params.seed = 900 + seed;
    GeometricGraph g = sample_rgg(params);
    if (!is_connected(g)) continue;
    const Dist diam = naive_diameter(g);
    RecursivePartition p = RecursivePartition::induce(g, 2);
    DistanceOracle oracle(g, p);
    DecideOptions options;
    options.k = std::max(1u, p.max_leaf_size());
    options.stop = StopRule::BlockSize;

    const auto at_diam = decide(oracle, diam, options, nullptr);
    CHECK(at_diam.outcome == Outcome::EqualOrGreater);
    CHECK(at_diam.diameter == diam);

    const auto above = decide(oracle, diam + 1, options, nullptr);
    CHECK(above.outcome == Outcome::Less);

    const auto at_one = decide(oracle, 1, options, nullptr);
    CHECK(at_one.outcome == Outcome::EqualOrGreater);
    CHECK(at_one.diameter == diam);
  }
}

TEST_CASE("pruned pairs all lie below the guess") {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    RggParams params;
    params.n = 150;
    params.rho = 0.33;
    params.kind = seed % 2 ? SpaceKind::Square : SpaceKind::Torus;
    params.seed = 1000 + seed;
    GeometricGraph g = sample_rgg(params);
    if (!is_connected(g)) continue;
    const Dist diam = naive_diameter(g);
    RecursivePartition p = RecursivePartition::induce(g, 2);
    DistanceOracle oracle(g, p);
    DecideOptions options;
    options.k = std::max(1u, p.max_leaf_size());
    options.stop = StopRule::BlockSize;
    options.record_pruned = true;
    for (Dist ell : {diam, static_cast<Dist>(diam - 1)}) {
      if (ell < 1) continue;
      DecideTrace trace;
      const auto verdict = decide(oracle, ell, options, &trace);
      REQUIRE(verdict.outcome == Outcome::EqualOrGreater);
      for (const NodePair& pruned : trace.pruned) {
        CHECK(maxdist_bruteforce(g, p.node(pruned.a).block, p.node(pruned.b).block) <
              ell);
      }
    }
  }
}

TEST_CASE("compute_diameter on fixtures") {
  {
    P5Fixture fx;
    CHECK(compute_diameter(fx.oracle).diameter == 4);
  }
  {
    GeometricGraph g = grid3x3(SpaceKind::Torus);
    RecursivePartition p = RecursivePartition::induce(g, 1);
    DistanceOracle oracle(g, p);
    CHECK(compute_diameter(oracle).diameter == 2);
  }
  {
    GeometricGraph g = grid3x3(SpaceKind::Square);
    RecursivePartition p = RecursivePartition::induce(g, 1);
    DistanceOracle oracle(g, p);
    CHECK(compute_diameter(oracle).diameter == 4);
  }
}

TEST_CASE("compute_diameter rejects disconnected graphs") {
  GeometricGraph g({SpaceKind::Square, 8.0}, {{1, 1}, {5, 5}}, {});
  RecursivePartition p = RecursivePartition::induce(g, 0);
  DistanceOracle oracle(g, p);
  CHECK_THROWS_AS(compute_diameter(oracle), DisconnectedError);
}

TEST_CASE("compute_diameter matches the naive oracle across ensembles") {
  for (uint64_t seed = 0; seed < 12; ++seed) {
    RggParams params;
    params.n = 120 + 30 * static_cast<uint32_t>(seed);
    params.rho = seed % 3 == 0 ? 0.25 : 0.35;
    params.kind = seed % 2 ? SpaceKind::Torus : SpaceKind::Square;
    params.seed = 1100 + seed;
    GeometricGraph g = sample_rgg(params);
    if (!is_connected(g)) continue;
    const Dist expected = naive_diameter(g);
    for (int level : {0, 1, 2}) {
      RecursivePartition p = RecursivePartition::induce(g, level);
      DistanceOracle oracle(g, p);
      const auto result = compute_diameter(oracle);
      CHECK(result.diameter == expected);
    }
  }
}

TEST_CASE("engine choice is never far off the alternative") {
  // regression for the cost model: the chosen engine's measured work must be
  // within 2x of the other engine's on sampled pairs
  SplitMix64 rng(5150);
  uint32_t compared = 0;
  for (uint64_t seed = 0; seed < 4; ++seed) {
    RggParams params;
    params.n = 260;
    params.rho = 0.3;
    params.kind = seed % 2 ? SpaceKind::Square : SpaceKind::Torus;
    params.seed = 1300 + seed;
    GeometricGraph g = sample_rgg(params);
    RecursivePartition p = RecursivePartition::induce(g, 2);
    DistanceOracle oracle(g, p);
    std::vector<NodeId> leaves;
    for (NodeId u = 0; u < p.num_nodes(); ++u)
      if (p.node(u).is_leaf()) leaves.push_back(u);
    BfsScratch scratch;
    scratch.reset(g.num_vertices());
    for (int trial = 0; trial < 25; ++trial) {
      const NodeId a = leaves[rng.next_below(leaves.size())];
      const NodeId b = leaves[rng.next_below(leaves.size())];
      if (a == b) continue;
      WorkTally direct_tally, overlay_tally;
      maxdist_direct(oracle, a, b, &direct_tally);
      OverlayGraph h = build_overlay(oracle, a, b, scratch, &overlay_tally);
      maxdist_overlay(h, p.node(a).block, p.node(b).block, &overlay_tally);
      const CostEstimate est = cost_model(oracle, a, b);
      const uint64_t chosen = est.engine == MaxdistEngine::Direct
                                  ? direct_tally.total()
                                  : overlay_tally.total();
      const uint64_t other = est.engine == MaxdistEngine::Direct
                                 ? overlay_tally.total()
                                 : direct_tally.total();
      CHECK(chosen <= 2 * other);
      ++compared;
    }
  }
  CHECK(compared > 50);
}

TEST_CASE("work counters are deterministic") {
  RggParams params;
  params.n = 200;
  params.rho = 0.3;
  params.kind = SpaceKind::Square;
  params.seed = 1400;
  GeometricGraph g = sample_rgg(params);
  RecursivePartition p = RecursivePartition::induce(g, 2);
  DistanceOracle oracle(g, p);
  const auto a = compute_diameter(oracle);
  const auto b = compute_diameter(oracle);
  CHECK(a.diameter == b.diameter);
  CHECK(a.search_work == b.search_work);
  CHECK(a.decide_calls == b.decide_calls);
  CHECK(a.chosen_k == b.chosen_k);
}
