#include "doctest.h"

#include <algorithm>
#include <cstdlib>

#include "errors.hpp"
#include "graphgen.hpp"
#include "rng.hpp"
#include "test_helpers.hpp"

using namespace geodiam;
using namespace geodiam::test;

TEST_CASE("bfs on a path") {
  GeometricGraph g = path_graph(5);
  DistArray d = bfs(g, 0);
  CHECK(d.dist == std::vector<Dist>{0, 1, 2, 3, 4});
}

TEST_CASE("bfs restricted to a subset") {
  GeometricGraph g = path_graph(5);
  BfsScratch scratch;
  scratch.reset(g.num_vertices());
  std::vector<Vertex> members{0, 1, 2};
  scratch.clear_members();
  for (Vertex v : members) scratch.add_member(v);
  const Dist ecc = bfs_restricted(g, 0, members, scratch);
  CHECK(scratch.dist[0] == 0);
  CHECK(scratch.dist[1] == 1);
  CHECK(scratch.dist[2] == 2);
  CHECK(ecc == 2);
}

TEST_CASE("bfs on a disconnected pair") {
  GeometricGraph g({SpaceKind::Square, 8.0}, {{1, 1}, {5, 5}}, {});
  DistArray d = bfs(g, 0);
  CHECK(d.dist[0] == 0);
  CHECK(d.dist[1] == kUnreachable);
  CHECK_FALSE(is_connected(g));
}

TEST_CASE("bfs source out of range") {
  GeometricGraph g = path_graph(3);
  CHECK_THROWS_AS(bfs(g, 7), InvalidArgumentError);
}

TEST_CASE("distances are edge-lipschitz") {
  RggParams params;
  params.n = 300;
  params.rho = 0.3;
  params.kind = SpaceKind::Torus;
  params.seed = 99;
  GeometricGraph g = sample_rgg(params);
  for (Vertex s = 0; s < 10; ++s) {
    DistArray d = bfs(g, s);
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
      if (d.dist[u] >= kUnreachable) continue;
      for (Vertex w : g.neighbors(u)) {
        if (d.dist[w] >= kUnreachable) continue;
        CHECK(std::abs(d.dist[u] - d.dist[w]) <= 1);
      }
    }
  }
}

TEST_CASE("naive diameter on fixtures") {
  CHECK(naive_diameter(path_graph(5)) == 4);
  CHECK(naive_diameter(grid3x3(SpaceKind::Square)) == 4);
  CHECK(naive_diameter(grid3x3(SpaceKind::Torus)) == 2);
}

TEST_CASE("naive diameter rejects disconnected graphs with representatives") {
  GeometricGraph g({SpaceKind::Square, 8.0}, {{1, 1}, {5, 5}}, {});
  try {
    naive_diameter(g);
    FAIL("expected DisconnectedError");
  } catch (const DisconnectedError& e) {
    CHECK(e.u != e.v);
    CHECK(e.u < 2);
    CHECK(e.v < 2);
  }
}

TEST_CASE("naive diameter equals maxdist of V with V") {
  for (uint32_t seed : {1u, 2u, 3u}) {
    RggParams params;
    params.n = 120;
    params.rho = 0.35;
    params.kind = SpaceKind::Square;
    params.seed = seed;
    GeometricGraph g = sample_rgg(params);
    if (!is_connected(g)) continue;
    std::vector<Vertex> all(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) all[v] = v;
    CHECK(naive_diameter(g) == maxdist_bruteforce(g, all, all));
  }
}

TEST_CASE("eccentricity lower-bounds the diameter") {
  GeometricGraph g = grid3x3(SpaceKind::Square);
  const Dist diam = naive_diameter(g);
  for (Vertex v = 0; v < g.num_vertices(); ++v) CHECK(eccentricity(g, v) <= diam);
}

TEST_CASE("two_sweep on a path finds the endpoints") {
  GeometricGraph g = path_graph(5);
  const auto r = two_sweep(g, 2);
  CHECK(r.w == 0);
  CHECK(r.w2 == 4);
  CHECK(r.center == 2);
  CHECK(r.dist_w_w2 == 4);
}

TEST_CASE("two_sweep on a star centers at the hub") {
  GeometricGraph g = star_graph(3);
  const auto r = two_sweep(g, 0);
  CHECK(r.w == 1);
  CHECK(r.w2 == 2);
  CHECK(r.center == 0);
  CHECK(r.dist_w_w2 == 2);
}

TEST_CASE("two_sweep on a cycle") {
  GeometricGraph g = cycle_graph(8);
  const auto r = two_sweep(g, 0);
  CHECK(r.dist_w_w2 == 4);
}

TEST_CASE("two_sweep is exact on trees") {
  // classical property: the double sweep finds the true diameter of a tree
  SplitMix64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const uint32_t n = 2 + static_cast<uint32_t>(rng.next_below(60));
    std::vector<Point> coords(n);
    for (uint32_t i = 0; i < n; ++i)
      coords[i] = {rng.next_double() * 100, rng.next_double() * 100};
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (uint32_t i = 1; i < n; ++i)
      edges.emplace_back(static_cast<Vertex>(rng.next_below(i)), i);
    GeometricGraph g({SpaceKind::Square, 100.0}, std::move(coords), edges);
    CHECK(two_sweep(g, 0).dist_w_w2 == naive_diameter(g));
  }
}

TEST_CASE("two_sweep bound never exceeds the diameter") {
  RggParams params;
  params.n = 200;
  params.rho = 0.3;
  params.kind = SpaceKind::Square;
  params.seed = 5;
  GeometricGraph g = sample_rgg(params);
  if (is_connected(g)) {
    const Dist diam = naive_diameter(g);
    for (Vertex s = 0; s < 20; ++s) CHECK(two_sweep(g, s).dist_w_w2 <= diam);
  }
}

TEST_CASE("two_sweep rejects disconnected input") {
  GeometricGraph g({SpaceKind::Square, 8.0}, {{1, 1}, {5, 5}}, {});
  CHECK_THROWS_AS(two_sweep(g, 0), DisconnectedError);
}

TEST_CASE("maxdist_bruteforce basics") {
  GeometricGraph g = path_graph(5);
  std::vector<Vertex> a{0}, b{4};
  CHECK(maxdist_bruteforce(g, a, b) == 4);
  std::vector<Vertex> all{0, 1, 2, 3, 4};
  CHECK(maxdist_bruteforce(g, all, all) == 4);
  std::vector<Vertex> c{0, 1}, d{1, 2};
  CHECK(maxdist_bruteforce(g, c, d) == 2);
}

TEST_CASE("max_degree and connectivity on fixtures") {
  CHECK(max_degree(path_graph(5)) == 2);
  CHECK(is_connected(path_graph(5)));
  CHECK(max_degree(star_graph(3)) == 3);
  GeometricGraph isolated({SpaceKind::Square, 8.0}, {{1, 1}, {5, 5}}, {});
  CHECK_FALSE(is_connected(isolated));
}

TEST_CASE("graph construction validates input") {
  CHECK_THROWS_AS(GeometricGraph({SpaceKind::Square, 4.0}, {{1, 1}, {9, 1}}, {}),
                  InvalidArgumentError);  // coordinate outside
  CHECK_THROWS_AS(GeometricGraph({SpaceKind::Square, 4.0}, {{1, 1}, {2, 2}}, {{0, 0}}),
                  InvalidArgumentError);  // self loop
  CHECK_THROWS_AS(
      GeometricGraph({SpaceKind::Square, 4.0}, {{1, 1}, {2, 2}}, {{0, 1}, {1, 0}}),
      InvalidArgumentError);  // duplicate edge
  CHECK_THROWS_AS(GeometricGraph({SpaceKind::Square, 4.0}, {{1, 1}, {2, 2}}, {{0, 5}}),
                  InvalidArgumentError);  // endpoint out of range
}
