#include "doctest.h"

#include "errors.hpp"
#include "graphgen.hpp"
#include "ifub.hpp"
#include "test_helpers.hpp"

using namespace geodiam;
using namespace geodiam::test;

TEST_CASE("ifub on p5 with a fixed center") {
  GeometricGraph g = path_graph(5);
  const auto result = ifub(g, FixedCenter{2});
  CHECK(result.diameter == 4);
  // vertex 0 (distance 2, lowest id in the last layer) is explored, lifting
  // the bound to 4; the next candidate fails 2*2 <= 4, so exactly one fringe
  // eccentricity is computed
  CHECK(result.trace.fringe_bfs == 1);
  CHECK(result.trace.steps.front().v == 0);
  CHECK(result.trace.steps.front().ecc == 4);
}

TEST_CASE("ifub on a star explores one fringe vertex") {
  GeometricGraph g = star_graph(3);
  const auto result = ifub(g, FixedCenter{0});
  CHECK(result.diameter == 2);
  CHECK(result.trace.fringe_bfs == 1);
}

TEST_CASE("ifub with two-sweep centers matches the naive diameter") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    RggParams params;
    params.n = 150 + 20 * static_cast<uint32_t>(seed);
    params.rho = 0.32;
    params.kind = seed % 2 ? SpaceKind::Torus : SpaceKind::Square;
    params.seed = 2000 + seed;
    GeometricGraph g = sample_rgg(params);
    if (!is_connected(g)) continue;
    const Dist expected = naive_diameter(g);
    const auto sweep = ifub(g, TwoSweepCenter{0});
    CHECK(sweep.diameter == expected);
    const auto fixed = ifub(g, FixedCenter{static_cast<Vertex>(seed % g.num_vertices())});
    CHECK(fixed.diameter == expected);
    // bookkeeping: fringe runs + ordering + both sweeps
    CHECK(sweep.trace.total_bfs == sweep.trace.fringe_bfs + 3);
    CHECK(fixed.trace.total_bfs == fixed.trace.fringe_bfs + 1);
  }
}

TEST_CASE("ifub on fixtures") {
  CHECK(ifub(grid3x3(SpaceKind::Square), TwoSweepCenter{0}).diameter == 4);
  CHECK(ifub(grid3x3(SpaceKind::Torus), TwoSweepCenter{0}).diameter == 2);
  CHECK(ifub(cycle_graph(8), FixedCenter{0}).diameter == 4);
}

TEST_CASE("ifub rejects disconnected input") {
  GeometricGraph g({SpaceKind::Square, 8.0}, {{1, 1}, {5, 5}}, {});
  CHECK_THROWS_AS(ifub(g, FixedCenter{0}), DisconnectedError);
}

TEST_CASE("explored-set inclusions hold on every run") {
  // p5 with center 2 and diameter 4: nothing sits at distance >= 3, and the
  // explored set {0} sits at distance 2 = ceil(4/2)
  {
    GeometricGraph g = path_graph(5);
    const auto result = ifub(g, FixedCenter{2});
    const auto report = explored_bounds_check(result.trace, result.diameter);
    CHECK(report.lower_inclusion_holds);
    CHECK(report.upper_inclusion_holds);
    CHECK(report.vertices_above_half == 0);
    CHECK(report.explored_count == 1);
  }
  // cycle C8: every second vertex is far from any center
  {
    GeometricGraph g = cycle_graph(8);
    const auto result = ifub(g, FixedCenter{0});
    const auto report = explored_bounds_check(result.trace, result.diameter);
    CHECK(report.lower_inclusion_holds);
    CHECK(report.upper_inclusion_holds);
    CHECK(report.vertices_at_half >= 4);  // half the cycle is fringe-deep
  }
  for (uint64_t seed = 0; seed < 12; ++seed) {
    RggParams params;
    params.n = 140 + 25 * static_cast<uint32_t>(seed);
    params.rho = 0.33;
    params.kind = seed % 2 ? SpaceKind::Square : SpaceKind::Torus;
    params.seed = 2100 + seed;
    GeometricGraph g = sample_rgg(params);
    if (!is_connected(g)) continue;
    for (const CenterStrategy strategy :
         {CenterStrategy{TwoSweepCenter{0}},
          CenterStrategy{FixedCenter{static_cast<Vertex>(seed)}}}) {
      const auto result = ifub(g, strategy);
      const auto report = explored_bounds_check(result.trace, result.diameter);
      CHECK(report.lower_inclusion_holds);
      CHECK(report.upper_inclusion_holds);
      CHECK(report.explored_count >= report.vertices_above_half);
      CHECK(report.explored_count <= report.vertices_at_half);
    }
  }
}

TEST_CASE("lower bounds along the trace never decrease") {
  GeometricGraph g = grid3x3(SpaceKind::Square);
  const auto result = ifub(g, FixedCenter{4});
  Dist prev = 0;
  for (const auto& step : result.trace.steps) {
    CHECK(step.lower_bound >= prev);
    prev = step.lower_bound;
  }
}

TEST_CASE("single vertex graph") {
  GeometricGraph g({SpaceKind::Square, 4.0}, {{1, 1}}, {});
  CHECK(ifub(g, FixedCenter{0}).diameter == 0);
}
