#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "errors.hpp"
#include "graphgen.hpp"
#include "propcheck.hpp"

using namespace geodiam;

namespace {

// Brute-force edge set under the connection rule.
std::vector<std::pair<Vertex, Vertex>> brute_edges(const GroundSpace& space,
                                                   const std::vector<Point>& pts,
                                                   double r) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < pts.size(); ++u)
    for (Vertex v = u + 1; v < pts.size(); ++v)
      if (distance(space, pts[u], pts[v]) <= r) edges.emplace_back(u, v);
  return edges;
}

std::vector<std::pair<Vertex, Vertex>> edge_list(const GeometricGraph& g) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < g.num_vertices(); ++u)
    for (Vertex v : g.neighbors(u))
      if (u < v) edges.emplace_back(u, v);
  return edges;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/geodiam_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("single vertex graph") {
  RggParams params;
  params.n = 1;
  params.radius = 1.0;
  params.seed = 3;
  GeometricGraph g = sample_rgg(params);
  CHECK(g.num_vertices() == 1);
  CHECK(g.num_edges() == 0);
}

TEST_CASE("explicit point list obeys the threshold rule") {
  GeometricGraph g = build_geometric_graph({SpaceKind::Square, 10.0},
                                           {{0, 0}, {0, 1}, {0, 2.5}}, 1.0);
  CHECK(g.num_edges() == 1);
  CHECK(g.neighbors(0).size() == 1);
  CHECK(g.neighbors(0)[0] == 1);
  CHECK(g.neighbors(2).empty());
}

TEST_CASE("parameter validation") {
  RggParams params;
  params.n = 100;
  params.rho = 0.6;
  CHECK_THROWS_AS(sample_rgg(params), InvalidArgumentError);  // rho >= 1/2
  params.rho = 0.3;
  params.kind = SpaceKind::Torus;
  params.radius = 6.0;  // side = 10, so r >= side/2
  CHECK_THROWS_AS(sample_rgg(params), InvalidArgumentError);
  params.radius = 4.0;
  CHECK_NOTHROW(sample_rgg(params));
}

TEST_CASE("seed determinism") {
  RggParams params;
  params.n = 400;
  params.rho = 0.3;
  params.kind = SpaceKind::Torus;
  params.seed = 1234;
  GeometricGraph a = sample_rgg(params);
  GeometricGraph b = sample_rgg(params);
  REQUIRE(a.num_vertices() == b.num_vertices());
  for (Vertex v = 0; v < a.num_vertices(); ++v) {
    CHECK(a.coord(v).x == b.coord(v).x);
    CHECK(a.coord(v).y == b.coord(v).y);
  }
  CHECK(edge_list(a) == edge_list(b));
  params.seed = 77;
  GeometricGraph c = sample_rgg(params);
  CHECK(edge_list(a) != edge_list(c));
}

TEST_CASE("grid-bucketed edges equal brute force") {
  for (SpaceKind kind : {SpaceKind::Square, SpaceKind::Torus}) {
    for (uint64_t seed : {1ull, 2ull, 3ull}) {
      RggParams params;
      params.n = 500;
      params.rho = 0.35;
      params.kind = kind;
      params.seed = seed;
      GeometricGraph g = sample_rgg(params);
      CHECK(edge_list(g) ==
            brute_edges(g.space(), g.coords(), params.resolved_radius()));
    }
  }
}

TEST_CASE("bucketing is exact near the torus validity limit") {
  // nb = floor(side/r) = 2 buckets per axis: wrapped neighborhoods collapse
  RggParams params;
  params.n = 240;
  params.radius = 7.0;  // side ~ 15.49, r just below side/2
  params.kind = SpaceKind::Torus;
  params.seed = 8;
  GeometricGraph g = sample_rgg(params);
  CHECK(edge_list(g) == brute_edges(g.space(), g.coords(), 7.0));
}

TEST_CASE("torus mean degree approaches pi * n^(2 rho)") {
  const uint32_t n = 4000;
  const double rho = 0.3;
  double mean_avg_degree = 0.0;
  const int seeds = 20;
  for (int seed = 0; seed < seeds; ++seed) {
    RggParams params;
    params.n = n;
    params.rho = rho;
    params.kind = SpaceKind::Torus;
    params.seed = static_cast<uint64_t>(seed);
    GeometricGraph g = sample_rgg(params);
    mean_avg_degree += 2.0 * g.num_edges() / n;
  }
  mean_avg_degree /= seeds;
  const double expected = M_PI * std::pow(n, 2 * rho);
  CHECK(mean_avg_degree > 0.85 * expected);
  CHECK(mean_avg_degree < 1.15 * expected);
}

TEST_CASE("write/read round trip") {
  RggParams params;
  params.n = 180;
  params.rho = 0.3;
  params.kind = SpaceKind::Torus;
  params.seed = 4;
  GeometricGraph g = sample_rgg(params);
  TempFile file("roundtrip.graph");
  write_graph(g, file.path);
  GeometricGraph h = read_graph(file.path);
  CHECK(h.num_vertices() == g.num_vertices());
  CHECK(h.num_edges() == g.num_edges());
  CHECK(h.space().kind == g.space().kind);
  CHECK(h.space().side == g.space().side);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    CHECK(h.coord(v).x == g.coord(v).x);  // exact decimal round trip
    CHECK(h.coord(v).y == g.coord(v).y);
  }
  CHECK(edge_list(h) == edge_list(g));

  // writing the reread graph reproduces the file byte for byte
  TempFile file2("roundtrip2.graph");
  write_graph(h, file2.path);
  std::ifstream f1(file.path), f2(file2.path);
  std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
  std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
  CHECK(s1 == s2);
}

TEST_CASE("empty edge section gives isolated vertices") {
  TempFile file("isolated.graph");
  std::ofstream out(file.path);
  out << "geograph v1 square 4 3 0\n0 1 1\n1 2 2\n2 3 3\n";
  out.close();
  GeometricGraph g = read_graph(file.path);
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 0);
}

TEST_CASE("parse errors carry line numbers") {
  const auto write_and_read = [](const std::string& name, const std::string& body) {
    TempFile file(name);
    std::ofstream out(file.path);
    out << body;
    out.close();
    return read_graph(file.path);
  };

  // malformed header
  try {
    write_and_read("h.graph", "geograph v2 square 4 1 0\n0 1 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
  }
  // dangling endpoint: edge references vertex n
  try {
    write_and_read("d.graph", "geograph v1 square 4 2 1\n0 1 1\n1 2 2\n1 2\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 4);
    CHECK(std::string(e.what()).find("dangling") != std::string::npos);
  }
  // duplicate edge
  try {
    write_and_read("dup.graph",
                   "geograph v1 square 4 3 2\n0 1 1\n1 2 2\n2 3 3\n0 1\n1 0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 6);
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }
  // coordinate out of range
  try {
    write_and_read("c.graph", "geograph v1 square 4 1 0\n0 9 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("coordinate") != std::string::npos);
  }
  // truncated file
  CHECK_THROWS_AS(write_and_read("t.graph", "geograph v1 square 4 2 0\n0 1 1\n"),
                  ParseError);
  // missing file
  CHECK_THROWS_AS(read_graph("/tmp/geodiam_does_not_exist.graph"), IoError);
}

TEST_CASE("degrees match the brute-force neighbor counts") {
  RggParams params;
  params.n = 300;
  params.rho = 0.3;
  params.kind = SpaceKind::Square;
  params.seed = 21;
  GeometricGraph g = sample_rgg(params);
  const double r = params.resolved_radius();
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    uint32_t count = 0;
    for (Vertex w = 0; w < g.num_vertices(); ++w)
      if (w != v && distance(g.space(), g.coord(v), g.coord(w)) <= r) ++count;
    CHECK(g.degree(v) == count);
  }
}
