#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "graph.hpp"

namespace geodiam {

// Parameters of the random geometric graph G(X, n, r).  The connection
// radius is r = n^rho unless an explicit radius is given.  Points are drawn
// uniformly in [0, sqrt(n))^2.
struct RggParams {
  uint32_t n = 1;
  std::optional<double> rho;     // requires 0 < rho < 1/2
  std::optional<double> radius;  // overrides rho when set
  SpaceKind kind = SpaceKind::Square;
  uint64_t seed = 0;

  double side() const;
  double resolved_radius() const;
  void validate() const;
};

// Samples a random geometric graph.  Point i is a pure function of
// (seed, i); the edge set is built over a uniform grid of bucket side >= r,
// inspecting only the 3x3 bucket neighborhood (wrapping on the torus).
// Identical seeds give bit-identical graphs.
GeometricGraph sample_rgg(const RggParams& params);

// Test hook: builds the geometric graph over an explicit point list with the
// same connection rule and bucketing as sample_rgg.
GeometricGraph build_geometric_graph(const GroundSpace& space,
                                     std::vector<Point> points, double radius);

// Text format, bit-exact:
//   geograph v1 <kind> <side> <n> <m>
//   <id> <x> <y>     (n lines, ids 0..n-1 in order, 17 significant digits)
//   <u> <v>          (m lines, each edge once with u < v)
void write_graph(const GeometricGraph& g, const std::string& path);
GeometricGraph read_graph(const std::string& path);

}  // namespace geodiam
