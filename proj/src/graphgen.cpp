#include "graphgen.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "rng.hpp"

namespace geodiam {

double RggParams::side() const { return std::sqrt(static_cast<double>(n)); }

double RggParams::resolved_radius() const {
  if (radius) return *radius;
  if (!rho) throw InvalidArgumentError("either rho or an explicit radius is required");
  return std::pow(static_cast<double>(n), *rho);
}

void RggParams::validate() const {
  if (n < 1) throw InvalidArgumentError("n must be at least 1");
  if (!radius) {
    if (!rho) throw InvalidArgumentError("either rho or an explicit radius is required");
    if (!(*rho > 0.0 && *rho < 0.5))
      throw InvalidArgumentError("rho must lie strictly between 0 and 1/2");
  }
  if (!(resolved_radius() > 0.0)) throw InvalidArgumentError("radius must be positive");
  if (kind == SpaceKind::Torus && resolved_radius() >= side() / 2.0)
    throw InvalidArgumentError(
        "torus radius must be below side/2 (wrapped neighborhoods would "
        "double-count buckets): r=" + std::to_string(resolved_radius()) +
        ", side=" + std::to_string(side()));
}

namespace {

// Uniform bucket grid of side >= r covering [0, side)^2.
struct BucketGrid {
  uint32_t nb;         // buckets per axis
  double inv_bucket;   // nb / side
  std::vector<std::vector<Vertex>> buckets;

  BucketGrid(double side, double r, const std::vector<Point>& points) {
    nb = std::max<uint32_t>(1, static_cast<uint32_t>(side / r));
    inv_bucket = nb / side;
    buckets.resize(static_cast<size_t>(nb) * nb);
    for (Vertex v = 0; v < points.size(); ++v)
      buckets[index_of(points[v])].push_back(v);
  }

  size_t index_of(Point p) const {
    uint32_t bx = std::min(nb - 1, static_cast<uint32_t>(p.x * inv_bucket));
    uint32_t by = std::min(nb - 1, static_cast<uint32_t>(p.y * inv_bucket));
    return static_cast<size_t>(by) * nb + bx;
  }
};

}  // namespace

GeometricGraph build_geometric_graph(const GroundSpace& space,
                                     std::vector<Point> points, double radius) {
  if (!(radius > 0.0)) throw InvalidArgumentError("radius must be positive");
  if (space.kind == SpaceKind::Torus && radius >= space.side / 2.0)
    throw InvalidArgumentError("torus radius must be below side/2");
  const bool wrap = space.kind == SpaceKind::Torus;
  BucketGrid grid(space.side, radius, points);
  const int nb = static_cast<int>(grid.nb);

  std::vector<std::pair<Vertex, Vertex>> edges;
  // Distinct neighbor buckets of (bx,by); on the torus offsets wrap mod nb
  // and duplicates are dropped (relevant when nb < 3).
  int neigh[9];
  for (int by = 0; by < nb; ++by) {
    for (int bx = 0; bx < nb; ++bx) {
      const auto& cell = grid.buckets[static_cast<size_t>(by) * nb + bx];
      if (cell.empty()) continue;
      int cnt = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          int x = bx + dx, y = by + dy;
          if (wrap) {
            x = (x + nb) % nb;
            y = (y + nb) % nb;
          } else if (x < 0 || x >= nb || y < 0 || y >= nb) {
            continue;
          }
          const int idx = y * nb + x;
          bool seen = false;
          for (int i = 0; i < cnt; ++i) seen |= neigh[i] == idx;
          if (!seen) neigh[cnt++] = idx;
        }
      }
      for (Vertex u : cell) {
        for (int i = 0; i < cnt; ++i) {
          for (Vertex v : grid.buckets[neigh[i]]) {
            if (v <= u) continue;
            if (distance(space, points[u], points[v]) <= radius)
              edges.emplace_back(u, v);
          }
        }
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return GeometricGraph(space, std::move(points), edges);
}

GeometricGraph sample_rgg(const RggParams& params) {
  params.validate();
  const GroundSpace space{params.kind, params.side()};
  std::vector<Point> points(params.n);
  for (Vertex i = 0; i < params.n; ++i) {
    SplitMix64 stream = SplitMix64::substream(params.seed, i);
    // next_double() < 1, so coordinates stay inside the half-open square.
    points[i].x = stream.next_double() * space.side;
    points[i].y = stream.next_double() * space.side;
  }
  return build_geometric_graph(space, std::move(points), params.resolved_radius());
}

void write_graph(const GeometricGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  char buf[128];
  std::snprintf(buf, sizeof buf, "geograph v1 %s %.17g %" PRIu32 " %" PRIu64 "\n",
                to_string(g.space().kind), g.space().side, g.num_vertices(),
                g.num_edges());
  out << buf;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    std::snprintf(buf, sizeof buf, "%" PRIu32 " %.17g %.17g\n", v, g.coord(v).x,
                  g.coord(v).y);
    out << buf;
  }
  for (Vertex u = 0; u < g.num_vertices(); ++u)
    for (Vertex v : g.neighbors(u))
      if (u < v) out << u << ' ' << v << '\n';
  if (!out) throw IoError("write to '" + path + "' failed");
}

namespace {

std::string next_line(std::istream& in, long& line_no) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(line_no + 1, "unexpected end of file");
  ++line_no;
  return line;
}

}  // namespace

GeometricGraph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  long line_no = 0;

  std::istringstream header(next_line(in, line_no));
  std::string magic, version, kind_str;
  double side = 0.0;
  uint64_t n = 0, m = 0;
  if (!(header >> magic >> version >> kind_str >> side >> n >> m) ||
      magic != "geograph" || version != "v1")
    throw ParseError(line_no, "malformed header (expected 'geograph v1 <kind> <side> <n> <m>')");
  SpaceKind kind;
  try {
    kind = space_kind_from_string(kind_str);
  } catch (const InvalidArgumentError&) {
    throw ParseError(line_no, "malformed header: unknown kind '" + kind_str + "'");
  }
  if (!(side > 0.0)) throw ParseError(line_no, "malformed header: side must be positive");
  const GroundSpace space{kind, side};

  std::vector<Point> coords(n);
  for (uint64_t i = 0; i < n; ++i) {
    std::istringstream ls(next_line(in, line_no));
    uint64_t id;
    Point p;
    if (!(ls >> id >> p.x >> p.y))
      throw ParseError(line_no, "malformed vertex line");
    if (id != i)
      throw ParseError(line_no, "vertex ids must be 0..n-1 in order (got " +
                                    std::to_string(id) + ", expected " + std::to_string(i) + ")");
    if (!space.contains(p))
      throw ParseError(line_no, "coordinate out of range [0, side)^2");
    coords[i] = p;
  }

  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(m);
  std::vector<std::vector<Vertex>> seen(n);
  for (uint64_t i = 0; i < m; ++i) {
    std::istringstream ls(next_line(in, line_no));
    uint64_t u, v;
    if (!(ls >> u >> v)) throw ParseError(line_no, "malformed edge line");
    if (u >= n || v >= n)
      throw ParseError(line_no, "dangling endpoint: edge references vertex " +
                                    std::to_string(std::max(u, v)) + " but n=" + std::to_string(n));
    if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
    auto [a, b] = std::minmax(u, v);
    auto& bucket = seen[a];
    if (std::find(bucket.begin(), bucket.end(), static_cast<Vertex>(b)) != bucket.end())
      throw ParseError(line_no, "duplicate edge " + std::to_string(a) + " " + std::to_string(b));
    bucket.push_back(static_cast<Vertex>(b));
    edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  std::string trailing;
  while (std::getline(in, trailing)) {
    ++line_no;
    if (!trailing.empty() && trailing.find_first_not_of(" \t\r") != std::string::npos)
      throw ParseError(line_no, "trailing content after edge section");
  }
  return GeometricGraph(space, std::move(coords), edges);
}

}  // namespace geodiam
