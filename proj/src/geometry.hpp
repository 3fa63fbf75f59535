#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace geodiam {

// A point of the ground space.  Valid coordinates lie in [0, side)^2 of the
// owning space.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class SpaceKind : uint8_t { Square, Torus };

const char* to_string(SpaceKind kind);
SpaceKind space_kind_from_string(const std::string& s);

// Ground space: the half-open square [0, side)^2, either with the Euclidean
// metric or with per-axis wrap-around (flat torus).
struct GroundSpace {
  SpaceKind kind = SpaceKind::Square;
  double side = 1.0;

  bool contains(Point p) const {
    return p.x >= 0.0 && p.x < side && p.y >= 0.0 && p.y < side;
  }
};

// Metric of the ground space.  Square: Euclidean.  Torus: per-axis wrapped
// differences dx' = min(|dx|, side-|dx|), likewise dy', then sqrt(dx'^2+dy'^2).
double distance(const GroundSpace& space, Point p, Point q);

// Geometric diameter of the space (sqrt(2)*side on the square, side/sqrt(2)
// on the torus).
double geometric_diameter(const GroundSpace& space);

// Axis-aligned half-open rectangle [x1,x2) x [y1,y2).
struct Rect {
  double x1, x2, y1, y2;

  bool contains(Point p) const {
    return p.x >= x1 && p.x < x2 && p.y >= y1 && p.y < y2;
  }
};

// A quadtree cell over [0, side)^2.  Cells are indexed by words over the
// alphabet {1,2,3,4}: digit 1 is the upper-left child, 2 upper-right,
// 3 lower-left, 4 lower-right.  The level equals the word length and the
// cell side is side/2^level.
struct Cell {
  std::vector<uint8_t> word;  // digits in {1,2,3,4}
  Rect rect;

  int level() const { return static_cast<int>(word.size()); }
  double side() const { return rect.x2 - rect.x1; }
  std::string word_string() const;
};

Cell root_cell(const GroundSpace& space);

// The four children of c, numbered 1..4; they tile c exactly.
std::array<Cell, 4> cell_children(const Cell& c);

// Single child by digit (1..4).
Cell cell_child(const Cell& c, int digit);

// The unique level-`level` cell whose rectangle contains p, computed
// digit-by-digit in O(level).  Uses the same midpoint arithmetic as
// cell_children, so results are bit-consistent with recursive subdivision.
Cell cell_of_point(Point p, int level, const GroundSpace& space);

}  // namespace geodiam
