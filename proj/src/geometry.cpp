#include "geometry.hpp"

#include <array>
#include <cassert>
#include <cmath>

#include "errors.hpp"

namespace geodiam {

const char* to_string(SpaceKind kind) {
  return kind == SpaceKind::Square ? "square" : "torus";
}

SpaceKind space_kind_from_string(const std::string& s) {
  if (s == "square") return SpaceKind::Square;
  if (s == "torus") return SpaceKind::Torus;
  throw InvalidArgumentError("unknown ground-space kind: '" + s + "'");
}

double distance(const GroundSpace& space, Point p, Point q) {
  double dx = std::fabs(p.x - q.x);
  double dy = std::fabs(p.y - q.y);
  if (space.kind == SpaceKind::Torus) {
    dx = std::min(dx, space.side - dx);
    dy = std::min(dy, space.side - dy);
  }
  return std::hypot(dx, dy);
}

double geometric_diameter(const GroundSpace& space) {
  const double sqrt2 = std::sqrt(2.0);
  return space.kind == SpaceKind::Square ? sqrt2 * space.side : space.side / sqrt2;
}

std::string Cell::word_string() const {
  std::string s;
  s.reserve(word.size());
  for (uint8_t d : word) s.push_back(static_cast<char>('0' + d));
  return s;
}

Cell root_cell(const GroundSpace& space) {
  return Cell{{}, Rect{0.0, space.side, 0.0, space.side}};
}

Cell cell_child(const Cell& c, int digit) {
  assert(digit >= 1 && digit <= 4);
  const double xm = (c.rect.x1 + c.rect.x2) / 2.0;
  const double ym = (c.rect.y1 + c.rect.y2) / 2.0;
  Rect r;
  switch (digit) {
    case 1: r = Rect{c.rect.x1, xm, ym, c.rect.y2}; break;
    case 2: r = Rect{xm, c.rect.x2, ym, c.rect.y2}; break;
    case 3: r = Rect{c.rect.x1, xm, c.rect.y1, ym}; break;
    default: r = Rect{xm, c.rect.x2, c.rect.y1, ym}; break;
  }
  Cell child{c.word, r};
  child.word.push_back(static_cast<uint8_t>(digit));
  return child;
}

std::array<Cell, 4> cell_children(const Cell& c) {
  return {cell_child(c, 1), cell_child(c, 2), cell_child(c, 3), cell_child(c, 4)};
}

Cell cell_of_point(Point p, int level, const GroundSpace& space) {
  assert(level >= 0);
  assert(space.contains(p));
  Cell c = root_cell(space);
  for (int i = 0; i < level; ++i) {
    const double xm = (c.rect.x1 + c.rect.x2) / 2.0;
    const double ym = (c.rect.y1 + c.rect.y2) / 2.0;
    int digit;
    if (p.y >= ym) {
      digit = p.x < xm ? 1 : 2;
    } else {
      digit = p.x < xm ? 3 : 4;
    }
    c = cell_child(c, digit);
  }
  return c;
}

}  // namespace geodiam
