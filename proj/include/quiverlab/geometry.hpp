#pragma once

#include "quiverlab/integer.hpp"

#include <algorithm>

namespace quiverlab {

struct Point {
  Rational x, y;

  friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(const Rational& s, const Point& a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Point&, const Point&) = default;
  friend bool operator<(const Point& a, const Point& b) { return a.y != b.y ? a.y < b.y : a.x < b.x; }
};

inline Rational cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }

// Sign of the turn a -> b -> c.
inline int orient(const Point& a, const Point& b, const Point& c) { return cross(b - a, c - a).sign(); }

// True when p lies on the closed segment [a, b].
inline bool on_segment(const Point& a, const Point& b, const Point& p) {
  if (orient(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

// Counterclockwise angular order of direction vectors starting at +x.
inline bool angle_less(const Point& a, const Point& b) {
  auto half = [](const Point& d) { return d.y < 0 || (d.y == 0 && d.x < 0) ? 1 : 0; };
  const int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

}  // namespace quiverlab
