#pragma once

#include "quiverlab/constructions.hpp"
#include "quiverlab/geometry.hpp"
#include "quiverlab/planar_map.hpp"

#include <string>
#include <vector>

namespace quiverlab {

// A straight segment carrying `mult` parallel arrows.
struct DrawnArrow {
  Index tail = 0;
  Index head = 0;
  long long mult = 1;
};

struct Drawing {
  std::vector<Point> points;
  std::vector<DrawnArrow> arrows;
  std::vector<std::string> labels;

  Index size() const { return static_cast<Index>(points.size()); }
  ExchangeMatrix quiver() const;
  long long arrow_total() const;
};

struct Crossing {
  std::size_t first, second;  // arrow indices; `second` turns counterclockwise from `first`
  Point at;
  Rational t_first, t_second;  // position along each arrow, tail = 0, head = 1
};

// Throws NonGenericDrawing for shared points, vertices on arrow interiors,
// overlapping arrows, three arrows through a point, or a bundle of several
// arrows taking part in a crossing.
std::vector<Crossing> find_crossings(const Drawing& d);

struct ResolvedDrawing {
  ExchangeMatrix matrix;
  RecoveryPlan plan;
  Drawing drawing;
  Index crossings = 0;
};

ResolvedDrawing resolve_crossings(const Drawing& d);

// Rotation system read off a crossing-free drawing.
PlanarQuiver planar_quiver_from_drawing(const Drawing& d);

struct PlanarUniversal {
  Drawing glued;  // before crossing resolution; its quiver is glue_universal(somos, n)
  ResolvedDrawing resolved;
  PlanarQuiver embedding;
};

PlanarUniversal planar_universal(Index n);

}  // namespace quiverlab
