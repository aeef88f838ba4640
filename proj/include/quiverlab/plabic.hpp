#pragma once

#include "quiverlab/drawing.hpp"
#include "quiverlab/exchange_matrix.hpp"
#include "quiverlab/planar_map.hpp"

#include <optional>
#include <string>
#include <vector>

namespace quiverlab {

enum class Color : signed char { None = 0, Black = 1, White = 2 };

inline Color opposite(Color c) {
  return c == Color::Black ? Color::White : c == Color::White ? Color::Black : Color::None;
}

// Plabic graph as a combinatorial map. pairing is a fixed-point-free
// involution on half-edges; rotation[v] lists the half-edges at v
// counterclockwise. Boundary vertices have color None and degree 1, and
// boundary lists them counterclockwise along the disk boundary. Without
// boundary vertices the outer face is given by outer: a half-edge with the
// outer face on its left.
struct PlabicGraph {
  std::vector<Index> pairing;
  std::vector<std::vector<Index>> rotation;
  std::vector<Color> color;
  std::vector<Index> boundary;
  std::optional<Index> outer;

  Index vertex_count() const { return static_cast<Index>(rotation.size()); }
  Index half_edge_count() const { return static_cast<Index>(pairing.size()); }
  Index degree(Index v) const { return static_cast<Index>(rotation[v].size()); }
  bool is_interior(Index v) const { return color[v] != Color::None; }
};

struct PlabicFaces {
  std::vector<Index> origin;     // half-edge -> vertex
  std::vector<Index> rot_pos;    // half-edge -> position in rotation[origin]
  std::vector<std::vector<Index>> faces;  // walks with the face on the left
  std::vector<Index> face_of;    // half-edge -> face
  Index outer_face = -1;
  // bounded faces in quiver order (by smallest half-edge), and the inverse
  std::vector<Index> bounded;
  std::vector<Index> quiver_vertex;  // face -> quiver vertex, -1 for outer
};

// Throws InvalidPlabic. With trivalent = false interior vertices may have any
// degree >= 1.
void validate(const PlabicGraph& p, bool trivalent = true);
PlabicFaces plabic_faces(const PlabicGraph& p);

// One vertex per bounded face; bicolored edges between distinct bounded
// faces give arrows with the black end on the right; 2-cycles cancel.
ExchangeMatrix quiver_of(const PlabicGraph& p);

// Moves. The square face is named by its quiver vertex; the flip edge by
// either of its half-edges. Both throw NotApplicable with the reason.
std::optional<std::string> square_move_blocker(const PlabicGraph& p, Index face);
PlabicGraph square_move(const PlabicGraph& p, Index face);
std::optional<std::string> flip_move_blocker(const PlabicGraph& p, Index half_edge);
PlabicGraph flip_move(const PlabicGraph& p, Index half_edge);

// Orientation-preserving map isomorphism respecting colors (optionally all
// reversed) and the outer face. Returns the half-edge map.
std::optional<std::vector<Index>> plabic_isomorphism(const PlabicGraph& a, const PlabicGraph& b,
                                                     bool allow_color_reversal = true);

// Which of the conditions a-d (connected with an arrow, no univalent
// vertex, bounded faces with simple boundary, oriented bounded faces) fails
// first, if any.
std::optional<char> violated_condition(const PlanarQuiver& q);

struct Augmented {
  PlanarQuiver quiver;
  Index original = 0;  // vertices [0, original) are the input, as a full subquiver
  Index joins = 0;     // 2-paths joining components
  Index repairs = 0;   // 2-paths at univalent vertices
  Index splits = 0;    // 2-paths cutting corners of non-simple faces
  Index apexes = 0;    // vertices placed in non-oriented faces
};
Augmented augment_to_conditions(const PlanarQuiver& q);

struct PlabicEmbedding {
  PlabicGraph graph;
  // vertex_of[v] is the vertex of quiver_of(graph) in the face around v
  std::vector<Index> vertex_of;
};
// Throws ConditionsViolated naming the failed condition.
PlabicEmbedding plabic_from_quiver(const PlanarQuiver& q, bool uncontract = true);

struct UniversalPlabic {
  PlanarUniversal planar;
  Augmented augmented;
  PlabicEmbedding plabic;
  ExchangeMatrix quiver;  // quiver_of(plabic.graph)
};
UniversalPlabic universal_plabic(Index n);

}  // namespace quiverlab
