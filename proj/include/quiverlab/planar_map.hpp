#pragma once

#include "quiverlab/exchange_matrix.hpp"

#include <utility>
#include <vector>

namespace quiverlab {

// Quiver with a combinatorial embedding. Edge e is a single arrow
// edges[e].first -> edges[e].second; half-edge 2e leaves its tail and 2e+1
// leaves its head. rotation[v] lists the half-edges leaving v
// counterclockwise. outer holds, per connected component with edges, one
// half-edge whose left side is the unbounded face.
struct PlanarQuiver {
  ExchangeMatrix quiver;
  std::vector<std::pair<Index, Index>> edges;
  std::vector<std::vector<Index>> rotation;
  std::vector<Index> outer;

  Index vertex_count() const { return static_cast<Index>(rotation.size()); }
  Index edge_count() const { return static_cast<Index>(edges.size()); }
  Index half_edge_count() const { return 2 * edge_count(); }
  Index origin(Index h) const { return h % 2 == 0 ? edges[h / 2].first : edges[h / 2].second; }
};

inline Index twin(Index h) { return h ^ 1; }
// True when walking h follows the arrow direction.
inline bool is_forward(Index h) { return h % 2 == 0; }

struct FaceStructure {
  // Each face as the cyclic walk of half-edges having it on their left.
  std::vector<std::vector<Index>> faces;
  std::vector<Index> face_of;  // half-edge -> face
  std::vector<Index> component;  // vertex -> component id
  Index component_count = 0;
  std::vector<char> unbounded;  // face -> flag
};

// Successor of h along the face on its left.
Index face_next(const PlanarQuiver& q, const std::vector<Index>& rot_pos, Index h);
std::vector<Index> rotation_positions(const PlanarQuiver& q);
FaceStructure trace_faces(const PlanarQuiver& q);

// Throws InvalidEmbedding when rotation, edges, matrix or outer markers are
// inconsistent or when some component fails Euler's formula.
void validate(const PlanarQuiver& q);

// Euler characteristic check per component: V - E + F = 2.
bool euler_ok(const PlanarQuiver& q);

// Builds the matrix from the edge list.
ExchangeMatrix quiver_from_edges(Index n, const std::vector<std::pair<Index, Index>>& edges,
                                 std::vector<std::string> labels = {});

}  // namespace quiverlab
