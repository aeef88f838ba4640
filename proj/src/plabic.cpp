#include "quiverlab/plabic.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace quiverlab {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw QuiverError(ErrorKind::InvalidPlabic, msg); }

Index plabic_next(const PlabicGraph& p, const std::vector<Index>& origin, const std::vector<Index>& rot_pos,
                  Index h) {
  const Index t = p.pairing[h];
  const auto& r = p.rotation[origin[t]];
  const Index d = static_cast<Index>(r.size());
  return r[(rot_pos[t] + d - 1) % d];
}

}  // namespace

PlabicFaces plabic_faces(const PlabicGraph& p) {
  PlabicFaces f;
  const Index hn = p.half_edge_count();
  f.origin.assign(static_cast<std::size_t>(hn), -1);
  f.rot_pos.assign(static_cast<std::size_t>(hn), -1);
  for (Index v = 0; v < p.vertex_count(); ++v)
    for (std::size_t i = 0; i < p.rotation[v].size(); ++i) {
      f.origin[p.rotation[v][i]] = v;
      f.rot_pos[p.rotation[v][i]] = static_cast<Index>(i);
    }
  // tracing from the smallest unvisited half-edge numbers faces by their
  // smallest half-edge
  f.face_of.assign(static_cast<std::size_t>(hn), -1);
  for (Index h = 0; h < hn; ++h) {
    if (f.face_of[h] >= 0) continue;
    const Index id = static_cast<Index>(f.faces.size());
    std::vector<Index> walk;
    for (Index g = h; f.face_of[g] < 0; g = plabic_next(p, f.origin, f.rot_pos, g)) {
      f.face_of[g] = id;
      walk.push_back(g);
    }
    f.faces.push_back(std::move(walk));
  }
  if (!p.boundary.empty())
    f.outer_face = f.face_of[p.rotation[p.boundary.front()].front()];
  else if (p.outer)
    f.outer_face = f.face_of[*p.outer];
  f.quiver_vertex.assign(f.faces.size(), -1);
  for (Index id = 0; id < static_cast<Index>(f.faces.size()); ++id) {
    if (id == f.outer_face) continue;
    f.quiver_vertex[id] = static_cast<Index>(f.bounded.size());
    f.bounded.push_back(id);
  }
  return f;
}

void validate(const PlabicGraph& p, bool trivalent) {
  const Index n = p.vertex_count(), hn = p.half_edge_count();
  if (n == 0) invalid("empty graph");
  if (static_cast<Index>(p.color.size()) != n) invalid("color list and rotation sizes differ");
  if (hn % 2) invalid("odd number of half-edges");
  for (Index h = 0; h < hn; ++h) {
    const Index t = p.pairing[h];
    if (t < 0 || t >= hn) invalid("pairing out of range at half-edge " + std::to_string(h + 1));
    if (t == h || p.pairing[t] != h) invalid("pairing is not a fixed-point-free involution");
  }
  std::vector<int> seen(static_cast<std::size_t>(hn), 0);
  for (const auto& r : p.rotation)
    for (Index h : r) {
      if (h < 0 || h >= hn) invalid("rotation names an unknown half-edge");
      if (seen[h]++) invalid("half-edge " + std::to_string(h + 1) + " appears twice in the rotation");
    }
  if (std::count(seen.begin(), seen.end(), 1) != hn) invalid("half-edge missing from the rotation");

  const PlabicFaces f = plabic_faces(p);
  for (Index h = 0; h < hn; ++h)
    if (f.origin[h] == f.origin[p.pairing[h]]) invalid("loop at vertex " + std::to_string(f.origin[h] + 1));

  std::vector<char> on_boundary(static_cast<std::size_t>(n), 0);
  for (Index v : p.boundary) {
    if (v < 0 || v >= n) invalid("boundary vertex out of range");
    if (on_boundary[v]++) invalid("boundary vertex listed twice");
  }
  for (Index v = 0; v < n; ++v) {
    const std::string at = " at vertex " + std::to_string(v + 1);
    if (p.color[v] == Color::None) {
      if (!on_boundary[v]) invalid("uncolored interior vertex" + at);
      if (p.degree(v) != 1) invalid("boundary vertex of degree " + std::to_string(p.degree(v)) + at);
    } else {
      if (on_boundary[v]) invalid("colored boundary vertex" + at);
      if (trivalent ? p.degree(v) != 3 : p.degree(v) < 1)
        invalid("interior vertex of degree " + std::to_string(p.degree(v)) + at);
    }
  }

  std::vector<char> reached(static_cast<std::size_t>(n), 0);
  std::vector<Index> stack{0};
  reached[0] = 1;
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    for (Index h : p.rotation[v]) {
      const Index w = f.origin[p.pairing[h]];
      if (!reached[w]) reached[w] = 1, stack.push_back(w);
    }
  }
  if (std::count(reached.begin(), reached.end(), 1) != n) invalid("graph is not connected");
  if (n - hn / 2 + static_cast<Index>(f.faces.size()) != 2) invalid("Euler formula fails; not a planar map");

  if (p.boundary.empty()) {
    if (!p.outer) invalid("no boundary vertices and no outer half-edge");
    if (*p.outer < 0 || *p.outer >= hn) invalid("outer half-edge out of range");
    return;
  }
  for (Index v : p.boundary)
    if (f.face_of[p.rotation[v].front()] != f.outer_face) invalid("boundary vertices lie on different faces");
  if (p.outer && (*p.outer < 0 || *p.outer >= hn || f.face_of[*p.outer] != f.outer_face))
    invalid("outer half-edge is not on the boundary face");
  // the outer walk meets the boundary clockwise
  std::vector<Index> met;
  for (Index h : f.faces[f.outer_face])
    if (p.color[f.origin[h]] == Color::None) met.push_back(f.origin[h]);
  std::reverse(met.begin(), met.end());
  auto start = std::find(met.begin(), met.end(), p.boundary.front());
  std::rotate(met.begin(), start, met.end());
  if (met != p.boundary) invalid("boundary order disagrees with the embedding");
}

ExchangeMatrix quiver_of(const PlabicGraph& p) {
  validate(p, false);
  const PlabicFaces f = plabic_faces(p);
  const Index n = static_cast<Index>(f.bounded.size());
  IntMatrix b = IntMatrix::Zero(n, n);
  for (Index h = 0; h < p.half_edge_count(); ++h) {
    const Color c = p.color[f.origin[h]];
    if (c != Color::Black || p.color[f.origin[p.pairing[h]]] != Color::White) continue;
    // h leaves the black end: the arrow crosses from its left to its right
    const Index left = f.face_of[h], right = f.face_of[p.pairing[h]];
    if (left == right || left == f.outer_face || right == f.outer_face) continue;
    b(f.quiver_vertex[left], f.quiver_vertex[right]) += 1;
    b(f.quiver_vertex[right], f.quiver_vertex[left]) -= 1;
  }
  return ExchangeMatrix(std::move(b));
}

std::optional<std::string> square_move_blocker(const PlabicGraph& p, Index face) {
  const PlabicFaces f = plabic_faces(p);
  if (face < 0 || face >= static_cast<Index>(f.bounded.size()))
    return "no bounded face " + std::to_string(face + 1);
  const Index id = f.bounded[face];
  const auto& walk = f.faces[id];
  if (walk.size() != 4) return "face has " + std::to_string(walk.size()) + " sides, not 4";
  std::vector<Index> vs;
  for (Index h : walk) vs.push_back(f.origin[h]);
  for (int i = 0; i < 4; ++i) {
    const Index v = vs[i];
    if (std::count(vs.begin(), vs.end(), v) > 1) return std::string("square vertices are not distinct");
    if (!p.is_interior(v) || p.degree(v) != 3) return "vertex " + std::to_string(v + 1) + " is not interior trivalent";
    if (p.color[v] == p.color[vs[(i + 1) % 4]]) return std::string("colors do not alternate around the face");
  }
  std::vector<Index> around;
  for (int i = 0; i < 4; ++i) {
    // the third half-edge at each square vertex must leave the square
    const auto& r = p.rotation[vs[i]];
    for (Index h : r) {
      if (h == walk[i] || p.pairing[h] == walk[(i + 3) % 4]) continue;
      if (std::count(vs.begin(), vs.end(), f.origin[p.pairing[h]])) return std::string("a leg joins two square vertices");
    }
    const Index nb = f.face_of[p.pairing[walk[i]]];
    if (nb == id) return std::string("face borders itself");
    if (nb != f.outer_face && std::count(around.begin(), around.end(), nb))
      return std::string("surrounding faces are not distinct");
    around.push_back(nb);
  }
  return std::nullopt;
}

PlabicGraph square_move(const PlabicGraph& p, Index face) {
  if (auto why = square_move_blocker(p, face)) throw QuiverError(ErrorKind::NotApplicable, "square move: " + *why, {face});
  const PlabicFaces f = plabic_faces(p);
  PlabicGraph out = p;
  for (Index h : f.faces[f.bounded[face]]) out.color[f.origin[h]] = opposite(out.color[f.origin[h]]);
  return out;
}

std::optional<std::string> flip_move_blocker(const PlabicGraph& p, Index h) {
  if (h < 0 || h >= p.half_edge_count()) return "no half-edge " + std::to_string(h + 1);
  const PlabicFaces f = plabic_faces(p);
  const Index g = p.pairing[h];
  const Index u = f.origin[h], w = f.origin[g];
  if (!p.is_interior(u) || !p.is_interior(w) || p.degree(u) != 3 || p.degree(w) != 3)
    return std::string("edge ends are not both interior trivalent");
  if (p.color[u] != p.color[w]) return std::string("edge ends have different colors");
  const auto& ru = p.rotation[u];
  const auto& rw = p.rotation[w];
  const Index b = ru[(f.rot_pos[h] + 2) % 3], a = ru[(f.rot_pos[h] + 1) % 3];
  const Index c = rw[(f.rot_pos[g] + 1) % 3], d = rw[(f.rot_pos[g] + 2) % 3];
  if (p.pairing[b] == c || p.pairing[d] == a) return std::string("flip would create a loop");
  return std::nullopt;
}

PlabicGraph flip_move(const PlabicGraph& p, Index h) {
  if (auto why = flip_move_blocker(p, h)) throw QuiverError(ErrorKind::NotApplicable, "flip move: " + *why, {h});
  const PlabicFaces f = plabic_faces(p);
  const Index g = p.pairing[h];
  const Index u = f.origin[h], w = f.origin[g];
  // around the contracted edge the legs read a, b, c, d counterclockwise;
  // the flip regroups them as (b, c) and (d, a)
  const auto ru = p.rotation[u], rw = p.rotation[w];
  const Index a = ru[(f.rot_pos[h] + 1) % 3], b = ru[(f.rot_pos[h] + 2) % 3];
  const Index c = rw[(f.rot_pos[g] + 1) % 3], d = rw[(f.rot_pos[g] + 2) % 3];
  PlabicGraph out = p;
  out.rotation[u] = {h, b, c};
  out.rotation[w] = {g, d, a};
  return out;
}

std::optional<std::vector<Index>> plabic_isomorphism(const PlabicGraph& a, const PlabicGraph& b,
                                                     bool allow_color_reversal) {
  const Index hn = a.half_edge_count();
  if (hn != b.half_edge_count() || a.vertex_count() != b.vertex_count() || a.boundary.size() != b.boundary.size())
    return std::nullopt;
  if (hn == 0) return std::nullopt;
  const PlabicFaces fa = plabic_faces(a), fb = plabic_faces(b);
  auto sigma = [](const PlabicGraph& p, const PlabicFaces& f, Index h) {
    const auto& r = p.rotation[f.origin[h]];
    return r[(f.rot_pos[h] + 1) % static_cast<Index>(r.size())];
  };
  for (int reversed = 0; reversed <= (allow_color_reversal ? 1 : 0); ++reversed) {
    for (Index g0 = 0; g0 < hn; ++g0) {
      std::vector<Index> phi(static_cast<std::size_t>(hn), -1), inv(static_cast<std::size_t>(hn), -1);
      std::deque<Index> queue;
      bool ok = true;
      auto bind = [&](Index h, Index g) {
        if (phi[h] == g) return;
        if (phi[h] >= 0 || inv[g] >= 0) {
          ok = false;
          return;
        }
        phi[h] = g;
        inv[g] = h;
        queue.push_back(h);
      };
      bind(0, g0);
      while (ok && !queue.empty()) {
        const Index h = queue.front();
        queue.pop_front();
        const Index g = phi[h];
        const Color ca = a.color[fa.origin[h]];
        const Color cb = b.color[fb.origin[g]];
        if ((reversed ? opposite(ca) : ca) != cb || a.degree(fa.origin[h]) != b.degree(fb.origin[g])) {
          ok = false;
          break;
        }
        bind(a.pairing[h], b.pairing[g]);
        if (ok) bind(sigma(a, fa, h), sigma(b, fb, g));
      }
      if (!ok || std::count(phi.begin(), phi.end(), -1)) continue;
      if ((fa.outer_face < 0) != (fb.outer_face < 0)) continue;
      if (fa.outer_face >= 0 && fb.face_of[phi[fa.faces[fa.outer_face].front()]] != fb.outer_face) continue;
      return phi;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Planar quivers and the conditions for realizability.

namespace {

struct Builder {
  std::vector<std::pair<Index, Index>> edges;
  std::vector<std::vector<Index>> rot;
  Index marker = -1;

  Index add_vertex() {
    rot.emplace_back();
    return static_cast<Index>(rot.size()) - 1;
  }

  void insert_after(Index v, Index after, Index h) {
    auto& r = rot[v];
    if (after < 0) {
      r.push_back(h);
      return;
    }
    auto it = std::find(r.begin(), r.end(), after);
    if (it == r.end()) throw std::logic_error("corner half-edge not at its vertex");
    r.insert(it + 1, h);
  }

  // New arrow t -> h placed in the corner counterclockwise after at_t (at t)
  // and after at_h (at h); -1 appends.
  Index add_edge(Index t, Index at_t, Index h, Index at_h) {
    const Index e = static_cast<Index>(edges.size());
    edges.emplace_back(t, h);
    insert_after(t, at_t, 2 * e);
    insert_after(h, at_h, 2 * e + 1);
    return e;
  }

  PlanarQuiver view() const {
    PlanarQuiver q;
    q.edges = edges;
    q.rotation = rot;
    if (marker >= 0) q.outer = {marker};
    return q;
  }
};

std::vector<Index> walk_vertices(const PlanarQuiver& q, const std::vector<Index>& walk) {
  std::vector<Index> vs;
  for (Index h : walk) vs.push_back(q.origin(h));
  return vs;
}

bool walk_is_simple(const std::vector<Index>& vs) {
  auto s = vs;
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

bool walk_is_oriented(const std::vector<Index>& walk) {
  return std::all_of(walk.begin(), walk.end(), is_forward) ||
         std::none_of(walk.begin(), walk.end(), is_forward);
}

}  // namespace

std::optional<char> violated_condition(const PlanarQuiver& q) {
  validate(q);
  const FaceStructure fs = trace_faces(q);
  if (fs.component_count != 1 || q.edges.empty()) return 'a';
  for (const auto& r : q.rotation)
    if (r.size() == 1) return 'b';
  const Index outer = fs.face_of[q.outer.front()];
  for (Index id = 0; id < static_cast<Index>(fs.faces.size()); ++id)
    if (id != outer && !walk_is_simple(walk_vertices(q, fs.faces[id]))) return 'c';
  for (Index id = 0; id < static_cast<Index>(fs.faces.size()); ++id)
    if (id != outer && !walk_is_oriented(fs.faces[id])) return 'd';
  return std::nullopt;
}

Augmented augment_to_conditions(const PlanarQuiver& q) {
  validate(q);
  const Index n = q.vertex_count();
  if (n == 0) throw QuiverError(ErrorKind::BadParameters, "empty quiver");
  Augmented out;
  out.original = n;
  Builder bld{q.edges, q.rotation, -1};

  // join components through 2-paths in the unbounded face
  {
    const FaceStructure fs = trace_faces(q);
    std::vector<Index> corner(static_cast<std::size_t>(fs.component_count), -1);
    std::vector<Index> anchor(static_cast<std::size_t>(fs.component_count), -1);
    for (Index h : q.outer) corner[fs.component[q.origin(h)]] = h;
    for (Index v = n; v-- > 0;) anchor[fs.component[v]] = v;
    for (Index c = 0; c < fs.component_count; ++c)
      if (corner[c] >= 0) anchor[c] = q.origin(corner[c]);
    const Index base = fs.component[0];
    Index h0 = corner[base];
    for (Index c = 0; c < fs.component_count; ++c) {
      if (c == base) continue;
      const Index m = bld.add_vertex();
      const Index e = bld.add_edge(anchor[base], h0, m, -1);
      bld.add_edge(m, -1, anchor[c], corner[c]);
      if (h0 < 0) h0 = 2 * e;
      ++out.joins;
    }
    bld.marker = h0;
  }

  // univalent vertices get a 2-path closing an oriented triangle
  for (bool again = true; again;) {
    again = false;
    const Index total = static_cast<Index>(bld.rot.size());
    if (total == 1 && bld.rot[0].empty()) {
      const Index m1 = bld.add_vertex(), m2 = bld.add_vertex();
      const Index e = bld.add_edge(0, -1, m1, -1);
      bld.add_edge(m1, -1, m2, -1);
      bld.add_edge(m2, -1, 0, -1);
      bld.marker = 2 * e;
      out.repairs += 1;
      break;
    }
    for (Index x = 0; x < total; ++x) {
      if (bld.rot[x].size() != 1) continue;
      const Index hx = bld.rot[x].front(), hy = twin(hx);
      const Index y = bld.view().origin(hy);
      const Index m = bld.add_vertex();
      if (is_forward(hx)) {
        bld.add_edge(y, hy, m, -1);
        bld.add_edge(m, -1, x, hx);
      } else {
        bld.add_edge(x, hx, m, -1);
        bld.add_edge(m, -1, y, hy);
      }
      // the new triangle lies on the left of hy
      if (bld.marker == hy) bld.marker = hx;
      ++out.repairs;
      again = true;
    }
  }

  // cut corners off bounded faces whose boundary meets a vertex twice
  for (bool again = true; again;) {
    again = false;
    const PlanarQuiver view = bld.view();
    const FaceStructure fs = trace_faces(view);
    const Index outer = fs.face_of[bld.marker];
    for (Index id = 0; id < static_cast<Index>(fs.faces.size()) && !again; ++id) {
      if (id == outer) continue;
      const auto& walk = fs.faces[id];
      const auto vs = walk_vertices(view, walk);
      if (walk_is_simple(vs)) continue;
      const Index len = static_cast<Index>(walk.size());
      for (Index p = 0; p < len; ++p) {
        const Index a = vs[(p + len - 1) % len], b = vs[(p + 1) % len];
        if (a == b || std::count(vs.begin(), vs.end(), vs[p]) < 2) continue;
        const Index m = bld.add_vertex();
        bld.add_edge(a, walk[(p + len - 1) % len], m, -1);
        bld.add_edge(m, -1, b, walk[(p + 1) % len]);
        ++out.splits;
        again = true;
        break;
      }
      if (!again) throw std::logic_error("face boundary cannot be split");
    }
  }

  // apex vertex in each bounded face that is not an oriented cycle
  {
    const PlanarQuiver view = bld.view();
    const FaceStructure fs = trace_faces(view);
    const Index outer = fs.face_of[bld.marker];
    for (Index id = 0; id < static_cast<Index>(fs.faces.size()); ++id) {
      const auto& walk = fs.faces[id];
      if (id == outer || walk_is_oriented(walk)) continue;
      const Index apex = bld.add_vertex();
      const Index len = static_cast<Index>(walk.size());
      for (Index p = 0; p < len; ++p) {
        const bool in = is_forward(walk[(p + len - 1) % len]), outward = is_forward(walk[p]);
        const Index w = view.origin(walk[p]);
        if (in && !outward) bld.add_edge(w, walk[p], apex, -1);
        if (!in && outward) bld.add_edge(apex, -1, w, walk[p]);
      }
      ++out.apexes;
    }
  }

  const Index total = static_cast<Index>(bld.rot.size());
  IntMatrix b = IntMatrix::Zero(total, total);
  b.topLeftCorner(n, n) = q.quiver.b();
  for (std::size_t e = q.edges.size(); e < bld.edges.size(); ++e) {
    const auto [t, h] = bld.edges[e];
    b(t, h) += 1;
    b(h, t) -= 1;
  }
  std::vector<std::string> labels;
  if (q.quiver.has_labels()) {
    labels = q.quiver.labels();
    for (Index v = n; v < total; ++v) labels.push_back("*" + std::to_string(v - n + 1));
  }
  out.quiver = bld.view();
  out.quiver.quiver = ExchangeMatrix(std::move(b), q.quiver.frozen(), std::move(labels));
  validate(out.quiver);
  return out;
}

PlabicEmbedding plabic_from_quiver(const PlanarQuiver& q, bool uncontract) {
  if (auto c = violated_condition(q))
    throw QuiverError(ErrorKind::ConditionsViolated, std::string("planar quiver fails condition (") + *c + ")");
  const FaceStructure fs = trace_faces(q);
  const Index U = fs.face_of[q.outer.front()];
  const Index faces = static_cast<Index>(fs.faces.size());

  PlabicGraph p;
  std::vector<Index> face_vertex(static_cast<std::size_t>(faces), -1);
  std::vector<Index> occ(static_cast<std::size_t>(q.half_edge_count()), -1);
  auto new_vertex = [&](Color c) {
    p.color.push_back(c);
    p.rotation.emplace_back();
    return static_cast<Index>(p.color.size()) - 1;
  };
  // bounded faces are oriented: counterclockwise ones (walked forward) get
  // white, clockwise ones black
  for (Index id = 0; id < faces; ++id)
    if (id != U) face_vertex[id] = new_vertex(is_forward(fs.faces[id].front()) ? Color::White : Color::Black);
  // a vertex next to every side of the unbounded face: black when that face
  // is on the right of the arrow
  for (Index h : fs.faces[U]) occ[h] = new_vertex(is_forward(h) ? Color::White : Color::Black);

  auto new_edge = [&]() {
    const Index k = static_cast<Index>(p.pairing.size()) / 2;
    p.pairing.push_back(2 * k + 1);
    p.pairing.push_back(2 * k);
    return k;
  };
  // cross[h]: half-edge of the edge across h's arrow, at the node on h's left
  std::vector<Index> cross(static_cast<std::size_t>(q.half_edge_count()), -1);
  std::vector<Index> crossing_edge(static_cast<std::size_t>(q.edge_count()), -1);
  for (Index e = 0; e < q.edge_count(); ++e) {
    const Index k = new_edge();
    crossing_edge[e] = k;
    cross[2 * e] = 2 * k;
    cross[2 * e + 1] = 2 * k + 1;
  }
  for (Index id = 0; id < faces; ++id)
    if (id != U)
      for (Index h : fs.faces[id]) p.rotation[face_vertex[id]].push_back(cross[h]);

  const auto& outer_walk = fs.faces[U];
  const Index len = static_cast<Index>(outer_walk.size());
  std::vector<Index> to_next(static_cast<std::size_t>(len)), to_prev(static_cast<std::size_t>(len));
  for (Index i = 0; i < len; ++i) {
    const Index k = new_edge();
    to_next[i] = 2 * k;
    to_prev[(i + 1) % len] = 2 * k + 1;
  }
  for (Index i = 0; i < len; ++i) {
    const Index h = outer_walk[i];
    p.rotation[occ[h]] = {cross[h], to_next[i], to_prev[i]};
  }
  p.outer = to_next[0];

  if (uncontract) {
    const Index before = p.vertex_count();
    for (Index v = 0; v < before; ++v) {
      const auto r = p.rotation[v];
      const Index d = static_cast<Index>(r.size());
      if (d <= 3) continue;
      // left-combed chain t_1 .. t_{d-2}; t_1 keeps the id of v
      std::vector<Index> chain{v};
      for (Index i = 1; i < d - 2; ++i) chain.push_back(new_vertex(p.color[v]));
      std::vector<Index> links;
      for (Index i = 0; i + 1 < d - 2; ++i) links.push_back(new_edge());
      for (Index i = 0; i < d - 2; ++i) {
        std::vector<Index> rot;
        if (i == 0) {
          rot = {r[0], r[1]};
        } else {
          rot = {2 * links[i - 1] + 1, r[i + 1]};
        }
        if (i + 1 < d - 2)
          rot.push_back(2 * links[i]);
        else
          rot.push_back(r[d - 1]);
        p.rotation[chain[i]] = rot;
      }
    }
  }
  validate(p, uncontract);

  const PlabicFaces pf = plabic_faces(p);
  std::vector<Index> vertex_face(static_cast<std::size_t>(q.vertex_count()), -1);
  auto assign = [&](Index v, Index face) {
    if (vertex_face[v] >= 0 && vertex_face[v] != face) throw std::logic_error("quiver vertex split between faces");
    vertex_face[v] = face;
  };
  for (Index e = 0; e < q.edge_count(); ++e) {
    // the crossing edge runs from the left of the arrow to its right; the
    // head is on its left
    const Index k = crossing_edge[e];
    assign(q.edges[e].second, pf.face_of[2 * k]);
    assign(q.edges[e].first, pf.face_of[2 * k + 1]);
  }
  PlabicEmbedding out;
  out.vertex_of.resize(static_cast<std::size_t>(q.vertex_count()));
  for (Index v = 0; v < q.vertex_count(); ++v) {
    if (vertex_face[v] < 0 || pf.quiver_vertex[vertex_face[v]] < 0) throw std::logic_error("vertex without a face");
    out.vertex_of[v] = pf.quiver_vertex[vertex_face[v]];
  }
  out.graph = std::move(p);
  return out;
}

UniversalPlabic universal_plabic(Index n) {
  UniversalPlabic u;
  u.planar = planar_universal(n);
  u.augmented = augment_to_conditions(u.planar.embedding);
  u.plabic = plabic_from_quiver(u.augmented.quiver);
  u.quiver = quiver_of(u.plabic.graph);
  return u;
}

}  // namespace quiverlab
