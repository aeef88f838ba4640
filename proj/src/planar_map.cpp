#include "quiverlab/planar_map.hpp"

#include <algorithm>

namespace quiverlab {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw QuiverError(ErrorKind::InvalidEmbedding, msg); }

}  // namespace

std::vector<Index> rotation_positions(const PlanarQuiver& q) {
  std::vector<Index> pos(static_cast<std::size_t>(q.half_edge_count()), -1);
  for (const auto& r : q.rotation)
    for (std::size_t i = 0; i < r.size(); ++i) pos[r[i]] = static_cast<Index>(i);
  return pos;
}

Index face_next(const PlanarQuiver& q, const std::vector<Index>& rot_pos, Index h) {
  const Index t = twin(h);
  const auto& r = q.rotation[q.origin(t)];
  const Index p = rot_pos[t];
  return r[(p + static_cast<Index>(r.size()) - 1) % static_cast<Index>(r.size())];
}

FaceStructure trace_faces(const PlanarQuiver& q) {
  FaceStructure fs;
  const Index hn = q.half_edge_count();
  const auto pos = rotation_positions(q);
  fs.face_of.assign(static_cast<std::size_t>(hn), -1);
  for (Index h = 0; h < hn; ++h) {
    if (fs.face_of[h] >= 0) continue;
    const Index id = static_cast<Index>(fs.faces.size());
    std::vector<Index> walk;
    for (Index g = h; fs.face_of[g] < 0; g = face_next(q, pos, g)) {
      fs.face_of[g] = id;
      walk.push_back(g);
    }
    fs.faces.push_back(std::move(walk));
  }
  const Index n = q.vertex_count();
  fs.component.assign(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(n));
  for (const auto& [a, b] : q.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (Index s = 0; s < n; ++s) {
    if (fs.component[s] >= 0) continue;
    std::vector<Index> stack{s};
    fs.component[s] = fs.component_count;
    while (!stack.empty()) {
      const Index v = stack.back();
      stack.pop_back();
      for (Index w : adj[v])
        if (fs.component[w] < 0) {
          fs.component[w] = fs.component_count;
          stack.push_back(w);
        }
    }
    ++fs.component_count;
  }
  fs.unbounded.assign(fs.faces.size(), 0);
  for (Index h : q.outer)
    if (h >= 0 && h < hn) fs.unbounded[fs.face_of[h]] = 1;
  return fs;
}

bool euler_ok(const PlanarQuiver& q) {
  const FaceStructure fs = trace_faces(q);
  std::vector<long long> chi(static_cast<std::size_t>(fs.component_count), 0);
  for (Index v = 0; v < q.vertex_count(); ++v) chi[fs.component[v]] += 1;
  for (const auto& [a, b] : q.edges) chi[fs.component[a]] -= 1;
  for (const auto& f : fs.faces) chi[fs.component[q.origin(f.front())]] += 1;
  for (Index c = 0; c < fs.component_count; ++c) {
    bool has_edge = false;
    for (const auto& [a, b] : q.edges) has_edge = has_edge || fs.component[a] == c;
    if (chi[c] != (has_edge ? 2 : 1)) return false;
  }
  return true;
}

void validate(const PlanarQuiver& q) {
  const Index n = q.vertex_count();
  if (q.quiver.size() != n) bad("rotation and matrix sizes differ");
  const Index hn = q.half_edge_count();
  std::vector<int> seen(static_cast<std::size_t>(hn), 0);
  for (Index v = 0; v < n; ++v)
    for (Index h : q.rotation[v]) {
      if (h < 0 || h >= hn) bad("half-edge id out of range");
      if (seen[h]++) bad("half-edge listed twice");
      if (q.origin(h) != v) bad("half-edge listed at the wrong vertex");
    }
  if (std::count(seen.begin(), seen.end(), 1) != hn) bad("half-edge missing from rotation");
  IntMatrix b = IntMatrix::Zero(n, n);
  for (const auto& [t, h] : q.edges) {
    if (t == h) bad("loop");
    b(t, h) += 1;
    b(h, t) -= 1;
  }
  std::vector<std::pair<Index, Index>> sorted(q.edges);
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [t, h] : q.edges)
    if (std::binary_search(sorted.begin(), sorted.end(), std::make_pair(h, t)))
      bad("oppositely oriented parallel edges");
  if (b != q.quiver.b()) bad("edges disagree with the matrix");
  const FaceStructure fs = trace_faces(q);
  std::vector<int> marked(static_cast<std::size_t>(fs.component_count), 0);
  for (Index h : q.outer) {
    if (h < 0 || h >= hn) bad("outer marker out of range");
    if (marked[fs.component[q.origin(h)]]++) bad("two outer markers in one component");
  }
  for (const auto& [t, h] : q.edges)
    if (!marked[fs.component[t]]) bad("component without an outer marker");
  if (!euler_ok(q)) bad("Euler formula fails; the rotation system is not planar");
}

ExchangeMatrix quiver_from_edges(Index n, const std::vector<std::pair<Index, Index>>& edges,
                                 std::vector<std::string> labels) {
  IntMatrix b = IntMatrix::Zero(n, n);
  for (const auto& [t, h] : edges) {
    b(t, h) += 1;
    b(h, t) -= 1;
  }
  return ExchangeMatrix(std::move(b), {}, std::move(labels));
}

}  // namespace quiverlab
