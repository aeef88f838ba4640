#include "quiverlab/drawing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace quiverlab {

namespace {

[[noreturn]] void non_generic(const std::string& msg, std::vector<long long> where = {}) {
  throw QuiverError(ErrorKind::NonGenericDrawing, msg, std::move(where));
}

// Floating-point boxes only prune pairs that are far apart; every decision
// is made exactly.
struct Box {
  double x0, x1, y0, y1;
  bool meets(const Box& o) const {
    constexpr double eps = 1e-9;
    return x0 <= o.x1 + eps && o.x0 <= x1 + eps && y0 <= o.y1 + eps && o.y0 <= y1 + eps;
  }
};

Box box_of(const Point& a, const Point& b) {
  const double ax = a.x.convert_to<double>(), ay = a.y.convert_to<double>();
  const double bx = b.x.convert_to<double>(), by = b.y.convert_to<double>();
  return {std::min(ax, bx), std::max(ax, bx), std::min(ay, by), std::max(ay, by)};
}

std::vector<Box> arrow_boxes(const Drawing& d) {
  std::vector<Box> out;
  for (const auto& a : d.arrows) out.push_back(box_of(d.points[a.tail], d.points[a.head]));
  return out;
}

Rational dyadic(double x, long long scale) {
  return Rational(static_cast<long long>(std::llround(x * static_cast<double>(scale))), scale);
}

}  // namespace

ExchangeMatrix Drawing::quiver() const {
  const Index n = size();
  IntMatrix b = IntMatrix::Zero(n, n);
  for (const auto& a : arrows) {
    b(a.tail, a.head) += a.mult;
    b(a.head, a.tail) -= a.mult;
  }
  return ExchangeMatrix(std::move(b), {}, labels);
}

long long Drawing::arrow_total() const {
  long long s = 0;
  for (const auto& a : arrows) s += a.mult;
  return s;
}

std::vector<Crossing> find_crossings(const Drawing& d) {
  const Index n = d.size();
  {
    std::vector<Point> sorted(d.points);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) non_generic("two vertices share a point");
  }
  std::vector<std::pair<Index, Index>> pairs;
  for (std::size_t i = 0; i < d.arrows.size(); ++i) {
    const auto& a = d.arrows[i];
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n || a.tail == a.head || a.mult < 1)
      non_generic("malformed arrow", {static_cast<long long>(i)});
    pairs.emplace_back(std::min(a.tail, a.head), std::max(a.tail, a.head));
  }
  std::sort(pairs.begin(), pairs.end());
  if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end())
    non_generic("two arrows join the same pair of vertices; use a multiplicity");

  const auto boxes = arrow_boxes(d);
  std::vector<Box> point_boxes;
  for (const auto& p : d.points) point_boxes.push_back(box_of(p, p));
  for (std::size_t i = 0; i < d.arrows.size(); ++i) {
    const auto& a = d.arrows[i];
    for (Index v = 0; v < n; ++v)
      if (v != a.tail && v != a.head && boxes[i].meets(point_boxes[v]) &&
          on_segment(d.points[a.tail], d.points[a.head], d.points[v]))
        non_generic("vertex " + std::to_string(v + 1) + " lies on an arrow", {v});
  }

  std::vector<Crossing> out;
  for (std::size_t i = 0; i < d.arrows.size(); ++i)
    for (std::size_t j = i + 1; j < d.arrows.size(); ++j) {
      if (!boxes[i].meets(boxes[j])) continue;
      const auto& x = d.arrows[i];
      const auto& y = d.arrows[j];
      const Point &p1 = d.points[x.tail], &p2 = d.points[x.head];
      const Point &q1 = d.points[y.tail], &q2 = d.points[y.head];
      const Index shared = (x.tail == y.tail || x.tail == y.head) ? x.tail
                           : (x.head == y.tail || x.head == y.head) ? x.head
                                                                     : -1;
      if (shared >= 0) {
        const Point& s = d.points[shared];
        const Point& ox = d.points[shared == x.tail ? x.head : x.tail];
        const Point& oy = d.points[shared == y.tail ? y.head : y.tail];
        if (orient(s, ox, oy) == 0 && dot(ox - s, oy - s) > 0) non_generic("overlapping arrows");
        continue;
      }
      const int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
      const int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
      if (o1 == 0 && o2 == 0) {
        // collinear; endpoints are not on each other, so overlap means containment
        if (on_segment(p1, p2, q1) || on_segment(q1, q2, p1)) non_generic("overlapping arrows");
        continue;
      }
      if (o1 * o2 >= 0 || o3 * o4 >= 0) continue;
      if (x.mult > 1 || y.mult > 1)
        non_generic("a multiple arrow takes part in a crossing", {static_cast<long long>(i), static_cast<long long>(j)});
      const Point r = p2 - p1, s = q2 - q1;
      const Rational den = cross(r, s);
      const Rational t = cross(q1 - p1, s) / den;
      const Rational u = cross(q1 - p1, r) / den;
      Crossing c;
      c.at = p1 + t * r;
      if (den > 0) {
        c.first = i, c.second = j, c.t_first = t, c.t_second = u;
      } else {
        c.first = j, c.second = i, c.t_first = u, c.t_second = t;
      }
      out.push_back(std::move(c));
    }
  std::vector<Point> at;
  for (const auto& c : out) at.push_back(c.at);
  std::sort(at.begin(), at.end());
  if (std::adjacent_find(at.begin(), at.end()) != at.end()) non_generic("three arrows pass through one point");
  return out;
}

namespace {

// Gadget vertex roles, in id order.
enum Role { A = 0, B = 1, C = 2, D = 3, E = 4 };

Drawing build_resolved(const Drawing& d, const std::vector<Crossing>& xs,
                       const std::vector<std::pair<Rational, Rational>>& scale) {
  Drawing out;
  out.points = d.points;
  out.labels = d.labels;
  if (out.labels.empty())
    for (Index v = 0; v < d.size(); ++v) out.labels.push_back(std::to_string(v + 1));
  const Index k = d.size();
  auto id = [k](std::size_t c, Role r) { return k + 5 * static_cast<Index>(c) + r; };
  static const char* names = "abcde";
  for (std::size_t c = 0; c < xs.size(); ++c) {
    const auto& x = xs[c];
    const Point ra = d.points[d.arrows[x.first].head] - d.points[d.arrows[x.first].tail];
    const Point rb = d.points[d.arrows[x.second].head] - d.points[d.arrows[x.second].tail];
    const auto& [sa, sb] = scale[c];
    out.points.push_back(x.at - sa * ra);
    out.points.push_back(x.at + sb * rb);
    out.points.push_back(x.at + sa * ra);
    out.points.push_back(x.at - sb * rb);
    out.points.push_back(x.at);
    for (int r = 0; r < 5; ++r) out.labels.push_back("x" + std::to_string(c + 1) + "." + names[r]);
  }
  // crossings met along each arrow
  std::vector<std::vector<std::pair<Rational, std::size_t>>> along(d.arrows.size());
  for (std::size_t c = 0; c < xs.size(); ++c) {
    along[xs[c].first].emplace_back(xs[c].t_first, c);
    along[xs[c].second].emplace_back(xs[c].t_second, c);
  }
  for (std::size_t i = 0; i < d.arrows.size(); ++i) {
    auto& list = along[i];
    std::sort(list.begin(), list.end());
    Index prev = d.arrows[i].tail;
    for (const auto& [t, c] : list) {
      const bool first = xs[c].first == i;
      out.arrows.push_back({prev, id(c, first ? A : D), 1});
      prev = id(c, first ? C : B);
    }
    out.arrows.push_back({prev, d.arrows[i].head, d.arrows[i].mult});
  }
  for (std::size_t c = 0; c < xs.size(); ++c) {
    out.arrows.push_back({id(c, A), id(c, E), 1});
    out.arrows.push_back({id(c, E), id(c, C), 1});
    out.arrows.push_back({id(c, D), id(c, E), 1});
    out.arrows.push_back({id(c, E), id(c, B), 1});
    out.arrows.push_back({id(c, B), id(c, A), 1});
    out.arrows.push_back({id(c, C), id(c, D), 1});
  }
  return out;
}

bool segments_cross(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
  const int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  // touching counts as a conflict for the gadget check
  return (o1 == 0 && on_segment(p1, p2, q1)) || (o2 == 0 && on_segment(p1, p2, q2)) ||
         (o3 == 0 && on_segment(q1, q2, p1)) || (o4 == 0 && on_segment(q1, q2, p2));
}

}  // namespace

ResolvedDrawing resolve_crossings(const Drawing& d) {
  const auto xs = find_crossings(d);
  ResolvedDrawing out;
  out.crossings = static_cast<Index>(xs.size());
  if (xs.empty()) {
    out.drawing = d;
    out.matrix = d.quiver();
    return out;
  }
  // Initial gadget size: a third of the gap to the nearest other event
  // along each of the two arrows.
  std::vector<std::vector<Rational>> events(d.arrows.size(), std::vector<Rational>{Rational(0), Rational(1)});
  for (const auto& x : xs) {
    events[x.first].push_back(x.t_first);
    events[x.second].push_back(x.t_second);
  }
  auto gap = [&events](std::size_t arrow, const Rational& t) {
    Rational g = 1;
    for (const auto& s : events[arrow])
      if (s != t) g = std::min(g, mp::abs(s - t));
    return g / 3;
  };
  std::vector<std::pair<Rational, Rational>> scale;
  for (const auto& x : xs) scale.emplace_back(gap(x.first, x.t_first), gap(x.second, x.t_second));

  const Index k = d.size();
  for (int round = 0;; ++round) {
    out.drawing = build_resolved(d, xs, scale);
    // The chords b-a and c-d are the only segments that leave the original
    // arrows; shrink any gadget whose chords hit something.
    std::vector<char> shrink(xs.size(), 0);
    const auto& P = out.drawing.points;
    const auto boxes = arrow_boxes(out.drawing);
    for (std::size_t c = 0; c < xs.size(); ++c) {
      const Index base = k + 5 * static_cast<Index>(c);
      const std::pair<Index, Index> chords[2] = {{base + B, base + A}, {base + C, base + D}};
      Box local = box_of(P[base + A], P[base + C]);
      const Box other = box_of(P[base + B], P[base + D]);
      local = {std::min(local.x0, other.x0), std::max(local.x1, other.x1), std::min(local.y0, other.y0),
               std::max(local.y1, other.y1)};
      for (const auto& [p, q] : chords)
        for (std::size_t ai = 0; ai < out.drawing.arrows.size(); ++ai) {
          const auto& a = out.drawing.arrows[ai];
          if (!local.meets(boxes[ai])) continue;
          if (a.tail == p || a.tail == q || a.head == p || a.head == q) continue;
          if (segments_cross(P[p], P[q], P[a.tail], P[a.head])) shrink[c] = 1;
        }
      for (Index v = 0; v < out.drawing.size(); ++v) {
        if (v >= base && v < base + 5) continue;
        if (!local.meets(box_of(P[v], P[v]))) continue;
        // nothing may sit inside the gadget triangles
        const Index tri[2][3] = {{base + E, base + B, base + A}, {base + E, base + C, base + D}};
        for (const auto& t : tri) {
          const int s1 = orient(P[t[0]], P[t[1]], P[v]), s2 = orient(P[t[1]], P[t[2]], P[v]),
                    s3 = orient(P[t[2]], P[t[0]], P[v]);
          if ((s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0)) shrink[c] = 1;
        }
      }
    }
    if (std::none_of(shrink.begin(), shrink.end(), [](char x) { return x != 0; })) break;
    if (round > 64) non_generic("could not place crossing gadgets");
    for (std::size_t c = 0; c < xs.size(); ++c)
      if (shrink[c]) scale[c] = {scale[c].first / 2, scale[c].second / 2};
  }
  out.matrix = out.drawing.quiver();
  for (std::size_t c = 0; c < xs.size(); ++c) {
    const Index base = k + 5 * static_cast<Index>(c);
    for (Role r : {E, A, B, C, D}) out.plan.steps.push_back({base + r, {base + r}});
  }
  return out;
}

PlanarQuiver planar_quiver_from_drawing(const Drawing& d) {
  if (!find_crossings(d).empty()) non_generic("drawing has crossings");
  const Index n = d.size();
  PlanarQuiver q;
  std::vector<std::pair<std::size_t, Index>> first_edge;  // per drawn arrow
  for (std::size_t i = 0; i < d.arrows.size(); ++i) {
    first_edge.emplace_back(i, static_cast<Index>(q.edges.size()));
    for (long long c = 0; c < d.arrows[i].mult; ++c) q.edges.emplace_back(d.arrows[i].tail, d.arrows[i].head);
  }
  q.quiver = quiver_from_edges(n, q.edges, d.labels);
  q.rotation.assign(static_cast<std::size_t>(n), {});
  std::vector<std::vector<std::size_t>> incident(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < d.arrows.size(); ++i) {
    incident[d.arrows[i].tail].push_back(i);
    incident[d.arrows[i].head].push_back(i);
  }
  auto direction = [&d](std::size_t i, Index v) {
    const auto& a = d.arrows[i];
    return d.points[a.tail == v ? a.head : a.tail] - d.points[v];
  };
  for (Index v = 0; v < n; ++v) {
    auto& inc = incident[v];
    std::sort(inc.begin(), inc.end(),
              [&](std::size_t x, std::size_t y) { return angle_less(direction(x, v), direction(y, v)); });
    for (std::size_t i : inc) {
      const Index e0 = first_edge[i].second;
      const long long k = d.arrows[i].mult;
      // parallel copies run in opposite orders at the two ends
      if (d.arrows[i].tail == v)
        for (long long c = 0; c < k; ++c) q.rotation[v].push_back(2 * (e0 + c));
      else
        for (long long c = k - 1; c >= 0; --c) q.rotation[v].push_back(2 * (e0 + c) + 1);
    }
  }
  // Outer marker per component: at its lowest (then leftmost) vertex the
  // downward direction lies in the unbounded face.
  FaceStructure fs = trace_faces(q);
  std::vector<Index> lowest(static_cast<std::size_t>(fs.component_count), -1);
  for (Index v = 0; v < n; ++v) {
    Index& l = lowest[fs.component[v]];
    if (l < 0 || d.points[v] < d.points[l]) l = v;
  }
  const Point down{Rational(0), Rational(-1)};
  for (Index v : lowest) {
    const auto& r = q.rotation[v];
    if (r.empty()) continue;
    Index pick = r.back();
    for (Index h : r) {
      const auto& [t, hd] = q.edges[h / 2];
      const Point dir = d.points[t == v ? hd : t] - d.points[v];
      if (angle_less(dir, down)) pick = h;
    }
    q.outer.push_back(pick);
  }
  validate(q);
  return q;
}

PlanarUniversal planar_universal(Index n) {
  if (n < 2) throw QuiverError(ErrorKind::BadParameters, "need n >= 2");
  const ExchangeMatrix glued = glue_universal(CoreKind::Somos, n);
  const Core core = make_core(CoreKind::Somos);
  // Local coordinates of the unmarked vertices along the chord u -> v, in
  // units of the chord vector and its left normal.
  const Rational delta(1, 256);
  const std::array<std::pair<Rational, Rational>, 4> local{{
      {8 * delta, 0},              // 1
      {5 * delta, -delta / 2},     // 2
      {5 * delta, delta / 2},      // 3
      {6 * delta, 0},              // 4
  }};
  for (int attempt = 0;; ++attempt) {
    Drawing d;
    d.labels = glued.labels();
    for (Index a = 0; a < n; ++a) {
      const double theta = 2 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(n) + 0.3 +
                           0.01 * std::sin(1.7 * static_cast<double>(a * (attempt + 3)));
      d.points.push_back({dyadic(std::cos(theta), 1 << 20), dyadic(std::sin(theta), 1 << 20)});
    }
    const auto pairs = base_pairs(n);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const Point u = d.points[pairs[p].first], v = d.points[pairs[p].second];
      const Point dv = v - u, nv{-dv.y, dv.x};
      for (const auto& [x, y] : local) d.points.push_back(u + x * dv + y * nv);
    }
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      std::array<Index, 6> at{};
      for (Index t = 0; t < 4; ++t) at[core.unmarked[t]] = copy_offset(n, static_cast<Index>(p)) + t;
      at[core.u] = pairs[p].first;
      at[core.v] = pairs[p].second;
      for (Index x = 0; x < 6; ++x)
        for (Index y = 0; y < 6; ++y)
          if (core.quiver(x, y) > 0) d.arrows.push_back({at[x], at[y], static_cast<long long>(core.quiver(x, y))});
    }
    try {
      PlanarUniversal out;
      out.resolved = resolve_crossings(d);
      out.glued = std::move(d);
      out.embedding = planar_quiver_from_drawing(out.resolved.drawing);
      return out;
    } catch (const QuiverError& e) {
      if (e.kind() != ErrorKind::NonGenericDrawing || attempt > 20) throw;
    }
  }
}

}  // namespace quiverlab
