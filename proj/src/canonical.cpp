#include "quiverlab/canonical.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace quiverlab {

namespace {

// Entries replaced by order-preserving ranks so the search works on ints.
struct RankGraph {
  Index n = 0;
  std::vector<int> r;  // n*n ranks
  std::vector<int> frozen;
  int at(Index i, Index j) const { return r[static_cast<std::size_t>(i * n + j)]; }
};

struct RankTable {
  std::vector<Integer> values;  // sorted distinct entries
  int zero = 0;
};

RankTable make_table(const std::vector<const ExchangeMatrix*>& ms) {
  RankTable t;
  t.values.push_back(Integer(0));
  for (const auto* m : ms)
    for (Index i = 0; i < m->size(); ++i)
      for (Index j = 0; j < m->size(); ++j) t.values.push_back((*m)(i, j));
  std::sort(t.values.begin(), t.values.end());
  t.values.erase(std::unique(t.values.begin(), t.values.end()), t.values.end());
  t.zero = static_cast<int>(std::lower_bound(t.values.begin(), t.values.end(), Integer(0)) - t.values.begin());
  return t;
}

RankGraph make_graph(const ExchangeMatrix& m, const RankTable& t) {
  RankGraph g;
  g.n = m.size();
  g.r.resize(static_cast<std::size_t>(g.n * g.n));
  for (Index i = 0; i < g.n; ++i)
    for (Index j = 0; j < g.n; ++j)
      g.r[static_cast<std::size_t>(i * g.n + j)] = static_cast<int>(
          std::lower_bound(t.values.begin(), t.values.end(), m(i, j)) - t.values.begin());
  g.frozen.assign(static_cast<std::size_t>(g.n), 0);
  for (Index f : m.frozen()) g.frozen[f] = 1;
  return g;
}

using Cells = std::vector<int>;

// Refines all graphs together so cell ids are comparable between them.
// Returns the number of distinct cells.
int refine(const std::vector<const RankGraph*>& gs, int zero, std::vector<Cells>& cells) {
  int count = -1;
  for (;;) {
    std::vector<std::vector<int>> sigs;
    std::vector<std::pair<std::size_t, Index>> owner;
    for (std::size_t a = 0; a < gs.size(); ++a) {
      const RankGraph& g = *gs[a];
      for (Index v = 0; v < g.n; ++v) {
        std::vector<std::array<int, 3>> nb;
        for (Index w = 0; w < g.n; ++w)
          if (w != v && (g.at(v, w) != zero || g.at(w, v) != zero))
            nb.push_back({cells[a][w], g.at(v, w), g.at(w, v)});
        std::sort(nb.begin(), nb.end());
        std::vector<int> s;
        s.reserve(1 + 3 * nb.size());
        s.push_back(cells[a][v]);
        for (const auto& x : nb) s.insert(s.end(), x.begin(), x.end());
        sigs.push_back(std::move(s));
        owner.emplace_back(a, v);
      }
    }
    std::vector<std::size_t> idx(sigs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return sigs[x] < sigs[y]; });
    int id = -1;
    for (std::size_t p = 0; p < idx.size(); ++p) {
      if (p == 0 || sigs[idx[p]] != sigs[idx[p - 1]]) ++id;
      cells[owner[idx[p]].first][owner[idx[p]].second] = id;
    }
    if (id + 1 == count) return count;
    count = id + 1;
  }
}

Cells individualize(const Cells& c, Index v) {
  Cells out(c.size());
  for (std::size_t x = 0; x < c.size(); ++x)
    out[x] = 2 * c[x] + ((c[x] == c[v] && static_cast<Index>(x) != v) ? 1 : 0);
  return out;
}

// First cell (by id) with more than one vertex, or -1.
int target_cell(const Cells& c) {
  std::map<int, int> size;
  for (int x : c) ++size[x];
  for (const auto& [id, s] : size)
    if (s > 1) return id;
  return -1;
}

class CanonicalSearch {
 public:
  CanonicalSearch(const RankGraph& g, int zero) : g_(g), zero_(zero) {}

  std::vector<Index> run() {
    Cells c(static_cast<std::size_t>(g_.n));
    for (Index v = 0; v < g_.n; ++v) c[v] = g_.frozen[v];
    std::vector<Index> path;
    search(c, path);
    return best_order_;
  }

 private:
  // Returns the depth to unwind to, or -1 to keep going.
  int search(Cells c, std::vector<Index>& path) {
    std::vector<const RankGraph*> gs{&g_};
    std::vector<Cells> cs{std::move(c)};
    refine(gs, zero_, cs);
    const Cells& cells = cs[0];
    const int t = target_cell(cells);
    const int depth = static_cast<int>(path.size());
    if (t < 0) return leaf(cells, path);
    for (Index v = 0; v < g_.n; ++v) {
      if (cells[v] != t) continue;
      path.push_back(v);
      const int r = search(individualize(cells, v), path);
      path.pop_back();
      if (r >= 0 && r < depth) return r;
    }
    return -1;
  }

  int leaf(const Cells& cells, const std::vector<Index>& path) {
    std::vector<Index> order(static_cast<std::size_t>(g_.n));
    for (Index v = 0; v < g_.n; ++v) order[cells[v]] = v;
    std::vector<int> flat;
    flat.reserve(static_cast<std::size_t>(g_.n * (g_.n + 1)));
    for (Index p = 0; p < g_.n; ++p) flat.push_back(g_.frozen[order[p]]);
    for (Index p = 0; p < g_.n; ++p)
      for (Index q = 0; q < g_.n; ++q) flat.push_back(g_.at(order[p], order[q]));
    if (first_.empty()) {
      first_ = flat;
      first_path_ = path;
      first_order_ = order;
      best_ = std::move(flat);
      best_path_ = path;
      best_order_ = std::move(order);
      return -1;
    }
    // An equal leaf exposes an automorphism. If it carries the earlier path
    // onto this one, the rest of this subtree mirrors one already explored.
    if (flat == first_) return backjump(first_order_, first_path_, order, path);
    if (flat < best_) {
      best_ = std::move(flat);
      best_path_ = path;
      best_order_ = std::move(order);
      return -1;
    }
    if (flat == best_) return backjump(best_order_, best_path_, order, path);
    return -1;
  }

  static int backjump(const std::vector<Index>& old_order, const std::vector<Index>& old_path,
                      const std::vector<Index>& order, const std::vector<Index>& path) {
    std::size_t k = 0;
    while (k < path.size() && k < old_path.size() && path[k] == old_path[k]) ++k;
    if (k >= path.size() || k >= old_path.size()) return -1;
    std::vector<Index> gamma(order.size());
    for (std::size_t p = 0; p < order.size(); ++p) gamma[old_order[p]] = order[p];
    for (std::size_t i = 0; i <= k; ++i)
      if (gamma[old_path[i]] != path[i]) return -1;
    return static_cast<int>(k);
  }

  const RankGraph& g_;
  int zero_;
  std::vector<int> first_, best_;
  std::vector<Index> first_path_, first_order_, best_path_, best_order_;
};

class IsoSearch {
 public:
  IsoSearch(const RankGraph& a, const RankGraph& b, int zero) : a_(a), b_(b), zero_(zero) {}

  std::optional<std::vector<Index>> run() {
    Cells ca(static_cast<std::size_t>(a_.n)), cb(static_cast<std::size_t>(b_.n));
    for (Index v = 0; v < a_.n; ++v) ca[v] = a_.frozen[v];
    for (Index v = 0; v < b_.n; ++v) cb[v] = b_.frozen[v];
    return search(std::move(ca), std::move(cb));
  }

 private:
  std::optional<std::vector<Index>> search(Cells ca, Cells cb) {
    std::vector<const RankGraph*> gs{&a_, &b_};
    std::vector<Cells> cs{std::move(ca), std::move(cb)};
    refine(gs, zero_, cs);
    std::vector<int> sa(cs[0]), sb(cs[1]);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
    const int t = target_cell(cs[0]);
    if (t < 0) {
      std::vector<Index> where(static_cast<std::size_t>(b_.n));
      for (Index w = 0; w < b_.n; ++w) where[cs[1][w]] = w;
      std::vector<Index> perm(static_cast<std::size_t>(a_.n));
      for (Index v = 0; v < a_.n; ++v) perm[v] = where[cs[0][v]];
      for (Index i = 0; i < a_.n; ++i) {
        if (a_.frozen[i] != b_.frozen[perm[i]]) return std::nullopt;
        for (Index j = 0; j < a_.n; ++j)
          if (a_.at(i, j) != b_.at(perm[i], perm[j])) return std::nullopt;
      }
      return perm;
    }
    Index v = 0;
    while (cs[0][v] != t) ++v;
    for (Index w = 0; w < b_.n; ++w) {
      if (cs[1][w] != t) continue;
      if (auto r = search(individualize(cs[0], v), individualize(cs[1], w))) return r;
    }
    return std::nullopt;
  }

  const RankGraph& a_;
  const RankGraph& b_;
  int zero_;
};

}  // namespace

CanonicalForm canonical_form(const ExchangeMatrix& m) {
  const RankTable t = make_table({&m});
  const RankGraph g = make_graph(m, t);
  CanonicalForm out;
  out.order = CanonicalSearch(g, t.zero).run();
  std::string& s = out.key.bytes;
  s = std::to_string(m.size()) + "|";
  for (Index p = 0; p < m.size(); ++p) s += m.is_frozen(out.order[p]) ? 'f' : 'm';
  s += '|';
  for (Index p = 0; p < m.size(); ++p)
    for (Index q = 0; q < m.size(); ++q) {
      s += m(out.order[p], out.order[q]).str();
      s += ',';
    }
  return out;
}

CanonicalKey canonical_key(const ExchangeMatrix& m) { return canonical_form(m).key; }

std::optional<std::vector<Index>> is_isomorphic(const ExchangeMatrix& m1, const ExchangeMatrix& m2) {
  if (m1.size() != m2.size())
    throw QuiverError(ErrorKind::SizeMismatch,
                      "sizes differ: " + std::to_string(m1.size()) + " vs " + std::to_string(m2.size()));
  if (m1.frozen().size() != m2.frozen().size()) return std::nullopt;
  const RankTable t = make_table({&m1, &m2});
  const RankGraph a = make_graph(m1, t), b = make_graph(m2, t);
  return IsoSearch(a, b, t.zero).run();
}

ExchangeMatrix permuted(const ExchangeMatrix& m, const std::vector<Index>& perm) {
  const Index n = m.size();
  if (static_cast<Index>(perm.size()) != n) throw QuiverError(ErrorKind::SizeMismatch, "permutation size");
  IntMatrix b(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) b(perm[i], perm[j]) = m(i, j);
  std::vector<Index> frozen;
  for (Index f : m.frozen()) frozen.push_back(perm[f]);
  std::vector<std::string> labels;
  if (m.has_labels()) {
    labels.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) labels[perm[i]] = m.labels()[i];
  }
  return ExchangeMatrix(std::move(b), std::move(frozen), std::move(labels));
}

}  // namespace quiverlab
