#include "quiverlab/analysis.hpp"

#include "quiverlab/canonical.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <unordered_set>

namespace quiverlab {

namespace {

std::vector<Index> mutable_vertices(const ExchangeMatrix& m) {
  std::vector<Index> out;
  for (Index k = 0; k < m.size(); ++k)
    if (!m.is_frozen(k)) out.push_back(k);
  return out;
}

}  // namespace

ClassReport mutation_class_bfs(const ExchangeMatrix& m, const Budget& budget, const ClassVisitor& visit) {
  ClassReport r;
  r.seed = m;
  const auto ks = mutable_vertices(m);

  std::unordered_set<CanonicalKey> seen;
  std::deque<std::pair<ExchangeMatrix, std::size_t>> queue;
  bool truncated = false;

  auto admit = [&](ExchangeMatrix q, std::size_t depth) {
    if (!seen.insert(canonical_key(q)).second) return;
    r.max_multiplicity = std::max(r.max_multiplicity, max_multiplicity(q));
    r.depth_reached = std::max(r.depth_reached, depth);
    if (visit) visit(q, depth);
    queue.emplace_back(std::move(q), depth);
  };

  if (budget.max_nodes == 0) return r;
  admit(m, 0);
  while (!queue.empty()) {
    auto [q, depth] = std::move(queue.front());
    queue.pop_front();
    ++r.nodes_used;
    if (depth >= budget.max_depth) {
      if (!ks.empty()) truncated = true;
      continue;
    }
    for (Index k : ks) {
      if (seen.size() >= budget.max_nodes) {
        truncated = true;
        break;
      }
      ++r.edges_used;
      admit(mutate(q, k), depth + 1);
    }
    if (truncated && seen.size() >= budget.max_nodes) break;
  }
  r.size = seen.size();
  r.exhausted = !truncated && queue.empty();
  return r;
}

const char* strategy_name(ProbeStrategy s) { return s == ProbeStrategy::Breadth ? "bfs" : "greedy"; }

ProbeStrategy parse_strategy(const std::string& s) {
  if (s == "bfs") return ProbeStrategy::Breadth;
  if (s == "greedy") return ProbeStrategy::Greedy;
  throw QuiverError(ErrorKind::UnknownName, "unknown probe strategy '" + s + "'");
}

namespace {

Integer squared_weight(const ExchangeMatrix& q) {
  Integer s = 0;
  for (Index i = 0; i < q.size(); ++i)
    for (Index j = 0; j < q.size(); ++j) s += q(i, j) * q(i, j);
  return s;
}

// Drop single steps while the target stays reached, until no step can go.
std::vector<Index> shorten(const ExchangeMatrix& m, std::vector<Index> seq, const Integer& target) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = seq.size(); i-- > 0;) {
      auto trial = seq;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      if (max_multiplicity(mutate_seq(m, trial)) >= target) {
        seq = std::move(trial);
        changed = true;
      }
    }
  }
  return seq;
}

}  // namespace

ProbeReport probe_two_universal(const ExchangeMatrix& m, std::size_t max_depth, const Integer& target,
                                std::size_t max_nodes, ProbeStrategy strategy) {
  ProbeReport r;
  r.strategy = strategy;
  r.target = target;
  const auto ks = mutable_vertices(m);

  struct Node {
    ExchangeMatrix q;
    std::size_t depth;
    std::ptrdiff_t parent;
    Index via;
    Integer mult;
    Integer weight;
  };
  std::vector<Node> nodes;
  std::unordered_set<CanonicalKey> seen;
  bool truncated = false;

  auto path_to = [&](std::ptrdiff_t at) {
    std::vector<Index> steps;
    for (; nodes[at].parent >= 0; at = nodes[at].parent) steps.push_back(nodes[at].via);
    std::reverse(steps.begin(), steps.end());
    MutationSequence seq;
    if (strategy == ProbeStrategy::Greedy) {
      seq.steps = shorten(m, std::move(steps), target);
      seq.provenance = "probe2 greedy";
    } else {
      seq.steps = std::move(steps);
      seq.provenance = "probe2 bfs";
    }
    return seq;
  };

  enum Admitted { Seen, Fresh, Hit };
  auto admit = [&](ExchangeMatrix q, std::size_t depth, std::ptrdiff_t parent, Index via) {
    if (!seen.insert(canonical_key(q)).second) return Seen;
    Integer mult = max_multiplicity(q);
    r.best_multiplicity = std::max(r.best_multiplicity, mult);
    r.depth_reached = std::max(r.depth_reached, depth);
    const bool hit = mult >= target;
    Integer weight = strategy == ProbeStrategy::Greedy ? squared_weight(q) : Integer(0);
    nodes.push_back({std::move(q), depth, parent, via, std::move(mult), std::move(weight)});
    return hit ? Hit : Fresh;
  };

  // frontier order: FIFO for breadth, (mult, weight, -id) max-heap for greedy
  auto worse = [&](std::size_t a, std::size_t b) {
    const Node &x = nodes[a], &y = nodes[b];
    if (x.mult != y.mult) return x.mult < y.mult;
    if (x.weight != y.weight) return x.weight < y.weight;
    return a > b;
  };
  std::deque<std::size_t> fifo;
  std::vector<std::size_t> heap;
  auto push = [&](std::size_t id) {
    if (strategy == ProbeStrategy::Breadth) {
      fifo.push_back(id);
    } else {
      heap.push_back(id);
      std::push_heap(heap.begin(), heap.end(), worse);
    }
  };
  auto pop = [&]() -> std::optional<std::size_t> {
    if (strategy == ProbeStrategy::Breadth) {
      if (fifo.empty()) return std::nullopt;
      auto id = fifo.front();
      fifo.pop_front();
      return id;
    }
    if (heap.empty()) return std::nullopt;
    std::pop_heap(heap.begin(), heap.end(), worse);
    auto id = heap.back();
    heap.pop_back();
    return id;
  };

  auto finish = [&](std::ptrdiff_t at) {
    r.sequence = path_to(at);
    r.nodes = nodes.size();
    return r;
  };

  if (admit(m, 0, -1, 0) == Hit) return finish(0);
  push(0);
  while (auto head = pop()) {
    if (nodes[*head].depth >= max_depth) {
      if (!ks.empty()) truncated = true;
      continue;
    }
    for (Index k : ks) {
      if (seen.size() >= max_nodes) {
        truncated = true;
        break;
      }
      // nodes may reallocate inside admit
      ExchangeMatrix child = mutate(nodes[*head].q, k);
      const auto a = admit(std::move(child), nodes[*head].depth + 1, static_cast<std::ptrdiff_t>(*head), k);
      if (a == Hit) return finish(static_cast<std::ptrdiff_t>(nodes.size()) - 1);
      if (a == Fresh) push(nodes.size() - 1);
    }
    if (seen.size() >= max_nodes) break;
  }
  r.nodes = nodes.size();
  r.class_exhausted = !truncated;
  return r;
}

const char* violation_name(ViolationKind k) {
  return k == ViolationKind::FrozenArrow ? "frozen_arrow" : "incoherent_column";
}

IntMatrix c_vectors(const IntMatrix& framed_b, Index n) { return framed_b.block(n, 0, n, n); }

SignCoherenceReport check_sign_coherence(const ExchangeMatrix& m, std::size_t trials, std::size_t max_len,
                                         std::uint64_t seed) {
  SignCoherenceReport r;
  r.seed = seed;
  r.trials = trials;
  r.max_len = max_len;
  const ExchangeMatrix f = framed(m);
  const Index n = m.size();
  const Index total = f.size();
  const auto ks = mutable_vertices(f);
  if (ks.empty()) return r;

  std::mt19937_64 rng(seed);
  std::vector<Index> seq;

  auto record = [&](ViolationKind kind, Index i, Index j) {
    ++r.violation_count;
    if (r.violations.size() < SignCoherenceReport::kMaxStoredViolations) r.violations.push_back({kind, seq, i, j});
  };

  auto check = [&](const WorkingMatrix& w) {
    ++r.states;
    for (Index i = n; i < total; ++i)
      for (Index j = i + 1; j < total; ++j)
        if (w.sign_at(i, j) != 0) record(ViolationKind::FrozenArrow, i, j);
    bool path = false;
    for (Index v = 0; v < n; ++v) {
      bool pos = false, neg = false;
      for (Index i = n; i < total; ++i) {
        const int s = w.sign_at(i, v);
        pos |= s > 0;
        neg |= s < 0;
      }
      if (pos && neg) {
        record(ViolationKind::IncoherentColumn, v, v);
        // a positive entry is an arrow u' -> v, a negative one v -> w'
        path = true;
      }
    }
    if (path) ++r.frozen_paths;
  };

  for (std::size_t t = 0; t < trials; ++t) {
    WorkingMatrix w(f.b());
    seq.clear();
    check(w);
    const std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
    for (std::size_t s = 0; s < len; ++s) {
      Index k;
      // repeating the previous vertex would only undo it
      do {
        k = ks[std::uniform_int_distribution<std::size_t>(0, ks.size() - 1)(rng)];
      } while (ks.size() > 1 && !seq.empty() && k == seq.back());
      w.mutate(k);
      seq.push_back(k);
      check(w);
    }
  }
  return r;
}

std::optional<std::vector<Index>> find_full_subquiver(const ExchangeMatrix& haystack, const ExchangeMatrix& needle) {
  const Index n = haystack.size(), p = needle.size();
  if (p > n) return std::nullopt;
  if (p == 0) return std::vector<Index>{};

  using Profile = std::map<Integer, Index>;
  auto profile = [](const ExchangeMatrix& m, Index v) {
    Profile out;
    for (Index j = 0; j < m.size(); ++j)
      if (m(v, j) != 0) ++out[m(v, j)];
    return out;
  };
  // every nonzero value must occur at least as often in the candidate's row
  auto dominates = [](const Profile& big, const Profile& small) {
    for (const auto& [value, count] : small) {
      auto it = big.find(value);
      if (it == big.end() || it->second < count) return false;
    }
    return true;
  };
  std::vector<Profile> hp(n), np(p);
  for (Index v = 0; v < n; ++v) hp[v] = profile(haystack, v);
  for (Index t = 0; t < p; ++t) np[t] = profile(needle, t);

  // Needle order: each next vertex has the most neighbors among those placed,
  // ties broken by degree.
  std::vector<Index> order;
  std::vector<char> placed(p, 0);
  for (Index step = 0; step < p; ++step) {
    Index best = -1;
    std::pair<Index, Index> best_score{-1, -1};
    for (Index t = 0; t < p; ++t) {
      if (placed[t]) continue;
      Index links = 0, degree = 0;
      for (Index s = 0; s < p; ++s) {
        if (needle(t, s) == 0) continue;
        ++degree;
        if (placed[s]) ++links;
      }
      if (std::pair{links, degree} > best_score) best_score = {links, degree}, best = t;
    }
    placed[best] = 1;
    order.push_back(best);
  }

  std::vector<Index> image(p, -1);
  std::vector<char> used(n, 0);
  auto fits = [&](Index depth, Index h) {
    const Index t = order[depth];
    if (used[h] || haystack.is_frozen(h) != needle.is_frozen(t)) return false;
    if (!dominates(hp[h], np[t])) return false;
    for (Index d = 0; d < depth; ++d) {
      const Index s = order[d];
      if (haystack(h, image[s]) != needle(t, s)) return false;
    }
    return true;
  };
  std::function<bool(Index)> extend = [&](Index depth) {
    if (depth == p) return true;
    for (Index h = 0; h < n; ++h) {
      if (!fits(depth, h)) continue;
      image[order[depth]] = h;
      used[h] = 1;
      if (extend(depth + 1)) return true;
      used[h] = 0;
    }
    image[order[depth]] = -1;
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return image;
}

}  // namespace quiverlab
