#include "quiverlab/constructions.hpp"

#include <algorithm>
#include <map>
#include <regex>

namespace quiverlab {

namespace {

struct Arrow {
  const char* tail;
  const char* head;
  int mult;
};

const std::vector<std::string> kCoreLabels{"1", "2", "3", "4", "u", "v"};

ExchangeMatrix from_arrows(const std::vector<std::string>& labels, const std::vector<Arrow>& arrows) {
  std::map<std::string, Index> at;
  for (std::size_t i = 0; i < labels.size(); ++i) at[labels[i]] = static_cast<Index>(i);
  const Index n = static_cast<Index>(labels.size());
  IntMatrix b = IntMatrix::Zero(n, n);
  for (const auto& a : arrows) {
    b(at.at(a.tail), at.at(a.head)) += a.mult;
    b(at.at(a.head), at.at(a.tail)) -= a.mult;
  }
  return ExchangeMatrix(std::move(b), {}, labels);
}

// Hand transcriptions; the tests check the Somos core against the
// 6x6 block of the universal matrix.
const std::vector<Arrow> kSomosArrows{
    {"2", "u", 1}, {"3", "v", 1}, {"u", "3", 1}, {"v", "2", 1}, {"2", "1", 1}, {"4", "3", 1},
    {"4", "1", 1}, {"1", "3", 2}, {"2", "4", 2}, {"3", "2", 3},
};

const std::vector<Arrow> kDouble4Arrows{
    {"4", "1", 2}, {"2", "3", 2}, {"3", "4", 2}, {"1", "2", 2}, {"4", "u", 1}, {"u", "1", 1},
    {"3", "v", 1}, {"v", "2", 1}, {"v", "4", 1}, {"1", "v", 1}, {"2", "u", 1}, {"u", "3", 1},
};

}  // namespace

const char* core_name(CoreKind c) { return c == CoreKind::Somos ? "somos" : "double4"; }

CoreKind parse_core(const std::string& s) {
  if (s == "somos" || s == "extended_somos4") return CoreKind::Somos;
  if (s == "double4" || s == "double_four_cycle") return CoreKind::Double4;
  throw QuiverError(ErrorKind::UnknownName, "unknown core '" + s + "'");
}

Core make_core(CoreKind kind) {
  return Core{kind, from_arrows(kCoreLabels, kind == CoreKind::Somos ? kSomosArrows : kDouble4Arrows)};
}

ExchangeMatrix grid_quiver(Index k, Index l) {
  if (k < 1 || l < 1) throw QuiverError(ErrorKind::BadParameters, "grid sides must be positive");
  const Index n = k * l;
  IntMatrix b = IntMatrix::Zero(n, n);
  std::vector<std::string> labels;
  auto id = [l](Index r, Index c) { return r * l + c; };
  auto add = [&b](Index x, Index y) {
    b(x, y) += 1;
    b(y, x) -= 1;
  };
  for (Index r = 0; r < k; ++r)
    for (Index c = 0; c < l; ++c) {
      labels.push_back(std::to_string(r + 1) + "," + std::to_string(c + 1));
      const bool even = (r + c) % 2 == 0;
      // rows run from even to odd, columns from odd to even
      if (c + 1 < l) even ? add(id(r, c), id(r, c + 1)) : add(id(r, c + 1), id(r, c));
      if (r + 1 < k) even ? add(id(r + 1, c), id(r, c)) : add(id(r, c), id(r + 1, c));
    }
  return ExchangeMatrix(std::move(b), {}, std::move(labels));
}

ExchangeMatrix kronecker_quiver(long long m) {
  if (m < 0) throw QuiverError(ErrorKind::BadParameters, "multiplicity must be nonnegative");
  IntMatrix b = IntMatrix::Zero(2, 2);
  b(0, 1) = m;
  b(1, 0) = -m;
  return ExchangeMatrix(std::move(b));
}

ExchangeMatrix named_quiver(const std::string& name) {
  if (name == "extended_somos4") return make_core(CoreKind::Somos).quiver;
  if (name == "double_four_cycle") return make_core(CoreKind::Double4).quiver;
  if (name == "markov") return from_arrows({"1", "2", "3"}, {{"1", "2", 2}, {"2", "3", 2}, {"3", "1", 2}});
  if (name == "two_universal_3") return from_arrows({"1", "2", "3"}, {{"1", "2", 1}, {"2", "3", 2}});
  std::smatch mm;
  static const std::regex grid(R"(grid\((-?\d+),(-?\d+)\))"), kron(R"(kronecker\((-?\d+)\))");
  if (std::regex_match(name, mm, grid)) return grid_quiver(std::stoll(mm[1]), std::stoll(mm[2]));
  if (std::regex_match(name, mm, kron)) return kronecker_quiver(std::stoll(mm[1]));
  if (name.rfind("grid", 0) == 0 || name.rfind("kronecker", 0) == 0)
    throw QuiverError(ErrorKind::BadParameters, "expected grid(k,l) or kronecker(m), got '" + name + "'");
  throw QuiverError(ErrorKind::UnknownName, "unknown quiver '" + name + "'");
}

std::vector<std::pair<Index, Index>> base_pairs(Index n) {
  std::vector<std::pair<Index, Index>> out;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

namespace {

std::vector<std::string> universal_labels(Index n) {
  std::vector<std::string> labels;
  for (Index i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
  for (auto [i, j] : base_pairs(n))
    for (int t = 1; t <= 4; ++t)
      labels.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(t) + ")");
  return labels;
}

}  // namespace

ExchangeMatrix glue_universal(const GluingSpec& spec) {
  const Index n = spec.n;
  if (n < 2) throw QuiverError(ErrorKind::InvalidSpec, "need at least two base vertices");
  const auto pairs = base_pairs(n);
  if (!spec.flipped.empty() && spec.flipped.size() != pairs.size())
    throw QuiverError(ErrorKind::InvalidSpec, "orientation list must have one entry per pair");
  const Core core = make_core(spec.core);
  const Index total = n + 4 * static_cast<Index>(pairs.size());
  IntMatrix b = IntMatrix::Zero(total, total);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const bool flip = !spec.flipped.empty() && spec.flipped[p];
    std::array<Index, 6> at{};
    for (Index t = 0; t < 4; ++t) at[core.unmarked[t]] = copy_offset(n, static_cast<Index>(p)) + t;
    at[core.u] = flip ? pairs[p].second : pairs[p].first;
    at[core.v] = flip ? pairs[p].first : pairs[p].second;
    for (Index x = 0; x < 6; ++x)
      for (Index y = 0; y < 6; ++y) b(at[x], at[y]) += core.quiver(x, y);
  }
  return ExchangeMatrix(std::move(b), {}, universal_labels(n));
}

ExchangeMatrix glue_universal(CoreKind core, Index n) { return glue_universal(GluingSpec{core, n, {}}); }

ExchangeMatrix d_universal_matrix(const Symmetrizer& d) {
  const Index n = d.size();
  if (n < 2) throw QuiverError(ErrorKind::InvalidSpec, "need at least two base vertices");
  for (const auto& x : d.d)
    if (x < 1) throw QuiverError(ErrorKind::InvalidSpec, "symmetrizer entries must be positive");
  const Core core = make_core(CoreKind::Somos);
  const auto pairs = base_pairs(n);
  const Index total = n + 4 * static_cast<Index>(pairs.size());
  IntMatrix b = IntMatrix::Zero(total, total);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    std::array<Index, 6> at{};
    std::array<Integer, 6> h{1, 1, 1, 1, 1, 1};
    for (Index t = 0; t < 4; ++t) at[core.unmarked[t]] = copy_offset(n, static_cast<Index>(p)) + t;
    at[core.u] = i;
    at[core.v] = j;
    // columns of the block are scaled by diag(h_ji, h_ij, 1, 1, 1, 1)
    h[core.u] = h_factor(d, j, i);
    h[core.v] = h_factor(d, i, j);
    for (Index x = 0; x < 6; ++x)
      for (Index y = 0; y < 6; ++y) b(at[x], at[y]) += core.quiver(x, y) * h[y];
  }
  return ExchangeMatrix(std::move(b), {}, universal_labels(n));
}

ExchangeMatrix replay(const ExchangeMatrix& m, const RecoveryPlan& plan) {
  std::vector<Index> alive(static_cast<std::size_t>(m.size()));
  for (Index i = 0; i < m.size(); ++i) alive[i] = i;
  auto position = [&alive](Index id) {
    auto it = std::find(alive.begin(), alive.end(), id);
    if (it == alive.end())
      throw QuiverError(ErrorKind::IndexOutOfRange, "plan refers to a removed vertex", {id});
    return static_cast<Index>(it - alive.begin());
  };
  ExchangeMatrix cur = m;
  for (const auto& step : plan.steps) {
    cur = mutate(cur, position(step.mutate_at));
    if (step.remove.empty()) continue;
    std::vector<Index> pos;
    for (Index id : step.remove) pos.push_back(position(id));
    cur = remove_indices(cur, pos);
    std::sort(pos.begin(), pos.end(), std::greater<>());
    for (Index p : pos) alive.erase(alive.begin() + p);
  }
  return cur;
}

Reduction degree3_reduce(const ExchangeMatrix& m) {
  if (!m.frozen().empty()) throw QuiverError(ErrorKind::HasFrozenVertices, "frozen vertices are not supported");
  if (!m.is_skew_symmetric()) throw QuiverError(ErrorKind::NotSkewSymmetric, "input must be a quiver");
  const Index n = m.size();
  std::vector<Index> indeg(static_cast<std::size_t>(n), 0), outdeg(static_cast<std::size_t>(n), 0);
  for (Index v = 0; v < n; ++v)
    for (Index w = 0; w < n; ++w) {
      if (m(v, w) > 0) outdeg[v] += static_cast<Index>(m(v, w));
      if (m(w, v) > 0) indeg[v] += static_cast<Index>(m(w, v));
    }
  for (Index v = 0; v < n; ++v)
    if (indeg[v] == 0 || outdeg[v] == 0)
      throw QuiverError(ErrorKind::HasSourceOrSink,
                        "vertex " + std::to_string(v + 1) + " is a " + (indeg[v] == 0 ? "source" : "sink"), {v});

  // Fragment of v: center (u_1 = w_1), then u_2..u_p, then w_2..w_q, with
  // arrows u_p -> ... -> u_2 -> center -> w_2 -> ... -> w_q.
  std::vector<Index> center(static_cast<std::size_t>(n));
  std::vector<std::vector<Index>> in_slots(static_cast<std::size_t>(n)), out_slots(static_cast<std::size_t>(n));
  std::vector<std::pair<Index, Index>> chain;
  std::vector<std::string> labels;
  Index next = 0;
  for (Index v = 0; v < n; ++v) {
    const Index p = indeg[v], q = outdeg[v];
    center[v] = next++;
    labels.push_back(m.label(v));
    std::vector<Index> us{center[v]}, ws{center[v]};
    for (Index s = 2; s <= p; ++s) {
      us.push_back(next++);
      labels.push_back(m.label(v) + ".in" + std::to_string(s));
    }
    for (Index s = 2; s <= q; ++s) {
      ws.push_back(next++);
      labels.push_back(m.label(v) + ".out" + std::to_string(s));
    }
    for (Index s = 1; s < p; ++s) chain.emplace_back(us[s], us[s - 1]);
    for (Index s = 1; s < q; ++s) chain.emplace_back(ws[s - 1], ws[s]);
    auto& in = in_slots[v];
    auto& out = out_slots[v];
    if (p == 1) in.push_back(us[0]);
    for (Index s = 1; s < p; ++s) in.push_back(us[s]);
    if (p > 1) in.push_back(us[p - 1]);
    if (q == 1) out.push_back(ws[0]);
    for (Index s = 1; s < q; ++s) out.push_back(ws[s]);
    if (q > 1) out.push_back(ws[q - 1]);
  }
  IntMatrix b = IntMatrix::Zero(next, next);
  auto add = [&b](Index x, Index y) {
    b(x, y) += 1;
    b(y, x) -= 1;
  };
  for (auto [x, y] : chain) add(x, y);
  std::vector<std::size_t> used_in(static_cast<std::size_t>(n), 0), used_out(static_cast<std::size_t>(n), 0);
  for (Index v = 0; v < n; ++v)
    for (Index w = 0; w < n; ++w)
      for (Integer c = 0; c < m(v, w); ++c) add(out_slots[v][used_out[v]++], in_slots[w][used_in[w]++]);

  RecoveryPlan plan;
  for (Index v = 0; v < n; ++v) {
    for (Index s = 1; s < indeg[v]; ++s) plan.steps.push_back({center[v] + s, {center[v] + s}});
    for (Index s = 1; s < outdeg[v]; ++s) plan.steps.push_back({center[v] + indeg[v] - 1 + s, {center[v] + indeg[v] - 1 + s}});
  }
  return {ExchangeMatrix(std::move(b), {}, std::move(labels)), std::move(plan)};
}

}  // namespace quiverlab
