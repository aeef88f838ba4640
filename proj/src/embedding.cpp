#include "quiverlab/embedding.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace quiverlab {

const char* direction_name(Direction d) { return d == Direction::UtoV ? "u->v" : "v->u"; }

namespace {

struct CycleData {
  std::vector<Index> order;
  std::size_t period;
  long long gain;
};

// Cyclic orders, as core indices (labels 1..4 are indices 0..3).
CycleData cycle_for(CoreKind core, Direction d) {
  if (core == CoreKind::Somos)
    return d == Direction::VtoU ? CycleData{{0, 1, 2, 3}, 60, 8} : CycleData{{3, 2, 1, 0}, 60, 8};
  return d == Direction::UtoV ? CycleData{{0, 2, 1, 3}, 4, 4} : CycleData{{3, 1, 2, 0}, 4, 4};
}

const ScheduleTable& cached_schedule(CoreKind core, Direction d) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, ScheduleTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(static_cast<int>(core), static_cast<int>(d));
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_schedule(core, d, 16)).first;
  return it->second;
}

}  // namespace

long long directed_count(const ExchangeMatrix& s, const Core& core, Direction d) {
  const Integer& x = d == Direction::UtoV ? s(core.u, core.v) : s(core.v, core.u);
  return x > 0 ? static_cast<long long>(x) : 0;
}

std::size_t ScheduleTable::steps_for(long long m) const {
  if (m < 0) throw QuiverError(ErrorKind::BadParameters, "negative arrow count");
  if (m < static_cast<long long>(entries.size())) return entries[static_cast<std::size_t>(m)];
  const long long top = static_cast<long long>(entries.size()) - 1;
  const long long k = (m - top + gain - 1) / gain;
  return steps_for(m - k * gain) + static_cast<std::size_t>(k) * period;
}

std::vector<Index> ScheduleTable::prefix(std::size_t steps) const {
  std::vector<Index> out(steps);
  for (std::size_t s = 0; s < steps; ++s) out[s] = order[s % order.size()];
  return out;
}

ScheduleTable build_schedule(CoreKind core_kind, Direction direction, long long max_m) {
  if (max_m < 0) throw QuiverError(ErrorKind::BadParameters, "max_m must be nonnegative");
  const Core core = make_core(core_kind);
  const CycleData cyc = cycle_for(core_kind, direction);
  ScheduleTable t{core_kind, direction, cyc.order, {}, cyc.period, cyc.gain};
  const std::size_t limit = cyc.period * static_cast<std::size_t>((max_m + cyc.gain - 1) / cyc.gain) + cyc.period;
  std::vector<long long> first(static_cast<std::size_t>(max_m) + 1, -1);
  IntMatrix b = core.quiver.b();
  for (std::size_t step = 0;; ++step) {
    const Integer& x = direction == Direction::UtoV ? b(core.u, core.v) : b(core.v, core.u);
    const long long c = x > 0 ? static_cast<long long>(x) : 0;
    if (c <= max_m && first[c] < 0) first[c] = static_cast<long long>(step);
    if (step == limit) break;
    mutate_in_place(b, cyc.order[step % cyc.order.size()]);
  }
  for (long long m = 0; m <= max_m; ++m) {
    if (first[m] < 0)
      throw QuiverError(ErrorKind::TargetUnreachable,
                        std::to_string(m) + " arrows " + direction_name(direction) + " not reached within " +
                            std::to_string(limit) + " steps",
                        {m});
    t.entries.push_back(static_cast<std::size_t>(first[m]));
  }
  return t;
}

CertificateCheck check_certificate(const EmbeddingCertificate& c) {
  CertificateCheck out;
  ExchangeMatrix state;
  try {
    state = mutate_seq(c.universal, c.seq);
    state = restrict_to(state, c.base);
  } catch (const QuiverError& e) {
    out.message = std::string("replay failed: ") + e.what();
    return out;
  }
  if (state.size() != c.target.size()) {
    out.message = "index set size differs from target size";
    return out;
  }
  for (Index i = 0; i < state.size(); ++i)
    for (Index j = 0; j < state.size(); ++j)
      if (state(i, j) != c.target(i, j)) out.diffs.push_back({i, j, c.target(i, j), state(i, j)});
  if (state.frozen() != c.target.frozen()) out.message = "frozen sets differ";
  out.ok = out.diffs.empty() && out.message.empty();
  if (!out.ok && out.message.empty()) out.message = std::to_string(out.diffs.size()) + " entries differ";
  if (out.ok) out.message = "ok";
  return out;
}

namespace {

// Per pair: the core-level signed target s (arrows u -> v when positive)
// and the base vertex glued to u.
struct PairGoal {
  Index u_vertex, v_vertex;
  Integer s;
};

EmbeddingCertificate assemble(const ExchangeMatrix& universal, CoreKind core_kind, Index n,
                              const std::vector<PairGoal>& goals, const ExchangeMatrix& target,
                              const std::string& provenance) {
  const Core core = make_core(core_kind);
  EmbeddingCertificate cert{universal, {{}, provenance}, {}, target};
  for (Index i = 0; i < n; ++i) cert.base.push_back(i);
  IntMatrix running = universal.b();
  for (std::size_t p = 0; p < goals.size(); ++p) {
    const auto& g = goals[p];
    if (g.s == 0) continue;
    const Direction dir = g.s > 0 ? Direction::UtoV : Direction::VtoU;
    const long long m = static_cast<long long>(mp::abs(g.s));
    const ScheduleTable& table = cached_schedule(core_kind, dir);
    const auto local = table.prefix(table.steps_for(m));
    // re-check an extrapolated schedule on the bare core
    if (directed_count(mutate_seq(core.quiver, local), core, dir) != m)
      throw QuiverError(ErrorKind::TargetUnreachable, "schedule check failed for " + std::to_string(m) + " arrows", {m});
    const Index off = copy_offset(n, static_cast<Index>(p));
    IntMatrix before = running;
    for (Index k : local) {
      const Index global = off + k;  // unmarked core vertices are indices 0..3
      mutate_in_place(running, global);
      cert.seq.steps.push_back(global);
    }
    // block independence: nothing outside this copy and its two base
    // vertices moved
    auto inside = [&](Index x) { return x == g.u_vertex || x == g.v_vertex || (x >= off && x < off + 4); };
    for (Index x = 0; x < running.rows(); ++x)
      for (Index y = 0; y < running.cols(); ++y)
        if (!(inside(x) && inside(y)) && running(x, y) != before(x, y))
          throw std::logic_error("mutation leaked outside its copy");
  }
  const auto check = check_certificate(cert);
  if (!check.ok) throw std::logic_error("solver produced a failing certificate: " + check.message);
  return cert;
}

void check_target(const ExchangeMatrix& target) {
  if (target.size() < 2) throw QuiverError(ErrorKind::BadParameters, "target needs at least two vertices");
  if (!target.frozen().empty()) throw QuiverError(ErrorKind::HasFrozenVertices, "target has frozen vertices");
}

}  // namespace

EmbeddingCertificate embed_quiver(const ExchangeMatrix& target, const GluingSpec& spec_in) {
  check_target(target);
  if (!target.is_skew_symmetric()) throw QuiverError(ErrorKind::NotSkewSymmetric, "target must be a quiver");
  GluingSpec spec = spec_in;
  spec.n = target.size();
  const auto universal = glue_universal(spec);
  const auto pairs = base_pairs(spec.n);
  std::vector<PairGoal> goals;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const bool flip = !spec.flipped.empty() && spec.flipped[p];
    const Index u = flip ? pairs[p].second : pairs[p].first;
    const Index v = flip ? pairs[p].first : pairs[p].second;
    goals.push_back({u, v, target(u, v)});
  }
  return assemble(universal, spec.core, spec.n, goals, target,
                  std::string("embed_quiver/") + core_name(spec.core));
}

EmbeddingCertificate embed_quiver(const ExchangeMatrix& target, CoreKind core) {
  return embed_quiver(target, GluingSpec{core, target.size(), {}});
}

EmbeddingCertificate embed_matrix(const ExchangeMatrix& target, const Symmetrizer& d) {
  check_target(target);
  if (!is_symmetrizer(target.b(), d))
    throw QuiverError(ErrorKind::SymmetrizerMismatch, "D is not a symmetrizer of the target");
  const Index n = target.size();
  const auto universal = d_universal_matrix(d);
  std::vector<PairGoal> goals;
  for (auto [i, j] : base_pairs(n)) {
    const Integer h = h_factor(d, i, j);
    if (target(i, j) % h != 0)
      throw QuiverError(ErrorKind::SymmetrizerMismatch, "entry not divisible by h", {i, j});
    goals.push_back({i, j, target(i, j) / h});
  }
  return assemble(universal, CoreKind::Somos, n, goals, target, "embed_matrix");
}

}  // namespace quiverlab
