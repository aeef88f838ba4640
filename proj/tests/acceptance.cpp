// One PASS/FAIL line per acceptance criterion. Limits are fixed below.

#include "plabic_support.hpp"

#include "quiverlab/analysis.hpp"
#include "quiverlab/embedding.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

using namespace testing;

namespace {

constexpr double kSingleMutationSeconds = 1e-3;
constexpr double kSequenceSeconds = 1.0;
constexpr double kCertificateSeconds = 0.5;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.note << "exception: " << e.what() << "; ";
  }
  std::cout << (o.ok ? "PASS " : "FAIL ") << name << " [" << o.note.str() << "total " << seconds_since(t0) << " s]"
            << std::endl;
  failures += !o.ok;
}

long long binom4(long long n) { return n * (n - 1) * (n - 2) * (n - 3) / 24; }

ExchangeMatrix random_source_sink_free(std::mt19937_64& rng, Index n) {
  for (;;) {
    ExchangeMatrix m(random_skew(rng, n, 2, 0.7));
    bool ok = true;
    for (Index v = 0; v < n && ok; ++v) {
      bool in = false, out = false;
      for (Index w = 0; w < n; ++w) {
        in = in || m(w, v) > 0;
        out = out || m(v, w) > 0;
      }
      ok = in && out;
    }
    if (ok) return m;
  }
}

// Random straight-line drawing with 1..5 crossings and no crossing bundle.
std::optional<Drawing> random_crossing_drawing(std::mt19937_64& rng) {
  Drawing d;
  const Index k = 4 + static_cast<Index>(rng() % 4);
  std::set<std::pair<long long, long long>> used;
  while (d.size() < k) {
    const long long x = static_cast<long long>(rng() % 21), y = static_cast<long long>(rng() % 21);
    if (used.insert({x, y}).second) d.points.push_back(Point{Rational(x), Rational(y)});
  }
  for (Index a = 0; a < k; ++a)
    for (Index b = a + 1; b < k; ++b) {
      if (rng() % 3 != 0) continue;
      const bool fwd = rng() % 2;
      d.arrows.push_back({fwd ? a : b, fwd ? b : a, rng() % 5 == 0 ? 2 : 1});
    }
  try {
    const auto xs = find_crossings(d);
    if (xs.empty() || xs.size() > 5) return std::nullopt;
  } catch (const QuiverError&) {
    return std::nullopt;
  }
  return d;
}

std::vector<long long> count_series(CoreKind kind, const std::vector<Index>& order, Direction dir, int steps,
                                    ExchangeMatrix* last = nullptr) {
  const Core core = make_core(kind);
  ExchangeMatrix s = core.quiver;
  std::vector<long long> out{directed_count(s, core, dir)};
  for (int t = 0; t < steps; ++t) {
    s = mutate(s, order[static_cast<std::size_t>(t) % order.size()]);
    out.push_back(directed_count(s, core, dir));
  }
  if (last) *last = s;
  return out;
}

}  // namespace

int main() {
  criterion("three-vertex mutation example reproduced exactly", [](Outcome& o) {
    auto m = quiver({{0, 1, -2}, {-1, 0, 1}, {2, -1, 0}});
    o.require(mutate(m, 1).b() == mat({{0, -1, -1}, {1, 0, -1}, {1, 1, 0}}), "entries");
    const int reps = 1000;
    const auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) m = mutate(m, 1);
    const double per = seconds_since(t0) / reps;
    o.note << "per mutation " << per * 1e6 << " us; ";
    o.require(per < kSingleMutationSeconds, "runtime");
  });

  criterion("involution and restriction commute on 1000 random matrices (n<=8, |b|<=5)", [](Outcome& o) {
    std::mt19937_64 rng(1001);
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
      const Index n = 1 + static_cast<Index>(rng() % 8);
      ExchangeMatrix m(random_symmetrizable(rng, n, 5, 3));
      const Index k = static_cast<Index>(rng() % n);
      const auto mk = mutate(m, k);
      std::vector<Index> idx{k};
      for (Index i = 0; i < n; ++i)
        if (i != k && rng() % 2) idx.push_back(i);
      std::sort(idx.begin(), idx.end());
      const Index kk = std::find(idx.begin(), idx.end(), k) - idx.begin();
      bad += !(mutate(mk, k) == m) || !(mutate(restrict_to(m, idx), kk) == restrict_to(mk, idx));
    }
    o.note << bad << " failures; ";
    o.require(bad == 0, "property");
  });

  criterion("sequence (1): somos v->u counts over 60 steps and +8 arrows at step 60", [](Outcome& o) {
    const auto t0 = Clock::now();
    ExchangeMatrix last;
    const auto series = count_series(CoreKind::Somos, {0, 1, 2, 3}, Direction::VtoU, 60, &last);
    const double secs = seconds_since(t0);
    std::vector<long long> expect;
    for (auto [v, k] : std::vector<std::pair<long long, int>>{
             {0, 2}, {1, 12}, {2, 3}, {3, 12}, {4, 3}, {5, 12}, {6, 3}, {7, 12}, {8, 2}})
      expect.insert(expect.end(), static_cast<std::size_t>(k), v);
    o.require(series == expect, "count series");
    IntMatrix plus = named_quiver("extended_somos4").b();
    plus(5, 4) += 8;
    plus(4, 5) -= 8;
    o.require(last.b() == plus, "step-60 state");
    o.note << "simulation " << secs * 1e3 << " ms; ";
    o.require(secs < kSequenceSeconds, "runtime");
  });

  criterion("sequence (2): double-4-cycle u->v counts 0..40 and +4 arrows at step 4", [](Outcome& o) {
    const auto t0 = Clock::now();
    const auto series = count_series(CoreKind::Double4, {0, 2, 1, 3}, Direction::UtoV, 40);
    ExchangeMatrix four;
    count_series(CoreKind::Double4, {0, 2, 1, 3}, Direction::UtoV, 4, &four);
    const double secs = seconds_since(t0);
    for (int t = 0; t <= 40; ++t) o.require(series[static_cast<std::size_t>(t)] == t, "count at " + std::to_string(t));
    IntMatrix plus = named_quiver("double_four_cycle").b();
    plus(4, 5) += 4;
    plus(5, 4) -= 4;
    o.require(four.b() == plus, "step-4 state");
    o.note << "simulation " << secs * 1e3 << " ms; ";
    o.require(secs < kSequenceSeconds, "runtime");
  });

  criterion("counting claims: gluing, degree-3 reduction, crossings, planar universal", [](Outcome& o) {
    for (Index n = 2; n <= 10; ++n) {
      const auto g = glue_universal(CoreKind::Somos, n);
      o.require(g.size() == 2 * n * n - n && arrow_count(g) == 7 * n * n - 7 * n, "glue n=" + std::to_string(n));
    }
    const auto g3 = glue_universal(CoreKind::Somos, 3);
    o.require(g3.size() == 15 && arrow_count(g3) == 42, "n=3 gives 15/42");
    std::mt19937_64 rng(1005);
    for (int t = 0; t < 100; ++t) {
      const auto m = random_source_sink_free(rng, 3 + static_cast<Index>(rng() % 4));
      const auto red = degree3_reduce(m);
      o.require(red.matrix.size() == 2 * static_cast<Index>(arrow_count(m)) - m.size(), "2r-n vertices");
      for (Index v = 0; v < red.matrix.size(); ++v) o.require(total_degree(red.matrix, v) <= 3, "degree <= 3");
    }
    int drawings = 0;
    while (drawings < 100) {
      auto d = random_crossing_drawing(rng);
      if (!d) continue;
      const auto r = resolve_crossings(*d);
      o.require(r.matrix.size() == d->size() + 5 * r.crossings, "5m vertices");
      o.require(arrow_count(r.matrix) == d->arrow_total() + 8 * r.crossings, "8m arrows");
      ++drawings;
    }
    for (Index n = 2; n <= 6; ++n) {
      const auto pu = planar_universal(n);
      const long long c4 = binom4(n);
      o.require(pu.resolved.crossings == 4 * c4, "m = 4 C(n,4)");
      o.require(pu.resolved.matrix.size() == 2 * n * n - n + 20 * c4, "planar vertices n=" + std::to_string(n));
      o.require(arrow_count(pu.resolved.matrix) == 7 * n * n - 7 * n + 32 * c4, "planar arrows n=" + std::to_string(n));
      o.require(euler_ok(pu.embedding), "planar embedding");
    }
    o.note << "glue n=2..10, 100 reductions, 100 drawings, planar n=2..6; ";
  });

  criterion("recovery round trips: degree-3 plans and crossing plans, 100 each", [](Outcome& o) {
    std::mt19937_64 rng(1006);
    int bad = 0;
    for (int t = 0; t < 100; ++t) {
      const auto m = random_source_sink_free(rng, 3 + static_cast<Index>(rng() % 4));
      const auto red = degree3_reduce(m);
      const auto back = replay(red.matrix, red.plan);
      bad += !(back == m) || !is_isomorphic(back, m);
    }
    int drawings = 0;
    while (drawings < 100) {
      auto d = random_crossing_drawing(rng);
      if (!d) continue;
      const auto r = resolve_crossings(*d);
      const auto back = replay(r.matrix, r.plan);
      bad += !(back == d->quiver()) || !is_isomorphic(back, d->quiver());
      ++drawings;
    }
    o.note << bad << " failures; ";
    o.require(bad == 0, "round trip");
  });

  criterion("embedding solver: 200 targets per core, 100 symmetrizable targets", [](Outcome& o) {
    std::mt19937_64 rng(1007);
    double worst = 0;
    int bad = 0;
    for (CoreKind kind : {CoreKind::Somos, CoreKind::Double4})
      for (int t = 0; t < 200; ++t) {
        const Index n = 2 + static_cast<Index>(rng() % 3);
        ExchangeMatrix target(random_skew(rng, n, 8, 0.8));
        GluingSpec spec{kind, n, {}};
        if (t % 2)
          for (std::size_t p = 0; p < base_pairs(n).size(); ++p) spec.flipped.push_back(rng() % 2);
        const auto t0 = Clock::now();
        bad += !verify_certificate(embed_quiver(target, spec));
        worst = std::max(worst, seconds_since(t0));
      }
    for (int t = 0; t < 100; ++t) {
      const Index n = 2 + static_cast<Index>(rng() % 3);
      ExchangeMatrix target(random_symmetrizable(rng, n, 8, 4, 0.8));
      const auto t0 = Clock::now();
      bad += !verify_certificate(embed_matrix(target, target.symmetrizer()));
      worst = std::max(worst, seconds_since(t0));
    }
    o.note << bad << " failures, slowest certificate " << worst * 1e3 << " ms; ";
    o.require(bad == 0, "verification");
    o.require(worst < kCertificateSeconds, "certificate runtime");
  });

  criterion("column scaling commutes with mutation; h-divisibility on 1000 matrices each", [](Outcome& o) {
    std::mt19937_64 rng(1008);
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
      const Index n = 2 + static_cast<Index>(rng() % 7);
      ExchangeMatrix b(random_skew(rng, n, 5));
      const Index k = static_cast<Index>(rng() % n);
      IntVector h(n);
      for (Index i = 0; i < n; ++i) h(i) = i == k ? 1 : 1 + static_cast<long long>(rng() % 5);
      ExchangeMatrix bh(IntMatrix(b.b() * h.asDiagonal()));
      bad += mutate(bh, k).b() != IntMatrix(mutate(b, k).b() * h.asDiagonal());
    }
    // rejection sampling from random D and unconstrained entries
    int checked = 0;
    while (checked < 1000) {
      const Index n = 2 + static_cast<Index>(rng() % 4);
      std::vector<long long> d(static_cast<std::size_t>(n));
      for (auto& x : d) x = 1 + static_cast<long long>(rng() % 6);
      IntMatrix b = IntMatrix::Zero(n, n);
      bool ok = true;
      for (Index i = 0; i < n && ok; ++i)
        for (Index j = i + 1; j < n && ok; ++j) {
          const long long x = static_cast<long long>(rng() % 25) - 12;
          if ((d[i] * x) % d[j] != 0) {
            ok = rng() % 4 == 0;
            continue;
          }
          b(i, j) = x;
          b(j, i) = -d[i] * x / d[j];
        }
      if (!ok) continue;
      ExchangeMatrix m(b);
      for (const Symmetrizer& s : {m.symmetrizer(), Symmetrizer{std::vector<Integer>(d.begin(), d.end())}})
        for (Index i = 0; i < n; ++i)
          for (Index j = 0; j < n; ++j) {
            if (i == j) continue;
            const Integer hij = h_factor(s, i, j), hji = h_factor(s, j, i);
            bad += gcd(hij, hji) != 1 || b(i, j) % hij != 0 || b(i, j) / hij != -(b(j, i) / hji);
          }
      ++checked;
    }
    o.note << bad << " failures; ";
    o.require(bad == 0, "property");
  });

  criterion("D-universal matrix: identity case and scaled blocks", [](Outcome& o) {
    for (Index n = 2; n <= 6; ++n)
      o.require(d_universal_matrix(Symmetrizer::identity(n)) == glue_universal(CoreKind::Somos, n),
                "identity n=" + std::to_string(n));
    // one pair, rows and columns ordered (i, j, 1, 2, 3, 4)
    const IntMatrix block = mat({{0, 0, 0, -1, 1, 0},
                                 {0, 0, 0, 1, -1, 0},
                                 {0, 0, 0, -1, 2, -1},
                                 {1, -1, 1, 0, -3, 2},
                                 {-1, 1, -2, 3, 0, -1},
                                 {0, 0, 1, -2, 1, 0}});
    std::mt19937_64 rng(1009);
    for (int t = 0; t < 50; ++t) {
      const Index n = 2 + static_cast<Index>(rng() % 4);
      Symmetrizer d;
      for (Index i = 0; i < n; ++i) d.d.push_back(1 + static_cast<long long>(rng() % 6));
      const auto u = d_universal_matrix(d);
      const auto pairs = base_pairs(n);
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        auto [i, j] = pairs[p];
        const Index c = copy_offset(n, static_cast<Index>(p));
        const std::vector<Index> at{i, j, c, c + 1, c + 2, c + 3};
        const std::vector<Integer> h{h_factor(d, j, i), h_factor(d, i, j), 1, 1, 1, 1};
        for (Index x = 0; x < 6; ++x)
          for (Index y = 0; y < 6; ++y)
            if (!(x < 2 && y < 2)) o.require(u(at[x], at[y]) == block(x, y) * h[y], "block entry");
      }
    }
  });

  criterion("plabic: grid graph moves, 200 random moves, 100 planar round trips", [](Outcome& o) {
    const auto first = grid_first(), second = grid_second(), third = grid_third();
    const Index d = face_with(first, {6, 7, 9, 10});
    o.require(d >= 0, "grid square face");
    const auto moved = square_move(first, d);
    o.require(moved.color == second.color && moved.rotation == second.rotation, "square move gives the second graph");
    o.require(quiver_of(second) == mutate(quiver_of(first), d), "square pair differs by one mutation");
    Index h = -1;
    for (Index x : second.rotation[2])
      for (Index y : second.rotation[7])
        if (second.pairing[x] == y) h = x;
    o.require(h >= 0, "grid flip edge");
    const auto flipped = flip_move(second, h);
    o.require(plabic_isomorphism(flipped, third, false).has_value(), "flip gives the third graph");
    o.require(is_isomorphic(quiver_of(second), quiver_of(third)).has_value(), "flip pair quivers");

    std::mt19937_64 rng(1010);
    int squares = 0, flips = 0;
    while (squares < 200 || flips < 200) {
      const int k = 3 + static_cast<int>(rng() % 2);
      auto p = random_plabic(rng, k, (12 - k) / 2);
      for (int attempt = 0; attempt < 20; ++attempt) {
        const auto f = plabic_faces(p);
        if (rng() % 2) {
          const Index face = static_cast<Index>(rng() % f.bounded.size());
          const auto& walk = f.faces[f.bounded[face]];
          if (walk.size() != 4) continue;
          auto p0 = p;
          const bool phase = rng() % 2;
          for (std::size_t i = 0; i < 4; ++i) {
            auto& c = p0.color[f.origin[walk[i]]];
            if (c != Color::None) c = (i % 2 == 0) == phase ? Color::Black : Color::White;
          }
          if (square_move_blocker(p0, face)) continue;
          p = square_move(p0, face);
          validate(p);
          o.require(quiver_of(p) == mutate(quiver_of(p0), face), "random square move");
          ++squares;
        } else {
          const Index e = static_cast<Index>(rng() % p.half_edge_count());
          const Index u = f.origin[e], w = f.origin[p.pairing[e]];
          if (!p.is_interior(u) || !p.is_interior(w)) continue;
          auto p0 = p;
          p0.color[w] = p0.color[u];
          if (flip_move_blocker(p0, e)) continue;
          p = flip_move(p0, e);
          validate(p);
          o.require(is_isomorphic(quiver_of(p), quiver_of(p0)).has_value(), "random flip");
          o.require(plabic_isomorphism(flip_move(p, e), p0, false).has_value(), "flip twice");
          ++flips;
        }
      }
    }
    int trips = 0;
    while (trips < 100) {
      auto dr = random_planar_drawing(rng);
      if (!dr) continue;
      const auto a = augment_to_conditions(planar_quiver_from_drawing(*dr));
      o.require(!violated_condition(a.quiver), "augmented quiver meets the conditions");
      const auto e = plabic_from_quiver(a.quiver);
      validate(e.graph);
      const auto got = quiver_of(e.graph);
      bool same = got.size() == a.quiver.vertex_count();
      for (Index i = 0; same && i < got.size(); ++i)
        for (Index j = 0; same && j < got.size(); ++j)
          same = got(e.vertex_of[i], e.vertex_of[j]) == a.quiver.quiver(i, j);
      o.require(same, "round trip");
      ++trips;
    }
    o.note << squares << " square and " << flips << " flip moves, " << trips << " round trips; ";
  });

  criterion("Markov class has size 1; no Markov subquiver in a 10^4-node BFS of A2xA5", [](Outcome& o) {
    const auto markov = named_quiver("markov");
    const auto r = mutation_class_bfs(markov, {100, 64});
    o.require(r.exhausted && r.size == 1, "Markov class");
    std::size_t hits = 0;
    const auto g = mutation_class_bfs(grid_quiver(2, 5), {10000, 1000}, [&](const ExchangeMatrix& q, std::size_t) {
      hits += find_full_subquiver(q, markov).has_value();
    });
    o.note << "A2xA5 classes " << g.size << (g.exhausted ? " (whole class)" : " (budget)") << ", hits " << hits << "; ";
    o.require(hits == 0, "Markov subquiver");
  });

  criterion("sign coherence: 10^4 framed trials (n<=5, length<=20)", [](Outcome& o) {
    std::mt19937_64 rng(1012);
    std::size_t trials = 0, states = 0, bad = 0;
    for (int c = 0; c < 100; ++c) {
      const Index n = 2 + c % 4;
      ExchangeMatrix m(random_symmetrizable(rng, n, 3, c % 2 ? 3 : 1));
      const auto r = check_sign_coherence(m, 100, 20, 5000 + static_cast<std::uint64_t>(c));
      trials += r.trials;
      states += r.states;
      bad += r.violation_count + r.frozen_paths;
    }
    o.note << trials << " trials, " << states << " states, " << bad << " violations; ";
    o.require(trials == 10000 && bad == 0, "violations");
  });

  criterion("substitutes: A2xA6 witness, universal plabic graphs", [](Outcome& o) {
    // A2xA6: a mutation sequence reaching the 2-universal 3-vertex quiver as
    // a full subquiver
    const auto g6 = grid_quiver(2, 6), two = named_quiver("two_universal_3");
    const auto p = probe_two_universal(g6, 64, 5, 20000, ProbeStrategy::Greedy);
    std::optional<std::size_t> at;
    if (p.sequence) {
      auto q = g6;
      for (std::size_t s = 0; s < p.sequence->steps.size() && !at; ++s) {
        q = mutate(q, p.sequence->steps[s]);
        if (find_full_subquiver(q, two)) at = s + 1;
      }
    }
    o.require(at.has_value(), "A2xA6 witness");
    if (at) o.note << "A2xA6 witness after " << *at << " mutations, " << p.nodes << " classes searched; ";
    std::set<long long> seen;
    auto r = two;
    for (int s = 0; s < 40; ++s) {
      seen.insert(static_cast<long long>(abs(r(0, 1))));
      seen.insert(static_cast<long long>(abs(r(0, 2))));
      r = mutate(r, s % 2 ? 2 : 1);
    }
    for (long long k = 0; k <= 12; ++k) o.require(seen.count(k) == 1, "multiplicity " + std::to_string(k));

    const auto u2 = universal_plabic(2);
    o.require(find_full_subquiver(u2.quiver, make_core(CoreKind::Somos).quiver).has_value(), "n=2 contains the core");
    const auto u3 = universal_plabic(3);
    const auto cert = embed_quiver(named_quiver("markov"), GluingSpec{CoreKind::Somos, 3});
    std::vector<Index> seq, base_at;
    for (Index k : cert.seq.steps) seq.push_back(u3.plabic.vertex_of[k]);
    for (Index b : cert.base) base_at.push_back(u3.plabic.vertex_of[b]);
    o.require(restrict_to(mutate_seq(u3.quiver, seq), base_at) == cert.target, "n=3 reaches Markov");
    for (const auto* u : {&u2, &u3})
      o.note << "plabic graph " << u->plabic.graph.vertex_count() << " vertices, "
             << u->plabic.graph.half_edge_count() / 2 << " edges, " << u->quiver.size() << " faces, "
             << arrow_count(u->quiver) << " arrows; ";
  });
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
