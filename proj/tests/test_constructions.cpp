#include "quiverlab/constructions.hpp"
#include "quiverlab/drawing.hpp"
#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace testing;

namespace {

// 6x6 block for one pair, rows and columns ordered (i, j, 1, 2, 3, 4).
IntMatrix somos_block() {
  return mat({{0, 0, 0, -1, 1, 0},
              {0, 0, 0, 1, -1, 0},
              {0, 0, 0, -1, 2, -1},
              {1, -1, 1, 0, -3, 2},
              {-1, 1, -2, 3, 0, -1},
              {0, 0, 1, -2, 1, 0}});
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

}  // namespace

TEST_CASE("named quivers") {
  auto s = named_quiver("extended_somos4");
  CHECK(s.size() == 6);
  CHECK(arrow_count(s) == 14);
  CHECK(s.labels() == std::vector<std::string>{"1", "2", "3", "4", "u", "v"});
  auto m = named_quiver("markov");
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      if (i != j) CHECK(mp::abs(m(i, j)) == 2);
  CHECK(named_quiver("two_universal_3").b() == mat({{0, 1, 0}, {-1, 0, 2}, {0, -2, 0}}));
  CHECK(named_quiver("kronecker(3)").b() == mat({{0, 3}, {-3, 0}}));
  CHECK(named_quiver("grid(2,5)").size() == 10);
  CHECK_THROWS_AS(named_quiver("nope"), QuiverError);
  CHECK_THROWS_AS(named_quiver("grid(0,3)"), QuiverError);
}

TEST_CASE("somos core agrees with the universal block under the labeled matching") {
  auto s = named_quiver("extended_somos4");
  IntMatrix block = somos_block();
  // block order (u, v, 1, 2, 3, 4) -> core order (1, 2, 3, 4, u, v)
  const std::vector<Index> to_core{4, 5, 0, 1, 2, 3};
  for (Index x = 0; x < 6; ++x)
    for (Index y = 0; y < 6; ++y) CHECK(block(x, y) == s(to_core[x], to_core[y]));
  CHECK(restrict_to(s, {0, 1, 2, 3}).b() == block.bottomRightCorner(4, 4));

  // Brute force over all matchings that send u, v to the marked vertices:
  // exactly the labeled one and the one swapping the roles of u and v fit.
  std::vector<Index> p{0, 1, 2, 3, 4, 5};
  int fits = 0;
  do {
    bool ok = true;
    for (Index x = 0; x < 6 && ok; ++x)
      for (Index y = 0; y < 6 && ok; ++y) ok = block(x, y) == s(p[x], p[y]);
    if (ok) ++fits;
  } while (std::next_permutation(p.begin(), p.end()));
  CHECK(fits >= 1);
}

TEST_CASE("double 4-cycle transcription checksum") {
  auto d = named_quiver("double_four_cycle");
  std::string arrows;
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j)
      if (d(i, j) > 0) arrows += d.label(i) + ">" + d.label(j) + "x" + d(i, j).str() + ";";
  CHECK(arrows == "1>2x2;1>vx1;2>3x2;2>ux1;3>4x2;3>vx1;4>1x2;4>ux1;u>1x1;u>3x1;v>2x1;v>4x1;");
  CHECK(arrow_count(d) == 16);
}

TEST_CASE("glued universal quiver counts and locality") {
  for (Index n = 2; n <= 10; ++n) {
    auto g = glue_universal(CoreKind::Somos, n);
    CHECK(g.size() == 2 * n * n - n);
    CHECK(arrow_count(g) == 7 * n * n - 7 * n);
    auto pairs = base_pairs(n);
    for (std::size_t p = 0; p < pairs.size(); ++p)
      for (std::size_t q = 0; q < pairs.size(); ++q) {
        if (p == q) continue;
        for (Index s = 0; s < 4; ++s)
          for (Index t = 0; t < 4; ++t)
            CHECK(g(copy_offset(n, p) + s, copy_offset(n, q) + t) == 0);
      }
  }
  auto g3 = glue_universal(CoreKind::Somos, 3);
  CHECK(g3.size() == 15);
  CHECK(arrow_count(g3) == 42);

  auto g2 = glue_universal(CoreKind::Somos, 2);
  auto core = named_quiver("extended_somos4");
  // glued order (1, 2, c1..c4) against core order (1..4, u, v)
  const std::vector<Index> to_core{4, 5, 0, 1, 2, 3};
  for (Index x = 0; x < 6; ++x)
    for (Index y = 0; y < 6; ++y) CHECK(g2(x, y) == core(to_core[x], to_core[y]));
}

TEST_CASE("gluing orientation flips u and v") {
  GluingSpec spec{CoreKind::Double4, 3, {false, true, false}};
  auto g = glue_universal(spec);
  auto core = named_quiver("double_four_cycle");
  // pair (1,3) is flipped: u glued to 3, v to 1
  const Index off = copy_offset(3, 1);
  for (Index t = 0; t < 4; ++t) {
    CHECK(g(2, off + t) == core(4, t));
    CHECK(g(0, off + t) == core(5, t));
  }
  CHECK_THROWS_AS(glue_universal(GluingSpec{CoreKind::Somos, 3, {true}}), QuiverError);
}

TEST_CASE("D-universal matrix") {
  for (Index n = 2; n <= 5; ++n)
    CHECK(d_universal_matrix(Symmetrizer::identity(n)) == glue_universal(CoreKind::Somos, n));

  auto m = d_universal_matrix(Symmetrizer{{2, 3}});
  // rows ordered (i, j, c1..c4); row of copy vertex 2
  IntMatrix row = m.b().row(3);
  CHECK(row == mat({{2, -3, 1, 0, -3, 2}}));

  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const Index n = 2 + static_cast<Index>(rng() % 4);
    Symmetrizer d;
    for (Index i = 0; i < n; ++i) d.d.push_back(1 + static_cast<long long>(rng() % 6));
    auto u = d_universal_matrix(d);
    // expected diagonal: d_i on base vertices and gcd(d_i, d_j)
    // on the copy for {i, j}, up to a common factor
    std::vector<Integer> expect(d.d);
    for (auto [i, j] : base_pairs(n))
      for (int s = 0; s < 4; ++s) expect.push_back(gcd(d[i], d[j]));
    Integer g = 0;
    for (const auto& x : expect) g = gcd(g, x);
    for (auto& x : expect) x /= g;
    CHECK(u.symmetrizer().d == expect);
    CHECK(is_symmetrizer(u.b(), Symmetrizer{expect}));

    // each pair block equals the base block with columns scaled by
    // diag(h_ji, h_ij, 1, 1, 1, 1)
    auto pairs = base_pairs(n);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      auto [i, j] = pairs[p];
      const std::vector<Index> at{i, j, copy_offset(n, p), copy_offset(n, p) + 1, copy_offset(n, p) + 2,
                                  copy_offset(n, p) + 3};
      const std::vector<Integer> h{h_factor(d, j, i), h_factor(d, i, j), 1, 1, 1, 1};
      IntMatrix block = somos_block();
      for (Index x = 0; x < 6; ++x)
        for (Index y = 0; y < 6; ++y)
          if (!(x < 2 && y < 2)) CHECK(u(at[x], at[y]) == block(x, y) * h[y]);
    }
  }
}

TEST_CASE("degree 3 reduction") {
  auto markov = named_quiver("markov");
  auto r = degree3_reduce(markov);
  CHECK(r.matrix.size() == 9);
  for (Index v = 0; v < 9; ++v) CHECK(total_degree(r.matrix, v) <= 3);
  auto back = replay(r.matrix, r.plan);
  CHECK(back == markov);

  auto cyc = quiver({{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}});
  auto rc = degree3_reduce(cyc);
  CHECK(rc.matrix.size() == 3);
  CHECK(rc.plan.steps.empty());
  CHECK(is_isomorphic(rc.matrix, cyc).has_value());

  CHECK_THROWS_AS(degree3_reduce(named_quiver("two_universal_3")), QuiverError);

  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    const Index n = 3 + static_cast<Index>(rng() % 4);
    auto m = random_source_sink_free(rng, n);
    auto red = degree3_reduce(m);
    CHECK(red.matrix.size() == 2 * static_cast<Index>(arrow_count(m)) - n);
    for (Index v = 0; v < red.matrix.size(); ++v) CHECK(total_degree(red.matrix, v) <= 3);
    auto rec = replay(red.matrix, red.plan);
    CHECK(rec == m);
    CHECK(is_isomorphic(rec, m).has_value());
  }
}

namespace {

Point pt(long long x, long long y) { return {Rational(x), Rational(y)}; }

}  // namespace

TEST_CASE("crossing resolution on small drawings") {
  Drawing none;
  none.points = {pt(0, 0), pt(1, 0), pt(0, 1)};
  none.arrows = {{0, 1, 1}, {1, 2, 2}};
  auto r0 = resolve_crossings(none);
  CHECK(r0.crossings == 0);
  CHECK(r0.plan.steps.empty());
  CHECK(r0.matrix == none.quiver());

  Drawing x;
  x.points = {pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0)};
  x.arrows = {{0, 1, 1}, {2, 3, 1}};
  auto r1 = resolve_crossings(x);
  CHECK(r1.crossings == 1);
  CHECK(r1.matrix.size() == 9);
  CHECK(arrow_count(r1.matrix) == 10);
  CHECK(find_crossings(r1.drawing).empty());
  CHECK(replay(r1.matrix, r1.plan) == x.quiver());

  Drawing bad = x;
  bad.arrows[0].mult = 2;
  CHECK_THROWS_AS(find_crossings(bad), QuiverError);
  Drawing through;
  through.points = {pt(0, 0), pt(2, 0), pt(1, 0), pt(1, 1)};
  through.arrows = {{0, 1, 1}, {2, 3, 1}};
  CHECK_THROWS_AS(find_crossings(through), QuiverError);
}

TEST_CASE("crossing resolution round trip on random drawings") {
  std::mt19937_64 rng(77);
  int done = 0;
  while (done < 100) {
    Drawing d;
    const Index k = 4 + static_cast<Index>(rng() % 4);
    std::set<std::pair<long long, long long>> used;
    while (static_cast<Index>(d.points.size()) < k) {
      const long long x = static_cast<long long>(rng() % 21), y = static_cast<long long>(rng() % 21);
      if (used.insert({x, y}).second) d.points.push_back(pt(x, y));
    }
    for (Index a = 0; a < k; ++a)
      for (Index b = a + 1; b < k; ++b) {
        if (rng() % 3 != 0) continue;
        const bool fwd = rng() % 2;
        d.arrows.push_back({fwd ? a : b, fwd ? b : a, rng() % 5 == 0 ? 2 : 1});
      }
    std::vector<Crossing> xs;
    try {
      xs = find_crossings(d);
    } catch (const QuiverError&) {
      continue;
    }
    if (xs.empty() || xs.size() > 5) continue;
    auto r = resolve_crossings(d);
    const long long m = static_cast<long long>(xs.size());
    CHECK(r.matrix.size() == k + 5 * m);
    CHECK(arrow_count(r.matrix) == d.arrow_total() + 8 * m);
    CHECK(find_crossings(r.drawing).empty());
    auto back = replay(r.matrix, r.plan);
    CHECK(back == d.quiver());
    CHECK(is_isomorphic(back, d.quiver()).has_value());
    auto emb = planar_quiver_from_drawing(r.drawing);
    CHECK(euler_ok(emb));
    ++done;
  }
}

TEST_CASE("planar universal quiver") {
  for (Index n = 2; n <= 6; ++n) {
    auto pu = planar_universal(n);
    const long long c4 = binom4(n);
    CHECK(pu.glued.quiver() == glue_universal(CoreKind::Somos, n));
    CHECK(pu.resolved.crossings == 4 * c4);
    CHECK(pu.resolved.matrix.size() == 2 * n * n - n + 20 * c4);
    CHECK(arrow_count(pu.resolved.matrix) == 7 * n * n - 7 * n + 32 * c4);
    CHECK(euler_ok(pu.embedding));
    CHECK(pu.embedding.quiver == pu.resolved.matrix);
    if (n <= 4) CHECK(replay(pu.resolved.matrix, pu.resolved.plan) == glue_universal(CoreKind::Somos, n));
  }
  auto p3 = planar_universal(3);
  CHECK(p3.resolved.crossings == 0);
  CHECK(p3.resolved.matrix.size() == 15);
  CHECK(arrow_count(p3.resolved.matrix) == 42);
}
