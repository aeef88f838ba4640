#pragma once

#include "quiverlab/canonical.hpp"
#include "quiverlab/exchange_matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <random>
#include <vector>

namespace testing {

using namespace quiverlab;

inline IntMatrix mat(std::initializer_list<std::initializer_list<long long>> rows) {
  const Index n = static_cast<Index>(rows.size());
  IntMatrix b(n, static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (long long x : r) b(i, j++) = x;
    ++i;
  }
  return b;
}

inline ExchangeMatrix quiver(std::initializer_list<std::initializer_list<long long>> rows) {
  return ExchangeMatrix(mat(rows));
}

// Textbook form b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2, on machine integers.
inline std::vector<std::vector<long long>> oracle_mutate(std::vector<std::vector<long long>> b, std::size_t k) {
  const std::size_t n = b.size();
  auto c = b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == k || j == k)
        c[i][j] = -b[i][j];
      else
        c[i][j] = b[i][j] + (std::llabs(b[i][k]) * b[k][j] + b[i][k] * std::llabs(b[k][j])) / 2;
    }
  return c;
}

inline std::vector<std::vector<long long>> to_ll(const ExchangeMatrix& m) {
  std::vector<std::vector<long long>> out(static_cast<std::size_t>(m.size()),
                                          std::vector<long long>(static_cast<std::size_t>(m.size())));
  for (Index i = 0; i < m.size(); ++i)
    for (Index j = 0; j < m.size(); ++j) out[i][j] = static_cast<long long>(m(i, j));
  return out;
}

// Brute force over all permutations; only for small n.
inline bool oracle_isomorphic(const ExchangeMatrix& a, const ExchangeMatrix& b) {
  if (a.size() != b.size()) return false;
  std::vector<Index> p(static_cast<std::size_t>(a.size()));
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (Index i = 0; i < a.size() && ok; ++i) {
      if (a.is_frozen(i) != b.is_frozen(p[i])) ok = false;
      for (Index j = 0; j < a.size() && ok; ++j)
        if (a(i, j) != b(p[i], p[j])) ok = false;
    }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// Random skew-symmetrizable matrix: random D, then entries chosen so that
// d_i b_ij = -d_j b_ji holds with |b_ij| <= bound.
inline IntMatrix random_symmetrizable(std::mt19937_64& rng, Index n, int bound, int max_d, double density = 0.6) {
  std::uniform_int_distribution<int> dd(1, max_d);
  std::vector<long long> d(static_cast<std::size_t>(n));
  for (auto& x : d) x = dd(rng);
  IntMatrix b = IntMatrix::Zero(n, n);
  std::bernoulli_distribution edge(density);
  std::uniform_int_distribution<int> val(-bound, bound);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      if (!edge(rng)) continue;
      // b_ij = s * d_j / g, b_ji = -s * d_i / g
      const long long g = std::gcd(d[i], d[j]);
      const long long hi = d[j] / g, hj = d[i] / g;
      const long long cap = bound / std::max(hi, hj);
      if (cap == 0) continue;
      std::uniform_int_distribution<long long> s(-cap, cap);
      const long long k = s(rng);
      b(i, j) = k * hi;
      b(j, i) = -k * hj;
    }
  return b;
}

inline IntMatrix random_skew(std::mt19937_64& rng, Index n, int bound, double density = 0.6) {
  return random_symmetrizable(rng, n, bound, 1, density);
}

inline std::vector<Index> random_permutation(std::mt19937_64& rng, Index n) {
  std::vector<Index> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace testing
