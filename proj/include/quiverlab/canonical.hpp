#pragma once

#include "quiverlab/exchange_matrix.hpp"

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace quiverlab {

struct CanonicalKey {
  std::string bytes;

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalForm {
  CanonicalKey key;
  // order[p] is the vertex placed at position p.
  std::vector<Index> order;
};

// Partition refinement plus exhaustive individualization; the smallest
// flattened matrix over all leaves is kept. Intended for n up to ~64.
CanonicalForm canonical_form(const ExchangeMatrix& m);
CanonicalKey canonical_key(const ExchangeMatrix& m);

// perm[i] is the vertex of m2 matched with vertex i of m1:
// m2(perm[i], perm[j]) == m1(i, j) and frozen flags agree.
// Throws SizeMismatch when the sizes differ.
std::optional<std::vector<Index>> is_isomorphic(const ExchangeMatrix& m1, const ExchangeMatrix& m2);

// Conjugates m by a permutation: result(perm[i], perm[j]) = m(i, j).
ExchangeMatrix permuted(const ExchangeMatrix& m, const std::vector<Index>& perm);

}  // namespace quiverlab

template <>
struct std::hash<quiverlab::CanonicalKey> {
  std::size_t operator()(const quiverlab::CanonicalKey& k) const noexcept {
    return std::hash<std::string>{}(k.bytes);
  }
};
