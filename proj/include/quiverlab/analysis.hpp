#pragma once

#include "quiverlab/exchange_matrix.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace quiverlab {

struct Budget {
  std::size_t max_nodes = 10000;
  std::size_t max_depth = 64;
};

struct ClassReport {
  ExchangeMatrix seed;
  std::size_t size = 0;
  // true only when the frontier emptied with neither limit biting, in which
  // case size is the exact size of the mutation class
  bool exhausted = false;
  Integer max_multiplicity = 0;
  std::size_t depth_reached = 0;
  std::size_t nodes_used = 0;
  std::size_t edges_used = 0;
};

// Called once per new class member, in discovery order.
using ClassVisitor = std::function<void(const ExchangeMatrix& member, std::size_t depth)>;

// Breadth-first search over isomorphism classes. Children are generated in
// ascending mutation index, so the report depends only on (m, budget).
ClassReport mutation_class_bfs(const ExchangeMatrix& m, const Budget& budget, const ClassVisitor& visit = {});

enum class ProbeStrategy {
  // breadth first: a hit is a shortest sequence
  Breadth,
  // best first on (max multiplicity, sum of squared entries); hits are then
  // shortened by deleting steps, but need not be shortest
  Greedy,
};
const char* strategy_name(ProbeStrategy s);
ProbeStrategy parse_strategy(const std::string& s);

struct ProbeReport {
  ProbeStrategy strategy = ProbeStrategy::Breadth;
  std::optional<MutationSequence> sequence;
  Integer target = 0;
  Integer best_multiplicity = 0;
  std::size_t nodes = 0;
  std::size_t depth_reached = 0;
  // the whole class was seen within the budget. Only then does an empty
  // sequence mean the target is unreachable.
  bool class_exhausted = false;
};

// Looks for a sequence after which some |b_ij| >= target. States are
// deduplicated up to isomorphism.
ProbeReport probe_two_universal(const ExchangeMatrix& m, std::size_t max_depth, const Integer& target,
                                std::size_t max_nodes = 200000, ProbeStrategy strategy = ProbeStrategy::Breadth);

enum class ViolationKind { FrozenArrow, IncoherentColumn };
const char* violation_name(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::vector<Index> sequence;
  Index i = 0;  // frozen pair (i, j), or column i of the c-vector matrix
  Index j = 0;
};

struct SignCoherenceReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t max_len = 0;
  std::size_t states = 0;
  // states containing u' -> v -> w' for frozen u', w'
  std::size_t frozen_paths = 0;
  std::size_t violation_count = 0;
  // the first kMaxStoredViolations witnesses
  std::vector<Violation> violations;
  static constexpr std::size_t kMaxStoredViolations = 100;
};

// n x n block of a framed state: rows are frozen copies, columns the mutable
// vertices.
IntMatrix c_vectors(const IntMatrix& framed_b, Index n);

// Frames m and runs random sequences of mutable mutations. Each trial draws a
// length in [0, max_len]; every prefix is checked.
SignCoherenceReport check_sign_coherence(const ExchangeMatrix& m, std::size_t trials, std::size_t max_len,
                                         std::uint64_t seed);

// result[t] is the haystack vertex playing needle vertex t, so that
// restrict_to(haystack, result) == needle including frozen flags.
std::optional<std::vector<Index>> find_full_subquiver(const ExchangeMatrix& haystack, const ExchangeMatrix& needle);

}  // namespace quiverlab
