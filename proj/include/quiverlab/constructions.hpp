#pragma once

#include "quiverlab/exchange_matrix.hpp"

#include <array>
#include <string>
#include <vector>

namespace quiverlab {

enum class CoreKind { Somos, Double4 };

const char* core_name(CoreKind c);
CoreKind parse_core(const std::string& s);

// A 6-vertex core with two marked vertices. Vertex order is 1,2,3,4,u,v.
struct Core {
  CoreKind kind;
  ExchangeMatrix quiver;
  Index u = 4;
  Index v = 5;
  std::array<Index, 4> unmarked{0, 1, 2, 3};
};

Core make_core(CoreKind kind);

// extended_somos4, double_four_cycle, markov, two_universal_3,
// grid(k,l) and kronecker(m); parameters in parentheses.
ExchangeMatrix named_quiver(const std::string& name);
ExchangeMatrix grid_quiver(Index k, Index l);
ExchangeMatrix kronecker_quiver(long long m);

struct GluingSpec {
  CoreKind core = CoreKind::Somos;
  Index n = 2;
  // One flag per pair i<j in lexicographic order. false: u is glued to i.
  std::vector<bool> flipped;
};

// Pairs i<j in the order copies are laid out.
std::vector<std::pair<Index, Index>> base_pairs(Index n);
// Index of the first unmarked vertex of the copy for the given pair slot.
inline Index copy_offset(Index n, Index pair_slot) { return n + 4 * pair_slot; }

ExchangeMatrix glue_universal(const GluingSpec& spec);
ExchangeMatrix glue_universal(CoreKind core, Index n);

ExchangeMatrix d_universal_matrix(const Symmetrizer& d);

struct RecoveryStep {
  Index mutate_at;
  std::vector<Index> remove;
};

// Indices refer to vertices of the constructed matrix and stay valid while
// the plan is replayed.
struct RecoveryPlan {
  std::vector<RecoveryStep> steps;
};

ExchangeMatrix replay(const ExchangeMatrix& m, const RecoveryPlan& plan);

struct Reduction {
  ExchangeMatrix matrix;
  RecoveryPlan plan;
};

Reduction degree3_reduce(const ExchangeMatrix& m);

}  // namespace quiverlab
