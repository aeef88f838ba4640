#pragma once

#include "quiverlab/constructions.hpp"

#include <optional>
#include <string>
#include <vector>

namespace quiverlab {

enum class Direction { UtoV, VtoU };

const char* direction_name(Direction d);

struct ScheduleTable {
  CoreKind core;
  Direction direction;
  std::vector<Index> order;  // cyclic mutation order, core indices
  std::vector<std::size_t> entries;  // entries[m]: shortest prefix giving exactly m arrows
  std::size_t period = 0;
  long long gain = 0;

  // Prefix length for m arrows; beyond the table, extrapolated by period.
  std::size_t steps_for(long long m) const;
  // The first `steps` indices of the cyclic order.
  std::vector<Index> prefix(std::size_t steps) const;
};

// Arrows from u to v (or v to u) in a core state, zero if they point the
// other way.
long long directed_count(const ExchangeMatrix& core_state, const Core& core, Direction d);

ScheduleTable build_schedule(CoreKind core, Direction direction, long long max_m);

struct EmbeddingCertificate {
  ExchangeMatrix universal;
  MutationSequence seq;
  std::vector<Index> base;
  ExchangeMatrix target;
};

struct EntryDiff {
  Index i, j;
  Integer expected, actual;
};

struct CertificateCheck {
  bool ok = false;
  std::string message;
  std::vector<EntryDiff> diffs;
};

CertificateCheck check_certificate(const EmbeddingCertificate& c);
inline bool verify_certificate(const EmbeddingCertificate& c) { return check_certificate(c).ok; }

EmbeddingCertificate embed_quiver(const ExchangeMatrix& target, CoreKind core);
EmbeddingCertificate embed_quiver(const ExchangeMatrix& target, const GluingSpec& spec);
EmbeddingCertificate embed_matrix(const ExchangeMatrix& target, const Symmetrizer& d);

}  // namespace quiverlab
