#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace quiverlab {

enum class ErrorKind {
  NonZeroDiagonal,
  SignIncoherentPair,
  NotSymmetrizable,
  FrozenVertex,
  IndexOutOfRange,
  EmptyIndexSet,
  DuplicateIndex,
  AlreadyFramed,
  SizeMismatch,
  NotSkewSymmetric,
  HasFrozenVertices,
  UnknownName,
  BadParameters,
  InvalidSpec,
  HasSourceOrSink,
  NonGenericDrawing,
  InvalidEmbedding,
  TargetUnreachable,
  SymmetrizerMismatch,
  InvalidPlabic,
  NotApplicable,
  ConditionsViolated,
  ParseError,
};

const char* kind_name(ErrorKind kind);

// Indices in `where` are 0-based; front ends shift them for display.
class QuiverError : public std::runtime_error {
 public:
  QuiverError(ErrorKind kind, std::string message, std::vector<long long> where = {})
      : std::runtime_error(std::move(message)), kind_(kind), where_(std::move(where)) {}

  ErrorKind kind() const { return kind_; }
  const std::vector<long long>& where() const { return where_; }

 private:
  ErrorKind kind_;
  std::vector<long long> where_;
};

}  // namespace quiverlab
