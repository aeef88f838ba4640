#include "quiverlab/exchange_matrix.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

namespace quiverlab {

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonZeroDiagonal: return "NonZeroDiagonal";
    case ErrorKind::SignIncoherentPair: return "SignIncoherentPair";
    case ErrorKind::NotSymmetrizable: return "NotSymmetrizable";
    case ErrorKind::FrozenVertex: return "FrozenVertex";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::EmptyIndexSet: return "EmptyIndexSet";
    case ErrorKind::DuplicateIndex: return "DuplicateIndex";
    case ErrorKind::AlreadyFramed: return "AlreadyFramed";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::NotSkewSymmetric: return "NotSkewSymmetric";
    case ErrorKind::HasFrozenVertices: return "HasFrozenVertices";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::BadParameters: return "BadParameters";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::HasSourceOrSink: return "HasSourceOrSink";
    case ErrorKind::NonGenericDrawing: return "NonGenericDrawing";
    case ErrorKind::InvalidEmbedding: return "InvalidEmbedding";
    case ErrorKind::TargetUnreachable: return "TargetUnreachable";
    case ErrorKind::SymmetrizerMismatch: return "SymmetrizerMismatch";
    case ErrorKind::InvalidPlabic: return "InvalidPlabic";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::ConditionsViolated: return "ConditionsViolated";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

void check_index(Index n, Index k) {
  if (k < 0 || k >= n)
    throw QuiverError(ErrorKind::IndexOutOfRange,
                      "index " + std::to_string(k + 1) + " outside 1.." + std::to_string(n), {k});
}

std::vector<Index> normalized_set(Index n, std::vector<Index> s) {
  for (Index k : s) check_index(n, k);
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw QuiverError(ErrorKind::DuplicateIndex, "index listed twice");
  return s;
}

}  // namespace

ExchangeMatrix::ExchangeMatrix(IntMatrix b, std::vector<Index> frozen, std::vector<std::string> labels) {
  if (b.rows() != b.cols()) throw QuiverError(ErrorKind::SizeMismatch, "matrix is not square");
  if (b.rows() == 0) throw QuiverError(ErrorKind::SizeMismatch, "matrix has no vertices");
  if (!labels.empty() && static_cast<Index>(labels.size()) != b.rows())
    throw QuiverError(ErrorKind::SizeMismatch, "label count differs from vertex count");
  check_sign_pattern(b);
  d_ = find_symmetrizer(b);
  frozen_ = normalized_set(b.rows(), std::move(frozen));
  b_ = std::move(b);
  labels_ = std::move(labels);
}

ExchangeMatrix ExchangeMatrix::unchecked(IntMatrix b, std::vector<Index> frozen,
                                         std::vector<std::string> labels, Symmetrizer d) {
  ExchangeMatrix m;
  m.b_ = std::move(b);
  m.frozen_ = std::move(frozen);
  m.labels_ = std::move(labels);
  m.d_ = std::move(d);
  return m;
}

bool ExchangeMatrix::is_frozen(Index i) const {
  return std::binary_search(frozen_.begin(), frozen_.end(), i);
}

std::string ExchangeMatrix::label(Index i) const {
  if (labels_.empty()) return std::to_string(i + 1);
  return labels_[static_cast<std::size_t>(i)];
}

bool ExchangeMatrix::is_skew_symmetric() const {
  return std::all_of(d_.d.begin(), d_.d.end(), [](const Integer& x) { return x == 1; });
}

bool operator==(const ExchangeMatrix& a, const ExchangeMatrix& c) {
  return a.size() == c.size() && a.frozen_ == c.frozen_ && a.b_ == c.b_;
}

ExchangeMatrix new_matrix(const IntMatrix& entries, const std::vector<Index>& frozen,
                          const std::vector<std::string>& labels) {
  return ExchangeMatrix(entries, frozen, labels);
}

void check_sign_pattern(const IntMatrix& b) {
  const Index n = b.rows();
  for (Index i = 0; i < n; ++i) {
    if (b(i, i) != 0)
      throw QuiverError(ErrorKind::NonZeroDiagonal,
                        "nonzero diagonal entry at " + std::to_string(i + 1), {i});
    for (Index j = i + 1; j < n; ++j) {
      if (sign(b(i, j)) != -sign(b(j, i)))
        throw QuiverError(ErrorKind::SignIncoherentPair,
                          "entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              ") and (" + std::to_string(j + 1) + "," + std::to_string(i + 1) +
                              ") are not of opposite sign",
                          {i, j});
    }
  }
}

std::vector<std::vector<Index>> connected_components(const IntMatrix& b) {
  const Index n = b.rows();
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<Index>> out;
  for (Index s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Index> comp{s};
    seen[s] = 1;
    for (std::size_t q = 0; q < comp.size(); ++q) {
      const Index i = comp[q];
      for (Index j = 0; j < n; ++j)
        if (!seen[j] && b(i, j) != 0) {
          seen[j] = 1;
          comp.push_back(j);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

Symmetrizer find_symmetrizer(const IntMatrix& b) {
  check_sign_pattern(b);
  const Index n = b.rows();
  std::vector<Rational> ratio(static_cast<std::size_t>(n));
  std::vector<Integer> d(static_cast<std::size_t>(n), Integer(1));
  for (const auto& comp : connected_components(b)) {
    // d_j / d_i = |b_ij| / |b_ji| along a BFS tree rooted at comp[0]
    ratio[comp.front()] = 1;
    std::vector<int> placed(static_cast<std::size_t>(n), 0);
    placed[comp.front()] = 1;
    std::deque<Index> queue{comp.front()};
    while (!queue.empty()) {
      const Index i = queue.front();
      queue.pop_front();
      for (Index j : comp) {
        if (placed[j] || b(i, j) == 0) continue;
        ratio[j] = ratio[i] * Rational(mp::abs(b(i, j)), mp::abs(b(j, i)));
        placed[j] = 1;
        queue.push_back(j);
      }
    }
    for (Index i : comp)
      for (Index j : comp)
        if (i < j && b(i, j) != 0 && ratio[i] * b(i, j) != -(ratio[j] * b(j, i)))
          throw QuiverError(ErrorKind::NotSymmetrizable,
                            "no symmetrizer: ratios around a cycle through " + std::to_string(i + 1) +
                                " and " + std::to_string(j + 1) + " disagree",
                            {i, j});
    Integer den = 1;
    for (Index i : comp) den = lcm(den, denominator(ratio[i]));
    Integer g = 0;
    for (Index i : comp) {
      d[i] = numerator(ratio[i]) * (den / denominator(ratio[i]));
      g = gcd(g, d[i]);
    }
    for (Index i : comp) d[i] /= g;
  }
  return {std::move(d)};
}

bool is_symmetrizer(const IntMatrix& b, const Symmetrizer& d) {
  const Index n = b.rows();
  if (d.size() != n) return false;
  for (Index i = 0; i < n; ++i) {
    if (d[i] <= 0) return false;
    for (Index j = 0; j < n; ++j)
      if (d[i] * b(i, j) != -(d[j] * b(j, i))) return false;
  }
  return true;
}

Integer h_factor(const Symmetrizer& d, Index i, Index j) { return d[j] / gcd(d[i], d[j]); }

ExchangeMatrix mutate(const ExchangeMatrix& m, Index k) {
  check_index(m.size(), k);
  if (m.is_frozen(k))
    throw QuiverError(ErrorKind::FrozenVertex, "vertex " + std::to_string(k + 1) + " is frozen", {k});
  IntMatrix b = m.b();
  mutate_in_place(b, k);
  return ExchangeMatrix::unchecked(std::move(b), m.frozen(), m.labels(), m.symmetrizer());
}

bool try_mutate_in_place(DenseMatrix<long long>& b, Index k) {
  const Index n = b.rows();
  for (Index j = 0; j < n; ++j)
    if (b(k, j) == std::numeric_limits<long long>::min() || b(j, k) == std::numeric_limits<long long>::min())
      return false;
  // pass 0 only checks, so nothing is written unless every update fits
  for (int pass = 0; pass < 2; ++pass) {
    for (Index i = 0; i < n; ++i) {
      if (i == k || b(i, k) == 0) continue;
      const long long bik = b(i, k);
      for (Index j = 0; j < n; ++j) {
        if (j == k) continue;
        const long long bkj = b(k, j);
        if ((bik > 0) != (bkj > 0) || bkj == 0) continue;
        long long prod, sum;
        if (__builtin_mul_overflow(bik, bkj, &prod)) return false;
        if (bik > 0 ? __builtin_add_overflow(b(i, j), prod, &sum) : __builtin_sub_overflow(b(i, j), prod, &sum))
          return false;
        if (pass == 1) b(i, j) = sum;
      }
    }
  }
  b.row(k) = -b.row(k);
  b.col(k) = -b.col(k);
  return true;
}

WorkingMatrix::WorkingMatrix(const IntMatrix& b) {
  const bool fits = std::all_of(b.data(), b.data() + b.size(), [](const Integer& x) { return fits_int64(x); });
  if (fits) {
    w_.resize(b.rows(), b.cols());
    for (Index i = 0; i < b.size(); ++i) w_.data()[i] = static_cast<long long>(b.data()[i]);
  } else {
    big_ = true;
    b_ = b;
  }
}

void WorkingMatrix::mutate(Index k) {
  if (!big_) {
    if (try_mutate_in_place(w_, k)) return;
    b_ = matrix();
    big_ = true;
    w_.resize(0, 0);
  }
  mutate_in_place(b_, k);
}

IntMatrix WorkingMatrix::matrix() const {
  if (big_) return b_;
  IntMatrix out(w_.rows(), w_.cols());
  for (Index i = 0; i < w_.size(); ++i) out.data()[i] = w_.data()[i];
  return out;
}

ExchangeMatrix mutate_seq(const ExchangeMatrix& m, const std::vector<Index>& ks) {
  for (Index k : ks) {
    check_index(m.size(), k);
    if (m.is_frozen(k))
      throw QuiverError(ErrorKind::FrozenVertex, "vertex " + std::to_string(k + 1) + " is frozen", {k});
  }
  WorkingMatrix w(m.b());
  for (Index k : ks) w.mutate(k);
  return ExchangeMatrix::unchecked(w.matrix(), m.frozen(), m.labels(), m.symmetrizer());
}

ExchangeMatrix mutate_seq(const ExchangeMatrix& m, const MutationSequence& ks) {
  return mutate_seq(m, ks.steps);
}

ExchangeMatrix restrict_to(const ExchangeMatrix& m, const std::vector<Index>& indices) {
  if (indices.empty()) throw QuiverError(ErrorKind::EmptyIndexSet, "empty index set");
  normalized_set(m.size(), indices);
  const Index r = static_cast<Index>(indices.size());
  IntMatrix b(r, r);
  for (Index p = 0; p < r; ++p)
    for (Index q = 0; q < r; ++q) b(p, q) = m(indices[p], indices[q]);
  std::vector<Index> frozen;
  std::vector<std::string> labels;
  Symmetrizer d;
  for (Index p = 0; p < r; ++p) {
    if (m.is_frozen(indices[p])) frozen.push_back(p);
    if (m.has_labels()) labels.push_back(m.labels()[indices[p]]);
  }
  // A principal submatrix of a symmetrizable matrix is symmetrizable, but
  // minimality is per component and components may split.
  d = find_symmetrizer(b);
  return ExchangeMatrix::unchecked(std::move(b), std::move(frozen), std::move(labels), std::move(d));
}

ExchangeMatrix remove_indices(const ExchangeMatrix& m, const std::vector<Index>& indices) {
  const auto gone = normalized_set(m.size(), indices);
  std::vector<Index> keep;
  for (Index i = 0; i < m.size(); ++i)
    if (!std::binary_search(gone.begin(), gone.end(), i)) keep.push_back(i);
  return restrict_to(m, keep);
}

ExchangeMatrix framed(const ExchangeMatrix& m) {
  if (!m.frozen().empty()) throw QuiverError(ErrorKind::AlreadyFramed, "matrix already has frozen vertices");
  const Index n = m.size();
  IntMatrix b = IntMatrix::Zero(2 * n, 2 * n);
  b.topLeftCorner(n, n) = m.b();
  for (Index v = 0; v < n; ++v) {
    b(v, n + v) = 1;
    b(n + v, v) = -1;
  }
  std::vector<Index> frozen(static_cast<std::size_t>(n));
  std::iota(frozen.begin(), frozen.end(), n);
  std::vector<std::string> labels;
  for (Index v = 0; v < n; ++v) labels.push_back(m.label(v));
  for (Index v = 0; v < n; ++v) labels.push_back(m.label(v) + "'");
  return ExchangeMatrix(std::move(b), std::move(frozen), std::move(labels));
}

Integer total_degree(const ExchangeMatrix& m, Index v) {
  Integer s = 0;
  for (Index j = 0; j < m.size(); ++j) s += mp::abs(m(v, j));
  return s;
}

Integer arrow_count(const ExchangeMatrix& m) {
  Integer s = 0;
  for (Index i = 0; i < m.size(); ++i)
    for (Index j = 0; j < m.size(); ++j)
      if (m(i, j) > 0) s += m(i, j);
  return s;
}

Integer max_multiplicity(const ExchangeMatrix& m) {
  Integer s = 0;
  for (Index i = 0; i < m.size(); ++i)
    for (Index j = 0; j < m.size(); ++j)
      if (m(i, j) > s) s = m(i, j);
  return s;
}

}  // namespace quiverlab
