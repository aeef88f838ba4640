#pragma once

#include "quiverlab/error.hpp"
#include "quiverlab/integer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace quiverlab {

struct Symmetrizer {
  std::vector<Integer> d;

  Index size() const { return static_cast<Index>(d.size()); }
  const Integer& operator[](Index i) const { return d[static_cast<std::size_t>(i)]; }
  static Symmetrizer identity(Index n) { return {std::vector<Integer>(static_cast<std::size_t>(n), Integer(1))}; }
  friend bool operator==(const Symmetrizer&, const Symmetrizer&) = default;
};

struct MutationSequence {
  std::vector<Index> steps;
  std::string provenance;

  Index size() const { return static_cast<Index>(steps.size()); }
};

// Exchange matrix with a frozen index set. Values are immutable; every
// operation returns a new matrix.
class ExchangeMatrix {
 public:
  ExchangeMatrix() = default;

  // Validates the sign pattern and computes the minimal symmetrizer.
  explicit ExchangeMatrix(IntMatrix b, std::vector<Index> frozen = {},
                          std::vector<std::string> labels = {});

  Index size() const { return b_.rows(); }
  const IntMatrix& b() const { return b_; }
  const Integer& operator()(Index i, Index j) const { return b_(i, j); }

  const std::vector<Index>& frozen() const { return frozen_; }
  bool is_frozen(Index i) const;
  Index mutable_count() const { return size() - static_cast<Index>(frozen_.size()); }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Index i) const;

  const Symmetrizer& symmetrizer() const { return d_; }
  bool is_skew_symmetric() const;

  // Equality of entries and frozen sets. Labels are display data.
  friend bool operator==(const ExchangeMatrix& a, const ExchangeMatrix& c);

  // Trusted construction for results of operations that preserve validity.
  static ExchangeMatrix unchecked(IntMatrix b, std::vector<Index> frozen,
                                  std::vector<std::string> labels, Symmetrizer d);

 private:
  IntMatrix b_;
  std::vector<Index> frozen_;
  std::vector<std::string> labels_;
  Symmetrizer d_;
};

// Matrix mutation at k, in place. Works for any signed scalar type.
template <typename Derived>
void mutate_in_place(Eigen::MatrixBase<Derived>& b, Index k) {
  using Scalar = typename Derived::Scalar;
  const Index n = b.rows();
  for (Index i = 0; i < n; ++i) {
    if (i == k) continue;
    const Scalar bik = b(i, k);
    const int si = sign(bik);
    if (si == 0) continue;
    for (Index j = 0; j < n; ++j) {
      if (j == k) continue;
      const int sj = sign(b(k, j));
      if (si > 0 && sj > 0)
        b(i, j) += bik * b(k, j);
      else if (si < 0 && sj < 0)
        b(i, j) -= bik * b(k, j);
    }
  }
  b.row(k) = -b.row(k);
  b.col(k) = -b.col(k);
}

// Matrix mutation on machine words. Returns false and leaves b untouched
// when some entry would overflow.
bool try_mutate_in_place(DenseMatrix<long long>& b, Index k);

// Working state for long mutation runs: stays on machine words while the
// entries fit and switches to unbounded integers for good on overflow.
class WorkingMatrix {
 public:
  explicit WorkingMatrix(const IntMatrix& b);

  void mutate(Index k);
  Index size() const { return big_ ? b_.rows() : w_.rows(); }
  int sign_at(Index i, Index j) const { return big_ ? b_(i, j).sign() : sign(w_(i, j)); }
  Integer at(Index i, Index j) const { return big_ ? b_(i, j) : Integer(w_(i, j)); }
  bool on_words() const { return !big_; }
  IntMatrix matrix() const;

 private:
  bool big_ = false;
  DenseMatrix<long long> w_;
  IntMatrix b_;
};

ExchangeMatrix new_matrix(const IntMatrix& entries, const std::vector<Index>& frozen = {},
                          const std::vector<std::string>& labels = {});

ExchangeMatrix mutate(const ExchangeMatrix& m, Index k);
ExchangeMatrix mutate_seq(const ExchangeMatrix& m, const std::vector<Index>& ks);
ExchangeMatrix mutate_seq(const ExchangeMatrix& m, const MutationSequence& ks);

// Principal submatrix on the listed indices, in the listed order.
ExchangeMatrix restrict_to(const ExchangeMatrix& m, const std::vector<Index>& indices);
// Removes the listed indices, keeping the rest in order.
ExchangeMatrix remove_indices(const ExchangeMatrix& m, const std::vector<Index>& indices);

ExchangeMatrix framed(const ExchangeMatrix& m);

// Throws NonZeroDiagonal / SignIncoherentPair.
void check_sign_pattern(const IntMatrix& b);
Symmetrizer find_symmetrizer(const IntMatrix& b);
inline Symmetrizer find_symmetrizer(const ExchangeMatrix& m) { return find_symmetrizer(m.b()); }
bool is_symmetrizer(const IntMatrix& b, const Symmetrizer& d);

// h_ij = d_j / gcd(d_i, d_j)
Integer h_factor(const Symmetrizer& d, Index i, Index j);

// Sum of |b_vj| over j.
Integer total_degree(const ExchangeMatrix& m, Index v);
// Number of arrows counted with multiplicity (sum of positive entries).
Integer arrow_count(const ExchangeMatrix& m);
Integer max_multiplicity(const ExchangeMatrix& m);

// Adjacency components (i ~ j when b_ij != 0), each sorted ascending.
std::vector<std::vector<Index>> connected_components(const IntMatrix& b);

}  // namespace quiverlab
