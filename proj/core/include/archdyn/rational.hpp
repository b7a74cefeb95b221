#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace archdyn {

using Rational = mpq_class;

std::string to_string(const Rational& q);
double to_double(const Rational& q);

/// True when q is the square of a rational number.
bool is_rational_square(const Rational& q);
/// Square root of a rational square. Precondition: is_rational_square(q).
Rational rational_sqrt(const Rational& q);

/// Sparse vector over Q: entries sorted by index, no explicit zeros.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

SparseVector sparse_from_map(const std::map<std::size_t, Rational>& entries);
SparseVector axpy(const Rational& alpha, const SparseVector& x,
                  const SparseVector& y);  // alpha*x + y

/// Incremental exact row echelon form over Q.
///
/// Rows are kept with leading coefficient 1 and are indexed by their leading
/// column. Inserting a vector reduces it against the existing pivots; the
/// vector is kept when a nonzero remainder is left. The rank is the number of
/// stored rows.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t ambient_dim = 0) : dim_(ambient_dim) {}

  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return pivots_.size(); }

  /// Returns true if v was independent of the rows already present.
  bool insert(SparseVector v);

  /// Full reduction of v modulo the row space (normal form).
  SparseVector reduce(SparseVector v) const;

  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

  /// The stored rows, in increasing order of leading column.
  std::vector<SparseVector> rows() const;

 private:
  SparseVector reduce_leading(SparseVector v) const;

  std::size_t dim_;
  std::map<std::size_t, SparseVector> pivots_;
};

/// Rank of a family of sparse vectors.
std::size_t exact_rank(const std::vector<SparseVector>& vectors,
                       std::size_t ambient_dim);

/// Row-major sparse matrix over Q.
class SparseRationalMatrix {
 public:
  SparseRationalMatrix() = default;
  SparseRationalMatrix(std::size_t rows, std::size_t cols)
      : cols_(cols), rows_(rows) {}

  static SparseRationalMatrix identity(std::size_t n);
  static SparseRationalMatrix diagonal(const std::vector<Rational>& d);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  /// Adds value to entry (r, c).
  void add(std::size_t r, std::size_t c, const Rational& value);
  Rational at(std::size_t r, std::size_t c) const;

  const SparseVector& row(std::size_t r) const { return rows_[r]; }
  SparseVector& row(std::size_t r) { return rows_[r]; }

  std::size_t nonzeros() const;
  bool is_zero() const;

  SparseRationalMatrix transpose() const;
  SparseRationalMatrix operator*(const SparseRationalMatrix& rhs) const;
  SparseRationalMatrix operator+(const SparseRationalMatrix& rhs) const;
  SparseRationalMatrix operator-(const SparseRationalMatrix& rhs) const;
  SparseRationalMatrix scaled(const Rational& alpha) const;

  bool operator==(const SparseRationalMatrix& rhs) const;

  /// Largest absolute entry.
  Rational max_abs() const;

 private:
  std::size_t cols_ = 0;
  std::vector<SparseVector> rows_;
};

}  // namespace archdyn
