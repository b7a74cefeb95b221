#include "archdyn/rational.hpp"

#include <algorithm>
#include <cmath>

#include "archdyn/errors.hpp"

namespace archdyn {

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

bool is_rational_square(const Rational& q) {
  if (sgn(q) < 0) return false;
  return mpz_perfect_square_p(q.get_num_mpz_t()) != 0 &&
         mpz_perfect_square_p(q.get_den_mpz_t()) != 0;
}

Rational rational_sqrt(const Rational& q) {
  if (!is_rational_square(q)) {
    throw InvalidArgument("rational_sqrt: " + q.get_str() + " is not a square");
  }
  mpz_class num = sqrt(mpz_class(q.get_num()));
  mpz_class den = sqrt(mpz_class(q.get_den()));
  return Rational(num, den);
}

SparseVector sparse_from_map(const std::map<std::size_t, Rational>& entries) {
  SparseVector out;
  out.reserve(entries.size());
  for (const auto& [idx, value] : entries) {
    if (sgn(value) != 0) out.emplace_back(idx, value);
  }
  return out;
}

SparseVector axpy(const Rational& alpha, const SparseVector& x,
                  const SparseVector& y) {
  SparseVector out;
  out.reserve(x.size() + y.size());
  auto xi = x.begin();
  auto yi = y.begin();
  while (xi != x.end() || yi != y.end()) {
    if (yi == y.end() || (xi != x.end() && xi->first < yi->first)) {
      out.emplace_back(xi->first, alpha * xi->second);
      ++xi;
    } else if (xi == x.end() || yi->first < xi->first) {
      out.push_back(*yi);
      ++yi;
    } else {
      Rational v = alpha * xi->second + yi->second;
      if (sgn(v) != 0) out.emplace_back(xi->first, std::move(v));
      ++xi;
      ++yi;
    }
  }
  return out;
}

SparseVector RowEchelon::reduce_leading(SparseVector v) const {
  while (!v.empty()) {
    auto it = pivots_.find(v.front().first);
    if (it == pivots_.end()) break;
    Rational factor = -v.front().second;
    v = axpy(factor, it->second, v);
  }
  return v;
}

bool RowEchelon::insert(SparseVector v) {
  v = reduce_leading(std::move(v));
  if (v.empty()) return false;
  Rational lead = v.front().second;
  for (auto& entry : v) entry.second /= lead;
  std::size_t col = v.front().first;
  pivots_.emplace(col, std::move(v));
  return true;
}

SparseVector RowEchelon::reduce(SparseVector v) const {
  std::size_t pos = 0;
  while (pos < v.size()) {
    auto it = pivots_.find(v[pos].first);
    if (it == pivots_.end()) {
      ++pos;
      continue;
    }
    // Pivot rows only touch columns >= their lead, so entries before pos
    // are unaffected.
    Rational factor = -v[pos].second;
    v = axpy(factor, it->second, v);
  }
  return v;
}

std::vector<SparseVector> RowEchelon::rows() const {
  std::vector<SparseVector> out;
  out.reserve(pivots_.size());
  for (const auto& [col, row] : pivots_) out.push_back(row);
  return out;
}

std::size_t exact_rank(const std::vector<SparseVector>& vectors,
                       std::size_t ambient_dim) {
  RowEchelon ech(ambient_dim);
  for (const auto& v : vectors) ech.insert(v);
  return ech.rank();
}

SparseRationalMatrix SparseRationalMatrix::identity(std::size_t n) {
  SparseRationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace_back(i, Rational(1));
  return m;
}

SparseRationalMatrix SparseRationalMatrix::diagonal(
    const std::vector<Rational>& d) {
  SparseRationalMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (sgn(d[i]) != 0) m.rows_[i].emplace_back(i, d[i]);
  }
  return m;
}

void SparseRationalMatrix::add(std::size_t r, std::size_t c,
                               const Rational& value) {
  if (r >= rows_.size() || c >= cols_) {
    throw InvalidArgument("SparseRationalMatrix::add: index out of range");
  }
  if (sgn(value) == 0) return;
  auto& row = rows_[r];
  auto it = std::lower_bound(
      row.begin(), row.end(), c,
      [](const auto& entry, std::size_t col) { return entry.first < col; });
  if (it != row.end() && it->first == c) {
    it->second += value;
    if (sgn(it->second) == 0) row.erase(it);
  } else {
    row.insert(it, {c, value});
  }
}

Rational SparseRationalMatrix::at(std::size_t r, std::size_t c) const {
  const auto& row = rows_.at(r);
  auto it = std::lower_bound(
      row.begin(), row.end(), c,
      [](const auto& entry, std::size_t col) { return entry.first < col; });
  if (it != row.end() && it->first == c) return it->second;
  return Rational(0);
}

std::size_t SparseRationalMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& row : rows_) n += row.size();
  return n;
}

bool SparseRationalMatrix::is_zero() const { return nonzeros() == 0; }

SparseRationalMatrix SparseRationalMatrix::transpose() const {
  SparseRationalMatrix t(cols_, rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace_back(r, v);
  }
  return t;
}

SparseRationalMatrix SparseRationalMatrix::operator*(
    const SparseRationalMatrix& rhs) const {
  if (cols_ != rhs.rows()) {
    throw InvalidArgument("SparseRationalMatrix: dimension mismatch in product");
  }
  SparseRationalMatrix out(rows_.size(), rhs.cols_);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::map<std::size_t, Rational> acc;
    for (const auto& [k, a] : rows_[r]) {
      for (const auto& [c, b] : rhs.rows_[k]) acc[c] += a * b;
    }
    out.rows_[r] = sparse_from_map(acc);
  }
  return out;
}

SparseRationalMatrix SparseRationalMatrix::operator+(
    const SparseRationalMatrix& rhs) const {
  if (rows() != rhs.rows() || cols_ != rhs.cols_) {
    throw InvalidArgument("SparseRationalMatrix: dimension mismatch in sum");
  }
  SparseRationalMatrix out(rows(), cols_);
  for (std::size_t r = 0; r < rows(); ++r) {
    out.rows_[r] = axpy(Rational(1), rows_[r], rhs.rows_[r]);
  }
  return out;
}

SparseRationalMatrix SparseRationalMatrix::operator-(
    const SparseRationalMatrix& rhs) const {
  return *this + rhs.scaled(Rational(-1));
}

SparseRationalMatrix SparseRationalMatrix::scaled(const Rational& alpha) const {
  SparseRationalMatrix out(rows(), cols_);
  if (sgn(alpha) == 0) return out;
  for (std::size_t r = 0; r < rows(); ++r) {
    out.rows_[r] = rows_[r];
    for (auto& entry : out.rows_[r]) entry.second *= alpha;
  }
  return out;
}

bool SparseRationalMatrix::operator==(const SparseRationalMatrix& rhs) const {
  return cols_ == rhs.cols_ && rows_ == rhs.rows_;
}

Rational SparseRationalMatrix::max_abs() const {
  Rational best(0);
  for (const auto& row : rows_) {
    for (const auto& entry : row) {
      Rational a = abs(entry.second);
      if (a > best) best = a;
    }
  }
  return best;
}

}  // namespace archdyn
