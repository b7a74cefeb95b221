#pragma once

#include <Eigen/SparseCore>

#include <complex>
#include <string>
#include <vector>

#include "archdyn/rational.hpp"

namespace archdyn {

/// One basis vector of a truncated Hilbert space: a label for export, the
/// eigenvalue of the Dirac-type grading operator on it, and its squared norm
/// (the metric is diagonal in every basis used here).
struct BasisEntry {
  std::string label;
  Rational dirac{0};
  Rational metric{1};

  bool operator==(const BasisEntry&) const = default;
};

using GradedBasis = std::vector<BasisEntry>;

using ComplexSparse = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;

/// Finite section of an operator between two graded bases.
///
/// Exact operators carry a rational matrix M and a rational radicand r and
/// stand for sqrt(r) * M; this keeps Koopman-type operators with a square-root
/// normalization exact under products. Approximate operators carry a complex
/// double matrix.
class TruncatedOperator {
 public:
  static TruncatedOperator exact(GradedBasis domain, GradedBasis codomain,
                                 SparseRationalMatrix matrix,
                                 Rational radicand = Rational(1));
  static TruncatedOperator approximate(GradedBasis domain, GradedBasis codomain,
                                       ComplexSparse matrix);

  bool is_exact() const { return exact_; }
  const GradedBasis& domain() const { return domain_; }
  const GradedBasis& codomain() const { return codomain_; }
  std::size_t rows() const { return codomain_.size(); }
  std::size_t cols() const { return domain_.size(); }

  /// Throws InvalidArgument for approximate operators.
  const SparseRationalMatrix& exact_matrix() const;
  const Rational& radicand() const { return radicand_; }

  /// Same operator with radicand 1 when sqrt(radicand) is rational.
  TruncatedOperator normalized() const;

  ComplexSparse to_complex() const;

 private:
  TruncatedOperator() = default;

  GradedBasis domain_;
  GradedBasis codomain_;
  bool exact_ = true;
  SparseRationalMatrix exact_matrix_;
  Rational radicand_{1};
  ComplexSparse approx_;
};

/// Composition a * b (b first). Exact when both factors are exact.
TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b);

/// Adjoint for the diagonal metrics of the two bases.
TruncatedOperator adjoint(const TruncatedOperator& op);

/// Identity on a basis.
TruncatedOperator identity_operator(const GradedBasis& basis);

/// The grading operator of the basis as a diagonal operator.
TruncatedOperator dirac_operator(const GradedBasis& basis);

/// Both exact and entrywise equal after normalization.
bool exactly_equal(const TruncatedOperator& a, const TruncatedOperator& b);

/// Largest entry of |a - b| in double precision.
double max_abs_difference(const TruncatedOperator& a, const TruncatedOperator& b);

/// Operator norm (largest singular value) for the metrics of the bases.
///
/// The matrix is split into connected blocks of its sparsity graph and the
/// norm is the maximum of the block norms, so identical blocks give
/// bit-identical results at every truncation size.
double operator_norm(const TruncatedOperator& op);

/// [D, op] where D is the grading operator of the (shared) basis.
/// Throws InvalidArgument when domain and codomain differ.
TruncatedOperator dirac_commutator(const TruncatedOperator& op);
double dirac_commutator_norm(const TruncatedOperator& op);

/// CSV: header row of domain labels, then one row per codomain vector.
std::string to_csv(const TruncatedOperator& op, int precision = 15);

}  // namespace archdyn
