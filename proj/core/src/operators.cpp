#include "archdyn/operators.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "archdyn/errors.hpp"

namespace archdyn {

namespace {

void check_shapes(const TruncatedOperator& a, const TruncatedOperator& b,
                  const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument(std::string(what) + ": dimension mismatch");
  }
}

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

double block_norm_dense(const Eigen::MatrixXcd& block) {
  if (block.size() == 0) return 0.0;
  if (block.rows() == 1 || block.cols() == 1) return block.norm();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block);
  return svd.singularValues()(0);
}

double block_norm_power(const Eigen::MatrixXcd& block) {
  // Power iteration on B^* B for large blocks.
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(block.cols());
  v.normalize();
  double estimate = 0.0;
  for (int iter = 0; iter < 20000; ++iter) {
    Eigen::VectorXcd w = block.adjoint() * (block * v);
    const double next = std::sqrt(w.norm());
    if (w.norm() == 0.0) return 0.0;
    v = w / w.norm();
    if (std::abs(next - estimate) <= 1e-15 * std::max(1.0, next)) return next;
    estimate = next;
  }
  return estimate;
}

}  // namespace

TruncatedOperator TruncatedOperator::exact(GradedBasis domain,
                                           GradedBasis codomain,
                                           SparseRationalMatrix matrix,
                                           Rational radicand) {
  if (matrix.rows() != codomain.size() || matrix.cols() != domain.size()) {
    throw InvalidArgument("TruncatedOperator: matrix does not match the bases");
  }
  if (sgn(radicand) <= 0) throw InvalidArgument("TruncatedOperator: radicand must be > 0");
  TruncatedOperator op;
  op.domain_ = std::move(domain);
  op.codomain_ = std::move(codomain);
  op.exact_ = true;
  op.exact_matrix_ = std::move(matrix);
  op.radicand_ = std::move(radicand);
  return op.normalized();
}

TruncatedOperator TruncatedOperator::approximate(GradedBasis domain,
                                                 GradedBasis codomain,
                                                 ComplexSparse matrix) {
  if (static_cast<std::size_t>(matrix.rows()) != codomain.size() ||
      static_cast<std::size_t>(matrix.cols()) != domain.size()) {
    throw InvalidArgument("TruncatedOperator: matrix does not match the bases");
  }
  TruncatedOperator op;
  op.domain_ = std::move(domain);
  op.codomain_ = std::move(codomain);
  op.exact_ = false;
  op.approx_ = std::move(matrix);
  op.approx_.makeCompressed();
  return op;
}

const SparseRationalMatrix& TruncatedOperator::exact_matrix() const {
  if (!exact_) throw InvalidArgument("operator is not exact");
  return exact_matrix_;
}

TruncatedOperator TruncatedOperator::normalized() const {
  if (!exact_ || radicand_ == 1 || !is_rational_square(radicand_)) return *this;
  TruncatedOperator op = *this;
  op.exact_matrix_ = exact_matrix_.scaled(rational_sqrt(radicand_));
  op.radicand_ = 1;
  return op;
}

ComplexSparse TruncatedOperator::to_complex() const {
  if (!exact_) return approx_;
  const double factor = std::sqrt(to_double(radicand_));
  std::vector<Eigen::Triplet<std::complex<double>>> triplets;
  for (std::size_t r = 0; r < exact_matrix_.rows(); ++r) {
    for (const auto& [c, v] : exact_matrix_.row(r)) {
      triplets.emplace_back(static_cast<int>(r), static_cast<int>(c),
                            std::complex<double>(factor * to_double(v), 0.0));
    }
  }
  ComplexSparse m(static_cast<Eigen::Index>(rows()), static_cast<Eigen::Index>(cols()));
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b) {
  if (a.cols() != b.rows()) {
    throw InvalidArgument("operator product: dimension mismatch");
  }
  if (a.is_exact() && b.is_exact()) {
    return TruncatedOperator::exact(b.domain(), a.codomain(),
                                    a.exact_matrix() * b.exact_matrix(),
                                    a.radicand() * b.radicand());
  }
  ComplexSparse m = a.to_complex() * b.to_complex();
  return TruncatedOperator::approximate(b.domain(), a.codomain(), std::move(m));
}

TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b) {
  check_shapes(a, b, "operator sum");
  if (a.is_exact() && b.is_exact() && a.radicand() == b.radicand()) {
    return TruncatedOperator::exact(a.domain(), a.codomain(),
                                    a.exact_matrix() + b.exact_matrix(),
                                    a.radicand());
  }
  ComplexSparse m = a.to_complex() + b.to_complex();
  return TruncatedOperator::approximate(a.domain(), a.codomain(), std::move(m));
}

TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b) {
  check_shapes(a, b, "operator difference");
  if (a.is_exact() && b.is_exact() && a.radicand() == b.radicand()) {
    return TruncatedOperator::exact(a.domain(), a.codomain(),
                                    a.exact_matrix() - b.exact_matrix(),
                                    a.radicand());
  }
  ComplexSparse m = a.to_complex() - b.to_complex();
  return TruncatedOperator::approximate(a.domain(), a.codomain(), std::move(m));
}

TruncatedOperator adjoint(const TruncatedOperator& op) {
  const auto& dom = op.domain();
  const auto& cod = op.codomain();
  if (op.is_exact()) {
    const SparseRationalMatrix& m = op.exact_matrix();
    SparseRationalMatrix t(op.cols(), op.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (const auto& [c, v] : m.row(r)) {
        t.add(c, r, v * cod[r].metric / dom[c].metric);
      }
    }
    return TruncatedOperator::exact(cod, dom, std::move(t), op.radicand());
  }
  std::vector<Eigen::Triplet<std::complex<double>>> triplets;
  const ComplexSparse& m = op.to_complex();
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (ComplexSparse::InnerIterator it(m, r); it; ++it) {
      const double w = to_double(cod[static_cast<std::size_t>(it.row())].metric) /
                       to_double(dom[static_cast<std::size_t>(it.col())].metric);
      triplets.emplace_back(static_cast<int>(it.col()), static_cast<int>(it.row()),
                            std::conj(it.value()) * w);
    }
  }
  ComplexSparse t(static_cast<Eigen::Index>(op.cols()), static_cast<Eigen::Index>(op.rows()));
  t.setFromTriplets(triplets.begin(), triplets.end());
  return TruncatedOperator::approximate(cod, dom, std::move(t));
}

TruncatedOperator identity_operator(const GradedBasis& basis) {
  return TruncatedOperator::exact(basis, basis,
                                  SparseRationalMatrix::identity(basis.size()));
}

TruncatedOperator dirac_operator(const GradedBasis& basis) {
  std::vector<Rational> d;
  d.reserve(basis.size());
  for (const auto& e : basis) d.push_back(e.dirac);
  return TruncatedOperator::exact(basis, basis, SparseRationalMatrix::diagonal(d));
}

bool exactly_equal(const TruncatedOperator& a, const TruncatedOperator& b) {
  if (!a.is_exact() || !b.is_exact()) return false;
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const auto na = a.normalized();
  const auto nb = b.normalized();
  if (na.radicand() == nb.radicand()) return na.exact_matrix() == nb.exact_matrix();
  return na.exact_matrix().is_zero() && nb.exact_matrix().is_zero();
}

double max_abs_difference(const TruncatedOperator& a, const TruncatedOperator& b) {
  check_shapes(a, b, "max_abs_difference");
  if (a.is_exact() && b.is_exact() && a.radicand() == b.radicand()) {
    const Rational diff = (a.exact_matrix() - b.exact_matrix()).max_abs();
    return std::sqrt(to_double(a.radicand())) * to_double(diff);
  }
  const ComplexSparse d = a.to_complex() - b.to_complex();
  double best = 0.0;
  for (Eigen::Index r = 0; r < d.outerSize(); ++r) {
    for (ComplexSparse::InnerIterator it(d, r); it; ++it) {
      best = std::max(best, std::abs(it.value()));
    }
  }
  return best;
}

double operator_norm(const TruncatedOperator& op) {
  const ComplexSparse m = op.to_complex();
  const std::size_t nr = op.rows();
  const std::size_t nc = op.cols();
  // Vertices: rows 0..nr-1, columns nr..nr+nc-1.
  DisjointSets sets(nr + nc);
  struct Entry {
    std::size_t r, c;
    std::complex<double> v;
  };
  std::vector<Entry> entries;
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (ComplexSparse::InnerIterator it(m, r); it; ++it) {
      if (it.value() == std::complex<double>(0.0, 0.0)) continue;
      const auto row = static_cast<std::size_t>(it.row());
      const auto col = static_cast<std::size_t>(it.col());
      const double scale =
          std::sqrt(to_double(op.codomain()[row].metric) /
                    to_double(op.domain()[col].metric));
      entries.push_back({row, col, it.value() * scale});
      sets.unite(row, nr + col);
    }
  }
  // Group entries by component root, preserving first-seen order.
  std::vector<std::size_t> roots;
  std::vector<std::vector<const Entry*>> groups;
  std::vector<std::ptrdiff_t> slot(nr + nc, -1);
  for (const auto& e : entries) {
    const std::size_t root = sets.find(e.r);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::ptrdiff_t>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[root])].push_back(&e);
  }
  double best = 0.0;
  for (const auto& group : groups) {
    std::vector<std::size_t> rows, cols;
    for (const Entry* e : group) {
      rows.push_back(e->r);
      cols.push_back(e->c);
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(
        static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (const Entry* e : group) {
      const auto ri = std::lower_bound(rows.begin(), rows.end(), e->r) - rows.begin();
      const auto ci = std::lower_bound(cols.begin(), cols.end(), e->c) - cols.begin();
      block(ri, ci) += e->v;
    }
    const bool small = std::min(rows.size(), cols.size()) <= 400;
    best = std::max(best, small ? block_norm_dense(block) : block_norm_power(block));
  }
  return best;
}

TruncatedOperator dirac_commutator(const TruncatedOperator& op) {
  if (op.domain() != op.codomain()) {
    throw InvalidArgument("dirac_commutator: domain and codomain differ");
  }
  const auto& basis = op.domain();
  if (op.is_exact()) {
    SparseRationalMatrix m(op.rows(), op.cols());
    const auto& src = op.exact_matrix();
    for (std::size_t r = 0; r < src.rows(); ++r) {
      for (const auto& [c, v] : src.row(r)) {
        m.add(r, c, (basis[r].dirac - basis[c].dirac) * v);
      }
    }
    return TruncatedOperator::exact(basis, basis, std::move(m), op.radicand());
  }
  std::vector<Eigen::Triplet<std::complex<double>>> triplets;
  const ComplexSparse& src = op.to_complex();
  for (Eigen::Index r = 0; r < src.outerSize(); ++r) {
    for (ComplexSparse::InnerIterator it(src, r); it; ++it) {
      const double gap = to_double(basis[static_cast<std::size_t>(it.row())].dirac -
                                   basis[static_cast<std::size_t>(it.col())].dirac);
      if (gap != 0.0) {
        triplets.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                              gap * it.value());
      }
    }
  }
  ComplexSparse m(src.rows(), src.cols());
  m.setFromTriplets(triplets.begin(), triplets.end());
  return TruncatedOperator::approximate(basis, basis, std::move(m));
}

double dirac_commutator_norm(const TruncatedOperator& op) {
  return operator_norm(dirac_commutator(op));
}

std::string to_csv(const TruncatedOperator& op, int precision) {
  std::ostringstream out;
  out.precision(precision);
  out << "row";
  for (const auto& e : op.domain()) out << ',' << e.label;
  out << '\n';
  const ComplexSparse m = op.to_complex();
  const bool rational_entries = op.is_exact() && op.radicand() == 1;
  for (std::size_t r = 0; r < op.rows(); ++r) {
    out << op.codomain()[r].label;
    for (std::size_t c = 0; c < op.cols(); ++c) {
      out << ',';
      if (rational_entries) {
        out << op.exact_matrix().at(r, c).get_str();
      } else {
        const auto v = m.coeff(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        out << v.real();
        if (v.imag() != 0.0) out << (v.imag() > 0 ? "+" : "") << v.imag() << 'i';
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace archdyn
