#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "archdyn/errors.hpp"
#include "archdyn/spectral.hpp"

namespace archdyn {
namespace {

std::size_t position(const GradedBasis& basis, const std::string& label) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].label == label) return i;
  }
  throw std::logic_error("missing label " + label);
}

Eigen::MatrixXcd dense(const TruncatedOperator& op) { return Eigen::MatrixXcd(op.to_complex()); }

TEST(Parry, Weights) {
  EXPECT_EQ((ParryWeight{2, 0}).weight(), Rational(1, 4));
  EXPECT_EQ((ParryWeight{2, 2}).weight(), Rational(1, 36));
  EXPECT_EQ((ParryWeight{3, 1}).weight(), Rational(1, 30));
  for (int n = 0; n <= 3; ++n) {
    const auto basis = cylinder_basis(2, n);
    Rational total = 0;
    for (const auto& e : basis) total += e.metric;
    EXPECT_EQ(total, 1);
  }
}

TEST(LiteralShift, LevelZeroExample) {
  const auto s = s_i_literal(2, 0, 0);
  const auto& basis = s.domain();
  const auto& m = s.exact_matrix();
  const auto col = position(basis, "g3");
  for (std::size_t r = 0; r < basis.size(); ++r) {
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const bool expected = c == col && basis[r].label != "g1";
      EXPECT_EQ(m.at(r, c), expected ? 1 : 0) << r << "," << c;
    }
  }
}

TEST(LiteralShift, RowsPerColumnPattern) {
  const auto s = s_i_literal(2, 1, 2);
  const auto m = s.exact_matrix();
  std::size_t nonzero_rows = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) nonzero_rows += m.row(r).empty() ? 0 : 1;
  EXPECT_EQ(nonzero_rows, 3u * 3u * 3u);
  EXPECT_EQ(m.nonzeros(), nonzero_rows);
}

TEST(KoopmanShift, IndicatorExample) {
  const auto s = dense(s_i_koopman(2, 0, 0));
  const auto d = s_i_koopman(2, 0, 0);
  const auto row = position(d.codomain(), "g1.g2");
  const auto col = position(d.domain(), "g2");
  Eigen::VectorXcd xi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d.cols()));
  xi(static_cast<Eigen::Index>(col)) = 1.0;
  const Eigen::VectorXcd image = s * xi;
  for (Eigen::Index r = 0; r < image.size(); ++r) {
    const double expected = r == static_cast<Eigen::Index>(row) ? std::sqrt(3.0) : 0.0;
    EXPECT_NEAR(std::abs(image(r) - expected), 0.0, 1e-15);
  }
}

TEST(KoopmanShift, IsometryOnRandomVectors) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (int level = 0; level <= 2; ++level) {
    for (Symbol i = 0; i < 4; ++i) {
      const auto op = s_i_koopman(2, i, level);
      const auto s = dense(op);
      for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXcd xi(static_cast<Eigen::Index>(op.cols()));
        for (Eigen::Index k = 0; k < xi.size(); ++k) xi(k) = normal(rng);
        for (std::size_t k = 0; k < op.cols(); ++k) {
          if (op.domain()[k].label.rfind("g" + std::to_string((i + 2) % 4 + 1), 0) == 0) {
            xi(static_cast<Eigen::Index>(k)) = 0.0;
          }
        }
        const Eigen::VectorXcd image = s * xi;
        double before = 0.0, after = 0.0;
        for (std::size_t k = 0; k < op.cols(); ++k) before += op.domain()[k].metric.get_d() * std::norm(xi(static_cast<Eigen::Index>(k)));
        for (std::size_t k = 0; k < op.rows(); ++k) after += op.codomain()[k].metric.get_d() * std::norm(image(static_cast<Eigen::Index>(k)));
        EXPECT_NEAR(after, before, 1e-12 * before);
      }
    }
  }
  const auto zero = dense(s_i_koopman(2, 1, 1)) * Eigen::VectorXcd::Zero(12);
  EXPECT_EQ(zero.norm(), 0.0);
}

TEST(CuntzKrieger, ExactOnLevelsOneToThree) {
  const auto report = ck_relations_check(2, 1, 3);
  EXPECT_TRUE(report.passed());
  ASSERT_EQ(report.rows.size(), 3u);
  for (const auto& row : report.rows) {
    EXPECT_TRUE(row.range_exact && row.relation_exact && row.isometry_exact && row.dictionary_exact);
    EXPECT_EQ(row.range_deviation, 0.0);
    EXPECT_EQ(row.relation_deviation, 0.0);
  }
  EXPECT_EQ(report.minimal_exact_level, 1);
  EXPECT_FALSE(report.dictionary.empty());
}

TEST(CuntzKrieger, GenusThree) {
  EXPECT_TRUE(ck_relations_check(3, 1, 2).passed());
}

TEST(CuntzKrieger, AllOnesMatrixFails) {
  const auto report = ck_relations_check(2, 1, 3, TransitionMatrix{std::vector<std::vector<int>>(4, std::vector<int>(4, 1))});
  EXPECT_FALSE(report.passed());
  for (const auto& row : report.rows) {
    EXPECT_TRUE(row.range_exact);
    EXPECT_FALSE(row.relation_exact);
    EXPECT_GT(row.relation_deviation, 0.0);
  }
}

TEST(CuntzKrieger, RejectsLevelZero) {
  EXPECT_THROW(ck_relations_check(2, 0, 2), InvalidArgument);
}

TEST(Rho, ConstantIsIdentity) {
  const auto group = SchottkyGroup::standard(2);
  const auto one = rho_cohomology([](const H3Point&) { return 1.0; }, group, 2);
  EXPECT_LT(max_abs_difference(one, identity_operator(one.domain())), 1e-15);
  const auto w = rho_homology([](const H3Point&, const P1Point&) { return 1.0; }, group, 3);
  EXPECT_LT(max_abs_difference(w, identity_operator(w.domain())), 1e-15);
}

TEST(Rho, HeightCoordinate) {
  const auto group = SchottkyGroup::standard(2);
  const auto rho = rho_cohomology([](const H3Point& x) { return x.t; }, group, 0);
  const auto k = static_cast<Eigen::Index>(position(rho.domain(), "g1"));
  EXPECT_NEAR(std::abs(dense(rho)(k, k) - 4.0), 0.0, 1e-12);
  const auto w = rho_homology([](const H3Point& x, const P1Point&) { return x.t; }, group, 1);
  EXPECT_NEAR(std::abs(dense(w)(0, 0) - 4.0), 0.0, 1e-12);
}

TEST(Rho, BoundaryIndicatorSeparatesFixedPoints) {
  const auto group = SchottkyGroup::standard(2);
  const auto near_g1 = [](const H3Point&, const P1Point& z) { return std::abs(z.w) < 1e-9 ? 1.0 : 0.0; };
  const auto m = dense(rho_homology(near_g1, group, 2));
  EXPECT_EQ(m(0, 0), 1.0);
  for (Eigen::Index k = 1; k < m.rows(); ++k) EXPECT_EQ(m(k, k), 0.0) << k;
}

TEST(Rho, Covariance) {
  const int genus = 2;
  const Alphabet alphabet(genus);
  const WordFunction f = [](const ReducedWord& w) {
    Rational value = 0;
    for (std::size_t j = 0; j < w.size(); ++j) value += Rational(static_cast<long>(w[j]) + 1) / (static_cast<long>(j) + 2);
    return value;
  };
  for (int level = 0; level <= 2; ++level) {
    for (Symbol i = 0; i < 4; ++i) {
      const auto s = s_i_koopman(genus, i, level);
      const WordFunction moved = [&](const ReducedWord& w) -> Rational {
        if (w[0] != i) return Rational(0);
        return f(ReducedWord::unchecked({w.letters().begin() + 1, w.letters().end()}));
      };
      const auto lhs = s * rho_cohomology_exact(f, genus, level) * adjoint(s);
      const auto rhs = rho_cohomology_exact(moved, genus, level + 1) * s * adjoint(s);
      EXPECT_TRUE(exactly_equal(lhs.normalized(), rhs.normalized())) << level << "," << i;
    }
  }
}

TEST(Commutator, DiagonalIsZero) {
  const auto group = SchottkyGroup::standard(2);
  const auto rho = rho_cohomology([](const H3Point& x) { return x.t; }, group, 2);
  EXPECT_EQ(dirac_commutator_norm(rho), 0.0);
}

TEST(Truncation, DiracSigns) {
  const auto h = DynamicalTruncation::build(2, 3, 4);
  ASSERT_EQ(h.level_offsets.size(), 4u);
  ASSERT_EQ(h.weight_offsets.size(), 4u);
  for (std::size_t k = 0; k < h.basis.size(); ++k) {
    if (k < h.weight_offsets[0]) {
      EXPECT_LE(h.basis[k].dirac, 0);
    } else {
      EXPECT_GE(h.basis[k].dirac, 1);
    }
  }
}

TEST(Truncation, ShiftCommutatorStabilizes) {
  std::vector<double> norms;
  for (int n = 3; n <= 6; ++n) {
    const auto h = DynamicalTruncation::build(2, n, 2);
    norms.push_back(dirac_commutator_norm(dynamical_shift(h, 0)));
  }
  for (std::size_t k = 1; k < norms.size(); ++k) EXPECT_LT(std::abs(norms[k] - norms[0]), 1e-6 * norms[0]);
  EXPECT_NEAR(norms[0], 1.0, 1e-12);
}

TEST(Summability, EmptySpectrum) {
  const auto rows = summability_profile([](std::int64_t) { return std::int64_t{0}; }, 0, 1.5, {10, 100});
  for (const auto& row : rows) EXPECT_EQ(row.partial_sum, 0.0);
}

TEST(Summability, CauchyAndLogGrowth) {
  const auto mult = phi_multiplicity_source(2);
  const auto z15 = summability_profile(mult, 7, 1.5, {100000, 200000});
  for (const auto& row : z15) {
    EXPECT_LT(row.next_difference, 1e-6);
    EXPECT_LT(row.next_difference, row.integral_tail_bound);
  }
  const auto z1 = summability_profile(mult, 7, 1.0, {1000, 10000, 100000});
  double lo = z1[0].ratio_to_log, hi = lo;
  for (const auto& row : z1) {
    lo = std::min(lo, row.ratio_to_log);
    hi = std::max(hi, row.ratio_to_log);
  }
  EXPECT_LT((hi - lo) / (hi + lo), 0.05);
  EXPECT_GT(z1[1].partial_sum, z1[0].partial_sum);
}

TEST(SpectrumReport, DefaultOptionsPass) {
  SpectrumOptions options;
  options.workers = 2;
  const auto report = spectrum_report(SchottkyGroup::standard(2), options);
  EXPECT_TRUE(report.phi_counts_match);
  EXPECT_TRUE(report.cauchy_ok);
  EXPECT_TRUE(report.log_growth_ok);
  EXPECT_TRUE(report.sigma_stable);
  EXPECT_TRUE(report.dynamical_stable);
  EXPECT_LT(report.dynamical_max_relative_change, 1e-6);
  EXPECT_EQ(report.sigma_rows.size(), 5u);
}

}  // namespace
}  // namespace archdyn
