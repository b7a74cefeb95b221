#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "archdyn/arch_model.hpp"
#include "archdyn/errors.hpp"

namespace archdyn {
namespace {

GradedElement unit(const ConeModel& model, int q, int p, Source s, int k = 0) {
  const auto idx = model.find(q, p, s);
  if (!idx) throw std::logic_error("missing piece");
  return model.basis_vector(*idx, k);
}

TEST(ConeModel, PieceExamples) {
  const auto model = ConeModel::build(2, -3, 3);
  ASSERT_TRUE(model.find(1, 0, Source::H1));
  EXPECT_EQ(model.piece(*model.find(1, 0, Source::H1)).dimension, 4);
  EXPECT_FALSE(piece_exists(0, 1, Source::H0));
  EXPECT_FALSE(model.find(0, 1, Source::H0));
  ASSERT_TRUE(model.find(3, 2, Source::H2));
  EXPECT_EQ(model.piece(*model.find(3, 2, Source::H2)).dimension, 1);
}

TEST(ConeModel, PieceTableIsComplete) {
  for (int g = 2; g <= 3; ++g) {
    const auto model = ConeModel::build(g, -4, 5);
    for (int p = -4; p <= 5; ++p) {
      const bool expected[4][3] = {
          {p <= 0, false, false},
          {p >= 1, p <= 0, false},
          {false, p >= 2, p <= 1},
          {false, false, p >= 2},
      };
      for (int q = 0; q <= 3; ++q) {
        for (int s = 0; s <= 2; ++s) {
          const auto source = static_cast<Source>(s);
          EXPECT_EQ(model.find(q, p, source).has_value(), expected[q][s]) << q << "," << p << "," << s;
          EXPECT_EQ(piece_exists(q, p, source), expected[q][s]);
        }
      }
    }
    for (const auto& piece : model.pieces()) {
      EXPECT_EQ(piece.dimension, piece.source == Source::H1 ? 2 * g : 1);
      EXPECT_EQ(piece.j_grading(), static_cast<int>(piece.source) - 1);
      const bool first_summand = static_cast<int>(piece.source) == piece.degree;
      EXPECT_EQ(piece.twist, first_summand ? piece.weight : piece.weight - 1);
    }
  }
}

TEST(ConeModel, RejectsBadWindows) {
  EXPECT_THROW(ConeModel::build(2, 0, 3), InvalidArgument);
  EXPECT_THROW(ConeModel::build(2, -1, 1), InvalidArgument);
  EXPECT_THROW(ConeModel::build(1, -1, 2), InvalidArgument);
  EXPECT_THROW(make_piece(2, 0, 1, Source::H0), InvalidArgument);
}

TEST(ConeModel, DumpListsEveryPiece) {
  const auto model = ConeModel::build(2, -1, 2);
  const auto text = model.dump();
  EXPECT_NE(text.find("degree=1 weight=0 source=H1 dim=4 phi=0 twist=0 side=H-"), std::string::npos);
  EXPECT_NE(text.find("degree=3 weight=2 source=H2 dim=1 phi=1 twist=1 side=H+"), std::string::npos);
}

TEST(Phi, Examples) {
  EXPECT_EQ(phi(make_piece(2, 0, -3, Source::H0)), -3);
  EXPECT_EQ(phi(make_piece(2, 2, 1, Source::H2)), 1);
  EXPECT_EQ(phi(make_piece(2, 2, 3, Source::H1)), 2);
  for (int g = 2; g <= 3; ++g) {
    const auto model = ConeModel::build(g, -5, 5);
    for (const auto& piece : model.pieces()) {
      EXPECT_EQ(phi(piece), piece.twist) << piece.label();
    }
  }
}

TEST(Monodromy, ShiftsWeightAndTwist) {
  const auto model = ConeModel::build(2, -3, 3);
  const auto x = unit(model, 1, 0, Source::H1, 2);
  const auto y = monodromy_N(model, x);
  EXPECT_EQ(y.piece.weight, -1);
  EXPECT_EQ(y.piece.degree, 1);
  EXPECT_EQ(y.twist(), x.twist() - 1);
  EXPECT_EQ(y.coords, x.coords);
}

TEST(Monodromy, SquareVanishesOnLengthTwoTowers) {
  const auto model = ConeModel::build(2, -3, 4);
  const auto x = unit(model, 1, 2, Source::H0);
  const auto once = monodromy_N(model, x);
  EXPECT_FALSE(once.is_zero());
  EXPECT_TRUE(monodromy_N(model, once).is_zero());
  EXPECT_TRUE(monodromy_N(model, unit(model, 3, 2, Source::H2)).is_zero());
}

TEST(Monodromy, CommutesWithLefschetz) {
  const auto model = ConeModel::build(3, -5, 5);
  for (std::size_t i = 0; i < model.pieces().size(); ++i) {
    const auto& p = model.piece(i);
    if (p.weight <= -4 || p.weight >= 4) continue;
    const auto x = model.basis_vector(i, 0);
    const auto lx = lefschetz_l(model, x);
    const auto nx = monodromy_N(model, x);
    const auto nl = lx.is_zero() ? lx : monodromy_N(model, lx);
    const auto ln = nx.is_zero() ? nx : lefschetz_l(model, nx);
    EXPECT_EQ(nl.is_zero(), ln.is_zero()) << p.label();
    if (!nl.is_zero()) EXPECT_EQ(nl, ln) << p.label();
  }
}

TEST(Monodromy, WindowError) {
  const auto model = ConeModel::build(2, -1, 2);
  EXPECT_THROW(monodromy_N(model, unit(model, 0, -1, Source::H0)), WindowError);
}

TEST(Lefschetz, Examples) {
  const auto model = ConeModel::build(2, -3, 3);
  const auto y = lefschetz_l(model, unit(model, 0, -1, Source::H0));
  EXPECT_EQ(y.piece.degree, 2);
  EXPECT_EQ(y.piece.weight, 0);
  EXPECT_EQ(y.piece.source, Source::H2);
  EXPECT_EQ(y.coords, std::vector<Rational>{Rational(1)});
  EXPECT_EQ(y.twist(), -1 + 1);
  EXPECT_TRUE(lefschetz_l(model, unit(model, 1, -2, Source::H1, 1)).is_zero());
  for (std::size_t i = 0; i < model.pieces().size(); ++i) {
    const auto x = model.basis_vector(i, 0);
    if (x.piece.weight >= 2) continue;
    const auto once = lefschetz_l(model, x);
    if (!once.is_zero()) EXPECT_TRUE(lefschetz_l(model, once).is_zero());
  }
}

TEST(Sigma2, DiagonalActsByJGrading) {
  const auto model = ConeModel::build(2, -2, 3);
  const double b = 3.0;
  const auto s = sigma2(model, b, 0.0, 0.0, 1.0 / b).to_complex();
  const auto& basis = model_basis(model, tower_closed_pieces(model));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& label = basis[i].label;
    const double expected = label.find(":H0:") != std::string::npos   ? 1.0 / b
                            : label.find(":H2:") != std::string::npos ? b
                                                                      : 1.0;
    EXPECT_NEAR(std::abs(s.coeff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) - expected),
                0.0, 1e-15)
        << label;
  }
}

TEST(Sigma2, MinusIdentity) {
  const auto model = ConeModel::build(3, -2, 3);
  const auto s = sigma2(model, -1.0, 0.0, 0.0, -1.0).to_complex();
  const auto basis = model_basis(model, tower_closed_pieces(model));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const bool h1 = basis[i].label.find(":H1:") != std::string::npos;
    EXPECT_EQ(s.coeff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)),
              std::complex<double>(h1 ? 1.0 : -1.0));
  }
}

TEST(Sigma2, DerivativeOfUnipotentIsLefschetz) {
  const auto model = ConeModel::build(2, -3, 3);
  const double t = 1e-6;
  const auto s = sigma2(model, 1.0, t, 0.0, 1.0);
  const auto id = identity_operator(s.domain());
  const auto l = lefschetz_operator(model);
  const Eigen::MatrixXcd diff = (Eigen::MatrixXcd((s - id).to_complex()) / t);
  const Eigen::MatrixXcd lm(l.to_complex());
  EXPECT_LT((diff - lm).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Sigma2, Multiplicative) {
  const auto model = ConeModel::build(2, -3, 4);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto random_sl2 = [&] {
    for (;;) {
      const double a = u(rng), b = u(rng), c = u(rng);
      if (std::abs(a) < 0.2) continue;
      return std::array<double, 4>{a, b, c, (1.0 + b * c) / a};
    }
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto m1 = random_sl2();
    const auto m2 = random_sl2();
    const std::array<double, 4> prod{m1[0] * m2[0] + m1[1] * m2[2], m1[0] * m2[1] + m1[1] * m2[3],
                                     m1[2] * m2[0] + m1[3] * m2[2], m1[2] * m2[1] + m1[3] * m2[3]};
    const auto lhs = sigma2(model, prod[0], prod[1], prod[2], prod[3]);
    const auto rhs = sigma2(model, m1[0], m1[1], m1[2], m1[3]) * sigma2(model, m2[0], m2[1], m2[2], m2[3]);
    EXPECT_LT(max_abs_difference(lhs, rhs), 1e-10);
  }
}

TEST(Sigma2, RejectsDeterminantAwayFromOne) {
  const auto model = ConeModel::build(2, -1, 2);
  EXPECT_THROW(sigma2(model, 2.0, 0.0, 0.0, 1.0), InvalidArgument);
}

TEST(Sigma2, CommutatorNormIsWindowIndependent) {
  const double m[4] = {2.0, 3.0, 1.0, 2.0};
  const double smax = Eigen::Matrix2d{{m[0], m[1]}, {m[2], m[3]}}.jacobiSvd().singularValues()(0);
  std::vector<double> norms;
  for (int w = 1; w <= 5; ++w) {
    const auto model = ConeModel::build(2, -w, w + 1);
    const auto s = sigma2(model, m[0], m[1], m[2], m[3]);
    const double norm = dirac_commutator_norm(s);
    EXPECT_LE(norm, smax + 1e-12);
    norms.push_back(norm);
  }
  for (std::size_t i = 1; i < norms.size(); ++i) EXPECT_EQ(norms[i], norms[0]);
  EXPECT_DOUBLE_EQ(norms[0], std::max(std::abs(m[1]), std::abs(m[2])));
}

TEST(Sigma2, CommutatorSupportedOnTowers) {
  const auto model = ConeModel::build(2, -2, 3);
  const auto c = dirac_commutator(sigma2(model, 2.0, 3.0, 1.0, 2.0)).to_complex();
  const auto basis = model_basis(model, tower_closed_pieces(model));
  for (int k = 0; k < c.outerSize(); ++k) {
    for (ComplexSparse::InnerIterator it(c, k); it; ++it) {
      if (std::abs(it.value()) == 0.0) continue;
      EXPECT_EQ(basis[static_cast<std::size_t>(it.row())].label.find(":H1:"), std::string::npos);
      EXPECT_EQ(basis[static_cast<std::size_t>(it.col())].label.find(":H1:"), std::string::npos);
    }
  }
}

TEST(Delta, Examples) {
  const auto model = ConeModel::build(2, -3, 4);
  const auto d1 = duality_delta(model, unit(model, 1, 0, Source::H1, 1));
  EXPECT_EQ(d1.piece.degree, 2);
  EXPECT_EQ(d1.piece.weight, 2);
  EXPECT_EQ(d1.piece.source, Source::H1);
  EXPECT_EQ(d1.coords[1], 1);
  const auto d0 = duality_delta(model, unit(model, 0, 0, Source::H0));
  EXPECT_EQ(d0.piece.degree, 1);
  EXPECT_EQ(d0.piece.weight, 1);
  const auto d2 = duality_delta(model, unit(model, 2, 1, Source::H2));
  EXPECT_EQ(d2.piece.degree, 3);
  EXPECT_EQ(d2.piece.weight, 2);
  EXPECT_EQ(duality_delta_inverse(model, d1), unit(model, 1, 0, Source::H1, 1));
}

TEST(Delta, WindowErrorAndSideCheck) {
  const auto model = ConeModel::build(2, -3, 2);
  EXPECT_THROW(duality_delta(model, unit(model, 1, -3, Source::H1)), WindowError);
  EXPECT_THROW(duality_delta(model, unit(model, 2, 2, Source::H1)), InvalidArgument);
}

TEST(Omega, SquareIsIdentityAndAnticommutator) {
  const auto model = ConeModel::build(2, -3, 4);
  const auto x = unit(model, 1, 0, Source::H1, 0);
  EXPECT_EQ(omega(model, omega(model, x)), x);
  EXPECT_EQ(phi_omega_anticommutator(model, x), Rational(1) * omega(model, x));
  const auto y = unit(model, 2, 1, Source::H2);
  EXPECT_EQ(phi_omega_anticommutator(model, y), Rational(2) * omega(model, y));
  EXPECT_EQ(omega(model, phi_omega_anticommutator(model, y)), Rational(2) * y);
}

TEST(Omega, IdentitiesOnFullWindow) {
  for (int g = 2; g <= 3; ++g) {
    const auto model = ConeModel::build(g, -8, 10);
    const auto report = check_omega_identities(model, -6, 6);
    EXPECT_TRUE(report.passed()) << report.first_failure;
    EXPECT_GT(report.vectors_checked, 0u);
  }
}

TEST(Omega, OperatorIsSelfAdjointInvolution) {
  const auto model = ConeModel::build(3, -4, 5);
  const auto w = omega_operator(model);
  EXPECT_TRUE(exactly_equal(adjoint(w), w));
  EXPECT_TRUE(exactly_equal(w * w, identity_operator(w.domain())));
}

TEST(FInfinity, Examples) {
  const auto model = ConeModel::build(2, -3, 3);
  const auto h0 = unit(model, 0, 0, Source::H0);
  EXPECT_EQ(f_infinity_arch(model, h0), h0);
  EXPECT_EQ(f_infinity_arch(model, unit(model, 1, 0, Source::H1, 0)), unit(model, 1, 0, Source::H1, 2));
  EXPECT_EQ(f_infinity_arch(model, unit(model, 1, -1, Source::H1, 0)),
            Rational(-1) * unit(model, 1, -1, Source::H1, 2));
}

TEST(FInfinity, InvolutionAndSignedRelations) {
  const auto model = ConeModel::build(2, -5, 6);
  for (std::size_t i = 0; i < model.pieces().size(); ++i) {
    const auto& piece = model.piece(i);
    for (int k = 0; k < piece.dimension; ++k) {
      const auto x = model.basis_vector(i, k);
      const auto fx = f_infinity_arch(model, x);
      EXPECT_EQ(f_infinity_arch(model, fx), x);
      if (piece.weight > -5 && piece.weight < 6) {
        const auto nf = monodromy_N(model, fx);
        const auto nx = monodromy_N(model, x);
        EXPECT_EQ(nf.is_zero(), nx.is_zero());
        if (!nx.is_zero()) EXPECT_EQ(nf, Rational(-1) * f_infinity_arch(model, nx)) << piece.label();
      }
      if (in_h_minus(piece) && model.in_window(piece.degree + 1 - piece.weight)) {
        const Rational sign = piece.degree % 2 == 0 ? 1 : -1;
        EXPECT_EQ(f_infinity_arch(model, duality_delta(model, x)),
                  sign * duality_delta(model, fx))
            << piece.label();
      }
    }
  }
}

TEST(PhiSpectrum, MultiplicitiesMatchPieceTable) {
  for (int g = 2; g <= 3; ++g) {
    const auto model = ConeModel::build(g, -6, 7);
    const auto counts = phi_multiplicities(model);
    for (std::int64_t lambda = -6; lambda <= 6; ++lambda) {
      EXPECT_EQ(counts.at(lambda), phi_multiplicity_closed_form(g, lambda)) << lambda;
      EXPECT_LE(counts.at(lambda), 2 * g + 3);
    }
    EXPECT_EQ(phi_multiplicity_closed_form(g, 0), 2 * g + 3);
    EXPECT_EQ(phi_multiplicity_closed_form(g, 1), 2 * g + 3);
    EXPECT_EQ(phi_multiplicity_closed_form(g, -4), 2 * g + 2);
    EXPECT_EQ(phi_multiplicity_closed_form(g, 9), 2 * g + 2);
  }
}

TEST(ModelBasis, DiracIsPhi) {
  const auto model = ConeModel::build(2, -2, 3);
  std::vector<std::size_t> all(model.pieces().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto basis = model_basis(model, all);
  EXPECT_EQ(basis.size(), model.dimension());
  std::size_t n = 0;
  for (std::size_t i : all) {
    for (int k = 0; k < model.piece(i).dimension; ++k, ++n) {
      EXPECT_EQ(basis[n].dirac, phi(model.piece(i)));
      EXPECT_EQ(basis[n].metric, 1);
      EXPECT_EQ(basis[n].label, model.piece(i).label() + ":" + std::to_string(k + 1));
    }
  }
}

}  // namespace
}  // namespace archdyn
