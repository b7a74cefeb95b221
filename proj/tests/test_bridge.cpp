#include <gtest/gtest.h>

#include "archdyn/bridge.hpp"
#include "archdyn/errors.hpp"

namespace archdyn {
namespace {

DynElement unit_dyn(DynKind kind, int genus, int weight, int twist, int k) {
  DynElement v{kind, weight, twist, std::vector<Rational>(static_cast<std::size_t>(2 * genus))};
  v.coords[static_cast<std::size_t>(k)] = 1;
  return v;
}

GradedElement h1(const ConeModel& model, int q, int p, int k) {
  return model.basis_vector(*model.find(q, p, Source::H1), k);
}

TEST(MapU, Examples) {
  const auto model = ConeModel::build(2, -5, 6);
  const auto config = BridgeConfig::canonical(2);
  EXPECT_EQ(map_U(model, config, h1(model, 1, 0, 0)), unit_dyn(DynKind::Cohomology, 2, 0, 0, 0));
  EXPECT_EQ(map_U(model, config, h1(model, 1, -1, 1)), unit_dyn(DynKind::Cohomology, 2, -1, -1, 1));
  auto zero = h1(model, 1, -1, 0);
  zero.coords.assign(zero.coords.size(), Rational(0));
  EXPECT_TRUE(map_U(model, config, zero).is_zero());
}

TEST(MapUTilde, Examples) {
  const auto model = ConeModel::build(2, -5, 6);
  const auto config = BridgeConfig::canonical(2);
  EXPECT_EQ(map_U_tilde(model, config, h1(model, 2, 2, 0)), unit_dyn(DynKind::Homology, 2, 1, 1, 0));
  EXPECT_EQ(map_U_tilde(model, config, h1(model, 2, 3, 3)), unit_dyn(DynKind::Homology, 2, 2, 2, 3));
  auto zero = h1(model, 2, 3, 2);
  zero.coords.assign(zero.coords.size(), Rational(0));
  EXPECT_TRUE(map_U_tilde(model, config, zero).is_zero());
}

TEST(MapU, RejectsWrongPieces) {
  const auto model = ConeModel::build(2, -3, 4);
  const auto config = BridgeConfig::canonical(2);
  EXPECT_THROW(map_U(model, config, h1(model, 2, 2, 0)), InvalidArgument);
  EXPECT_THROW(map_U_tilde(model, config, h1(model, 1, 0, 0)), InvalidArgument);
}

TEST(DualityDyn, Examples) {
  EXPECT_EQ(duality_Dyn(unit_dyn(DynKind::Cohomology, 2, 0, 0, 2)), unit_dyn(DynKind::Homology, 2, 1, 1, 2));
  const auto v = unit_dyn(DynKind::Cohomology, 2, -1, -1, 1);
  const auto w = duality_Dyn(v);
  EXPECT_EQ(w, unit_dyn(DynKind::Homology, 2, 2, 2, 1));
  EXPECT_EQ(pair(v, w), (PairingValue{Rational(2), 1}));
  DynElement zero{DynKind::Cohomology, -2, -2, std::vector<Rational>(4)};
  EXPECT_TRUE(duality_Dyn(zero).is_zero());
}

TEST(DualityDyn, PairingIsOneMinusWeight) {
  for (int g = 2; g <= 3; ++g) {
    for (int p = -3; p <= 0; ++p) {
      for (int k = 0; k < 2 * g; ++k) {
        const auto v = unit_dyn(DynKind::Cohomology, g, p, p, k);
        EXPECT_EQ(pair(v, duality_Dyn(v)), (PairingValue{Rational(1 - p), 1}));
      }
    }
  }
}

TEST(FInfinityDyn, Examples) {
  EXPECT_EQ(f_infinity_dyn(unit_dyn(DynKind::Cohomology, 2, 0, 0, 0)), unit_dyn(DynKind::Cohomology, 2, 0, 0, 2));
  auto expected = unit_dyn(DynKind::Cohomology, 2, -1, -1, 3);
  expected.coords[3] = -1;
  const auto v = unit_dyn(DynKind::Cohomology, 2, -1, -1, 1);
  EXPECT_EQ(f_infinity_dyn(v), expected);
  EXPECT_EQ(f_infinity_dyn(f_infinity_dyn(v)), v);
}

TEST(FInfinityDyn, DualityIntertwinesUpToSign) {
  for (int p = -3; p <= 0; ++p) {
    for (int k = 0; k < 6; ++k) {
      const auto v = unit_dyn(DynKind::Cohomology, 3, p, p, k);
      auto lhs = f_infinity_dyn(duality_Dyn(v));
      auto rhs = duality_Dyn(f_infinity_dyn(v));
      for (auto& c : rhs.coords) c = -c;
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(Diagram, Examples) {
  const auto report = check_diagram(2, -2, 0);
  ASSERT_TRUE(report.passed()) << report.first_failure;
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.via_duality, row.via_delta);
    EXPECT_EQ(row.via_duality.weight, 1 - row.weight);
    EXPECT_EQ(row.via_duality, unit_dyn(DynKind::Homology, 2, 1 - row.weight, 1 - row.weight, row.basis_index));
  }
  const auto model = ConeModel::build(2, -3, 4);
  const auto config = BridgeConfig::canonical(2);
  const auto x = h1(model, 1, 0, 0);
  const auto expected = unit_dyn(DynKind::Cohomology, 2, 0, 0, 2);
  EXPECT_EQ(map_U(model, config, f_infinity_arch(model, x)), expected);
  EXPECT_EQ(f_infinity_dyn(map_U(model, config, x)), expected);
}

TEST(Diagram, CommutesOnFullRange) {
  for (int g = 2; g <= 3; ++g) {
    const auto report = check_diagram(g, -4, 0, 2);
    EXPECT_TRUE(report.passed()) << report.first_failure;
    EXPECT_EQ(report.rows.size(), static_cast<std::size_t>(5 * 2 * g));
    for (const auto& row : report.rows) {
      EXPECT_TRUE(row.commutes && row.u_equivariant && row.u_tilde_equivariant && row.d_equivariant);
    }
  }
}

TEST(Diagram, WorkersDoNotChangeRows) {
  const auto a = check_diagram(3, -3, 0, 1);
  const auto b = check_diagram(3, -3, 0, 3);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].via_duality, b.rows[i].via_duality);
    EXPECT_EQ(a.rows[i].pairing, b.rows[i].pairing);
  }
}

TEST(Diagram, PermutedCorrespondence) {
  BridgeConfig config{2, {1, 0, 3, 2}};
  config.validate();
  EXPECT_TRUE(check_diagram(2, -2, 0, 1, &config).passed());
  BridgeConfig bad{2, {0, 1, 3, 2}};
  EXPECT_THROW(bad.validate(), InvalidArgument);
  BridgeConfig not_bijective{2, {0, 0, 2, 2}};
  EXPECT_THROW(not_bijective.validate(), InvalidArgument);
}

TEST(Diagram, RejectsPositiveWeights) {
  EXPECT_THROW(check_diagram(2, -1, 1), InvalidArgument);
}

TEST(ImageRank, U) {
  EXPECT_EQ(image_rank_U(2, 0), 4u);
  EXPECT_EQ(image_rank_U(2, -1), 3u);
  EXPECT_EQ(image_rank_U(2, -2), 4u);
  EXPECT_EQ(image_rank_U(2, -3), 4u);
  for (int p = 0; p >= -2; --p) EXPECT_EQ(image_rank_U(3, p), 6u) << p;
}

TEST(ImageRank, UTilde) {
  for (int g = 2; g <= 3; ++g) {
    for (int p = 2; p <= 5; ++p) EXPECT_EQ(image_rank_U_tilde(g, p), static_cast<std::size_t>(2 * g));
  }
}

}  // namespace
}  // namespace archdyn
