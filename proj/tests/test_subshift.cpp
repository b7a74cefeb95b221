#include <gtest/gtest.h>

#include <random>

#include "archdyn/errors.hpp"
#include "archdyn/subshift.hpp"

namespace archdyn {
namespace {

ReducedWord word(const Alphabet& a, std::vector<Symbol> letters) {
  return ReducedWord::from(a, std::move(letters));
}

// Dense exact rank, independent of the library's sparse echelon code.
std::size_t dense_rank(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

// rank(level-n functions + coboundaries of level-m functions) - rank(coboundaries),
// everything written on words of length L + 1 with L = max(n, m + 1).
std::size_t dense_rank_F(int genus, int n, int m) {
  const Alphabet a(genus);
  const int top = std::max(n, m + 1);
  const auto words = enumerate_admissible(a, static_cast<std::size_t>(top + 1));
  auto row_of = [&](auto&& value) {
    std::vector<Rational> row(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) row[i] = value(words[i]);
    return row;
  };
  auto prefix_matches = [](const ReducedWord& w, const ReducedWord& p, std::size_t offset) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (w[offset + i] != p[i]) return false;
    }
    return true;
  };
  std::vector<std::vector<Rational>> cob;
  for (const auto& e : enumerate_admissible(a, static_cast<std::size_t>(m + 1))) {
    cob.push_back(row_of([&](const ReducedWord& w) -> Rational {
      return Rational(prefix_matches(w, e, 1) ? 1 : 0) - Rational(prefix_matches(w, e, 0) ? 1 : 0);
    }));
  }
  auto both = cob;
  for (const auto& e : enumerate_admissible(a, static_cast<std::size_t>(n + 1))) {
    both.push_back(row_of([&](const ReducedWord& w) -> Rational {
      return Rational(prefix_matches(w, e, 0) ? 1 : 0);
    }));
  }
  return dense_rank(both) - dense_rank(cob);
}

TEST(ShiftPullback, IndicatorOfSingleLetter) {
  const Alphabet a(2);
  const auto f = cylinder_indicator(a, word(a, {0}), 0);
  const auto pulled = shift_pullback(a, f);
  EXPECT_EQ(pulled.level, 1);
  CylinderFunction expected{1, {}, 0};
  for (Symbol s : {0, 1, 3}) expected.coeffs[word(a, {s, 0})] = 1;
  EXPECT_EQ(pulled.coeffs, expected.coeffs);
}

TEST(ShiftPullback, ZeroAndConstants) {
  const Alphabet a(2);
  const CylinderFunction zero{0, {}, 0};
  EXPECT_TRUE(shift_pullback(a, zero).is_zero());
  const auto one = shift_pullback(a, constant_function(a, 0));
  EXPECT_EQ(one.level, 1);
  EXPECT_EQ(one.coeffs, constant_function(a, 1).coeffs);
}

TEST(CoboundarySpace, LevelZeroHasDimensionThree) {
  const Alphabet a(2);
  EXPECT_EQ(coboundary_space(a, 0, 0).size(), 3u);
  EXPECT_EQ(coboundary_space(Alphabet(3), 0, 0).size(), 5u);
}

TEST(CoboundarySpace, PairsToZeroWithEveryOrbit) {
  const Alphabet a(2);
  const auto basis = coboundary_space(a, 1, 1);
  for (int N = 1; N <= 4; ++N) {
    for (const auto& o : enumerate_periodic(a, N)) {
      for (const auto& b : basis) EXPECT_EQ(pair(b, o).value, 0);
    }
  }
}

TEST(RankF, KnownValuesGenusTwo) {
  EXPECT_EQ(rank_F(2, 0).rank, 4);
  EXPECT_EQ(rank_F(2, 1).rank, 9);
  EXPECT_EQ(rank_F(2, 2).rank, 25);
}

TEST(RankF, MatchesClosedForm) {
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(rank_F(2, n).rank, rank_F_closed_form(2, n)) << n;
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(rank_F(3, n).rank, rank_F_closed_form(3, n)) << n;
  EXPECT_EQ(rank_F_closed_form(2, 0), 4);
  EXPECT_EQ(rank_F_closed_form(3, 2), 6 * 5 * 4 + 1);
}

TEST(RankF, AgreesWithDenseOracle) {
  for (int n = 0; n <= 2; ++n) {
    const auto r = rank_F(2, n);
    ASSERT_FALSE(r.history.empty());
    for (std::size_t m = 0; m < r.history.size(); ++m) {
      EXPECT_EQ(static_cast<std::size_t>(r.history[m]), dense_rank_F(2, n, static_cast<int>(m)))
          << "n=" << n << " m=" << m;
    }
    EXPECT_EQ(r.history.back(), r.rank);
  }
  EXPECT_EQ(dense_rank_F(2, 2, 2), 25u);
  EXPECT_EQ(dense_rank_F(3, 1, 1), static_cast<std::size_t>(rank_F_closed_form(3, 1)));
}

TEST(RankF, ResourceCap) {
  ResourceCaps caps;
  caps.max_matrix_dim = 50;
  EXPECT_THROW(rank_F(2, 3, caps), ResourceCapError);
  EXPECT_THROW(rank_F(1, 1), InvalidArgument);
}

TEST(GrDimension, Examples) {
  EXPECT_EQ(gr_dimension(2, 0), 4);
  EXPECT_EQ(gr_dimension(2, 1), 5);
  EXPECT_EQ(gr_dimension(2, 2), 16);
}

TEST(ChiClass, SpanGradedPieceZero) {
  for (int g = 2; g <= 3; ++g) {
    const Alphabet a(g);
    std::vector<CoinvariantClass> classes;
    for (Symbol k = 0; k < a.size(); ++k) classes.push_back(chi_class(g, 1, k));
    EXPECT_EQ(gr_rank(a, 0, classes), static_cast<std::size_t>(2 * g));
    EXPECT_EQ(gr_dimension(g, 0), 2 * g);
  }
}

TEST(ChiClass, IndependentInGradedPieces) {
  for (int g = 2; g <= 3; ++g) {
    const Alphabet a(g);
    for (int n = 1; n <= 4; ++n) {
      std::vector<CoinvariantClass> classes;
      for (Symbol k = 0; k < a.size(); ++k) classes.push_back(chi_class(g, n, k));
      const std::size_t expected = (g == 2 && n == 2) ? 3 : static_cast<std::size_t>(2 * g);
      EXPECT_EQ(gr_rank(a, n - 1, classes), expected) << g << "," << n;
    }
  }
  EXPECT_EQ(gr_dimension(2, 1), 5);
}

TEST(ChiClass, GenusTwoLevelTwoRelation) {
  const Alphabet a(2);
  const auto c = [](Symbol k) { return chi_class(2, 2, k).representative; };
  const auto combo = c(0) + Rational(-1) * c(1) + c(2) + Rational(-1) * c(3);
  EXPECT_FALSE(combo.is_zero());
  EXPECT_EQ(gr_rank(a, 1, {CoinvariantClass{combo, 1}}), 0u);
  EXPECT_EQ(gr_rank(a, 1, {chi_class(2, 2, 0), chi_class(2, 2, 1), chi_class(2, 2, 2)}), 3u);
}

TEST(ChiClass, PairsWithPowerOrbits) {
  const Alphabet a(2);
  for (int n = 1; n <= 3; ++n) {
    for (Symbol k = 0; k < a.size(); ++k) {
      const auto chi = chi_class(2, n, k);
      for (Symbol j = 0; j < a.size(); ++j) {
        const auto orbit = make_orbit(a, word(a, {j}), n);
        EXPECT_EQ(pair(chi, orbit).value, j == k ? n : 0);
      }
    }
  }
}

TEST(ChiClass, RepresentativeDifferenceIsTrivial) {
  const Alphabet a(2);
  const auto chi = chi_class(2, 2, 0);
  CoinvariantClass shifted{chi.representative + coboundary(a, cylinder_indicator(a, word(a, {1}), 0)),
                           chi.level};
  shifted.representative.level = std::max(chi.representative.level, 1);
  EXPECT_TRUE(classes_equal(a, chi, shifted));
  EXPECT_FALSE(classes_equal(a, chi, chi_class(2, 2, 1)));
}

std::int64_t brute_force_cyclic_count(const Alphabet& a, int N) {
  std::int64_t count = 0;
  std::vector<Symbol> w(static_cast<std::size_t>(N), 0);
  for (;;) {
    if (is_cyclically_admissible(a, w)) ++count;
    std::size_t i = 0;
    while (i < w.size() && ++w[i] == a.size()) w[i++] = 0;
    if (i == w.size()) break;
  }
  return count;
}

TEST(Periodic, Examples) {
  const Alphabet a(2);
  EXPECT_EQ(enumerate_periodic(a, 1).size(), 4u);
  auto points = [&](int N) {
    std::int64_t total = 0;
    for (const auto& o : enumerate_periodic(a, N)) {
      total += static_cast<std::int64_t>(o.primitive_period());
    }
    return total;
  };
  EXPECT_EQ(points(2), 12);
  EXPECT_EQ(points(3), 28);
  EXPECT_EQ(brute_force_cyclic_count(a, 3), 28);
}

TEST(Periodic, CountsAgreeWithTraceAndClosedForm) {
  for (int g = 2; g <= 3; ++g) {
    const Alphabet a(g);
    const auto matrix = transition_matrix(a);
    for (int N = 1; N <= 8; ++N) {
      std::int64_t total = 0;
      for (const auto& o : enumerate_periodic(a, N)) {
        EXPECT_EQ(o.total_length(), static_cast<std::size_t>(N));
        EXPECT_TRUE(is_cyclically_admissible(a, o.cyclic_word.letters()));
        total += static_cast<std::int64_t>(o.primitive_period());
      }
      EXPECT_EQ(total, matrix.trace_power(N)) << g << "," << N;
      EXPECT_EQ(total, periodic_point_closed_form(g, N)) << g << "," << N;
      if (g == 2 && N <= 6) EXPECT_EQ(total, brute_force_cyclic_count(a, N));
    }
  }
}

TEST(Periodic, PowersUseTraversal) {
  const Alphabet a(2);
  for (const auto& o : enumerate_periodic(a, 4)) {
    if (o.cyclic_word.size() == 1) EXPECT_EQ(o.traversal, 4);
  }
  EXPECT_THROW(make_orbit(a, word(a, {0, 0}), 1), InvalidArgument);
  EXPECT_THROW(make_orbit(a, word(a, {0, 1, 2}), 1), InvalidArgument);
  EXPECT_THROW(enumerate_periodic(a, 0), InvalidArgument);
}

TEST(Pairing, Examples) {
  const Alphabet a(2);
  const auto chi1 = cylinder_indicator(a, word(a, {0}), 0);
  EXPECT_EQ(pair(chi1, make_orbit(a, word(a, {0}), 1)).value, 1);
  EXPECT_EQ(pair(chi1, make_orbit(a, word(a, {1}), 1)).value, 0);
  const auto chi11 = cylinder_indicator(a, word(a, {0, 0}), 1);
  EXPECT_EQ(pair(chi11, make_orbit(a, word(a, {0}), 2)).value, 2);
}

TEST(Pairing, TwistsAdd) {
  const Alphabet a(2);
  auto f = cylinder_indicator(a, word(a, {0}), 0);
  f.twist = -2;
  const auto value = pair(f, make_orbit(a, word(a, {0}), 3, 3));
  EXPECT_EQ(value.twist, 1);
  EXPECT_EQ(value.value, 3);
}

TEST(Pairing, InvariantUnderRandomCoboundaries) {
  const Alphabet a(2);
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> level_dist(0, 3);
  std::vector<OrbitClass> orbits;
  for (int N = 1; N <= 5; ++N) {
    for (const auto& o : enumerate_periodic(a, N)) orbits.push_back(o);
  }
  std::uniform_int_distribution<std::size_t> pick(0, orbits.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    const int level = level_dist(rng);
    CylinderFunction f{level, {}, 0};
    for (const auto& w : enumerate_admissible(a, static_cast<std::size_t>(level + 1))) {
      const int c = coeff(rng);
      if (c != 0) f.coeffs[w] = Rational(c) / (1 + trial % 3);
    }
    const int hl = std::min(level, 2);
    CylinderFunction h{hl, {}, 0};
    for (const auto& w : enumerate_admissible(a, static_cast<std::size_t>(hl + 1))) {
      const int c = coeff(rng);
      if (c != 0) h.coeffs[w] = c;
    }
    const int common = std::max(level, hl + 1);
    const auto perturbed = refine(a, f, common) + refine(a, coboundary(a, h), common);
    const auto& o = orbits[pick(rng)];
    EXPECT_EQ(pair(perturbed, o), pair(f, o));
  }
}

TEST(GradedSpaces, VBases) {
  const auto v0 = v_space(2, 0);
  EXPECT_EQ(v0.kind, DynKind::Cohomology);
  ASSERT_EQ(v0.dimension(), 4u);
  EXPECT_EQ(v0.twist(), 0);
  const Alphabet a(2);
  for (Symbol k = 0; k < 4; ++k) {
    EXPECT_TRUE(classes_equal(a, v0.cohomology_basis[static_cast<std::size_t>(k)], chi_class(2, 1, k)));
  }
  const auto v1 = v_space(2, -1);
  EXPECT_EQ(v1.twist(), -1);
  for (Symbol k = 0; k < 4; ++k) {
    const auto& c = v1.cohomology_basis[static_cast<std::size_t>(k)];
    EXPECT_EQ(c.representative.twist, -1);
    EXPECT_EQ(c.level, 1);
  }
  EXPECT_THROW(v_space(2, 1), InvalidArgument);
}

TEST(GradedSpaces, WBases) {
  const auto w2 = w_space(2, 2);
  EXPECT_EQ(w2.kind, DynKind::Homology);
  ASSERT_EQ(w2.dimension(), 4u);
  for (Symbol k = 0; k < 4; ++k) {
    const auto& o = w2.homology_basis[static_cast<std::size_t>(k)];
    EXPECT_EQ(o.cyclic_word.letters(), std::vector<Symbol>{k});
    EXPECT_EQ(o.traversal, 2);
    EXPECT_EQ(o.twist, 2);
  }
  EXPECT_THROW(w_space(2, 0), InvalidArgument);
}

TEST(GradedSpaces, PairingMatrixIsScaledIdentity) {
  for (int g = 2; g <= 3; ++g) {
    for (int p = 0; p >= -3; --p) {
      const auto v = v_space(g, p);
      const auto w = w_space(g, 1 - p);
      for (std::size_t i = 0; i < v.dimension(); ++i) {
        for (std::size_t j = 0; j < w.dimension(); ++j) {
          const auto value = pair(v.cohomology_basis[i], w.homology_basis[j]);
          EXPECT_EQ(value.value, i == j ? 1 - p : 0);
          EXPECT_EQ(value.twist, 1);
        }
      }
    }
  }
}

TEST(HomologyReference, ReportsFormulaOnly) {
  EXPECT_EQ(homology_rank_reference(2, 2), 9 + 1);
  EXPECT_EQ(homology_rank_reference(2, 3), 27 + 3);
  const auto row = homology_rank_report(2, 3);
  EXPECT_EQ(row.reference_rank, 30);
  EXPECT_GT(row.orbit_span_rank, 0u);
}

}  // namespace
}  // namespace archdyn
