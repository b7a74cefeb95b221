#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "archdyn/caps.hpp"
#include "archdyn/operators.hpp"
#include "archdyn/schottky.hpp"

namespace archdyn {

/// Parry measure of a level-n cylinder: (2g)^{-1} (2g-1)^{-n}.
struct ParryWeight {
  int genus = 2;
  int level = 0;

  Rational weight() const;
};

/// Level-n cylinder functions (words of n + 1 letters) with the Parry metric
/// and Dirac eigenvalue `dirac`.
GradedBasis cylinder_basis(int genus, int level, const Rational& dirac = Rational(0),
                           const ResourceCaps& caps = {});

/// Literal operator on level-n functions:
/// (S h)(a_0..a_n) = h(inv(i) a_0 .. a_{n-1}) when a_0 != i, else 0.
TruncatedOperator s_i_literal(int genus, Symbol i, int level, const ResourceCaps& caps = {});

/// Normalized operator from level n to level n + 1:
/// (S xi)(a_0..a_{n+1}) = sqrt(2g-1) [a_0 = i] xi(a_1..a_{n+1}).
TruncatedOperator s_i_koopman(int genus, Symbol i, int level, const ResourceCaps& caps = {});

/// Level-n function viewed at level n + 1.
TruncatedOperator refinement_operator(int genus, int level, const ResourceCaps& caps = {});

struct CKLevelRow {
  int level = 0;
  /// max |sum_j S_j S_j^* - 1| on level-n functions
  double range_deviation = 0.0;
  /// max over i of |S_i^* S_i - sum_j A_ij S_j S_j^*|
  double relation_deviation = 0.0;
  bool range_exact = false;
  bool relation_exact = false;
  /// S_i^* S_i is a projection for every i.
  bool isometry_exact = false;
  /// s_i_literal = sqrt(2g-1) * refinement * s_{inv(i)}^{koopman *} for every i.
  bool dictionary_exact = false;
};

struct CKReport {
  int genus = 0;
  std::vector<CKLevelRow> rows;
  std::optional<int> minimal_exact_level;
  std::string dictionary;

  bool passed() const;
};

/// Cuntz-Krieger relations for the Koopman family on levels [level_lo,
/// level_hi] (level_lo >= 1), exact rational arithmetic. `relation_matrix`
/// replaces the transition matrix in the second relation when given.
CKReport ck_relations_check(int genus, int level_lo, int level_hi,
                            const std::optional<TransitionMatrix>& relation_matrix = std::nullopt,
                            const ResourceCaps& caps = {});

using H3Function = std::function<double(const H3Point&)>;
using BoundaryFunction = std::function<double(const H3Point&, const P1Point&)>;
using WordFunction = std::function<Rational(const ReducedWord&)>;

/// Diagonal operator f(w x_0) on level-n functions. Callbacks must be pure.
TruncatedOperator rho_cohomology(const H3Function& f, const SchottkyGroup& group, int level,
                                 const ResourceCaps& caps = {});
/// Diagonal operator f(w) on level-n functions, exact.
TruncatedOperator rho_cohomology_exact(const WordFunction& f, int genus, int level,
                                       const ResourceCaps& caps = {});

/// The W basis of weight p: orbits [g_k, traversal p], orthonormal, Dirac p.
GradedBasis homology_basis(int genus, int weight);

/// Diagonal on the W basis of weight p: f at (w x_0, attracting point of w)
/// with w = g_k repeated p times.
TruncatedOperator rho_homology(const BoundaryFunction& f, const SchottkyGroup& group,
                               int weight);

/// Truncation of the dynamical Hilbert space: level-m cylinder functions for
/// m = 0..max_level (Dirac -m, Parry metric) followed by the W pieces of
/// weight 1..max_weight (Dirac p).
struct DynamicalTruncation {
  int genus = 2;
  int max_level = 0;
  int max_weight = 0;
  GradedBasis basis;
  std::vector<std::size_t> level_offsets;   // one per level
  std::vector<std::size_t> weight_offsets;  // one per weight

  static DynamicalTruncation build(int genus, int max_level, int max_weight,
                                   const ResourceCaps& caps = {});
};

/// S_i on the cohomology part (level m -> m + 1, m < max_level), zero elsewhere.
TruncatedOperator dynamical_shift(const DynamicalTruncation& h, Symbol i);
/// rho(f) on the cohomology part and rho(f_boundary) on the homology part.
TruncatedOperator dynamical_rho(const DynamicalTruncation& h, const SchottkyGroup& group,
                                const H3Function& f, const BoundaryFunction& f_boundary);

/// exp(-d(x, x_0)): the shipped bounded test function.
H3Function decay_test_function(const H3Point& base);

struct SummabilityRow {
  std::int64_t radius = 0;
  double partial_sum = 0.0;
  /// S(R + 1) - S(R)
  double next_difference = 0.0;
  /// S(R) / ln R
  double ratio_to_log = 0.0;
  /// 2 M R^{1-z} / (z - 1) with M the largest multiplicity (z > 1 only).
  double integral_tail_bound = 0.0;
};

using MultiplicityFunction = std::function<std::int64_t(std::int64_t)>;

/// Partial sums sum_{|lambda| <= R} mult(lambda) (1 + lambda^2)^{-z/2}.
/// `max_multiplicity` bounds mult for the tail estimate.
std::vector<SummabilityRow> summability_profile(const MultiplicityFunction& mult,
                                                std::int64_t max_multiplicity, double z,
                                                const std::vector<std::int64_t>& radii);

/// Closed-form multiplicities of Phi on the cone cohomology of genus g.
MultiplicityFunction phi_multiplicity_source(int genus);

struct CommutatorRow {
  std::string op;
  /// Window half-width for the arch model, truncation level for the
  /// dynamical side.
  int size = 0;
  double norm = 0.0;
};

struct SpectrumReport {
  int genus = 0;
  /// Phi multiplicities counted from the model pieces on the complete range
  /// of eigenvalues, next to the closed form.
  std::map<std::int64_t, std::int64_t> phi_counts;
  bool phi_counts_match = false;
  std::vector<SummabilityRow> summability_z1;
  std::vector<SummabilityRow> summability_z15;
  /// next_difference < 1e-6 for every radius >= 1e5 at z = 1.5
  bool cauchy_ok = false;
  /// (max - min) / (max + min) of S(R) / ln R at z = 1
  double log_ratio_spread = 0.0;
  bool log_growth_ok = false;
  std::vector<CommutatorRow> sigma_rows;
  bool sigma_stable = false;
  std::vector<CommutatorRow> dynamical_rows;
  double dynamical_max_relative_change = 0.0;
  bool dynamical_stable = false;

  bool passed() const {
    return phi_counts_match && cauchy_ok && log_growth_ok && sigma_stable && dynamical_stable;
  }
};

struct SpectrumOptions {
  /// sigma2(m) for the arch commutators, row-major, det 1.
  double m11 = 2.0, m12 = 3.0, m21 = 1.0, m22 = 2.0;
  /// Arch windows [-w, w + 1] for w = 1..max_half_width.
  int max_half_width = 5;
  int level_lo = 3;
  int level_hi = 6;
  std::vector<std::int64_t> radii{1000, 10000, 100000};
  double log_tolerance = 0.05;
  double cauchy_tolerance = 1e-6;
  double stability_tolerance = 1e-6;
  unsigned workers = 1;
};

/// Phi spectrum, summability profiles and commutator-norm stabilization for
/// both spectral triples.
SpectrumReport spectrum_report(const SchottkyGroup& group, const SpectrumOptions& options = {},
                               const ResourceCaps& caps = {});

}  // namespace archdyn
