#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "archdyn/caps.hpp"
#include "archdyn/rational.hpp"
#include "archdyn/schottky.hpp"

namespace archdyn {

/// Function on one-sided sequences a_0 a_1 ... depending only on a_0..a_level.
///
/// Keys are admissible words of length level + 1; absent keys are zero.
/// `twist` is the exponent e of a formal factor (2 pi i)^e.
struct CylinderFunction {
  int level = 0;
  std::map<ReducedWord, Rational> coeffs;
  int twist = 0;

  Rational value(const ReducedWord& w) const;
  bool is_zero() const;
};

/// Indicator of the cylinder of sequences starting with `prefix`, written at
/// `level` (level + 1 >= prefix length).
CylinderFunction cylinder_indicator(const Alphabet& alphabet,
                                    const ReducedWord& prefix, int level);

/// The constant function 1 at the given level.
CylinderFunction constant_function(const Alphabet& alphabet, int level,
                                   const Rational& value = Rational(1));

/// Same function viewed at a finer level (ignores the extra coordinates).
CylinderFunction refine(const Alphabet& alphabet, const CylinderFunction& f,
                        int target_level);

/// (f o T)(a_0 ... a_{n+1}) = f(a_1 ... a_{n+1}); raises the level by one.
CylinderFunction shift_pullback(const Alphabet& alphabet,
                                const CylinderFunction& f);

/// f o T - f, at level f.level + 1.
CylinderFunction coboundary(const Alphabet& alphabet, const CylinderFunction& f);

CylinderFunction operator+(const CylinderFunction& f, const CylinderFunction& h);
CylinderFunction operator*(const Rational& alpha, const CylinderFunction& f);

/// Coordinates in the lexicographic word basis at `level` (refining first).
SparseVector to_sparse(const Alphabet& alphabet, const CylinderFunction& f,
                       int level);
CylinderFunction from_sparse(const Alphabet& alphabet, const SparseVector& v,
                             int level);

/// Echelon basis of span{ e o T - e : e a level-m indicator }, written at
/// level max(n, m + 1).
std::vector<CylinderFunction> coboundary_space(const Alphabet& alphabet, int n,
                                               int m,
                                               const ResourceCaps& caps = {});

/// Quotient of the level-`level` cylinder functions by the coboundaries
/// coming from level `source_level`, and optionally by the refinement of
/// all functions of level `floor_level` (for graded pieces).
///
/// Vectors are compared in the common ambient level
/// max(level, source_level + 1).
class CoboundaryQuotient {
 public:
  CoboundaryQuotient(const Alphabet& alphabet, int level, int source_level,
                     int floor_level = -1, const ResourceCaps& caps = {});

  int ambient_level() const { return ambient_level_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  /// Dimension of the subspace being quotiented out.
  std::size_t kernel_rank() const { return kernel_.rank(); }

  /// Rank of the image of the given functions in the quotient.
  std::size_t image_rank(const std::vector<CylinderFunction>& fs) const;
  /// Rank of the image of every level-`level` function.
  std::size_t full_image_rank() const;
  bool is_trivial(const CylinderFunction& f) const;

 private:
  Alphabet alphabet_;
  int level_;
  int ambient_level_;
  std::size_t ambient_dim_;
  RowEchelon kernel_;
};

/// Closed form 2g(2g-1)^(n-1)(2g-2) + 1 for n >= 1, and 2g for n = 0.
std::int64_t rank_F_closed_form(int genus, int n);

struct RankResult {
  int genus = 0;
  int level = 0;
  std::int64_t rank = 0;
  /// Smallest source level m at which the rank was seen twice in a row.
  int stabilization_m = 0;
  /// rank observed for m = 0, 1, ...
  std::vector<std::int64_t> history;
};

/// Rank of F_n: level-n functions modulo coboundaries from level m, with m
/// increased until two consecutive values agree.
RankResult rank_F(int genus, int n, const ResourceCaps& caps = {});

/// rank F_n - rank F_{n-1}; for n = 0 this is rank F_0.
std::int64_t gr_dimension(int genus, int n, const ResourceCaps& caps = {});

struct CoinvariantClass {
  CylinderFunction representative;
  int level = 0;
};

/// Class of the indicator of S+(g_k g_k ... g_k) (n letters), as an element
/// of Gr_{n-1}. `symbol` is 0-based.
CoinvariantClass chi_class(int genus, int n, Symbol symbol);

/// Rank of the images of the given classes in Gr_{graded_level}.
std::size_t gr_rank(const Alphabet& alphabet, int graded_level,
                    const std::vector<CoinvariantClass>& classes,
                    const ResourceCaps& caps = {});

/// Representatives differ by a coboundary.
bool classes_equal(const Alphabet& alphabet, const CoinvariantClass& a,
                   const CoinvariantClass& b, const ResourceCaps& caps = {});

/// Periodic orbit: primitive cyclically admissible word traversed
/// `traversal` times.
struct OrbitClass {
  ReducedWord cyclic_word;
  int traversal = 1;
  int twist = 0;

  std::size_t primitive_period() const { return cyclic_word.size(); }
  std::size_t total_length() const {
    return cyclic_word.size() * static_cast<std::size_t>(traversal);
  }
};

/// Validates cyclic admissibility and primitivity.
OrbitClass make_orbit(const Alphabet& alphabet, const ReducedWord& word,
                      int traversal = 1, int twist = 0);

/// Orbits of all cyclically admissible words of length N, each listed once
/// by its lexicographically least rotation.
std::vector<OrbitClass> enumerate_periodic(const Alphabet& alphabet, int N,
                                           const ResourceCaps& caps = {});

/// (2g-1)^N + g + (-1)^N (g-1).
std::int64_t periodic_point_closed_form(int genus, int N);

struct PairingValue {
  Rational value;
  int twist = 0;

  bool operator==(const PairingValue&) const = default;
};

/// Sum over the L cyclic rotations of f evaluated on the periodic extension,
/// times the traversal count. Twists add.
PairingValue pair(const CylinderFunction& f, const OrbitClass& o);
PairingValue pair(const CoinvariantClass& c, const OrbitClass& o);

enum class DynKind { Cohomology, Homology };

/// Canonical 2g-element graded bases of V (p <= 0) and W (p >= 1).
struct GradedDynSpace {
  DynKind kind = DynKind::Cohomology;
  int weight = 0;
  std::vector<CoinvariantClass> cohomology_basis;
  std::vector<OrbitClass> homology_basis;

  int twist() const { return weight; }
  std::size_t dimension() const {
    return kind == DynKind::Cohomology ? cohomology_basis.size()
                                       : homology_basis.size();
  }
};

/// Basis {(2 pi i)^p chi_{-p+1,k}}. Requires p <= 0.
GradedDynSpace v_space(int genus, int p);
/// Basis {(2 pi i)^p [g_k, traversal p]}. Requires p >= 1.
GradedDynSpace w_space(int genus, int p);

/// Rank of the homology filtration K_N as reported in the literature next to
/// a computed orbit-span rank. Reference only: no identity is asserted.
struct HomologyRankRow {
  int genus = 0;
  int N = 0;
  std::int64_t reference_rank = 0;
  std::size_t orbit_span_rank = 0;
};

std::int64_t homology_rank_reference(int genus, int N);
/// Rank of the occurrence functionals of period-N orbits on level N-1 words.
HomologyRankRow homology_rank_report(int genus, int N,
                                     const ResourceCaps& caps = {});

}  // namespace archdyn
