#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "archdyn/caps.hpp"

namespace archdyn {

using Complex = std::complex<double>;

/// Symbol ids are 0-based: symbol s < g is generator g_{s+1}, and
/// symbol s + g is its inverse.
using Symbol = int;

/// The 2g symbols of a rank-g Schottky group with the inverse pairing
/// s <-> s + g (mod 2g).
class Alphabet {
 public:
  explicit Alphabet(int genus);

  int genus() const { return genus_; }
  int size() const { return 2 * genus_; }
  Symbol inverse(Symbol s) const;
  bool contains(Symbol s) const { return s >= 0 && s < size(); }
  /// b may follow a in a reduced word.
  bool admissible_pair(Symbol a, Symbol b) const { return b != inverse(a); }
  /// "g1", ..., "g2g" (1-based, matching g_{i+g} = g_i^{-1}).
  std::string name(Symbol s) const;

  bool operator==(const Alphabet&) const = default;

 private:
  int genus_;
};

/// A word in the symbols with no adjacent cancellation.
class ReducedWord {
 public:
  ReducedWord() = default;

  /// Validates admissibility; throws InvalidArgument otherwise.
  static ReducedWord from(const Alphabet& alphabet, std::vector<Symbol> letters);
  /// Skips validation. The caller guarantees admissibility.
  static ReducedWord unchecked(std::vector<Symbol> letters);

  const std::vector<Symbol>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Symbol operator[](std::size_t i) const { return letters_[i]; }

  std::string to_string(const Alphabet& alphabet) const;

  auto operator<=>(const ReducedWord&) const = default;

 private:
  explicit ReducedWord(std::vector<Symbol> letters)
      : letters_(std::move(letters)) {}
  std::vector<Symbol> letters_;
};

bool is_admissible(const Alphabet& alphabet, std::span<const Symbol> letters);
/// Admissible and also admissible across the wrap-around junction.
bool is_cyclically_admissible(const Alphabet& alphabet,
                              std::span<const Symbol> letters);

/// Free reduction. Throws InvalidArgument on out-of-range symbols.
ReducedWord reduce_word(const Alphabet& alphabet, std::span<const Symbol> letters);

/// Number of admissible words of the given length: 2g(2g-1)^(n-1), or 1 for n = 0.
std::uint64_t admissible_count(const Alphabet& alphabet, std::size_t length);

/// Position of an admissible word in the lexicographic enumeration of
/// admissible words of its length.
std::size_t word_index(const Alphabet& alphabet, std::span<const Symbol> letters);
ReducedWord word_at(const Alphabet& alphabet, std::size_t length, std::size_t index);

/// All admissible words of exactly `length` letters, lexicographic order.
std::vector<ReducedWord> enumerate_admissible(const Alphabet& alphabet,
                                              std::size_t length,
                                              const ResourceCaps& caps = {});

struct TransitionMatrix {
  std::vector<std::vector<int>> entries;

  std::size_t size() const { return entries.size(); }
  int at(std::size_t i, std::size_t j) const { return entries[i][j]; }
  /// trace(A^power), by repeated integer multiplication.
  std::int64_t trace_power(int power) const;
  /// Sum of all entries of A^power.
  std::int64_t entry_sum_power(int power) const;
};

TransitionMatrix transition_matrix(const Alphabet& alphabet);

/// Element of SL(2, C), kept normalized to determinant 1.
class MobiusElement {
 public:
  /// Rescales by a square root of the determinant. Throws on singular input.
  MobiusElement(Complex a, Complex b, Complex c, Complex d);

  static MobiusElement identity();
  static MobiusElement diagonal(Complex lambda);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }
  Complex trace() const { return trace_; }
  Complex determinant() const { return a_ * d_ - b_ * c_; }

  MobiusElement inverse() const;
  MobiusElement operator*(const MobiusElement& rhs) const;

  /// trace^2 outside the real interval [0, 4].
  bool is_loxodromic(double tol = 1e-12) const;

 private:
  Complex a_, b_, c_, d_, trace_;
};

/// Point of the upper half-space model (x1 + i x2, t), t > 0.
struct H3Point {
  double x1 = 0.0;
  double x2 = 0.0;
  double t = 1.0;
};

double hyperbolic_distance(const H3Point& p, const H3Point& q);

/// Poincare extension of the Mobius map. Throws DomainError on overflow.
H3Point mobius_on_h3(const MobiusElement& m, const H3Point& pt);

/// Projective point (z : w) scaled so the larger-modulus coordinate is 1.
struct P1Point {
  Complex z{0.0, 0.0};
  Complex w{1.0, 0.0};

  static P1Point from_pair(Complex z, Complex w);
  static P1Point from_complex(Complex z) { return from_pair(z, 1.0); }
  static P1Point infinity() { return P1Point{{1.0, 0.0}, {0.0, 0.0}}; }

  bool is_infinity(double tol = 1e-14) const { return std::abs(w) <= tol; }
  /// z / w; only meaningful away from infinity.
  Complex affine() const { return z / w; }
};

/// Chordal distance on the Riemann sphere, in [0, 1].
double chordal_distance(const P1Point& p, const P1Point& q);

P1Point mobius_on_p1(const MobiusElement& m, const P1Point& pt);

struct FixedPoints {
  P1Point attracting;
  P1Point repelling;
};

/// Throws DomainError unless m is loxodromic.
FixedPoints fixed_points(const MobiusElement& m);

/// 2 ln|lambda| for the eigenvalue |lambda| > 1. Throws DomainError unless
/// m is loxodromic.
double translation_length(const MobiusElement& m);

class SchottkyGroup {
 public:
  /// Validates that every generator is loxodromic and base_point.t > 0.
  SchottkyGroup(int genus, std::vector<MobiusElement> generators,
                H3Point base_point = {});

  /// standard(2).
  static SchottkyGroup default_genus2();
  /// g1 = diag(2, 1/2); the other generators are rotations about 0 of a
  /// hyperbolic element with fixed points +-1 ([[13, 12], [12, 13]] / 5 for
  /// genus 2, [[41, 40], [40, 41]] / 9 otherwise), spaced by pi / (g - 1).
  /// The isometric circles are disjoint, so every nontrivial word is
  /// loxodromic. Requires 2 <= genus <= 7.
  static SchottkyGroup standard(int genus);

  /// JSON document:
  ///   {"genus": 2, "base_point": [x1, x2, t],
  ///    "generators": [[[[re, im], [re, im]], [[re, im], [re, im]]], ...]}
  static SchottkyGroup from_json_text(const std::string& text);
  static SchottkyGroup from_file(const std::string& path);

  const Alphabet& alphabet() const { return alphabet_; }
  int genus() const { return alphabet_.genus(); }
  const H3Point& base_point() const { return base_point_; }
  /// Matrix of the symbol (generator or derived inverse).
  const MobiusElement& matrix(Symbol s) const;

 private:
  Alphabet alphabet_;
  std::vector<MobiusElement> matrices_;  // 2g entries
  H3Point base_point_;
};

/// Product of the letter matrices in word order.
MobiusElement word_to_mobius(const SchottkyGroup& group, const ReducedWord& w);

struct LimitPoint {
  P1Point point;
  ReducedWord word;
};

/// Attracting fixed points of every admissible word of length 1..depth,
/// ordered by length and then lexicographically.
std::vector<LimitPoint> limit_set_sample(const SchottkyGroup& group, int depth,
                                         const ResourceCaps& caps = {});

}  // namespace archdyn
