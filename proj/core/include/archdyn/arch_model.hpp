#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "archdyn/operators.hpp"
#include "archdyn/rational.hpp"

namespace archdyn {

/// Cohomology of the curve a graded piece is built from.
enum class Source { H0 = 0, H1 = 1, H2 = 2 };

std::string to_string(Source s);

/// gr^w_{2p} H^q of the cone of N, modelled by a copy of H^s(X) twisted by
/// R(twist).
///
/// The pieces are (q, p, source):
///   (0, p<=0, H0) (1, p<=0, H1) (1, p>=1, H0)
///   (2, p<=1, H2) (2, p>=2, H1) (3, p>=2, H2)
/// The first summand of each degree carries twist p, the second p - 1.
struct GradedPiece {
  int degree = 0;
  int weight = 0;
  Source source = Source::H0;
  int dimension = 1;
  int twist = 0;

  int j_grading() const { return static_cast<int>(source) - 1; }
  std::string label() const;

  bool operator==(const GradedPiece&) const = default;
};

bool piece_exists(int degree, int weight, Source source);

/// Throws InvalidArgument when the combination is not in the table.
GradedPiece make_piece(int genus, int degree, int weight, Source source);

/// Phi on a piece: p if q >= 2p, else p - 1.
int phi(const GradedPiece& piece);

bool in_h_minus(const GradedPiece& piece);
bool in_h_plus(const GradedPiece& piece);

struct GradedElement {
  GradedPiece piece;
  std::vector<Rational> coords;

  int twist() const { return piece.twist; }
  /// True for the zero vector, including the structural zero returned when
  /// an operator leaves the piece table.
  bool is_zero() const;

  static GradedElement structural_zero() { return {GradedPiece{}, {}}; }
  bool operator==(const GradedElement&) const = default;
};

GradedElement operator*(const Rational& alpha, const GradedElement& x);

/// The graded pieces with weight in [p_min, p_max], with the canonical
/// coordinate basis declared orthonormal.
class ConeModel {
 public:
  /// Requires genus >= 2, p_min <= -1, p_max >= 2.
  static ConeModel build(int genus, int p_min, int p_max);

  int genus() const { return genus_; }
  int p_min() const { return p_min_; }
  int p_max() const { return p_max_; }
  const std::vector<GradedPiece>& pieces() const { return pieces_; }
  const GradedPiece& piece(std::size_t i) const { return pieces_.at(i); }

  std::optional<std::size_t> find(int degree, int weight, Source source) const;
  bool in_window(int weight) const { return weight >= p_min_ && weight <= p_max_; }
  std::size_t dimension() const;

  GradedElement basis_vector(std::size_t piece_index, int k) const;
  GradedElement zero(std::size_t piece_index) const;

  /// One line per piece: degree, weight, source, dimension, Phi, twist, side.
  std::string dump() const;

 private:
  int genus_ = 2;
  int p_min_ = -1;
  int p_max_ = 2;
  std::vector<GradedPiece> pieces_;
};

/// N(f) = (2 pi i)^{-1} f: weight p -> p - 1 at fixed degree and source,
/// same coordinates. Returns the structural zero when (q, p-1, source) is not
/// a piece; throws WindowError when it is a piece outside the window.
GradedElement monodromy_N(const ConeModel& model, const GradedElement& x);

/// l(f) = (2 pi i) f ^ omega: H0-source (q, p) -> H2-source (q+2, p+1);
/// zero on H1 and H2 sources.
GradedElement lefschetz_l(const ConeModel& model, const GradedElement& x);

/// delta_q: H^- piece (q, p) -> H^+ piece (q+1, q+1-p), same coordinates.
GradedElement duality_delta(const ConeModel& model, const GradedElement& x);
GradedElement duality_delta_inverse(const ConeModel& model, const GradedElement& y);

/// omega = [[0, delta^{-1}], [delta, 0]] on H^- + H^+.
GradedElement omega(const ConeModel& model, const GradedElement& x);

/// (Phi omega + omega Phi) x.
GradedElement phi_omega_anticommutator(const ConeModel& model, const GradedElement& x);

/// (-1)^twist times the swap e_k <-> e_{k+g} on H1-source pieces.
GradedElement f_infinity_arch(const ConeModel& model, const GradedElement& x);

/// Partner of an H0/H2 piece in its sl2 tower {(q, p, H0), (q+2, p+1, H2)}.
std::optional<std::size_t> tower_partner(const ConeModel& model, std::size_t piece_index);

/// Pieces on which sigma2 is defined: H1 sources and complete towers.
std::vector<std::size_t> tower_closed_pieces(const ConeModel& model);
/// Pieces whose omega partner lies in the window.
std::vector<std::size_t> delta_closed_pieces(const ConeModel& model);

/// Basis of the listed pieces, with Dirac eigenvalue Phi.
GradedBasis model_basis(const ConeModel& model, const std::vector<std::size_t>& pieces);

/// Representation of SL(2, R) (row-major 2x2 entries m11, m12, m21, m22):
/// the standard representation on each tower in the ordered basis
/// (j = +1, j = -1), the identity on H1-source pieces. Acts on
/// tower_closed_pieces. Throws InvalidArgument unless |det - 1| < 1e-12.
TruncatedOperator sigma2(const ConeModel& model, double m11, double m12, double m21,
                         double m22);

TruncatedOperator phi_operator(const ConeModel& model, const std::vector<std::size_t>& pieces);
TruncatedOperator omega_operator(const ConeModel& model);
TruncatedOperator lefschetz_operator(const ConeModel& model);

/// Result of sweeping the omega identities over every basis vector.
struct OmegaIdentityReport {
  std::size_t vectors_checked = 0;
  bool omega_squared_identity = true;
  bool omega_self_adjoint = true;
  /// omega (Phi omega + omega Phi) x = q x with q the degree of the H^- end
  /// of the delta_q pair containing x.
  bool anticommutator_identity = true;
  std::string first_failure;

  bool passed() const {
    return omega_squared_identity && omega_self_adjoint && anticommutator_identity;
  }
};

/// Checks every basis vector of every piece with weight in [p_lo, p_hi].
/// The model window must contain the omega partners of those pieces.
OmegaIdentityReport check_omega_identities(const ConeModel& model, int p_lo, int p_hi);

/// Dimension of the Phi-eigenspace for each eigenvalue, from the pieces in
/// the window. Only eigenvalues in [p_min, p_max - 1] are complete.
std::map<std::int64_t, std::int64_t> phi_multiplicities(const ConeModel& model);

/// Multiplicity of lambda in the spectrum of Phi on the full (untruncated)
/// cone cohomology: 2g + 3 for lambda in {0, 1}, 2g + 2 otherwise.
std::int64_t phi_multiplicity_closed_form(int genus, std::int64_t lambda);

}  // namespace archdyn
