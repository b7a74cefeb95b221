#include "archdyn/arch_model.hpp"

#include <cmath>
#include <sstream>

#include "archdyn/errors.hpp"

namespace archdyn {

namespace {

constexpr Source kSources[] = {Source::H0, Source::H1, Source::H2};

int source_dimension(int genus, Source s) { return s == Source::H1 ? 2 * genus : 1; }

bool first_summand(const GradedPiece& piece) {
  return static_cast<int>(piece.source) == piece.degree;
}

GradedElement moved(const GradedElement& x, const GradedPiece& target) {
  return {target, x.coords};
}

void require_member(const ConeModel& model, const GradedElement& x, const char* what) {
  const auto idx = model.find(x.piece.degree, x.piece.weight, x.piece.source);
  if (!idx) throw InvalidArgument(std::string(what) + ": element is not in the model window");
  if (x.coords.size() != static_cast<std::size_t>(x.piece.dimension)) {
    throw InvalidArgument(std::string(what) + ": coordinate count does not match the piece");
  }
}

// Target of a piece-level map, or WindowError if the target weight is outside.
GradedPiece window_target(const ConeModel& model, int degree, int weight, Source source,
                          const char* what) {
  if (!model.in_window(weight)) {
    std::ostringstream msg;
    msg << what << ": target weight " << weight << " is outside the window ["
        << model.p_min() << ", " << model.p_max() << "]";
    throw WindowError(msg.str());
  }
  return model.piece(*model.find(degree, weight, source));
}

std::string basis_label(const GradedPiece& piece, int k) {
  std::ostringstream out;
  out << piece.label() << ':' << (k + 1);
  return out.str();
}

struct BasisLayout {
  std::vector<std::size_t> pieces;
  std::vector<std::size_t> offsets;  // indexed like pieces
  std::map<std::size_t, std::size_t> offset_of;  // piece index -> offset
  std::size_t size = 0;
};

BasisLayout layout(const ConeModel& model, const std::vector<std::size_t>& pieces) {
  BasisLayout out;
  out.pieces = pieces;
  for (std::size_t idx : pieces) {
    out.offsets.push_back(out.size);
    out.offset_of[idx] = out.size;
    out.size += static_cast<std::size_t>(model.piece(idx).dimension);
  }
  return out;
}

std::optional<std::size_t> omega_partner(const ConeModel& model, std::size_t idx) {
  const GradedPiece& p = model.piece(idx);
  if (in_h_minus(p)) return model.find(p.degree + 1, p.degree + 1 - p.weight, p.source);
  return model.find(p.degree - 1, p.degree - p.weight, p.source);
}

}  // namespace

std::string to_string(Source s) {
  switch (s) {
    case Source::H0: return "H0";
    case Source::H1: return "H1";
    case Source::H2: return "H2";
  }
  return "?";
}

std::string GradedPiece::label() const {
  std::ostringstream out;
  out << 'q' << degree << ":p" << weight << ':' << to_string(source);
  return out.str();
}

bool piece_exists(int degree, int weight, Source source) {
  const int s = static_cast<int>(source);
  switch (degree) {
    case 0: return s == 0 && weight <= 0;
    case 1: return (s == 1 && weight <= 0) || (s == 0 && weight >= 1);
    case 2: return (s == 2 && weight <= 1) || (s == 1 && weight >= 2);
    case 3: return s == 2 && weight >= 2;
    default: return false;
  }
}

GradedPiece make_piece(int genus, int degree, int weight, Source source) {
  if (genus < 2) throw InvalidArgument("genus must be >= 2");
  if (!piece_exists(degree, weight, source)) {
    std::ostringstream msg;
    msg << "no graded piece at degree " << degree << ", weight " << weight << ", source "
        << to_string(source);
    throw InvalidArgument(msg.str());
  }
  GradedPiece piece{degree, weight, source, source_dimension(genus, source), 0};
  piece.twist = first_summand(piece) ? weight : weight - 1;
  return piece;
}

int phi(const GradedPiece& piece) {
  return piece.degree >= 2 * piece.weight ? piece.weight : piece.weight - 1;
}

bool in_h_minus(const GradedPiece& piece) { return first_summand(piece); }
bool in_h_plus(const GradedPiece& piece) { return !first_summand(piece); }

bool GradedElement::is_zero() const {
  for (const auto& c : coords) {
    if (c != 0) return false;
  }
  return true;
}

GradedElement operator*(const Rational& alpha, const GradedElement& x) {
  GradedElement out = x;
  for (auto& c : out.coords) c *= alpha;
  return out;
}

ConeModel ConeModel::build(int genus, int p_min, int p_max) {
  if (genus < 2) throw InvalidArgument("genus must be >= 2");
  if (p_min > -1 || p_max < 2) {
    throw InvalidArgument("model window must satisfy p_min <= -1 and p_max >= 2");
  }
  ConeModel model;
  model.genus_ = genus;
  model.p_min_ = p_min;
  model.p_max_ = p_max;
  for (int q = 0; q <= 3; ++q) {
    for (int p = p_min; p <= p_max; ++p) {
      for (Source s : kSources) {
        if (piece_exists(q, p, s)) model.pieces_.push_back(make_piece(genus, q, p, s));
      }
    }
  }
  return model;
}

std::optional<std::size_t> ConeModel::find(int degree, int weight, Source source) const {
  if (!in_window(weight) || !piece_exists(degree, weight, source)) return std::nullopt;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (p.degree == degree && p.weight == weight && p.source == source) return i;
  }
  return std::nullopt;
}

std::size_t ConeModel::dimension() const {
  std::size_t total = 0;
  for (const auto& p : pieces_) total += static_cast<std::size_t>(p.dimension);
  return total;
}

GradedElement ConeModel::basis_vector(std::size_t piece_index, int k) const {
  GradedElement e = zero(piece_index);
  if (k < 0 || k >= static_cast<int>(e.coords.size())) {
    throw InvalidArgument("basis index out of range");
  }
  e.coords[static_cast<std::size_t>(k)] = 1;
  return e;
}

GradedElement ConeModel::zero(std::size_t piece_index) const {
  const GradedPiece& p = piece(piece_index);
  return {p, std::vector<Rational>(static_cast<std::size_t>(p.dimension), Rational(0))};
}

std::string ConeModel::dump() const {
  std::ostringstream out;
  out << "genus=" << genus_ << " p_min=" << p_min_ << " p_max=" << p_max_ << '\n';
  for (const auto& p : pieces_) {
    out << "degree=" << p.degree << " weight=" << p.weight << " source=" << to_string(p.source)
        << " dim=" << p.dimension << " phi=" << phi(p) << " twist=" << p.twist
        << " side=" << (in_h_minus(p) ? "H-" : "H+") << '\n';
  }
  return out.str();
}

GradedElement monodromy_N(const ConeModel& model, const GradedElement& x) {
  require_member(model, x, "N");
  const auto& p = x.piece;
  if (!piece_exists(p.degree, p.weight - 1, p.source)) return GradedElement::structural_zero();
  return moved(x, window_target(model, p.degree, p.weight - 1, p.source, "N"));
}

GradedElement lefschetz_l(const ConeModel& model, const GradedElement& x) {
  require_member(model, x, "l");
  const auto& p = x.piece;
  if (p.source != Source::H0) return GradedElement::structural_zero();
  return moved(x, window_target(model, p.degree + 2, p.weight + 1, Source::H2, "l"));
}

GradedElement duality_delta(const ConeModel& model, const GradedElement& x) {
  require_member(model, x, "delta");
  const auto& p = x.piece;
  if (!in_h_minus(p)) throw InvalidArgument("delta: element is not in H^-");
  return moved(x, window_target(model, p.degree + 1, p.degree + 1 - p.weight, p.source, "delta"));
}

GradedElement duality_delta_inverse(const ConeModel& model, const GradedElement& y) {
  require_member(model, y, "delta^-1");
  const auto& p = y.piece;
  if (!in_h_plus(p)) throw InvalidArgument("delta^-1: element is not in H^+");
  return moved(y, window_target(model, p.degree - 1, p.degree - p.weight, p.source, "delta^-1"));
}

GradedElement omega(const ConeModel& model, const GradedElement& x) {
  return in_h_minus(x.piece) ? duality_delta(model, x) : duality_delta_inverse(model, x);
}

GradedElement phi_omega_anticommutator(const ConeModel& model, const GradedElement& x) {
  GradedElement wx = omega(model, x);
  return Rational(phi(wx.piece) + phi(x.piece)) * wx;
}

GradedElement f_infinity_arch(const ConeModel& model, const GradedElement& x) {
  require_member(model, x, "F_inf");
  GradedElement out = x;
  if (x.piece.source == Source::H1) {
    const auto g = static_cast<std::size_t>(model.genus());
    for (std::size_t k = 0; k < g; ++k) std::swap(out.coords[k], out.coords[k + g]);
  }
  if (x.twist() % 2 != 0) {
    for (auto& c : out.coords) c = -c;
  }
  return out;
}

std::optional<std::size_t> tower_partner(const ConeModel& model, std::size_t piece_index) {
  const GradedPiece& p = model.piece(piece_index);
  if (p.source == Source::H0) return model.find(p.degree + 2, p.weight + 1, Source::H2);
  if (p.source == Source::H2) return model.find(p.degree - 2, p.weight - 1, Source::H0);
  return std::nullopt;
}

std::vector<std::size_t> tower_closed_pieces(const ConeModel& model) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < model.pieces().size(); ++i) {
    if (model.piece(i).source == Source::H1 || tower_partner(model, i)) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> delta_closed_pieces(const ConeModel& model) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < model.pieces().size(); ++i) {
    if (omega_partner(model, i)) out.push_back(i);
  }
  return out;
}

GradedBasis model_basis(const ConeModel& model, const std::vector<std::size_t>& pieces) {
  GradedBasis basis;
  for (std::size_t idx : pieces) {
    const GradedPiece& p = model.piece(idx);
    for (int k = 0; k < p.dimension; ++k) {
      basis.push_back({basis_label(p, k), Rational(phi(p)), Rational(1)});
    }
  }
  return basis;
}

TruncatedOperator sigma2(const ConeModel& model, double m11, double m12, double m21,
                         double m22) {
  if (std::abs(m11 * m22 - m12 * m21 - 1.0) >= 1e-12) {
    throw InvalidArgument("sigma2: matrix is not in SL(2, R)");
  }
  const auto pieces = tower_closed_pieces(model);
  const BasisLayout lay = layout(model, pieces);
  std::vector<Eigen::Triplet<std::complex<double>>> triplets;
  for (std::size_t n = 0; n < lay.pieces.size(); ++n) {
    const std::size_t idx = lay.pieces[n];
    const GradedPiece& p = model.piece(idx);
    const auto at = static_cast<int>(lay.offsets[n]);
    if (p.source == Source::H1) {
      for (int k = 0; k < p.dimension; ++k) triplets.emplace_back(at + k, at + k, 1.0);
      continue;
    }
    if (p.source != Source::H0) continue;
    const auto plus = static_cast<int>(lay.offset_of.at(*tower_partner(model, idx)));
    const int minus = at;
    triplets.emplace_back(plus, plus, m11);
    triplets.emplace_back(plus, minus, m12);
    triplets.emplace_back(minus, plus, m21);
    triplets.emplace_back(minus, minus, m22);
  }
  GradedBasis basis = model_basis(model, pieces);
  ComplexSparse m(static_cast<Eigen::Index>(lay.size), static_cast<Eigen::Index>(lay.size));
  m.setFromTriplets(triplets.begin(), triplets.end());
  return TruncatedOperator::approximate(basis, basis, std::move(m));
}

TruncatedOperator phi_operator(const ConeModel& model, const std::vector<std::size_t>& pieces) {
  return dirac_operator(model_basis(model, pieces));
}

TruncatedOperator omega_operator(const ConeModel& model) {
  const auto pieces = delta_closed_pieces(model);
  const BasisLayout lay = layout(model, pieces);
  SparseRationalMatrix m(lay.size, lay.size);
  for (std::size_t n = 0; n < lay.pieces.size(); ++n) {
    const std::size_t idx = lay.pieces[n];
    const std::size_t target = lay.offset_of.at(*omega_partner(model, idx));
    for (int k = 0; k < model.piece(idx).dimension; ++k) {
      m.add(target + static_cast<std::size_t>(k), lay.offsets[n] + static_cast<std::size_t>(k),
            Rational(1));
    }
  }
  GradedBasis basis = model_basis(model, pieces);
  return TruncatedOperator::exact(basis, basis, std::move(m));
}

TruncatedOperator lefschetz_operator(const ConeModel& model) {
  const auto pieces = tower_closed_pieces(model);
  const BasisLayout lay = layout(model, pieces);
  SparseRationalMatrix m(lay.size, lay.size);
  for (std::size_t n = 0; n < lay.pieces.size(); ++n) {
    const std::size_t idx = lay.pieces[n];
    if (model.piece(idx).source != Source::H0) continue;
    m.add(lay.offset_of.at(*tower_partner(model, idx)), lay.offsets[n], Rational(1));
  }
  GradedBasis basis = model_basis(model, pieces);
  return TruncatedOperator::exact(basis, basis, std::move(m));
}

OmegaIdentityReport check_omega_identities(const ConeModel& model, int p_lo, int p_hi) {
  OmegaIdentityReport report;
  auto fail = [&report](bool& flag, const GradedElement& x, const char* what) {
    flag = false;
    if (report.first_failure.empty()) {
      std::ostringstream msg;
      msg << what << " fails at " << x.piece.label();
      report.first_failure = msg.str();
    }
  };
  const TruncatedOperator w = omega_operator(model);
  if (!exactly_equal(adjoint(w), w)) {
    report.omega_self_adjoint = false;
    report.first_failure = "omega is not self-adjoint";
  }
  for (std::size_t i = 0; i < model.pieces().size(); ++i) {
    const GradedPiece& piece = model.piece(i);
    if (piece.weight < p_lo || piece.weight > p_hi) continue;
    const int q = in_h_minus(piece) ? piece.degree : piece.degree - 1;
    for (int k = 0; k < piece.dimension; ++k) {
      const GradedElement x = model.basis_vector(i, k);
      ++report.vectors_checked;
      const GradedElement wx = omega(model, x);
      if (omega(model, wx) != x) fail(report.omega_squared_identity, x, "omega^2 = id");
      const GradedElement anti = phi_omega_anticommutator(model, x);
      if (omega(model, anti) != Rational(q) * x) {
        fail(report.anticommutator_identity, x, "omega (Phi omega + omega Phi) = q");
      }
    }
  }
  return report;
}

std::map<std::int64_t, std::int64_t> phi_multiplicities(const ConeModel& model) {
  std::map<std::int64_t, std::int64_t> out;
  for (const auto& p : model.pieces()) out[phi(p)] += p.dimension;
  return out;
}

std::int64_t phi_multiplicity_closed_form(int genus, std::int64_t lambda) {
  if (genus < 2) throw InvalidArgument("genus must be >= 2");
  return 2 * static_cast<std::int64_t>(genus) + ((lambda == 0 || lambda == 1) ? 3 : 2);
}

}  // namespace archdyn
