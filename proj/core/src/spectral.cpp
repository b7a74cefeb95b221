#include "archdyn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "archdyn/arch_model.hpp"
#include "archdyn/errors.hpp"
#include "archdyn/parallel.hpp"

namespace archdyn {

namespace {

void check_symbol(int genus, Symbol i) {
  if (i < 0 || i >= 2 * genus) throw InvalidArgument("symbol index out of range");
}

void check_level(int level) {
  if (level < 0) throw InvalidArgument("level must be >= 0");
}

std::size_t index_of(const Alphabet& alphabet, const std::vector<Symbol>& letters) {
  return word_index(alphabet, std::span<const Symbol>(letters.data(), letters.size()));
}

Complex at_word(const SchottkyGroup& group, const ReducedWord& w, const H3Function& f) {
  return {f(mobius_on_h3(word_to_mobius(group, w), group.base_point())), 0.0};
}

Complex at_orbit(const SchottkyGroup& group, Symbol k, int weight, const BoundaryFunction& f) {
  const ReducedWord w =
      ReducedWord::unchecked(std::vector<Symbol>(static_cast<std::size_t>(weight), k));
  const MobiusElement m = word_to_mobius(group, w);
  return {f(mobius_on_h3(m, group.base_point()), fixed_points(m).attracting), 0.0};
}

TruncatedOperator diagonal(const GradedBasis& basis, const std::vector<Complex>& values) {
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != Complex(0.0, 0.0)) {
      triplets.emplace_back(static_cast<int>(i), static_cast<int>(i), values[i]);
    }
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  ComplexSparse m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return TruncatedOperator::approximate(basis, basis, std::move(m));
}

}  // namespace

Rational ParryWeight::weight() const {
  if (genus < 2) throw InvalidArgument("genus must be >= 2");
  check_level(level);
  mpz_class denom = 2 * genus;
  for (int i = 0; i < level; ++i) denom *= 2 * genus - 1;
  return Rational(1, denom);
}

GradedBasis cylinder_basis(int genus, int level, const Rational& dirac,
                           const ResourceCaps& caps) {
  check_level(level);
  const Alphabet alphabet(genus);
  const Rational mu = ParryWeight{genus, level}.weight();
  GradedBasis basis;
  for (const auto& w : enumerate_admissible(alphabet, static_cast<std::size_t>(level) + 1, caps)) {
    basis.push_back({w.to_string(alphabet), dirac, mu});
  }
  return basis;
}

TruncatedOperator s_i_literal(int genus, Symbol i, int level, const ResourceCaps& caps) {
  check_symbol(genus, i);
  const Alphabet alphabet(genus);
  const GradedBasis basis = cylinder_basis(genus, level, Rational(0), caps);
  const auto words = enumerate_admissible(alphabet, static_cast<std::size_t>(level) + 1, caps);
  SparseRationalMatrix m(basis.size(), basis.size());
  std::vector<Symbol> target(static_cast<std::size_t>(level) + 1);
  target[0] = alphabet.inverse(i);
  for (std::size_t r = 0; r < words.size(); ++r) {
    const auto& w = words[r];
    if (w[0] == i) continue;
    for (std::size_t k = 0; k < static_cast<std::size_t>(level); ++k) target[k + 1] = w[k];
    m.add(r, index_of(alphabet, target), Rational(1));
  }
  return TruncatedOperator::exact(basis, basis, std::move(m));
}

TruncatedOperator s_i_koopman(int genus, Symbol i, int level, const ResourceCaps& caps) {
  check_symbol(genus, i);
  const Alphabet alphabet(genus);
  const GradedBasis domain = cylinder_basis(genus, level, Rational(0), caps);
  const GradedBasis codomain = cylinder_basis(genus, level + 1, Rational(0), caps);
  const auto words = enumerate_admissible(alphabet, static_cast<std::size_t>(level) + 2, caps);
  SparseRationalMatrix m(codomain.size(), domain.size());
  for (std::size_t r = 0; r < words.size(); ++r) {
    const auto& letters = words[r].letters();
    if (letters[0] != i) continue;
    const std::vector<Symbol> tail(letters.begin() + 1, letters.end());
    m.add(r, index_of(alphabet, tail), Rational(1));
  }
  return TruncatedOperator::exact(domain, codomain, std::move(m), Rational(2 * genus - 1));
}

TruncatedOperator refinement_operator(int genus, int level, const ResourceCaps& caps) {
  const Alphabet alphabet(genus);
  const GradedBasis domain = cylinder_basis(genus, level, Rational(0), caps);
  const GradedBasis codomain = cylinder_basis(genus, level + 1, Rational(0), caps);
  const auto words = enumerate_admissible(alphabet, static_cast<std::size_t>(level) + 2, caps);
  SparseRationalMatrix m(codomain.size(), domain.size());
  for (std::size_t r = 0; r < words.size(); ++r) {
    const auto& letters = words[r].letters();
    const std::vector<Symbol> head(letters.begin(), letters.end() - 1);
    m.add(r, index_of(alphabet, head), Rational(1));
  }
  return TruncatedOperator::exact(domain, codomain, std::move(m));
}

bool CKReport::passed() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const CKLevelRow& r) {
           return r.range_exact && r.relation_exact && r.isometry_exact && r.dictionary_exact;
         });
}

CKReport ck_relations_check(int genus, int level_lo, int level_hi,
                            const std::optional<TransitionMatrix>& relation_matrix,
                            const ResourceCaps& caps) {
  if (level_lo < 1) throw InvalidArgument("Cuntz-Krieger check needs levels >= 1");
  if (level_lo > level_hi) throw InvalidArgument("Cuntz-Krieger check: empty level range");
  const Alphabet alphabet(genus);
  const TransitionMatrix a = relation_matrix ? *relation_matrix : transition_matrix(alphabet);
  const auto n_symbols = static_cast<std::size_t>(2 * genus);
  if (a.size() != n_symbols) throw InvalidArgument("relation matrix has the wrong size");

  CKReport report;
  report.genus = genus;
  report.dictionary =
      "S_i xi(a_0..a_{n+1}) = sqrt(2g-1) [a_0 = g_i] xi(a_1..a_{n+1}) with Parry adjoints; "
      "the literal operator on level n equals sqrt(2g-1) E S_{inv(i)}^*, where E views a "
      "level n-1 function at level n";
  for (int n = level_lo; n <= level_hi; ++n) {
    std::vector<TruncatedOperator> into, out_of, proj;
    for (Symbol j = 0; j < 2 * genus; ++j) {
      into.push_back(s_i_koopman(genus, j, n - 1, caps));
      out_of.push_back(s_i_koopman(genus, j, n, caps));
      proj.push_back(into.back() * adjoint(into.back()));
    }
    const GradedBasis basis = into.front().codomain();
    const TruncatedOperator id = identity_operator(basis);
    TruncatedOperator sum = proj.front();
    for (std::size_t j = 1; j < proj.size(); ++j) sum = sum + proj[j];

    CKLevelRow row;
    row.level = n;
    row.range_deviation = max_abs_difference(sum, id);
    row.range_exact = exactly_equal(sum, id);
    row.relation_exact = true;
    row.isometry_exact = true;
    row.dictionary_exact = true;
    const TruncatedOperator refine = refinement_operator(genus, n - 1, caps);
    const TruncatedOperator root_c = TruncatedOperator::exact(
        basis, basis, SparseRationalMatrix::identity(basis.size()), Rational(2 * genus - 1));
    for (Symbol i = 0; i < 2 * genus; ++i) {
      const auto si = static_cast<std::size_t>(i);
      const TruncatedOperator q = adjoint(out_of[si]) * out_of[si];
      TruncatedOperator rhs =
          TruncatedOperator::exact(basis, basis, SparseRationalMatrix(basis.size(), basis.size()));
      for (std::size_t j = 0; j < n_symbols; ++j) {
        if (a.at(si, j) == 0) continue;
        rhs = rhs + TruncatedOperator::exact(basis, basis,
                                             proj[j].exact_matrix().scaled(Rational(a.at(si, j))),
                                             proj[j].radicand());
      }
      row.relation_deviation = std::max(row.relation_deviation, max_abs_difference(q, rhs));
      row.relation_exact = row.relation_exact && exactly_equal(q, rhs);
      row.isometry_exact = row.isometry_exact && exactly_equal(q * q, q);
      const TruncatedOperator literal = s_i_literal(genus, i, n, caps);
      const TruncatedOperator via =
          root_c * refine * adjoint(into[static_cast<std::size_t>(alphabet.inverse(i))]);
      row.dictionary_exact = row.dictionary_exact && exactly_equal(literal, via);
    }
    if (!report.minimal_exact_level && row.range_exact && row.relation_exact) {
      report.minimal_exact_level = n;
    }
    report.rows.push_back(row);
  }
  return report;
}

TruncatedOperator rho_cohomology(const H3Function& f, const SchottkyGroup& group, int level,
                                 const ResourceCaps& caps) {
  check_level(level);
  const GradedBasis basis = cylinder_basis(group.genus(), level, Rational(0), caps);
  std::vector<Complex> values;
  for (const auto& w :
       enumerate_admissible(group.alphabet(), static_cast<std::size_t>(level) + 1, caps)) {
    values.push_back(at_word(group, w, f));
  }
  return diagonal(basis, values);
}

TruncatedOperator rho_cohomology_exact(const WordFunction& f, int genus, int level,
                                       const ResourceCaps& caps) {
  check_level(level);
  const Alphabet alphabet(genus);
  const GradedBasis basis = cylinder_basis(genus, level, Rational(0), caps);
  std::vector<Rational> values;
  for (const auto& w : enumerate_admissible(alphabet, static_cast<std::size_t>(level) + 1, caps)) {
    values.push_back(f(w));
  }
  return TruncatedOperator::exact(basis, basis, SparseRationalMatrix::diagonal(values));
}

GradedBasis homology_basis(int genus, int weight) {
  if (weight < 1) throw InvalidArgument("homology weight must be >= 1");
  const Alphabet alphabet(genus);
  GradedBasis basis;
  for (Symbol k = 0; k < 2 * genus; ++k) {
    std::ostringstream label;
    label << '[' << alphabet.name(k) << "]^" << weight;
    basis.push_back({label.str(), Rational(weight), Rational(1)});
  }
  return basis;
}

TruncatedOperator rho_homology(const BoundaryFunction& f, const SchottkyGroup& group,
                               int weight) {
  const GradedBasis basis = homology_basis(group.genus(), weight);
  std::vector<Complex> values;
  for (Symbol k = 0; k < 2 * group.genus(); ++k) values.push_back(at_orbit(group, k, weight, f));
  return diagonal(basis, values);
}

DynamicalTruncation DynamicalTruncation::build(int genus, int max_level, int max_weight,
                                               const ResourceCaps& caps) {
  check_level(max_level);
  if (max_weight < 0) throw InvalidArgument("max_weight must be >= 0");
  DynamicalTruncation h;
  h.genus = genus;
  h.max_level = max_level;
  h.max_weight = max_weight;
  for (int m = 0; m <= max_level; ++m) {
    h.level_offsets.push_back(h.basis.size());
    for (auto e : cylinder_basis(genus, m, Rational(-m), caps)) {
      e.label = "C" + std::to_string(m) + ":" + e.label;
      h.basis.push_back(std::move(e));
    }
    if (h.basis.size() > caps.max_matrix_dim) {
      throw ResourceCapError("dynamical truncation exceeds the matrix dimension cap");
    }
  }
  for (int p = 1; p <= max_weight; ++p) {
    h.weight_offsets.push_back(h.basis.size());
    for (auto e : homology_basis(genus, p)) {
      e.label = "W" + std::to_string(p) + ":" + e.label;
      h.basis.push_back(std::move(e));
    }
  }
  if (h.basis.size() > caps.max_matrix_dim) {
    throw ResourceCapError("dynamical truncation exceeds the matrix dimension cap");
  }
  return h;
}

TruncatedOperator dynamical_shift(const DynamicalTruncation& h, Symbol i) {
  check_symbol(h.genus, i);
  const Alphabet alphabet(h.genus);
  SparseRationalMatrix m(h.basis.size(), h.basis.size());
  for (int level = 0; level < h.max_level; ++level) {
    const auto words = enumerate_admissible(alphabet, static_cast<std::size_t>(level) + 2,
                                            ResourceCaps{});
    for (std::size_t r = 0; r < words.size(); ++r) {
      const auto& letters = words[r].letters();
      if (letters[0] != i) continue;
      const std::vector<Symbol> tail(letters.begin() + 1, letters.end());
      m.add(h.level_offsets[static_cast<std::size_t>(level) + 1] + r,
            h.level_offsets[static_cast<std::size_t>(level)] + index_of(alphabet, tail),
            Rational(1));
    }
  }
  return TruncatedOperator::exact(h.basis, h.basis, std::move(m), Rational(2 * h.genus - 1));
}

TruncatedOperator dynamical_rho(const DynamicalTruncation& h, const SchottkyGroup& group,
                                const H3Function& f, const BoundaryFunction& f_boundary) {
  if (group.genus() != h.genus) throw InvalidArgument("group genus does not match");
  std::vector<Complex> values;
  values.reserve(h.basis.size());
  for (int level = 0; level <= h.max_level; ++level) {
    for (const auto& w : enumerate_admissible(group.alphabet(), static_cast<std::size_t>(level) + 1,
                                              ResourceCaps{})) {
      values.push_back(at_word(group, w, f));
    }
  }
  for (int p = 1; p <= h.max_weight; ++p) {
    for (Symbol k = 0; k < 2 * h.genus; ++k) values.push_back(at_orbit(group, k, p, f_boundary));
  }
  return diagonal(h.basis, values);
}

H3Function decay_test_function(const H3Point& base) {
  return [base](const H3Point& x) { return std::exp(-hyperbolic_distance(x, base)); };
}

std::vector<SummabilityRow> summability_profile(const MultiplicityFunction& mult,
                                                std::int64_t max_multiplicity, double z,
                                                const std::vector<std::int64_t>& radii) {
  if (!(z > 0.0)) throw InvalidArgument("summability exponent must be > 0");
  std::int64_t top = 0;
  for (auto r : radii) {
    if (r < 0) throw InvalidArgument("radii must be >= 0");
    top = std::max(top, r);
  }
  auto term = [&](std::int64_t lambda) {
    const std::int64_t m = lambda == 0 ? mult(0) : mult(lambda) + mult(-lambda);
    const long double l = static_cast<long double>(lambda);
    return static_cast<long double>(m) * std::pow(1.0L + l * l, -static_cast<long double>(z) / 2);
  };
  std::vector<long double> cumulative(static_cast<std::size_t>(top) + 1);
  long double acc = 0.0L;
  for (std::int64_t l = 0; l <= top; ++l) {
    acc += term(l);
    cumulative[static_cast<std::size_t>(l)] = acc;
  }
  std::vector<SummabilityRow> rows;
  for (auto r : radii) {
    SummabilityRow row;
    row.radius = r;
    row.partial_sum = static_cast<double>(cumulative[static_cast<std::size_t>(r)]);
    row.next_difference = static_cast<double>(term(r + 1));
    row.ratio_to_log = r > 1 ? row.partial_sum / std::log(static_cast<double>(r)) : 0.0;
    if (z > 1.0 && r > 0) {
      row.integral_tail_bound = 2.0 * static_cast<double>(max_multiplicity) *
                                std::pow(static_cast<double>(r), 1.0 - z) / (z - 1.0);
    }
    rows.push_back(row);
  }
  return rows;
}

MultiplicityFunction phi_multiplicity_source(int genus) {
  if (genus < 2) throw InvalidArgument("genus must be >= 2");
  return [genus](std::int64_t lambda) { return phi_multiplicity_closed_form(genus, lambda); };
}

SpectrumReport spectrum_report(const SchottkyGroup& group, const SpectrumOptions& options,
                               const ResourceCaps& caps) {
  const int g = group.genus();
  if (options.max_half_width < 1) throw InvalidArgument("max_half_width must be >= 1");
  if (options.level_lo < 0 || options.level_lo > options.level_hi) {
    throw InvalidArgument("invalid level range");
  }
  SpectrumReport report;
  report.genus = g;

  const int w_max = options.max_half_width;
  const ConeModel widest = ConeModel::build(g, -w_max, w_max + 1);
  report.phi_counts_match = true;
  for (const auto& [lambda, count] : phi_multiplicities(widest)) {
    if (lambda < widest.p_min() || lambda > widest.p_max() - 1) continue;
    report.phi_counts[lambda] = count;
    if (count != phi_multiplicity_closed_form(g, lambda)) report.phi_counts_match = false;
  }

  const std::int64_t max_mult = phi_multiplicity_closed_form(g, 0);
  report.summability_z1 =
      summability_profile(phi_multiplicity_source(g), max_mult, 1.0, options.radii);
  report.summability_z15 =
      summability_profile(phi_multiplicity_source(g), max_mult, 1.5, options.radii);
  report.cauchy_ok = true;
  bool any_large = false;
  for (const auto& row : report.summability_z15) {
    if (row.radius >= 100000) {
      any_large = true;
      if (!(row.next_difference < options.cauchy_tolerance)) report.cauchy_ok = false;
    }
  }
  report.cauchy_ok = report.cauchy_ok && any_large;
  if (!report.summability_z1.empty()) {
    double lo = report.summability_z1.front().ratio_to_log;
    double hi = lo;
    for (const auto& row : report.summability_z1) {
      lo = std::min(lo, row.ratio_to_log);
      hi = std::max(hi, row.ratio_to_log);
    }
    report.log_ratio_spread = (hi + lo) > 0.0 ? (hi - lo) / (hi + lo) : 0.0;
    report.log_growth_ok = lo > 0.0 && report.log_ratio_spread < options.log_tolerance;
  }

  const auto sigma_norms = parallel_map(
      static_cast<std::size_t>(w_max), options.workers, [&](std::size_t i) {
        const int w = static_cast<int>(i) + 1;
        const ConeModel model = ConeModel::build(g, -w, w + 1);
        return dirac_commutator_norm(
            sigma2(model, options.m11, options.m12, options.m21, options.m22));
      });
  report.sigma_stable = true;
  for (std::size_t i = 0; i < sigma_norms.size(); ++i) {
    report.sigma_rows.push_back({"[Phi,sigma2(m)]", static_cast<int>(i) + 1, sigma_norms[i]});
    if (sigma_norms[i] != sigma_norms.front()) report.sigma_stable = false;
  }

  const auto n_levels = static_cast<std::size_t>(options.level_hi - options.level_lo + 1);
  const H3Function f = decay_test_function(group.base_point());
  const BoundaryFunction f_boundary = [f](const H3Point& x, const P1Point&) { return f(x); };
  const auto per_level = parallel_map(n_levels, options.workers, [&](std::size_t idx) {
    const int n = options.level_lo + static_cast<int>(idx);
    const DynamicalTruncation h = DynamicalTruncation::build(g, n, n, caps);
    std::vector<CommutatorRow> rows;
    const TruncatedOperator rho = dynamical_rho(h, group, f, f_boundary);
    rows.push_back({"[D,rho(f)]", n, dirac_commutator_norm(rho)});
    for (Symbol i = 0; i < 2 * g; ++i) {
      const TruncatedOperator s = dynamical_shift(h, i);
      rows.push_back({"[D,S_" + group.alphabet().name(i) + "]", n, dirac_commutator_norm(s)});
      rows.push_back(
          {"[D,rho(f)S_" + group.alphabet().name(i) + "]", n, dirac_commutator_norm(rho * s)});
    }
    return rows;
  });
  std::map<std::string, double> previous;
  for (const auto& rows : per_level) {
    for (const auto& row : rows) {
      report.dynamical_rows.push_back(row);
      const auto it = previous.find(row.op);
      if (it != previous.end()) {
        const double scale = std::max(std::abs(it->second), 1e-300);
        const double change =
            it->second == row.norm ? 0.0 : std::abs(row.norm - it->second) / scale;
        report.dynamical_max_relative_change =
            std::max(report.dynamical_max_relative_change, change);
      }
      previous[row.op] = row.norm;
    }
  }
  report.dynamical_stable = report.dynamical_max_relative_change < options.stability_tolerance;
  return report;
}

}  // namespace archdyn
