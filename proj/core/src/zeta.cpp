#include "archdyn/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "archdyn/arch_model.hpp"
#include "archdyn/errors.hpp"
#include "archdyn/parallel.hpp"

namespace archdyn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kBernoulliPairs = 15;
constexpr int kStirlingTerms = 10;

// B_0 .. B_max exactly.
std::vector<Rational> bernoulli_numbers(int max_index) {
  std::vector<Rational> b(static_cast<std::size_t>(max_index) + 1);
  b[0] = 1;
  for (int m = 1; m <= max_index; ++m) {
    Rational acc = 0;
    mpz_class binom = 1;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      acc += Rational(binom) * b[static_cast<std::size_t>(k)];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[static_cast<std::size_t>(m)] = -acc / (m + 1);
  }
  return b;
}

// B_{2k} / (2k)! for k = 1..kBernoulliPairs.
const std::vector<double>& em_coefficients() {
  static const std::vector<double> coeffs = [] {
    const auto b = bernoulli_numbers(2 * kBernoulliPairs);
    std::vector<double> out;
    mpz_class fact = 1;
    for (int k = 1; k <= kBernoulliPairs; ++k) {
      fact *= (2 * k - 1) * (2 * k);
      out.push_back(to_double(b[static_cast<std::size_t>(2 * k)] / Rational(fact)));
    }
    return out;
  }();
  return coeffs;
}

// B_{2k} / (2k (2k-1)) for the Stirling series.
const std::vector<double>& stirling_coefficients() {
  static const std::vector<double> coeffs = [] {
    const auto b = bernoulli_numbers(2 * kStirlingTerms);
    std::vector<double> out;
    for (int k = 1; k <= kStirlingTerms; ++k) {
      out.push_back(to_double(b[static_cast<std::size_t>(2 * k)] /
                              Rational((2 * k) * (2 * k - 1))));
    }
    return out;
  }();
  return coeffs;
}

void check_hurwitz_args(Complex z, Complex q) {
  if (!(q.real() > 0.0)) throw DomainError("Hurwitz zeta requires Re q > 0");
  if (z == Complex(1.0, 0.0)) throw DomainError("Hurwitz zeta has a pole at z = 1");
}

int em_cutoff(Complex z) { return 20 + static_cast<int>(std::ceil(std::abs(z))); }

// Value and z-derivative of the Euler-Maclaurin expansion.
std::pair<Complex, Complex> hurwitz_em(Complex z, Complex q) {
  check_hurwitz_args(z, q);
  const int n_terms = em_cutoff(z);
  Complex value = 0.0;
  Complex deriv = 0.0;
  for (int n = 0; n < n_terms; ++n) {
    const Complex lg = std::log(Complex(n, 0.0) + q);
    const Complex t = std::exp(-z * lg);
    value += t;
    deriv -= lg * t;
  }
  const Complex a = Complex(n_terms, 0.0) + q;
  const Complex la = std::log(a);
  const Complex a_pow = std::exp(-z * la);  // a^{-z}
  const Complex zm1 = z - 1.0;
  const Complex tail = a * a_pow / zm1;
  value += tail;
  deriv += -la * tail - a * a_pow / (zm1 * zm1);
  value += 0.5 * a_pow;
  deriv -= 0.5 * la * a_pow;

  // T_k = c_k P_k(z) a^{-z-2k+1}, P_k(z) = z (z+1) ... (z+2k-2).
  Complex p = z;
  Complex dp = 1.0;
  Complex power = a_pow / a;  // a^{-z-1}
  const Complex inv_a2 = 1.0 / (a * a);
  const auto& c = em_coefficients();
  for (int k = 1; k <= kBernoulliPairs; ++k) {
    if (k > 1) {
      for (int j : {2 * k - 3, 2 * k - 2}) {
        dp = dp * (z + static_cast<double>(j)) + p;
        p *= z + static_cast<double>(j);
      }
      power *= inv_a2;
    }
    const double ck = c[static_cast<std::size_t>(k - 1)];
    value += ck * p * power;
    deriv += ck * (dp - la * p) * power;
  }
  return {value, deriv};
}

bool is_gamma_pole(Complex s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::round(s.real());
}

}  // namespace

Complex hurwitz_zeta(Complex z, Complex q) { return hurwitz_em(z, q).first; }

Complex hurwitz_zeta_dz(Complex z, Complex q) { return hurwitz_em(z, q).second; }

double hurwitz_dz_at_0(double q) {
  if (!(q > 0.0)) throw DomainError("hurwitz_dz_at_0 requires q > 0");
  return hurwitz_zeta_dz(Complex(0.0, 0.0), Complex(q, 0.0)).real();
}

double hurwitz_dz_at_0_closed_form(double q) {
  if (!(q > 0.0)) throw DomainError("hurwitz_dz_at_0 requires q > 0");
  return std::lgamma(q) - 0.5 * std::log(2.0 * kPi);
}

Complex log_gamma(Complex s) {
  if (is_gamma_pole(s)) {
    std::ostringstream msg;
    msg << "Gamma has a pole at s = " << s.real();
    throw DomainError(msg.str());
  }
  if (s.real() < 0.5) {
    // Reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s).
    return std::log(kPi) - std::log(std::sin(kPi * s)) - log_gamma(1.0 - s);
  }
  Complex shift = 0.0;
  while (std::abs(s) < 15.0 || s.real() < 15.0) {
    shift += std::log(s);
    s += 1.0;
  }
  Complex series = 0.0;
  const Complex inv = 1.0 / s;
  const Complex inv2 = inv * inv;
  Complex power = inv;
  for (double c : stirling_coefficients()) {
    series += c * power;
    power *= inv2;
  }
  return (s - 0.5) * std::log(s) - s + 0.5 * std::log(2.0 * kPi) + series - shift;
}

Complex gamma(Complex s) { return std::exp(log_gamma(s)); }

Complex log_gamma_C(Complex s) { return -s * std::log(2.0 * kPi) + log_gamma(s); }

Complex gamma_C(Complex s) { return std::exp(log_gamma_C(s)); }

Complex gamma_R(Complex s) { return std::exp(-0.5 * s * std::log(kPi) + log_gamma(0.5 * s)); }

SpectralMultiplicities SpectralMultiplicities::combined() const {
  std::map<Rational, long> merged;
  for (const auto& f : families) merged[f.top] += f.multiplicity;
  SpectralMultiplicities out;
  out.scale = scale;
  for (auto it = merged.rbegin(); it != merged.rend(); ++it) {
    if (it->second != 0) out.families.push_back({it->first, it->second});
  }
  return out;
}

SpectralMultiplicities SpectralMultiplicities::with_two_pi_scale(
    std::vector<SpectralFamily> families) {
  SpectralMultiplicities out;
  out.families = std::move(families);
  out.scale = 1.0 / (2.0 * kPi);
  return out;
}

namespace {

Complex family_argument(const SpectralFamily& f, Complex s) {
  const Complex q = s - to_double(f.top);
  if (!(q.real() > 0.0)) {
    std::ostringstream msg;
    msg << "spectral parameter s = " << s.real() << (s.imag() < 0 ? "" : "+") << s.imag()
        << "i is not to the right of the family with top " << to_string(f.top);
    throw DomainError(msg.str());
  }
  return q;
}

}  // namespace

Complex spectral_zeta(const SpectralMultiplicities& mults, Complex s, Complex z) {
  if (!(mults.scale > 0.0)) throw InvalidArgument("spectral scale must be > 0");
  const SpectralMultiplicities m = mults.combined();
  const Complex scale_pow = std::exp(-z * std::log(m.scale));
  Complex total = 0.0;
  for (const auto& f : m.families) {
    total += static_cast<double>(f.multiplicity) * scale_pow *
             hurwitz_zeta(z, family_argument(f, s));
  }
  return total;
}

Complex spectral_zeta_dz(const SpectralMultiplicities& mults, Complex s, Complex z) {
  if (!(mults.scale > 0.0)) throw InvalidArgument("spectral scale must be > 0");
  const SpectralMultiplicities m = mults.combined();
  const double ls = std::log(m.scale);
  const Complex scale_pow = std::exp(-z * ls);
  Complex total = 0.0;
  for (const auto& f : m.families) {
    const auto [value, deriv] = hurwitz_em(z, family_argument(f, s));
    total += static_cast<double>(f.multiplicity) * scale_pow * (deriv - ls * value);
  }
  return total;
}

Complex regularized_det(const SpectralMultiplicities& mults, Complex s) {
  return std::exp(-spectral_zeta_dz(mults, s, Complex(0.0, 0.0)));
}

Complex regularized_det_fd(const SpectralMultiplicities& mults, Complex s, double h) {
  auto at = [&](double z) { return spectral_zeta(mults, s, Complex(z, 0.0)); };
  const Complex derivative = (8.0 * (at(h) - at(-h)) - (at(2.0 * h) - at(-2.0 * h))) / (12.0 * h);
  return std::exp(-derivative);
}

LFactorSpec LFactorSpec::curve_default(int genus) {
  if (genus < 2) throw InvalidArgument("genus must be >= 2");
  return {{{0, 2 * genus}, {0, -1}, {1, -1}}};
}

Complex LFactorSpec::evaluate(Complex s) const {
  Complex log_total = 0.0;
  for (const auto& f : factors) {
    if (f.exponent == 0) throw InvalidArgument("L-factor exponents must be nonzero");
    log_total += static_cast<double>(f.exponent) * log_gamma_C(s - static_cast<double>(f.shift));
  }
  return std::exp(log_total);
}

Complex gamma_product(const SpectralMultiplicities& mults, Complex s) {
  Complex log_total = 0.0;
  for (const auto& f : mults.combined().families) {
    log_total += static_cast<double>(f.multiplicity) * log_gamma_C(s - to_double(f.top));
  }
  return std::exp(log_total);
}

ModelSpectrum multiplicities_from_model(int genus, int p_min, int p_max) {
  const ConeModel model = ConeModel::build(genus, p_min, p_max);
  const auto pieces = tower_closed_pieces(model);
  const TruncatedOperator a = sigma2(model, -1.0, 0.0, 0.0, -1.0);
  const ComplexSparse m = a.to_complex();

  std::map<long, double> raw;
  std::size_t offset = 0;
  for (std::size_t idx : pieces) {
    const GradedPiece& piece = model.piece(idx);
    if (in_h_minus(piece) && piece.weight > p_min) {
      double& t = raw[phi(piece)];
      for (int k = 0; k < piece.dimension; ++k) {
        const auto i = static_cast<Eigen::Index>(offset + static_cast<std::size_t>(k));
        t += m.coeff(i, i).real();
      }
    }
    offset += static_cast<std::size_t>(piece.dimension);
  }

  ModelSpectrum out;
  out.genus = genus;
  out.p_min = p_min;
  out.p_max = p_max;
  for (const auto& [lambda, t] : raw) {
    if (lambda > p_min) out.traces[lambda] = std::lround(t);
  }
  if (out.traces.size() < 3) throw WindowError("window too small to infer multiplicities");
  auto low = out.traces.begin();
  const long bottom = low->second;
  if (std::next(low)->second != bottom || std::next(low, 2)->second != bottom) {
    throw WindowError("window too small: traces have not stabilized at the bottom weight");
  }

  std::vector<SpectralFamily> families;
  long above = 0;
  for (auto it = out.traces.rbegin(); it != out.traces.rend(); ++it) {
    const long m_lambda = it->second - above;
    if (m_lambda != 0) families.push_back({Rational(it->first), m_lambda});
    above = it->second;
  }
  out.multiplicities = SpectralMultiplicities::with_two_pi_scale(std::move(families));
  return out;
}

bool GammaComparisonReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const GammaComparisonRow& r) { return r.passed; });
}

GammaComparisonReport gamma_comparison_report(int genus, const std::vector<Complex>& samples,
                               const LFactorSpec& lfactors, double tolerance,
                               unsigned workers) {
  return gamma_comparison_report(multiplicities_from_model(genus), samples, lfactors, tolerance,
                         workers);
}

GammaComparisonReport gamma_comparison_report(const ModelSpectrum& spectrum,
                               const std::vector<Complex>& samples,
                               const LFactorSpec& lfactors, double tolerance,
                               unsigned workers) {
  GammaComparisonReport report;
  report.genus = spectrum.genus;
  report.spectrum = spectrum;
  report.lfactors = lfactors;
  report.tolerance = tolerance;
  report.rows = parallel_map(samples.size(), workers, [&](std::size_t i) {
    const Complex s = samples[i];
    GammaComparisonRow row;
    row.s = s;
    row.lhs = 1.0 / regularized_det(spectrum.multiplicities, s);
    row.lhs_finite_difference = 1.0 / regularized_det_fd(spectrum.multiplicities, s);
    row.rhs_model = gamma_product(spectrum.multiplicities, s);
    row.rhs_lfactors = lfactors.evaluate(s);
    row.ratio_lhs_over_lfactors = row.lhs / row.rhs_lfactors;
    row.abs_error = std::abs(row.lhs - row.rhs_model);
    row.rel_error = row.abs_error / std::abs(row.rhs_model);
    row.passed = row.rel_error < tolerance;
    return row;
  });
  return report;
}

}  // namespace archdyn
