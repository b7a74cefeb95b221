#pragma once

#include <complex>
#include <map>
#include <vector>

#include "archdyn/rational.hpp"

namespace archdyn {

using Complex = std::complex<double>;

/// Hurwitz zeta sum_{n>=0} (n+q)^{-z}, continued by Euler-Maclaurin.
/// Requires Re q > 0 and z != 1 (DomainError otherwise).
Complex hurwitz_zeta(Complex z, Complex q);

/// d/dz of hurwitz_zeta, differentiating the Euler-Maclaurin terms.
Complex hurwitz_zeta_dz(Complex z, Complex q);

/// d/dz zeta_H(z, q) at z = 0 from the Euler-Maclaurin continuation.
double hurwitz_dz_at_0(double q);
/// ln Gamma(q) - ln(2 pi) / 2.
double hurwitz_dz_at_0_closed_form(double q);

/// Principal-branch log Gamma (Stirling series after upward shift,
/// reflection for Re s < 1/2). Throws DomainError at the poles.
Complex log_gamma(Complex s);
Complex gamma(Complex s);
/// (2 pi)^{-s} Gamma(s)
Complex gamma_C(Complex s);
/// pi^{-s/2} Gamma(s/2)
Complex gamma_R(Complex s);
Complex log_gamma_C(Complex s);

/// Eigenvalues top, top - 1, top - 2, ... each with signed multiplicity.
struct SpectralFamily {
  Rational top;
  long multiplicity = 0;

  bool operator==(const SpectralFamily&) const = default;
};

struct SpectralMultiplicities {
  std::vector<SpectralFamily> families;
  double scale = 1.0;

  /// Families with equal tops merged, zero multiplicities dropped, sorted by
  /// descending top.
  SpectralMultiplicities combined() const;
  /// Scale 1/(2 pi).
  static SpectralMultiplicities with_two_pi_scale(std::vector<SpectralFamily> families);
};

/// sum over families m * scale^{-z} * zeta_H(z, s - top). Throws DomainError
/// when Re(s - top) <= 0 for some family (this covers s hitting an
/// eigenvalue).
Complex spectral_zeta(const SpectralMultiplicities& mults, Complex s, Complex z);
Complex spectral_zeta_dz(const SpectralMultiplicities& mults, Complex s, Complex z);

/// exp(-d/dz spectral_zeta at z = 0), derivative taken analytically.
Complex regularized_det(const SpectralMultiplicities& mults, Complex s);
/// Same with the derivative from the five-point central difference of step h.
Complex regularized_det_fd(const SpectralMultiplicities& mults, Complex s, double h = 1e-5);

/// prod_f Gamma_C(s - shift_f)^{exponent_f}.
struct LFactorSpec {
  struct Factor {
    int shift = 0;
    int exponent = 0;
  };
  std::vector<Factor> factors;

  /// H^1 / (H^0 * H^2) with H^0 -> Gamma_C(s), H^1 -> Gamma_C(s)^{2g},
  /// H^2 -> Gamma_C(s - 1).
  static LFactorSpec curve_default(int genus);
  Complex evaluate(Complex s) const;
};

/// prod over families Gamma_C(s - top)^m.
Complex gamma_product(const SpectralMultiplicities& mults, Complex s);

/// Traces Tr(sigma2(-id) Pi(lambda)) on the H^- part of the cone model and the
/// descending families inferred from them.
struct ModelSpectrum {
  int genus = 0;
  int p_min = 0;
  int p_max = 0;
  /// lambda -> trace, for every lambda used in the inference.
  std::map<long, long> traces;
  SpectralMultiplicities multiplicities;
};

/// Builds the cone model on [p_min, p_max], evaluates the traces for
/// lambda in [p_min + 1, top] (the bottom weight is not tower-closed) and
/// reads off family multiplicities as successive trace differences from the
/// top. Throws WindowError unless the three lowest traces agree.
ModelSpectrum multiplicities_from_model(int genus, int p_min = -6, int p_max = 6);

struct GammaComparisonRow {
  Complex s;
  Complex lhs;
  Complex lhs_finite_difference;
  Complex rhs_model;
  Complex rhs_lfactors;
  Complex ratio_lhs_over_lfactors;
  double abs_error = 0.0;
  double rel_error = 0.0;
  bool passed = false;
};

struct GammaComparisonReport {
  int genus = 0;
  ModelSpectrum spectrum;
  LFactorSpec lfactors;
  double tolerance = 1e-8;
  std::vector<GammaComparisonRow> rows;

  bool passed() const;
};

/// LHS = regularized_det^{-1} of the model multiplicities (scale 1/(2 pi)),
/// RHS_model = gamma_product of the same multiplicities, RHS_lfactors from the
/// L-factor table. Passes when |LHS - RHS_model| / |RHS_model| < tolerance.
/// Samples are evaluated on `workers` threads; rows keep the sample order.
GammaComparisonReport gamma_comparison_report(int genus, const std::vector<Complex>& samples,
                               const LFactorSpec& lfactors, double tolerance = 1e-8,
                               unsigned workers = 1);
GammaComparisonReport gamma_comparison_report(const ModelSpectrum& spectrum,
                               const std::vector<Complex>& samples,
                               const LFactorSpec& lfactors, double tolerance = 1e-8,
                               unsigned workers = 1);

}  // namespace archdyn
