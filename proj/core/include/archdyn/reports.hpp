#pragma once

#include <string>
#include <vector>

#include "archdyn/arch_model.hpp"
#include "archdyn/bridge.hpp"
#include "archdyn/schottky.hpp"
#include "archdyn/spectral.hpp"
#include "archdyn/subshift.hpp"
#include "archdyn/zeta.hpp"

namespace archdyn {

enum class ReportFormat { Json, Csv };

/// Throws InvalidArgument for anything but "json" or "csv".
ReportFormat parse_report_format(const std::string& name);

/// 12 significant digits, so reports are byte-stable.
std::string format_double(double value);

/// Columns: g, n, rank_formula, rank_computed, stabilization_m, match.
std::string render_ranks(const std::vector<RankResult>& rows, ReportFormat format);

/// Columns: cyclic_word, primitive_period, traversal.
std::string render_orbits(const Alphabet& alphabet, const std::vector<OrbitClass>& orbits,
                          ReportFormat format);

/// Columns: re, im, is_infinity, word_length, word.
std::string render_limit_set(const Alphabet& alphabet, const std::vector<LimitPoint>& points,
                             ReportFormat format);

struct PeriodicRow {
  int N = 0;
  std::int64_t enumerated = 0;
  std::int64_t trace = 0;
  std::int64_t closed_form = 0;
  std::vector<OrbitClass> orbits;
  HomologyRankRow homology;

  bool match() const { return enumerated == trace && trace == closed_form; }
};

/// CSV columns: N, enumerated, trace, closed_form, match. JSON adds the orbit
/// lists and the homology rank reference (marked reference-only).
std::string render_periodic(const Alphabet& alphabet, const std::vector<PeriodicRow>& rows,
                            ReportFormat format);

/// Columns: degree, weight, source, dim, phi, twist, side.
std::string render_model(const ConeModel& model, ReportFormat format);

std::string render_gamma_comparison(const GammaComparisonReport& report, ReportFormat format);
std::string render_diagram(const DiagramReport& report, ReportFormat format);
std::string render_ck(const CKReport& report, ReportFormat format);
std::string render_spectrum(const SpectrumReport& report, ReportFormat format);

}  // namespace archdyn
