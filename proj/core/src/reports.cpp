#include "archdyn/reports.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <sstream>

#include "archdyn/errors.hpp"

namespace archdyn {

namespace {

using nlohmann::json;

json num(double v) { return std::stod(format_double(v)); }

json complex_json(Complex z) { return json::array({num(z.real()), num(z.imag())}); }

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string bool_str(bool b) { return b ? "true" : "false"; }

json dyn_json(const DynElement& e) {
  json coords = json::array();
  for (const auto& c : e.coords) coords.push_back(c.get_str());
  return {{"kind", e.kind == DynKind::Cohomology ? "V" : "W"},
          {"weight", e.weight},
          {"twist", e.twist},
          {"coords", coords}};
}

}  // namespace

ReportFormat parse_report_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  throw InvalidArgument("unknown report format '" + name + "' (expected json or csv)");
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string render_ranks(const std::vector<RankResult>& rows, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "g,n,rank_formula,rank_computed,stabilization_m,match\n";
    for (const auto& r : rows) {
      const auto formula = rank_F_closed_form(r.genus, r.level);
      out << r.genus << ',' << r.level << ',' << formula << ',' << r.rank << ','
          << r.stabilization_m << ',' << bool_str(formula == r.rank) << '\n';
    }
    return out.str();
  }
  json table = json::array();
  bool all = true;
  for (const auto& r : rows) {
    const auto formula = rank_F_closed_form(r.genus, r.level);
    all = all && formula == r.rank;
    table.push_back({{"g", r.genus},
                     {"n", r.level},
                     {"rank_formula", formula},
                     {"rank_computed", r.rank},
                     {"stabilization_m", r.stabilization_m},
                     {"history", r.history},
                     {"match", formula == r.rank}});
  }
  return dump({{"rows", table}, {"passed", all}});
}

std::string render_orbits(const Alphabet& alphabet, const std::vector<OrbitClass>& orbits,
                          ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "cyclic_word,primitive_period,traversal\n";
    for (const auto& o : orbits) {
      out << o.cyclic_word.to_string(alphabet) << ',' << o.primitive_period() << ','
          << o.traversal << '\n';
    }
    return out.str();
  }
  json table = json::array();
  for (const auto& o : orbits) {
    table.push_back({{"cyclic_word", o.cyclic_word.to_string(alphabet)},
                     {"primitive_period", o.primitive_period()},
                     {"traversal", o.traversal}});
  }
  return dump({{"orbits", table}});
}

std::string render_limit_set(const Alphabet& alphabet, const std::vector<LimitPoint>& points,
                             ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "re,im,is_infinity,word_length,word\n";
    for (const auto& p : points) {
      const bool inf = p.point.is_infinity();
      const Complex z = inf ? Complex(0.0, 0.0) : p.point.affine();
      out << (inf ? "inf" : format_double(z.real())) << ','
          << (inf ? "inf" : format_double(z.imag())) << ',' << (inf ? 1 : 0) << ','
          << p.word.size() << ',' << p.word.to_string(alphabet) << '\n';
    }
    return out.str();
  }
  json table = json::array();
  for (const auto& p : points) {
    const bool inf = p.point.is_infinity();
    const Complex z = inf ? Complex(0.0, 0.0) : p.point.affine();
    table.push_back({{"re", inf ? json(nullptr) : num(z.real())},
                     {"im", inf ? json(nullptr) : num(z.imag())},
                     {"is_infinity", inf},
                     {"word_length", p.word.size()},
                     {"word", p.word.to_string(alphabet)}});
  }
  return dump({{"points", table}});
}

std::string render_periodic(const Alphabet& alphabet, const std::vector<PeriodicRow>& rows,
                            ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "N,enumerated,trace,closed_form,match\n";
    for (const auto& r : rows) {
      out << r.N << ',' << r.enumerated << ',' << r.trace << ',' << r.closed_form << ','
          << bool_str(r.match()) << '\n';
    }
    return out.str();
  }
  json table = json::array();
  bool all = true;
  for (const auto& r : rows) {
    all = all && r.match();
    json orbits = json::array();
    for (const auto& o : r.orbits) {
      orbits.push_back({{"cyclic_word", o.cyclic_word.to_string(alphabet)},
                        {"primitive_period", o.primitive_period()},
                        {"traversal", o.traversal}});
    }
    table.push_back({{"N", r.N},
                     {"enumerated", r.enumerated},
                     {"trace", r.trace},
                     {"closed_form", r.closed_form},
                     {"match", r.match()},
                     {"orbits", orbits},
                     {"homology_rank",
                      {{"reference_rank", r.homology.reference_rank},
                       {"orbit_span_rank", r.homology.orbit_span_rank},
                       {"status", "reference-only"}}}});
  }
  return dump({{"genus", alphabet.genus()}, {"rows", table}, {"passed", all}});
}

std::string render_model(const ConeModel& model, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "degree,weight,source,dim,phi,twist,side\n";
    for (const auto& p : model.pieces()) {
      out << p.degree << ',' << p.weight << ',' << to_string(p.source) << ',' << p.dimension
          << ',' << phi(p) << ',' << p.twist << ',' << (in_h_minus(p) ? "H-" : "H+") << '\n';
    }
    return out.str();
  }
  json pieces = json::array();
  for (const auto& p : model.pieces()) {
    pieces.push_back({{"degree", p.degree},
                      {"weight", p.weight},
                      {"source", to_string(p.source)},
                      {"dim", p.dimension},
                      {"phi", phi(p)},
                      {"twist", p.twist},
                      {"side", in_h_minus(p) ? "H-" : "H+"}});
  }
  return dump({{"genus", model.genus()},
               {"p_min", model.p_min()},
               {"p_max", model.p_max()},
               {"pieces", pieces}});
}

std::string render_gamma_comparison(const GammaComparisonReport& report, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "s_re,s_im,lhs_re,lhs_im,lhs_fd_re,lhs_fd_im,rhs_model_re,rhs_model_im,"
           "rhs_lfactors_re,rhs_lfactors_im,ratio_lhs_over_lfactors_re,"
           "ratio_lhs_over_lfactors_im,abs_error,rel_error,passed\n";
    for (const auto& r : report.rows) {
      for (Complex z : {r.s, r.lhs, r.lhs_finite_difference, r.rhs_model, r.rhs_lfactors,
                        r.ratio_lhs_over_lfactors}) {
        out << format_double(z.real()) << ',' << format_double(z.imag()) << ',';
      }
      out << format_double(r.abs_error) << ',' << format_double(r.rel_error) << ','
          << bool_str(r.passed) << '\n';
    }
    return out.str();
  }
  json families = json::array();
  for (const auto& f : report.spectrum.multiplicities.families) {
    families.push_back({{"top", f.top.get_str()}, {"multiplicity", f.multiplicity}});
  }
  json traces = json::object();
  for (const auto& [lambda, t] : report.spectrum.traces) traces[std::to_string(lambda)] = t;
  json lfactors = json::array();
  for (const auto& f : report.lfactors.factors) {
    lfactors.push_back({{"shift", f.shift}, {"exponent", f.exponent}});
  }
  json samples = json::array();
  for (const auto& r : report.rows) {
    samples.push_back({{"s", complex_json(r.s)},
                       {"lhs", complex_json(r.lhs)},
                       {"lhs_finite_difference", complex_json(r.lhs_finite_difference)},
                       {"rhs_model", complex_json(r.rhs_model)},
                       {"rhs_lfactors", complex_json(r.rhs_lfactors)},
                       {"ratio_lhs_over_lfactors", complex_json(r.ratio_lhs_over_lfactors)},
                       {"ratio_status", "reference-only"},
                       {"abs_error", num(r.abs_error)},
                       {"rel_error", num(r.rel_error)},
                       {"passed", r.passed}});
  }
  return dump({{"genus", report.genus},
               {"tolerance", num(report.tolerance)},
               {"traces", traces},
               {"families", families},
               {"scale", num(report.spectrum.multiplicities.scale)},
               {"lfactors", lfactors},
               {"samples", samples},
               {"passed", report.passed()}});
}

std::string render_diagram(const DiagramReport& report, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "p,k,via_duality,via_delta,commutes,u_equivariant,u_tilde_equivariant,"
           "d_equivariant,pairing,pairing_twist\n";
    for (const auto& r : report.rows) {
      out << r.weight << ',' << (r.basis_index + 1) << ",\"" << r.via_duality.to_string()
          << "\",\"" << r.via_delta.to_string() << "\"," << bool_str(r.commutes) << ','
          << bool_str(r.u_equivariant) << ',' << bool_str(r.u_tilde_equivariant) << ','
          << bool_str(r.d_equivariant) << ',' << r.pairing.value.get_str() << ','
          << r.pairing.twist << '\n';
    }
    return out.str();
  }
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"p", r.weight},
                    {"k", r.basis_index + 1},
                    {"via_duality", dyn_json(r.via_duality)},
                    {"via_delta", dyn_json(r.via_delta)},
                    {"commutes", r.commutes},
                    {"u_equivariant", r.u_equivariant},
                    {"u_tilde_equivariant", r.u_tilde_equivariant},
                    {"d_equivariant", r.d_equivariant},
                    {"pairing", r.pairing.value.get_str()},
                    {"pairing_twist", r.pairing.twist}});
  }
  json doc = {{"genus", report.genus}, {"p_lo", report.p_lo}, {"p_hi", report.p_hi},
              {"rows", rows},          {"passed", report.passed()}};
  if (!report.first_failure.empty()) doc["first_failure"] = report.first_failure;
  return dump(doc);
}

std::string render_ck(const CKReport& report, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "level,range_deviation,relation_deviation,range_exact,relation_exact,"
           "isometry_exact,dictionary_exact\n";
    for (const auto& r : report.rows) {
      out << r.level << ',' << format_double(r.range_deviation) << ','
          << format_double(r.relation_deviation) << ',' << bool_str(r.range_exact) << ','
          << bool_str(r.relation_exact) << ',' << bool_str(r.isometry_exact) << ','
          << bool_str(r.dictionary_exact) << '\n';
    }
    return out.str();
  }
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"level", r.level},
                    {"range_deviation", num(r.range_deviation)},
                    {"relation_deviation", num(r.relation_deviation)},
                    {"range_exact", r.range_exact},
                    {"relation_exact", r.relation_exact},
                    {"isometry_exact", r.isometry_exact},
                    {"dictionary_exact", r.dictionary_exact}});
  }
  return dump({{"genus", report.genus},
               {"rows", rows},
               {"minimal_exact_level", report.minimal_exact_level
                                           ? json(*report.minimal_exact_level)
                                           : json(nullptr)},
               {"dictionary", report.dictionary},
               {"passed", report.passed()}});
}

std::string render_spectrum(const SpectrumReport& report, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "section,key,size,value\n";
    for (const auto& [lambda, count] : report.phi_counts) {
      out << "phi_multiplicity," << lambda << ",," << count << '\n';
    }
    for (const auto& r : report.summability_z1) {
      out << "partial_sum_z1," << r.radius << ",," << format_double(r.partial_sum) << '\n';
      out << "ratio_to_log_z1," << r.radius << ",," << format_double(r.ratio_to_log) << '\n';
    }
    for (const auto& r : report.summability_z15) {
      out << "partial_sum_z1.5," << r.radius << ",," << format_double(r.partial_sum) << '\n';
      out << "next_difference_z1.5," << r.radius << ",," << format_double(r.next_difference)
          << '\n';
      out << "integral_tail_bound_z1.5," << r.radius << ",,"
          << format_double(r.integral_tail_bound) << '\n';
    }
    for (const auto& r : report.sigma_rows) {
      out << "commutator_norm," << r.op << ',' << r.size << ',' << format_double(r.norm) << '\n';
    }
    for (const auto& r : report.dynamical_rows) {
      out << "commutator_norm," << r.op << ',' << r.size << ',' << format_double(r.norm) << '\n';
    }
    return out.str();
  }
  json phi = json::object();
  for (const auto& [lambda, count] : report.phi_counts) phi[std::to_string(lambda)] = count;
  auto profile = [](const std::vector<SummabilityRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
      out.push_back({{"radius", r.radius},
                     {"partial_sum", num(r.partial_sum)},
                     {"next_difference", num(r.next_difference)},
                     {"ratio_to_log", num(r.ratio_to_log)},
                     {"integral_tail_bound", num(r.integral_tail_bound)}});
    }
    return out;
  };
  auto norms = [](const std::vector<CommutatorRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
      out.push_back({{"op", r.op}, {"size", r.size}, {"norm", num(r.norm)}});
    }
    return out;
  };
  return dump({{"genus", report.genus},
               {"phi_multiplicities", phi},
               {"phi_counts_match", report.phi_counts_match},
               {"summability_z1", profile(report.summability_z1)},
               {"summability_z1_5", profile(report.summability_z15)},
               {"cauchy_ok", report.cauchy_ok},
               {"log_ratio_spread", num(report.log_ratio_spread)},
               {"log_growth_ok", report.log_growth_ok},
               {"sigma_commutators", norms(report.sigma_rows)},
               {"sigma_stable", report.sigma_stable},
               {"dynamical_commutators", norms(report.dynamical_rows)},
               {"dynamical_max_relative_change", num(report.dynamical_max_relative_change)},
               {"dynamical_stable", report.dynamical_stable},
               {"passed", report.passed()}});
}

}  // namespace archdyn
