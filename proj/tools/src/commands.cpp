#include "archdyn_cli/commands.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "archdyn/arch_model.hpp"
#include "archdyn/bridge.hpp"
#include "archdyn/caps.hpp"
#include "archdyn/errors.hpp"
#include "archdyn/parallel.hpp"
#include "archdyn/reports.hpp"
#include "archdyn/schottky.hpp"
#include "archdyn/spectral.hpp"
#include "archdyn/subshift.hpp"
#include "archdyn/zeta.hpp"

namespace archdyn::cli {

namespace {

struct Outcome {
  std::string report;
  bool passed = true;
};

struct Context {
  const JobConfig& config;
  ResourceCaps caps;
  ReportFormat format;
};

int parse_int(const std::string& text, const std::string& what) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidArgument("bad " + what + " '" + text + "'");
  }
  return value;
}

double parse_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidArgument("bad " + what + " '" + text + "'");
  }
  return value;
}

LFactorSpec lfactor_spec(const JobConfig& c, int genus) {
  if (c.lfactors.empty()) return LFactorSpec::curve_default(genus);
  LFactorSpec spec;
  for (const auto& entry : c.lfactors) {
    const auto colon = entry.find(':');
    if (colon == std::string::npos) {
      throw InvalidArgument("L-factor '" + entry + "' must look like shift:exponent");
    }
    LFactorSpec::Factor f;
    f.shift = parse_int(entry.substr(0, colon), "L-factor shift");
    f.exponent = parse_int(entry.substr(colon + 1), "L-factor exponent");
    if (f.exponent == 0) throw InvalidArgument("L-factor exponents must be nonzero");
    spec.factors.push_back(f);
  }
  return spec;
}

SchottkyGroup load_group(const JobConfig& c) {
  if (c.schottky_config.empty()) return SchottkyGroup::standard(c.genus);
  SchottkyGroup group = SchottkyGroup::from_file(c.schottky_config);
  if (group.genus() != c.genus) {
    throw ConfigError("Schottky config has genus " + std::to_string(group.genus()) +
                      " but --genus is " + std::to_string(c.genus));
  }
  return group;
}

Outcome cmd_ranks(const Context& ctx) {
  const auto& c = ctx.config;
  const int lo = c.min_level.value_or(0);
  const int hi = c.max_level.value_or(2);
  const std::size_t count = lo > hi ? 0 : static_cast<std::size_t>(hi - lo + 1);
  const auto rows = parallel_map(count, c.workers, [&](std::size_t i) {
    return rank_F(c.genus, lo + static_cast<int>(i), ctx.caps);
  });
  bool all = true;
  for (const auto& r : rows) all = all && r.rank == rank_F_closed_form(r.genus, r.level);
  return {render_ranks(rows, ctx.format), all};
}

Outcome cmd_periodic(const Context& ctx) {
  const auto& c = ctx.config;
  const int lo = c.min_level.value_or(1);
  const int hi = c.max_level.value_or(6);
  if (lo < 1 && lo <= hi) throw InvalidArgument("periodic orbit lengths start at 1");
  const Alphabet alphabet(c.genus);
  const TransitionMatrix a = transition_matrix(alphabet);
  const std::size_t count = lo > hi ? 0 : static_cast<std::size_t>(hi - lo + 1);
  const auto rows = parallel_map(count, c.workers, [&](std::size_t i) {
    PeriodicRow row;
    row.N = lo + static_cast<int>(i);
    row.orbits = enumerate_periodic(alphabet, row.N, ctx.caps);
    for (const auto& o : row.orbits) {
      row.enumerated += static_cast<std::int64_t>(o.primitive_period());
    }
    row.trace = a.trace_power(row.N);
    row.closed_form = periodic_point_closed_form(c.genus, row.N);
    row.homology = homology_rank_report(c.genus, row.N, ctx.caps);
    return row;
  });
  bool all = true;
  for (const auto& r : rows) all = all && r.match();
  return {render_periodic(alphabet, rows, ctx.format), all};
}

Outcome cmd_zeta_check(const Context& ctx) {
  const auto& c = ctx.config;
  const std::vector<double> reals = c.samples.value_or(std::vector<double>{2.5, 3.7, 5.25});
  std::vector<Complex> samples(reals.begin(), reals.end());
  const int lo = c.p_min.value_or(-6);
  const int hi = c.p_max.value_or(6);
  const ModelSpectrum spectrum = multiplicities_from_model(c.genus, lo, hi);
  const GammaComparisonReport report =
      gamma_comparison_report(spectrum, samples, lfactor_spec(c, c.genus), c.tolerance, c.workers);
  return {render_gamma_comparison(report, ctx.format), report.passed()};
}

Outcome cmd_diagram_check(const Context& ctx) {
  const auto& c = ctx.config;
  const int lo = c.p_min.value_or(-3);
  const int hi = c.p_max.value_or(0);
  if (lo > hi) {
    DiagramReport empty;
    empty.genus = c.genus;
    empty.p_lo = lo;
    empty.p_hi = hi;
    return {render_diagram(empty, ctx.format), true};
  }
  const DiagramReport report = check_diagram(c.genus, lo, hi, c.workers);
  return {render_diagram(report, ctx.format), report.passed()};
}

Outcome cmd_ck_check(const Context& ctx) {
  const auto& c = ctx.config;
  const int lo = c.min_level.value_or(1);
  const int hi = c.max_level.value_or(3);
  if (lo > hi) {
    CKReport empty;
    empty.genus = c.genus;
    return {render_ck(empty, ctx.format), true};
  }
  const CKReport report = ck_relations_check(c.genus, lo, hi, std::nullopt, ctx.caps);
  return {render_ck(report, ctx.format), report.passed()};
}

Outcome cmd_limit_set(const Context& ctx) {
  const SchottkyGroup group = load_group(ctx.config);
  const auto points = limit_set_sample(group, ctx.config.depth, ctx.caps);
  return {render_limit_set(group.alphabet(), points, ctx.format), true};
}

Outcome cmd_spectrum(const Context& ctx) {
  const auto& c = ctx.config;
  SpectrumOptions options;
  options.level_lo = c.min_level.value_or(options.level_lo);
  options.level_hi = c.max_level.value_or(options.level_hi);
  if (options.level_lo > options.level_hi) {
    throw InvalidArgument("spectrum: empty level range");
  }
  options.workers = c.workers;
  const SpectrumReport report = spectrum_report(load_group(c), options, ctx.caps);
  return {render_spectrum(report, ctx.format), report.passed()};
}

Outcome cmd_model_dump(const Context& ctx) {
  const auto& c = ctx.config;
  const ConeModel model = ConeModel::build(c.genus, c.p_min.value_or(-3), c.p_max.value_or(3));
  return {render_model(model, ctx.format), true};
}

using Command = std::function<Outcome(const Context&)>;

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table{
      {"ranks", cmd_ranks},
      {"periodic", cmd_periodic},
      {"zeta-check", cmd_zeta_check},
      {"diagram-check", cmd_diagram_check},
      {"ck-check", cmd_ck_check},
      {"limit-set", cmd_limit_set},
      {"spectrum", cmd_spectrum},
      {"model-dump", cmd_model_dump},
  };
  return table;
}

std::string default_format(const std::string& command) {
  return command == "limit-set" ? "csv" : "json";
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : commands()) out.push_back(name);
    return out;
  }();
  return names;
}

void validate(const JobConfig& c) {
  if (!commands().contains(c.command)) {
    throw InvalidArgument("unknown command '" + c.command + "'");
  }
  if (c.genus < 2) throw InvalidArgument("genus must be at least 2");
  if (!(c.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (c.workers < 1) throw InvalidArgument("workers must be at least 1");
  if (c.depth < 0) throw InvalidArgument("depth must be non-negative");
  parse_report_format(c.format.value_or(default_format(c.command)));
  lfactor_spec(c, c.genus);
}

int run_job(const JobConfig& config, std::ostream& out) {
  validate(config);
  const Context ctx{config, ResourceCaps::from_env(),
                    parse_report_format(config.format.value_or(default_format(config.command)))};
  const Outcome outcome = commands().at(config.command)(ctx);
  if (config.out.empty()) {
    out << outcome.report;
  } else {
    std::ofstream file(config.out, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file '" + config.out + "'");
    file << outcome.report;
    if (!file) throw ConfigError("failed writing '" + config.out + "'");
  }
  return outcome.passed ? kPass : kCheckFailure;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  JobConfig config;
  CLI::App app{"Schottky dynamics, archimedean cohomology and spectral triple checks",
               "archdyn"};
  app.set_config("--config", "", "TOML or INI file with option values");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--genus", config.genus, "Genus g >= 2")->capture_default_str();
  app.add_option("--min-level", config.min_level, "Lowest level or period");
  app.add_option("--max-level", config.max_level, "Highest level or period");
  app.add_option("--p-min", config.p_min, "Lowest weight");
  app.add_option("--p-max", config.p_max, "Highest weight");
  std::vector<std::string> sample_values;
  auto* samples = app.add_option("--samples", sample_values, "Real sample points s")
                      ->expected(0, CLI::detail::expected_max_vector_size)
                      ->allow_extra_args();
  app.add_option("--tolerance", config.tolerance, "Relative tolerance")->capture_default_str();
  app.add_option("--schottky-config", config.schottky_config, "Schottky group JSON file")
      ->check(CLI::ExistingFile);
  app.add_option("--out", config.out, "Report path (stdout when omitted)");
  app.add_option("--format", config.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--workers", config.workers, "Worker threads")->capture_default_str();
  app.add_option("--depth", config.depth, "Word length for limit-set")->capture_default_str();
  app.add_option("--lfactor", config.lfactors,
                 "L-factor shift:exponent, repeatable; replaces the default table");

  const std::map<std::string, std::string> help{
      {"ranks", "Rank of F_n against the closed form for n in [min-level, max-level]"},
      {"periodic", "Periodic orbits of length N in [min-level, max-level]"},
      {"zeta-check", "Regularized determinant against Gamma factors at --samples"},
      {"diagram-check", "Duality diagram and real Frobenius equivariance for p in [p-min, p-max]"},
      {"ck-check", "Cuntz-Krieger relations on levels [min-level, max-level]"},
      {"limit-set", "Attracting fixed points of words up to --depth"},
      {"spectrum", "Phi spectrum, summability and commutator stabilization"},
      {"model-dump", "Graded pieces of the cone model on [p-min, p-max]"},
  };
  for (const auto& name : command_names()) {
    app.add_subcommand(name, help.at(name))->callback([&config, name] { config.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (samples->count() > 0) {
      config.samples.emplace();
      for (const auto& text : sample_values) {
        if (text.empty()) continue;
        config.samples->push_back(parse_double(text, "sample"));
      }
    }
    return run_job(config, out);
  } catch (const DomainError& e) {
    err << "error: domain: " << e.what() << '\n';
  } catch (const ResourceCapError& e) {
    err << "error: resource cap: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace archdyn::cli
