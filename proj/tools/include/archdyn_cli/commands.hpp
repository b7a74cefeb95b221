#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace archdyn::cli {

enum ExitCode : int { kPass = 0, kCheckFailure = 1, kUsage = 2 };

/// One batch job. Unset optionals take the command's default.
struct JobConfig {
  std::string command;
  int genus = 2;
  std::optional<int> min_level;
  std::optional<int> max_level;
  std::optional<int> p_min;
  std::optional<int> p_max;
  /// Real sample points; nullopt means the command default.
  std::optional<std::vector<double>> samples;
  double tolerance = 1e-8;
  std::string schottky_config;
  std::string out;
  std::optional<std::string> format;
  unsigned workers = 1;
  int depth = 4;
  /// "shift:exponent" entries replacing the default L-factor table.
  std::vector<std::string> lfactors;
};

/// Commands understood by run_job.
const std::vector<std::string>& command_names();

/// Throws archdyn::InvalidArgument / ConfigError on a bad config.
void validate(const JobConfig& config);

/// Runs the job, writes the report to config.out (or `out` when empty) and
/// returns the exit code. Library errors propagate.
int run_job(const JobConfig& config, std::ostream& out);

/// Parses argv (including --config FILE), runs the job and maps every error
/// to an exit code. Diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace archdyn::cli
