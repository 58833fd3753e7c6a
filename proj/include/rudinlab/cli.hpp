#pragma once

// The rudinlab command line: subcommand dispatch, report formatting and the
// mapping from library exceptions to exit codes.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace rudinlab::cli {

enum ExitCode : int {
  kOk = 0,
  kInvariant = 1,
  kUsage = 2,
  kBudget = 3,
};

enum class OutputFormat { Csv, Json };

/// Environment variable that overrides the worker count.
inline constexpr const char* kThreadsEnv = "RUDINLAB_THREADS";

struct RunConfig {
  unsigned threads = 0;  // 0 = all cores
  std::uint64_t work_budget = 0;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::Csv;
  std::string out_path;  // empty = the output stream
};

using Cell = std::variant<std::int64_t, double, std::string, bool>;

/// A command's result table. CSV: "# schema=1", header, one line per row,
/// floats with 17 significant digits. JSON: {command, config, rows, fit?}.
struct Report {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> config;  // echoed command parameters
  bool has_fit = false;
  double fit_exponent = 0.0;
  double fit_intercept = 0.0;
  double fit_max_residual = 0.0;
  bool fit_with_log = false;

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;
};

/// Runs one invocation. argv[0] is the program name. Errors are reported on
/// err as a single line "error=<kind> reason=<text>".
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rudinlab::cli
