#pragma once

// Command-line front end: configuration, report envelope and the two
// command families (spectrum tables and verification reports).

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "monopole/model.hpp"

namespace monopole::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kSuccess = 0,
  kInvalidInput = 2,
  kConvergenceFailure = 3,
  kInvariantViolation = 4,
};

enum class Format { kJson, kCsv, kPlain };

struct RunConfig {
  std::string command;  ///< spectrum | verify
  std::string target;   ///< kepler5d, osc8d | algebra, ode, duality, residuals
  std::vector<std::string> argv;

  ModelParams<double> params;
  double l4 = 0;
  double T = 0;
  double K = 0;
  double J = 0;
  double L = 0;
  int p = 4;
  int p_min = 0;
  int p_max = 3;

  double omega = 1;
  double lambda1 = 0;
  double lambda2 = 0;
  int levels = 3;

  std::string picture = "kepler-radial";
  double Lambda = 0;
  double Gamma = 0;
  int mesh = 2000;
  std::string grid = "small";

  Format format = Format::kPlain;
  std::string output;  ///< empty writes to stdout

  /// Mirrors the preconditions of the library calls the command makes.
  void validate() const;
};

/// Thrown for malformed command lines and configuration files.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses argv (without the program name). Values from a --config file are
/// applied first and explicit flags override them. Returns nullopt when only
/// help or version output was requested; that text goes to `out`.
std::optional<RunConfig> parse_command_line(const std::vector<std::string>& args, std::ostream& out);

/// Worker count for sweeps: MONOPOLE_SPECTRA_THREADS when it is a positive
/// integer, hardware concurrency otherwise.
unsigned thread_budget();

/// Runs fn(0), ..., fn(count - 1) on up to thread_budget() workers. Each call
/// writes only its own slot, so results are independent of the schedule.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

using LabelValue = std::variant<double, std::string>;

struct Row {
  std::vector<std::pair<std::string, LabelValue>> labels;
  double value = 0;
  double oracle = 0;
  double tolerance = 0;
  std::string oracle_id;
  std::vector<std::pair<std::string, double>> extra;  ///< e.g. degeneracy

  double abs_diff() const;
  /// abs_diff / |oracle|, or abs_diff when the oracle is 0
  double rel_diff() const;
};

struct Check {
  std::string name;
  double measured = 0;
  double tolerance = 0;
  bool passed = false;
  std::string oracle_id;
};

struct Report {
  std::string command;
  std::vector<std::string> argv;
  std::string timestamp;
  std::vector<std::pair<std::string, double>> params;
  std::vector<std::pair<std::string, std::string>> settings;
  std::vector<Row> rows;
  std::vector<Check> checks;

  bool all_passed() const;
};

/// ISO 8601 UTC time of the call.
std::string utc_timestamp();

std::string to_json(const Report& report);
std::string to_csv(const Report& report);
std::string to_plain(const Report& report);
std::string render(const Report& report, Format format);

Report cmd_spectrum(const RunConfig& config);
Report cmd_verify(const RunConfig& config);

/// Full pipeline with exit-code mapping; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace monopole::cli
