#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "rescurve/continuation.hpp"

namespace rescurve::cli {

enum ExitCode : int { kSuccess = 0, kNumericalFailure = 1, kUsageError = 2 };

/// Thrown for invalid arguments or configuration; maps to kUsageError.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TabulatedForcingConfig {
  std::vector<std::vector<double>> axes;
  std::vector<double> values;
};

/// Everything a command needs. JSON config files use these field names.
struct RunConfig {
  std::string command;

  // Problem selection. A catalog id, optionally overridden piecewise.
  std::string problem = "disk-usinu-xy";
  std::optional<std::string> domain;  // "disk", "ball", "rect"
  int dimension = 2;                  // ball dimension
  std::vector<double> lengths;        // rectangle side lengths
  std::optional<std::string> nonlinearity;
  std::optional<std::string> forcing;
  std::optional<TabulatedForcingConfig> forcing_table;

  ContinuationConfig continuation;

  // Asymptotic curves.
  std::string formula = "disk-power-sin";
  double p = 1.0;
  std::vector<double> dims{1.0, 2.0};
  std::string formula_nonlinearity = "sqrtusinlog";
  int log_points = 0;  // > 0: log-spaced grid with this many points

  // Checks.
  std::string suite = "all";

  // Output.
  std::string out_dir = ".";
  bool plot = false;
  bool signed_log = false;
  std::optional<double> filter_small;

  /// Throws UsageError on out-of-range fields or an unwritable out_dir.
  void validate() const;
};

/// Parses a JSON config document; unknown keys are rejected.
RunConfig parse_run_config(std::string_view json_text);

/// Domain named by the config: the override if present, else the problem's.
DomainSpec resolve_domain(const RunConfig& config);
ProblemSpec resolve_problem(const RunConfig& config);

int cmd_eigen(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_curve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_asymptotic(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& err);

/// rescurve <eigen|curve|asymptotic|check> [options]; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rescurve::cli
