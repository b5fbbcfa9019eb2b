#pragma once

// Command-line front end. Results are written as CSV with '#' provenance
// lines; see README for the column layout of each command.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catlab/cat_states.hpp"
#include "catlab/channel.hpp"

namespace catlab::cli {

enum class Command {
  evolve,
  purity_curve,
  sweep,
  optimize_xi,
  optimize_r,
  figure1,
  figure2,
  oracle_check,
};

enum ExitCode : int {
  kSuccess = 0,
  kValidationError = 1,
  kConsistencyFailure = 2,
  kIoError = 3,
};

std::string_view command_name(Command c);

struct RunConfig {
  Command command = Command::purity_curve;
  CatSpec cat{1.5, 0, 0, 0, 0};
  double gamma = 1;
  double n = 0.5;
  double m1 = 0;
  double m2 = 0;
  std::optional<double> t_max;   // units of 1/gamma; per-command default
  std::optional<double> t_eval;  // units of 1/gamma; defaults to the decoherence time
  int samples = 200;
  std::string output_path = "-";  // "-" is stdout
  int oracle_resolution = 512;
  std::string sweep_param = "xi";
  double sweep_from = 0;
  double sweep_to = 3.141592653589793;
  double r_max = 3;

  ChannelSpec channel() const;

  /// Checks every embedded spec; throws DomainError on the first problem.
  void validate() const;
};

/// Parses flags and an optional --config key=value file (flags win).
/// Throws DomainError for invalid input. Returns nullopt after printing
/// help to out.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

/// Runs a validated config; returns an ExitCode. Errors from the library
/// propagate as catlab exceptions.
int run(const RunConfig& config, std::ostream& out);

/// Full entry point: parse, validate, run, and map exceptions to exit
/// codes with a single-line "error: <kind>: <message>" on err.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 17 significant digits, "." as decimal separator.
std::string format_number(double v);

/// Writes content to path through a temporary file and a rename.
void write_atomically(const std::string& path, const std::string& content);

}  // namespace catlab::cli
