#pragma once

// Command-line front end: argument parsing, validation and dispatch of the
// table / spectrum / irreps / allowed / project / ci / compare commands.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "permsym/json_io.hpp"

namespace permsym::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kNumericalError = 2,
  kVerificationFailed = 3,
};

struct RunConfig {
  std::string command;
  int n = 3;
  double xi = 0.1;
  /// 0 selects the per-N default (10 for N = 3, 8 for N = 4).
  int orbitals = 0;
  int max_quanta = 4;
  std::optional<int> twice_ms;
  std::optional<double> tol;
  std::string format = "json";
  std::string output;
  int nsym = 0;
  int nlast = 0;
  std::string irrep;
  std::string verify;

  bool operator==(const RunConfig&) const = default;
};

/// Fills per-N defaults (orbitals, tolerance) and checks every precondition
/// of the selected command. Throws DomainError or UnboundModelError.
[[nodiscard]] RunConfig resolve(RunConfig config);

/// Half-integer spin projection such as "1/2", "-3/2", "0.5" or "1", as 2 M_s.
[[nodiscard]] int parse_twice_ms(const std::string& text);

void to_json(json& j, const RunConfig& c);
void from_json(const json& j, RunConfig& c);

struct ParseFailure {
  int exit_code = kUsageError;
  std::string message;
};

/// argv[0] is the program name.
[[nodiscard]] std::variant<RunConfig, ParseFailure> parse_args(const std::vector<std::string>& args);

/// Runs a command. The artifact goes to config.output when set, otherwise to
/// `out`; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Calls `body` and maps escaping exceptions to exit codes: usage and
/// precondition errors to 1, numerical-integrity errors to 2.
int guarded(const std::function<int()>& body, std::ostream& err);

/// parse_args followed by run.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace permsym::cli
