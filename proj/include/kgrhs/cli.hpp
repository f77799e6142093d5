#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "kgrhs/scenario.hpp"

namespace kgrhs {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitTolerance = 1,
  kExitSchema = 2,
  kExitDomain = 3,
};

struct RunOptions {
  std::optional<OutputFormat> output;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::string text;
  std::string error;
};

// Applies command-line overrides to a parsed scenario.
void apply_options(Scenario& scenario, const RunOptions& options);

nlohmann::json solve_result(const Scenario& scenario, bool full_verification, int jobs = 1);
nlohmann::json klein_result(const Scenario& scenario);

RunOutcome run_solve(const Scenario& scenario, int jobs = 1);
RunOutcome run_verify(const Scenario& scenario, int jobs = 1);
RunOutcome run_klein(const Scenario& scenario, int jobs = 1);
RunOutcome run_sweep(const Scenario& scenario, int jobs = 1);

// Full command dispatch including file loading and error-to-exit-code mapping.
RunOutcome run_command(Command command, const std::string& path, const RunOptions& options);

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace kgrhs
