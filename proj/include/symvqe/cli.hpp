#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace symvqe {

inline constexpr std::string_view kReportSchema = "symvqe.report/1";

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,      // computation failed
  kExitUsage = 2,        // bad flags or configuration
  kExitInput = 3,        // unreadable or malformed input file
  kExitConsistency = 4,  // an internal consistency check or report validation failed
};

struct RunConfig {
  std::string fcidump;
  std::size_t electrons = 4;
  std::size_t orbitals = 4;
  std::vector<std::size_t> active;  // 1-based; empty = centred on the Fermi level
  std::string ansatz = "uCCDab";
  bool symmetry = true;
  std::string mapping = "greedy";  // greedy | identity
  std::uint64_t mapping_seed = 0;
  std::size_t mapping_restarts = 32;
  std::uint64_t shots = 6000;
  std::string shot_allocation = "per-group";
  std::uint64_t seed = 1;  // sampling seed
  std::string policy = "all";  // none | particle | spin | all
  std::vector<std::uint64_t> sweep_shots;
  std::size_t repeats = 10;
  double contamination = 0.0;
  std::uint64_t contamination_seed = 7;
  std::size_t max_iterations = 500;
  std::string output;      // report path
  std::string histograms;  // histogram file path
  std::string circuit;     // optional circuit text output (synth)
};

/// Runs one command (`args` excludes the program name). Human-readable
/// output goes to `out`, diagnostics to `err`; returns an ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Throws std::invalid_argument describing the first schema violation.
void validate_report(std::string_view json_text);

}  // namespace symvqe
