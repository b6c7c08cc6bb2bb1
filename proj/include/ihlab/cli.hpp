#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace ihlab {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitInputError = 2, kExitInconclusive = 3 };

struct RunConfig {
  std::string command;  // build-sh, validate, llv, perverse, check-all, sample-isotropic
  std::string model_path;
  std::string lattice;  // build-sh: alias (k3, toy5, k3n, k3n:<n>) or Gram file
  int n = 1;
  std::uint64_t seed = 42;
  std::optional<std::string> mode;  // exact | modp
  std::optional<std::size_t> budget;
  std::optional<std::string> class_spec;  // csv rationals or sample:k
  std::size_t count = 10;
  std::string output_path;  // empty: stdout
  /// Fixed timestamp for reproducible output (tests); empty uses the clock.
  std::string timestamp;
};

/// Runs one command.  Reports go to config.output_path (atomically) or to
/// `out`; diagnostics and the plain-text diamond on stdout runs go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ihlab
