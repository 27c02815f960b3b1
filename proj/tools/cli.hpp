#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace eur::cli {

/// Everything a subcommand can be configured with. Unset optionals take
/// command-specific defaults.
struct RunConfig {
  std::string command;
  std::optional<double> alpha, cell, dx, dp, h, sx, sp;
  std::optional<std::string> family;
  std::vector<double> params;
  std::optional<std::string> tabulated;
  std::optional<std::string> kind;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<unsigned long long> seed;
  std::optional<double> tail_tol;
  // sweeps
  std::optional<int> figure;
  std::optional<double> lo, hi;
  std::optional<int> resolution;
  std::optional<long> bin;
  std::optional<std::string> space;
  std::optional<std::string> bins_out;
  // saturate
  std::optional<int> budget;
  std::vector<double> scan_lo, scan_hi;
  // example-footnote3
  std::optional<std::string> interpretation;
  // verify
  std::vector<std::string> only;
};

/// Parses the command line, runs the selected subcommand and returns the
/// process exit code: 0 success, 1 failed checks or runtime errors, 2 usage
/// errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eur::cli
