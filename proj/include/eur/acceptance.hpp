#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eur::verify {

struct CheckResult {
  std::string id;
  int criterion = 0;  // 0 for checks outside the numbered suite
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  std::uint64_t seed = 20240607;
  /// Run only these check ids (all when empty).
  std::vector<std::string> only;
  /// Adds the tabulated-normalization check for this CSV file.
  std::optional<std::string> tabulated_path;
};

/// Ids of the numbered suite, in criterion order.
std::vector<std::string> check_ids();

/// Runs the selected checks. A check that throws is reported as failed with
/// the exception text; the remaining checks still run. Unknown ids in
/// `only` raise DomainError before anything runs.
std::vector<CheckResult> run_checks(const Options& opt = {});

}  // namespace eur::verify
