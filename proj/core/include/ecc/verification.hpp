#pragma once

// Invariant suites used by `ecc verify`.

#include <optional>
#include <string>
#include <vector>

namespace ecc {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
};

/// Known suites: "prufer", "factorization", "ladder", "all".
[[nodiscard]] bool is_suite(const std::string& name);

/// Runs one suite (or all). `level` caps j for the factorization suite
/// (default 12) and n for the ladder suite (default 8); it must be >= 1.
[[nodiscard]] std::vector<CheckResult> run_suite(const std::string& name,
                                                 std::optional<int> level = std::nullopt);

[[nodiscard]] bool all_passed(const std::vector<CheckResult>& results);

}  // namespace ecc
