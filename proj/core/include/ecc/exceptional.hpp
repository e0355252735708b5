#pragma once

#include <string>
#include <vector>

namespace ecc {

enum class Source { ClosedForm, Numeric };

[[nodiscard]] inline const char* to_string(Source s) {
  return s == Source::ClosedForm ? "closed_form" : "numeric";
}

struct ExceptionalEntry {
  int m;     // index: c_0 > c_1 > ...
  double c;  // coupling constant in (-k, 0)
  Source source;
};

/// A root that could not be certified because it lies on or inside the
/// exclusion margin at c = -k + margin (or c = -margin).
struct BoundaryNote {
  int m;
  double c_edge;
};

struct ExceptionalValues {
  double k = 0.0;
  std::vector<ExceptionalEntry> entries;
  std::vector<BoundaryNote> boundary_uncertain;
  std::vector<std::string> warnings;

  [[nodiscard]] std::size_t size() const noexcept { return entries.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries.empty(); }

  /// Throws ConsistencyError unless entries are indexed 0, 1, ..., strictly
  /// decreasing in c and inside (-k, 0).
  void validate() const;
};

}  // namespace ecc
