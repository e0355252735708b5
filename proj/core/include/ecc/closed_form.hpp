#pragma once

// Explicit exceptional coupling constants c_{n-1}(k) = -sqrt(2kn - n^2),
// 1 <= n < k, and the derived stability bound c^2 < 2k - 1.

#include "ecc/exceptional.hpp"

namespace ecc {

/// -sqrt(n (2k - n)), rounded with one Newton correction.
[[nodiscard]] double exceptional_value(double k, int n);

[[nodiscard]] ExceptionalValues exceptional_values(double k);

/// N with k in (N, N + 1].
[[nodiscard]] int count_exceptional(double k);

/// True iff c^2 < 2k - 1. For k > 1 this is cross-checked against
/// |c| < |c_0(k)|; a disagreement away from rounding level throws
/// ConsistencyError.
[[nodiscard]] bool stability_bound_check(double k, double c);

}  // namespace ecc
