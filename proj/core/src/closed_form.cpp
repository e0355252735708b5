#include "ecc/closed_form.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ecc/errors.hpp"

namespace ecc {

namespace {

constexpr double kMaxK = 1e7;

void require_k(double k, const char* who) {
  if (!(k > 0.0) || !(k <= kMaxK)) {
    throw DomainError(std::string(who) + ": k must lie in (0, 1e7]");
  }
}

}  // namespace

void ExceptionalValues::validate() const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.m != static_cast<int>(i)) throw ConsistencyError("ExceptionalValues: index gap");
    if (!(e.c < 0.0 && e.c > -k)) throw ConsistencyError("ExceptionalValues: c outside (-k, 0)");
    if (i > 0 && !(e.c < entries[i - 1].c)) {
      throw ConsistencyError("ExceptionalValues: not strictly decreasing");
    }
  }
}

double exceptional_value(double k, int n) {
  require_k(k, "exceptional_value");
  if (n < 1 || !(n < k)) throw DomainError("exceptional_value: need 1 <= n < k");
  const double nn = static_cast<double>(n);
  const double x = nn * (2.0 * k - nn);
  double r = std::sqrt(x);
  r += std::fma(-r, r, x) / (2.0 * r);
  return -r;
}

ExceptionalValues exceptional_values(double k) {
  require_k(k, "exceptional_values");
  ExceptionalValues out;
  out.k = k;
  for (int n = 1; n < k; ++n) {
    out.entries.push_back({n - 1, exceptional_value(k, n), Source::ClosedForm});
  }
  return out;
}

int count_exceptional(double k) {
  require_k(k, "count_exceptional");
  return static_cast<int>(std::ceil(k)) - 1;
}

bool stability_bound_check(double k, double c) {
  require_k(k, "stability_bound_check");
  if (!(c < 0.0)) throw DomainError("stability_bound_check: c must be negative");
  const double bound = 2.0 * k - 1.0;
  const bool inside = c * c < bound;
  if (k > 1.0) {
    const bool above_c0 = c > exceptional_value(k, 1);
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * bound;
    if (inside != above_c0 && std::abs(c * c - bound) > slack) {
      throw ConsistencyError("stability_bound_check: c^2 < 2k-1 disagrees with c > c_0(k)");
    }
  }
  return inside;
}

}  // namespace ecc
