#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ecc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadArguments = 1;
inline constexpr int kExitNumericalFailure = 2;

inline constexpr const char* kVersion = "0.1.0";

/// Runs `ecc` with the given arguments (program name excluded). Tables go to
/// `out` unless written to a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// %.17g, independent of the global locale. Non-finite values print as nan/inf.
std::string format_number(double x);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

/// FNV-1a 64-bit, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace ecc::cli
