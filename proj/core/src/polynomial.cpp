#include "ecc/polynomial.hpp"

#include <algorithm>
#include <cctype>

namespace ecc {

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_integer(const std::string& digits, const std::string& text) {
  if (digits.empty()) throw DomainError("parse_rational: malformed number '" + text + "'");
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw DomainError("parse_rational: malformed number '" + text + "'");
    }
  }
  return cpp_int(digits);
}

cpp_int pow10(long e) {
  cpp_int r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw DomainError("parse_rational: empty input");
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    s.erase(0, 1);
  }

  Rational value;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const cpp_int num = parse_integer(s.substr(0, slash), text);
    const cpp_int den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw DomainError("parse_rational: zero denominator");
    value = Rational(num, den);
  } else {
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
      try {
        exponent = std::stol(s.substr(e + 1));
      } catch (const std::exception&) {
        throw DomainError("parse_rational: malformed exponent in '" + text + "'");
      }
      if (exponent > 400 || exponent < -400) throw DomainError("parse_rational: exponent too large");
      s.erase(e);
    }
    std::string digits = s;
    if (const auto dot = s.find('.'); dot != std::string::npos) {
      digits = s.substr(0, dot) + s.substr(dot + 1);
      exponent -= static_cast<long>(s.size() - dot - 1);
    }
    const cpp_int mantissa = parse_integer(digits, text);
    value = exponent >= 0 ? Rational(mantissa * pow10(exponent)) : Rational(mantissa, pow10(-exponent));
  }
  return negative ? Rational(-value) : value;
}

std::vector<double> positive_roots(const Polynomial<Rational>& p) {
  if (p.is_zero()) throw DomainError("positive_roots: zero polynomial");
  if (p(Rational(0)) == 0) throw DomainError("positive_roots: p(0) must be nonzero");
  const auto seq = sturm_sequence(p);

  // Cauchy bound, rounded up to an integer so that all bisection points are dyadic.
  Rational bound = 0;
  for (const auto& c : p.coeffs()) {
    const Rational r = abs(c / p.leading());
    if (r > bound) bound = r;
  }
  const Rational hi(cpp_int(numerator(bound) / denominator(bound)) + 2);

  std::vector<double> roots;
  struct Interval {
    Rational a, b;
    int va, vb;
  };
  std::vector<Interval> work{{Rational(0), hi, sturm_variations(seq, Rational(0)),
                              sturm_variations(seq, hi)}};
  while (!work.empty()) {
    Interval iv = work.back();
    work.pop_back();
    const int n = iv.va - iv.vb;  // distinct roots in (a, b]
    if (n <= 0) continue;
    if (n == 1) {
      // Shrink (a, b] around the single root using Sturm counts.
      while (true) {
        if (p(iv.b) == 0) break;
        const Rational width = iv.b - iv.a;
        if (width * Rational(cpp_int(1) << 62) <= iv.b) break;
        const Rational mid = (iv.a + iv.b) / 2;
        const int vm = sturm_variations(seq, mid);
        if (iv.va - vm == 1) {
          iv.b = mid;
          iv.vb = vm;
        } else {
          iv.a = mid;
          iv.va = vm;
        }
      }
      roots.push_back(to_double(p(iv.b) == 0 ? iv.b : (iv.a + iv.b) / 2));
      continue;
    }
    const Rational mid = (iv.a + iv.b) / 2;
    const int vm = sturm_variations(seq, mid);
    work.push_back({iv.a, mid, iv.va, vm});
    work.push_back({mid, iv.b, vm, iv.vb});
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace ecc
