#pragma once

// Dense univariate polynomials over a field (exact rationals or doubles),
// with Sturm sequences for counting real roots.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ecc/errors.hpp"

namespace ecc {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "7/3", "-2", "2.3" or "1e-3" into an exact rational.
[[nodiscard]] Rational parse_rational(const std::string& text);

[[nodiscard]] inline double to_double(const Rational& r) { return r.convert_to<double>(); }
[[nodiscard]] inline double to_double(double v) { return v; }

template <class T>
[[nodiscard]] int sign_of(const T& v) {
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

/// Coefficients in ascending powers; the zero polynomial has no coefficients.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(T v) { return Polynomial(std::vector<T>{std::move(v)}); }
  static Polynomial monomial(T v, std::size_t power) {
    std::vector<T> c(power + 1, T(0));
    c[power] = std::move(v);
    return Polynomial(std::move(c));
  }

  [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] const std::vector<T>& coeffs() const noexcept { return c_; }
  [[nodiscard]] T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  [[nodiscard]] T leading() const { return c_.empty() ? T(0) : c_.back(); }

  [[nodiscard]] T operator()(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  [[nodiscard]] Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  /// Multiplication by the independent variable.
  [[nodiscard]] Polynomial shifted() const {
    if (c_.empty()) return {};
    std::vector<T> d;
    d.reserve(c_.size() + 1);
    d.push_back(T(0));
    d.insert(d.end(), c_.begin(), c_.end());
    return Polynomial(std::move(d));
  }

  template <class U>
  [[nodiscard]] Polynomial<U> cast() const {
    std::vector<U> d;
    d.reserve(c_.size());
    for (const auto& v : c_) d.push_back(static_cast<U>(v));
    return Polynomial<U>(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> d(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) d[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) d[i] += b.c_[i];
    return Polynomial(std::move(d));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<T> d(a.c_);
    for (auto& v : d) v = -v;
    return Polynomial(std::move(d));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> d(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(d));
  }
  friend Polynomial operator*(const T& s, const Polynomial& a) {
    std::vector<T> d(a.c_);
    for (auto& v : d) v *= s;
    return Polynomial(std::move(d));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Euclidean division: *this = q * divisor + r, deg r < deg divisor.
  [[nodiscard]] std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw DomainError("Polynomial::divmod: division by zero polynomial");
    std::vector<T> r(c_);
    const int dd = divisor.degree();
    const int nd = degree();
    if (nd < dd) return {Polynomial{}, *this};
    std::vector<T> q(static_cast<std::size_t>(nd - dd + 1), T(0));
    for (int i = nd; i >= dd; --i) {
      const T f = r[static_cast<std::size_t>(i)] / divisor.leading();
      q[static_cast<std::size_t>(i - dd)] = f;
      for (int j = 0; j <= dd; ++j) {
        r[static_cast<std::size_t>(i - dd + j)] -= f * divisor.c_[static_cast<std::size_t>(j)];
      }
      r[static_cast<std::size_t>(i)] = T(0);
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }

  std::vector<T> c_;
};

/// Monic greatest common divisor (exact arithmetic expected).
template <class T>
[[nodiscard]] Polynomial<T> gcd(Polynomial<T> a, Polynomial<T> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return (T(1) / a.leading()) * a;
}

/// p, p', -rem(p, p'), ... up to the last nonzero remainder.
template <class T>
[[nodiscard]] std::vector<Polynomial<T>> sturm_sequence(const Polynomial<T>& p) {
  std::vector<Polynomial<T>> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  auto d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(std::move(d));
  while (true) {
    auto r = seq[seq.size() - 2].divmod(seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return seq;
}

namespace detail {

template <class T>
int variations(const std::vector<int>& signs) {
  int v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace detail

/// Sign variations of the Sturm sequence at x.
template <class T>
[[nodiscard]] int sturm_variations(const std::vector<Polynomial<T>>& seq, const T& x) {
  std::vector<int> signs;
  signs.reserve(seq.size());
  for (const auto& q : seq) signs.push_back(sign_of(q(x)));
  return detail::variations<T>(signs);
}

/// Sign variations at +infinity (signs of leading coefficients).
template <class T>
[[nodiscard]] int sturm_variations_at_infinity(const std::vector<Polynomial<T>>& seq) {
  std::vector<int> signs;
  signs.reserve(seq.size());
  for (const auto& q : seq) signs.push_back(sign_of(q.leading()));
  return detail::variations<T>(signs);
}

struct RootCount {
  int distinct = 0;
  bool all_simple = true;
};

/// Distinct real roots in (a, +inf); requires p(a) != 0.
template <class T>
[[nodiscard]] RootCount count_roots_above(const Polynomial<T>& p, const T& a) {
  if (p.is_zero()) throw DomainError("count_roots_above: zero polynomial");
  if (p(a) == T(0)) throw DomainError("count_roots_above: p vanishes at the left end");
  const auto seq = sturm_sequence(p);
  RootCount rc;
  rc.distinct = sturm_variations(seq, a) - sturm_variations_at_infinity(seq);
  rc.all_simple = seq.back().degree() == 0;
  return rc;
}

/// Positive real roots of p (p(0) != 0), isolated by exact Sturm counts and
/// refined by exact sign bisection to about 1e-17 relative; returned ascending.
[[nodiscard]] std::vector<double> positive_roots(const Polynomial<Rational>& p);

}  // namespace ecc
