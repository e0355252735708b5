#pragma once

// Recursive solutions of
//
//   v'' = (e^{-2t} - (2 kappa + 2j - 1) e^{-t} + kappa^2) v,          (*)
//
// v_1 = exp(-e^{-t} - kappa t),  v_{j+1} = (kappa + j - e^{-t}) v_j - v_j'.
//
// With s = e^{-t} every v_j is p_j(s) exp(-s - kappa t) for a polynomial p_j of
// degree j - 1, so the identities about v_j reduce to polynomial algebra:
//
//   d/dt [p(s) w] = (D p)(s) w,   D p = -s p' + (s - kappa) p,
//   p_{j+1} = (2 kappa + j - 2s) p_j + s p_j'.

#include <cmath>
#include <limits>
#include <type_traits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "ecc/errors.hpp"
#include "ecc/polynomial.hpp"

namespace ecc {

enum class ArithmeticMode { ExactRational, Floating };

template <class T>
struct WeightedPolynomial {
  T kappa;
  int j = 1;
  Polynomial<T> p;

  static constexpr ArithmeticMode mode() {
    return std::is_same_v<T, Rational> ? ArithmeticMode::ExactRational : ArithmeticMode::Floating;
  }
};

/// p_1 = 1 at level j = 1.
template <class T>
[[nodiscard]] WeightedPolynomial<T> ground(T kappa) {
  if (kappa < 0) throw DomainError("ground: kappa must be nonnegative");
  return {std::move(kappa), 1, Polynomial<T>::constant(T(1))};
}

/// The derivative operator D acting on the polynomial factor.
template <class T>
[[nodiscard]] Polynomial<T> weighted_derivative(const Polynomial<T>& p, const T& kappa) {
  const Polynomial<T> s = Polynomial<T>::monomial(T(1), 1);
  const Polynomial<T> s_minus_kappa = s - Polynomial<T>::constant(kappa);
  return -(s * p.derivative()) + s_minus_kappa * p;
}

template <class T>
[[nodiscard]] WeightedPolynomial<T> raise(const WeightedPolynomial<T>& v) {
  const T jj(static_cast<long>(v.j));
  const Polynomial<T> factor(std::vector<T>{T(2) * v.kappa + jj, T(-2)});
  Polynomial<T> next = factor * v.p + v.p.derivative().shifted();
  if (next.is_zero()) {
    throw ConsistencyError("raise: trivial v_{j+1} at j = " + std::to_string(v.j));
  }
  return {v.kappa, v.j + 1, std::move(next)};
}

/// ground(kappa) raised to level j.
template <class T>
[[nodiscard]] WeightedPolynomial<T> level(T kappa, int j) {
  if (j < 1) throw DomainError("level: j must be at least 1");
  auto v = ground(std::move(kappa));
  while (v.j < j) v = raise(v);
  return v;
}

/// Polynomial factor of v'' - (s^2 - (2 kappa + 2j - 1) s + kappa^2) v.
template <class T>
[[nodiscard]] Polynomial<T> residual_eq5(const WeightedPolynomial<T>& v) {
  const auto& k = v.kappa;
  const Polynomial<T> second = weighted_derivative(weighted_derivative(v.p, k), k);
  const T jj(static_cast<long>(v.j));
  const Polynomial<T> potential(
      std::vector<T>{k * k, -(T(2) * k + T(2) * jj - T(1)), T(1)});
  return second - potential * v.p;
}

struct SignedLog {
  int sign = 0;  // -1, 0, +1
  double log_abs = -std::numeric_limits<double>::infinity();
};

/// p(s) / max(1, s)^scale_degree evaluated without overflow, for s = e^{-t}.
/// Requires scale_degree >= deg p.
template <class T>
[[nodiscard]] double eval_scaled(const Polynomial<T>& p, double t, int scale_degree) {
  const auto& c = p.coeffs();
  if (c.empty()) return 0.0;
  if (t >= 0.0) {
    const double s = std::exp(-t);
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + to_double(*it);
    return acc;
  }
  // p(s) / s^D = sum_i c_i u^{D - i}, u = 1/s = e^t.
  const double u = std::exp(t);
  double acc = 0.0;
  for (int i = 0; i <= scale_degree; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    acc = acc * u + (idx < c.size() ? to_double(c[idx]) : 0.0);
  }
  return acc;
}

/// sign(v_j(t)) and log|v_j(t)| = log|p_j(s)| - s - kappa t, overflow-free.
template <class T>
[[nodiscard]] SignedLog evaluate_v(const WeightedPolynomial<T>& v, double t) {
  const int d = v.p.degree();
  const double scaled = eval_scaled(v.p, t, d);
  SignedLog out;
  out.sign = scaled > 0 ? 1 : (scaled < 0 ? -1 : 0);
  if (out.sign == 0) return out;
  const double log_s_power = t < 0.0 ? -t * d : 0.0;
  const double s = std::exp(-t);
  out.log_abs = std::log(std::abs(scaled)) + log_s_power - s - to_double(v.kappa) * t;
  return out;
}

/// Distinct zeros of v_j on the real line (positive roots of p_j) by an exact
/// Sturm count. Floating coefficients are converted exactly to rationals.
/// Throws ConsistencyError if a multiple root is detected.
template <class T>
[[nodiscard]] int count_zeros(const WeightedPolynomial<T>& v) {
  Polynomial<Rational> exact;
  if constexpr (std::is_same_v<T, Rational>) {
    exact = v.p;
  } else {
    std::vector<Rational> c;
    for (double x : v.p.coeffs()) c.emplace_back(x);
    exact = Polynomial<Rational>(std::move(c));
  }
  const auto rc = count_roots_above(exact, Rational(0));
  if (!rc.all_simple) {
    throw ConsistencyError("count_zeros: multiple root at level j = " + std::to_string(v.j));
  }
  return rc.distinct;
}

/// Limits of v_j / v_{j+1} as t -> +inf and t -> -inf. Asserts the +inf limit
/// equals 1 / (2 kappa + j) and that the leading coefficients step by -2.
template <class T>
[[nodiscard]] std::pair<T, T> ratio_limits(int j, const T& kappa) {
  const auto vj = level(kappa, j);
  const auto vn = raise(vj);
  const T plus_inf = vj.p.coeff(0) / vn.p.coeff(0);
  const T expected = T(1) / (T(2) * kappa + T(static_cast<long>(j)));
  const auto close = [&](const T& a, const T& b) {
    if constexpr (std::is_same_v<T, Rational>) {
      return a == b;
    } else {
      return std::abs(a - b) <= 1e-10 * std::abs(b);
    }
  };
  if (!close(plus_inf, expected)) {
    throw ConsistencyError("ratio_limits: constant-term ratio differs from 1/(2 kappa + j)");
  }
  if (vn.p.degree() != vj.p.degree() + 1 || !close(vj.p.leading() / vn.p.leading(), T(-1) / T(2))) {
    throw ConsistencyError("ratio_limits: degree or leading-coefficient step violated");
  }
  return {plus_inf, T(0)};
}

/// u(t) = (v_{j+1}(t, k - j) / sqrt(2kj - j^2), v_j(t, k - j)), a solution of
///   u1' = (e^{-t} - k) u1 - c u2,   u2' = c u1 + (k - e^{-t}) u2
/// with c = -sqrt(2kj - j^2).
class DiracSolution {
 public:
  DiracSolution(double k, int j);

  [[nodiscard]] double k() const noexcept { return k_; }
  [[nodiscard]] int j() const noexcept { return j_; }
  [[nodiscard]] double kappa() const noexcept { return k_ - j_; }
  [[nodiscard]] double c() const noexcept { return c_; }
  /// j == k, i.e. c = -k on the edge of the admissible interval.
  [[nodiscard]] bool degenerate() const noexcept { return degenerate_; }

  [[nodiscard]] std::pair<SignedLog, SignedLog> components(double t) const;
  /// (u1, u2) as doubles; only meaningful where they are representable.
  [[nodiscard]] std::pair<double, double> value(double t) const;
  /// Max over both equations of |lhs - rhs| / (|u'| + |(k - s) u| + |c u|).
  [[nodiscard]] double relative_residual(double t) const;

  [[nodiscard]] double tan_limit_plus_inf() const;

 private:
  double k_;
  int j_;
  double c_;
  bool degenerate_;
  WeightedPolynomial<double> lower_;  // v_j
  WeightedPolynomial<double> upper_;  // v_{j+1}
};

/// The continuous, nonincreasing branch of
///   phi_j(t) = arctan(sqrt(2 kappa j + j^2) v_j / v_{j+1}) + pi
/// with phi_j(-inf) = pi; it drops by pi across each of the j zeros of v_{j+1}.
class AngleFunction {
 public:
  AngleFunction(int j, const Rational& kappa);
  AngleFunction(int j, double kappa);

  [[nodiscard]] double operator()(double t) const;
  /// theta_-(-sqrt(2 kappa j + j^2), kappa + j) - (j - 1) pi.
  [[nodiscard]] double limit_plus_inf() const;
  [[nodiscard]] const std::vector<double>& pole_abscissae() const noexcept { return poles_; }

 private:
  void init(const Polynomial<Rational>& lower, const Polynomial<Rational>& upper);

  int j_;
  double kappa_;
  double scale_;
  Polynomial<double> lower_;
  Polynomial<double> upper_;
  std::vector<double> roots_;  // positive roots of p_{j+1} in s, ascending
  std::vector<double> poles_;  // the same in t = -log s, ascending
};

[[nodiscard]] double angle_phi(int j, double kappa, double t);

}  // namespace ecc
