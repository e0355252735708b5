#pragma once

// Factorization chains for Dirac systems with constant m and q.
//
// Given reals a_n (a_1 = 0) and functions l_n with
//
//   l_{n+1}^2 + l_{n+1}' + a_{n+1} = l_n^2 - l_n' + a_n,
//
// set v_1 = exp(-int l_1) and v_n = l_n v_{n-1} - v_{n-1}'. Then v_n solves
//
//   v'' = (a_n + l_n^2 - l_n') v          (first-component form, level n)
//   v'' = (a_{n+1} + l_{n+1}^2 + l_{n+1}') v  (second-component form, level n+1)
//
// and u = (-v_n / d_n, v_{n-1}) solves u1' = -l_n u1 + (a_n / d_n) u2,
// u2' = d_n u1 + l_n u2 for any d_n != 0.

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ecc/polynomial.hpp"

namespace ecc {

struct LadderSpec {
  std::string name;
  std::function<double(int)> a;             // a_n, n >= 1
  std::function<double(int, double)> l;     // l_n(x)
  std::function<double(int, double)> dl;    // l_n'(x)
  /// Optional antiderivative of l_1 (any constant). Without it v_1 is
  /// obtained by adaptive quadrature.
  std::function<double(double)> l1_antiderivative;
  /// Free nonzero scalars d_n of the Dirac form; unset means d_n = 1.
  std::function<double(int)> d;
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] double d_at(int n) const { return d ? d(n) : 1.0; }
};

struct ChainReport {
  double a1 = 0.0;
  /// violations[i]: max over the grid of the identity between levels i+1 and i+2.
  std::vector<double> violations;
  double max_violation = 0.0;
  bool passed = false;
};

/// Checks a_1 = 0 and the chain identity for n = 1 .. n_max - 1 on the grid.
[[nodiscard]] ChainReport validate_chain(const LadderSpec& spec, std::span<const double> grid,
                                         int n_max, double tol);

/// v_n and v_n' evaluated from the closed recursion. Immutable; copies share
/// the spec.
class LadderState {
 public:
  LadderState(std::shared_ptr<const LadderSpec> spec, int n, double x0);

  [[nodiscard]] int level() const noexcept { return n_; }
  [[nodiscard]] double anchor() const noexcept { return x0_; }
  [[nodiscard]] const LadderSpec& spec() const noexcept { return *spec_; }

  /// (v_n(x), v_n'(x)), normalised by v_1(x0) = 1.
  [[nodiscard]] std::pair<double, double> eval(double x) const;
  [[nodiscard]] double value(double x) const { return eval(x).first; }

  /// v_1 computed by quadrature even when an antiderivative is available.
  [[nodiscard]] double ground_by_quadrature(double x) const;

 private:
  [[nodiscard]] double ground(double x) const;

  std::shared_ptr<const LadderSpec> spec_;
  int n_;
  double x0_;
};

struct Ladder {
  std::vector<LadderState> states;  // levels 1 .. n_max (or up to termination)
  std::optional<int> terminated_at;  // first level found identically zero
};

/// Builds levels 1..n_max. The chain identity must hold to 1e-9 relative
/// (DomainError otherwise); a level with max|v_n| < 1e-13 max|v_{n-1}| on a
/// 401-point grid over the spec interval ends the ladder.
[[nodiscard]] Ladder build_ladder(const LadderSpec& spec, int n_max, double x0);

enum class SlForm {
  FirstComponent,   // v'' = (a_n + l_n^2 - l_n') v
  SecondComponent,  // v'' = (a_{n+1} + l_{n+1}^2 + l_{n+1}') v
};

struct SlResidual {
  double relative = 0.0;          // max |v'' - V v| / max(|v''| + |V v|)
  double derivative_error = 0.0;  // max |v'_propagated - v'_fd| / max |v'|
};

/// v'' from Richardson-extrapolated central differences of the propagated v'.
[[nodiscard]] SlResidual sl_residual(const LadderState& state, SlForm form,
                                     std::span<const double> grid, double h = 2e-3);

/// max |v'_propagated - (v(x+h) - v(x-h)) / 2h| over the grid.
[[nodiscard]] double central_difference_error(const LadderState& state,
                                              std::span<const double> grid, double h);

/// Residual of the level-n Dirac system for u = (-v_n / d, v_{n-1}), with u'
/// from Richardson-extrapolated central differences. Requires n >= 2, d != 0.
[[nodiscard]] double dirac_residual9(const LadderState& previous, const LadderState& current,
                                     double d, std::span<const double> grid, double h = 2e-3);

/// As above with d = spec.d_at(n).
[[nodiscard]] double dirac_residual9(const LadderState& previous, const LadderState& current,
                                     std::span<const double> grid, double h = 2e-3);

/// l_n = x, a_n = -2(n-1) on [-8, 8].
[[nodiscard]] LadderSpec harmonic_spec();
/// l_n = kappa + n - 1 - e^{-x}, a_n = kappa^2 - (kappa + n - 1)^2 on [-3, 12].
[[nodiscard]] LadderSpec morse_spec(double kappa);

struct HarmonicLevel {
  LadderState state;
  double eigenvalue;  // 2n - 1
};

/// n-th oscillator level, v_n = (-d/dx + x)^{n-1} e^{-x^2/2}.
[[nodiscard]] HarmonicLevel harmonic_example(int n);

/// Level n of the Morse-type ladder, anchored at x0 = 0.
[[nodiscard]] LadderState morse_example(double kappa, int n);

/// Chains with l_n = alpha_n + beta_n g(x), where g' = g0 + g1 g. Both sides of
/// the chain identity are then quadratics in g with rational coefficients, so
/// the identity can be checked exactly.
struct AffineChain {
  std::string name;
  std::function<Rational(int)> alpha;
  std::function<Rational(int)> beta;
  std::function<Rational(int)> a;
  Rational g0;
  Rational g1;
};

struct ExactChainReport {
  bool a1_zero = false;
  int first_failure = 0;  // level n whose identity with n + 1 fails, 0 if none
  bool passed = false;
};

[[nodiscard]] ExactChainReport validate_chain_exact(const AffineChain& chain, int n_max);

/// g = x.
[[nodiscard]] AffineChain harmonic_chain();
/// g = e^{-x}.
[[nodiscard]] AffineChain morse_chain(const Rational& kappa);

/// Evenly spaced grid with `count` points on [lo, hi].
[[nodiscard]] std::vector<double> uniform_grid(double lo, double hi, int count);

}  // namespace ecc
