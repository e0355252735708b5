#include "ecc/ladder.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ecc/errors.hpp"

namespace ecc {

namespace {

double richardson_derivative(const std::function<double(double)>& f, double x, double h) {
  const auto central = [&](double step) { return (f(x + step) - f(x - step)) / (2.0 * step); };
  return (4.0 * central(h / 2) - central(h)) / 3.0;
}

}  // namespace

ChainReport validate_chain(const LadderSpec& spec, std::span<const double> grid, int n_max,
                           double tol) {
  ChainReport report;
  report.a1 = spec.a(1);
  report.max_violation = std::abs(report.a1);
  for (int n = 1; n < n_max; ++n) {
    double worst = 0.0;
    for (double x : grid) {
      const double ln = spec.l(n, x);
      const double lm = spec.l(n + 1, x);
      const double lhs = lm * lm + spec.dl(n + 1, x) + spec.a(n + 1);
      const double rhs = ln * ln - spec.dl(n, x) + spec.a(n);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    report.violations.push_back(worst);
    report.max_violation = std::max(report.max_violation, worst);
  }
  report.passed = report.max_violation <= tol;
  return report;
}

LadderState::LadderState(std::shared_ptr<const LadderSpec> spec, int n, double x0)
    : spec_(std::move(spec)), n_(n), x0_(x0) {
  if (n < 1) throw DomainError("LadderState: level must be at least 1");
}

double LadderState::ground_by_quadrature(double x) const {
  const auto l1 = [this](double y) { return spec_->l(1, y); };
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(l1, x0_, x, 15, 1e-14);
  return std::exp(-integral);
}

double LadderState::ground(double x) const {
  if (spec_->l1_antiderivative) {
    return std::exp(spec_->l1_antiderivative(x0_) - spec_->l1_antiderivative(x));
  }
  return ground_by_quadrature(x);
}

std::pair<double, double> LadderState::eval(double x) const {
  const auto& s = *spec_;
  double v = ground(x);
  double dv = -s.l(1, x) * v;
  for (int m = 2; m <= n_; ++m) {
    const double lp = s.l(m - 1, x);
    // v_{m-1}'' from the first-component equation at level m - 1.
    const double ddv = (s.a(m - 1) + lp * lp - s.dl(m - 1, x)) * v;
    const double lm = s.l(m, x);
    const double next = lm * v - dv;
    const double dnext = s.dl(m, x) * v + lm * dv - ddv;
    v = next;
    dv = dnext;
  }
  return {v, dv};
}

Ladder build_ladder(const LadderSpec& spec, int n_max, double x0) {
  if (n_max < 1) throw DomainError("build_ladder: n_max must be at least 1");
  if (!(x0 >= spec.lo && x0 <= spec.hi)) throw DomainError("build_ladder: x0 outside the interval");
  const auto grid = uniform_grid(spec.lo, spec.hi, 401);
  double scale = 1.0;
  for (double x : grid) {
    for (int n = 1; n <= n_max; ++n) scale = std::max(scale, std::abs(spec.l(n, x) * spec.l(n, x)));
  }
  if (const auto report = validate_chain(spec, grid, n_max, 1e-9 * scale); !report.passed) {
    throw DomainError("build_ladder: chain identity violated by " +
                      std::to_string(report.max_violation));
  }

  auto shared = std::make_shared<const LadderSpec>(spec);
  Ladder ladder;
  double previous_max = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    LadderState state(shared, n, x0);
    double current_max = 0.0;
    for (double x : grid) current_max = std::max(current_max, std::abs(state.value(x)));
    if (n > 1 && current_max < 1e-13 * previous_max) {
      ladder.terminated_at = n;
      break;
    }
    ladder.states.push_back(std::move(state));
    previous_max = current_max;
  }
  return ladder;
}

SlResidual sl_residual(const LadderState& state, SlForm form, std::span<const double> grid,
                       double h) {
  const auto& s = state.spec();
  const int n = state.level();
  const auto potential = [&](double x) {
    if (form == SlForm::FirstComponent) {
      const double l = s.l(n, x);
      return s.a(n) + l * l - s.dl(n, x);
    }
    const double l = s.l(n + 1, x);
    return s.a(n + 1) + l * l + s.dl(n + 1, x);
  };
  const std::function<double(double)> v = [&](double x) { return state.eval(x).first; };
  const std::function<double(double)> dv = [&](double x) { return state.eval(x).second; };

  double vmax = 0.0;
  for (double x : grid) vmax = std::max(vmax, std::abs(v(x)));

  double worst = 0.0;
  double norm = 0.0;
  double dworst = 0.0;
  double dnorm = 0.0;
  for (double x : grid) {
    const auto [val, der] = state.eval(x);
    dworst = std::max(dworst, std::abs(der - richardson_derivative(v, x, h)));
    dnorm = std::max(dnorm, std::abs(der));
    if (std::abs(val) <= 1e-12 * vmax) continue;
    const double second = richardson_derivative(dv, x, h);
    const double rhs = potential(x) * val;
    worst = std::max(worst, std::abs(second - rhs));
    norm = std::max(norm, std::abs(second) + std::abs(rhs));
  }
  return {norm > 0.0 ? worst / norm : 0.0, dnorm > 0.0 ? dworst / dnorm : 0.0};
}

double central_difference_error(const LadderState& state, std::span<const double> grid,
                                double h) {
  double worst = 0.0;
  for (double x : grid) {
    const double fd = (state.value(x + h) - state.value(x - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(state.eval(x).second - fd));
  }
  return worst;
}

double dirac_residual9(const LadderState& previous, const LadderState& current, double d,
                       std::span<const double> grid, double h) {
  if (d == 0.0 || !std::isfinite(d)) throw DomainError("dirac_residual9: d_n must be nonzero");
  const int n = current.level();
  if (n < 2 || previous.level() != n - 1) {
    throw DomainError("dirac_residual9: need consecutive levels n - 1, n with n >= 2");
  }
  const auto& s = current.spec();
  const std::function<double(double)> u1 = [&](double x) { return -current.value(x) / d; };
  const std::function<double(double)> u2 = [&](double x) { return previous.value(x); };
  const double an = s.a(n);

  double worst = 0.0;
  double norm = 0.0;
  for (double x : grid) {
    const double l = s.l(n, x);
    const double a = u1(x);
    const double b = u2(x);
    const double da = richardson_derivative(u1, x, h);
    const double db = richardson_derivative(u2, x, h);
    worst = std::max({worst, std::abs(da - (-l * a + an / d * b)), std::abs(db - (d * a + l * b))});
    norm = std::max({norm, std::abs(da) + std::abs(l * a) + std::abs(an / d * b),
                     std::abs(db) + std::abs(d * a) + std::abs(l * b)});
  }
  return norm > 0.0 ? worst / norm : 0.0;
}

double dirac_residual9(const LadderState& previous, const LadderState& current,
                       std::span<const double> grid, double h) {
  return dirac_residual9(previous, current, current.spec().d_at(current.level()), grid, h);
}

LadderSpec harmonic_spec() {
  LadderSpec spec;
  spec.name = "harmonic";
  spec.a = [](int n) { return -2.0 * (n - 1); };
  spec.l = [](int, double x) { return x; };
  spec.dl = [](int, double) { return 1.0; };
  spec.l1_antiderivative = [](double x) { return 0.5 * x * x; };
  spec.lo = -8.0;
  spec.hi = 8.0;
  return spec;
}

LadderSpec morse_spec(double kappa) {
  if (!(kappa >= 0.0)) throw DomainError("morse_spec: kappa must be nonnegative");
  LadderSpec spec;
  spec.name = "morse";
  spec.a = [kappa](int n) {
    const double shifted = kappa + n - 1;
    return (kappa - shifted) * (kappa + shifted);
  };
  spec.l = [kappa](int n, double x) { return kappa + (n - 1) - std::exp(-x); };
  spec.dl = [](int, double x) { return std::exp(-x); };
  spec.l1_antiderivative = [kappa](double x) { return kappa * x + std::exp(-x); };
  spec.lo = -3.0;
  spec.hi = 12.0;
  return spec;
}

HarmonicLevel harmonic_example(int n) {
  if (n < 1) throw DomainError("harmonic_example: n must be at least 1");
  return {LadderState(std::make_shared<const LadderSpec>(harmonic_spec()), n, 0.0), 2.0 * n - 1.0};
}

LadderState morse_example(double kappa, int n) {
  return LadderState(std::make_shared<const LadderSpec>(morse_spec(kappa)), n, 0.0);
}

ExactChainReport validate_chain_exact(const AffineChain& chain, int n_max) {
  // Coefficients of l^2 + sign * l' + a in powers of g.
  const auto side = [&](int n, int sign) {
    const Rational al = chain.alpha(n);
    const Rational be = chain.beta(n);
    const Rational sg(sign);
    return std::array<Rational, 3>{al * al + sg * be * chain.g0 + chain.a(n),
                                   Rational(2) * al * be + sg * be * chain.g1, be * be};
  };
  ExactChainReport report;
  report.a1_zero = chain.a(1) == 0;
  for (int n = 1; n < n_max && report.first_failure == 0; ++n) {
    if (side(n + 1, 1) != side(n, -1)) report.first_failure = n;
  }
  report.passed = report.a1_zero && report.first_failure == 0;
  return report;
}

AffineChain harmonic_chain() {
  AffineChain chain;
  chain.name = "harmonic";
  chain.alpha = [](int) { return Rational(0); };
  chain.beta = [](int) { return Rational(1); };
  chain.a = [](int n) { return Rational(-2 * (n - 1)); };
  chain.g0 = 1;
  chain.g1 = 0;
  return chain;
}

AffineChain morse_chain(const Rational& kappa) {
  if (kappa < 0) throw DomainError("morse_chain: kappa must be nonnegative");
  AffineChain chain;
  chain.name = "morse";
  chain.alpha = [kappa](int n) { return kappa + (n - 1); };
  chain.beta = [](int) { return Rational(-1); };
  chain.a = [kappa](int n) {
    const Rational shifted = kappa + (n - 1);
    return kappa * kappa - shifted * shifted;
  };
  chain.g0 = 0;
  chain.g1 = -1;
  return chain;
}

std::vector<double> uniform_grid(double lo, double hi, int count) {
  if (count < 2) throw DomainError("uniform_grid: need at least two points");
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  g.back() = hi;
  return g;
}

}  // namespace ecc
