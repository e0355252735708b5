#include "ecc/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "ecc/errors.hpp"
#include "ecc/factorization.hpp"
#include "ecc/ladder.hpp"
#include "ecc/prufer.hpp"

namespace ecc {

namespace {

constexpr double kPi = std::numbers::pi;

CheckResult check(std::string suite, std::string name, double measured, double tolerance) {
  return {std::move(suite), std::move(name), measured <= tolerance, measured, tolerance};
}

// Smooth bounded test systems for the angle/amplitude roundtrip.
std::vector<std::pair<std::string, DiracCoefficients>> roundtrip_systems() {
  DiracCoefficients a;
  a.m = [](double x) { return 0.3 * std::sin(x); };
  a.l = [](double x) { return 0.5 * std::cos(0.7 * x); };
  a.q = [](double x) { return 1.0 + 0.2 * x / (1.0 + x * x); };
  DiracCoefficients b;
  b.m = [](double x) { return 0.8 / (1.0 + x * x); };
  b.l = [](double x) { return std::tanh(x - 3.0); };
  b.q = [](double) { return 0.4; };
  return {{"oscillating", a}, {"kink", b}};
}

void prufer_suite(std::vector<CheckResult>& out) {
  const std::string suite = "prufer";
  IntegratorConfig cfg;
  const auto grid = uniform_grid(0.0, 10.0, 41);
  for (const auto& [label, coeffs] : roundtrip_systems()) {
    const double u1 = 1.0;
    const double u2 = 0.5;
    const auto vec = integrate_dirac(coeffs, 0.0, {u1, u2}, 10.0, cfg, grid);
    const auto ang = integrate_prufer(coeffs, 0.0, std::atan2(u2, u1), 10.0, cfg, grid);
    const auto amp = recover_amplitude(ang, coeffs, std::hypot(u1, u2));
    const auto unwound = vec.unwound_angles(std::atan2(u2, u1));

    double amp_err = 0.0;
    double ang_err = 0.0;
    std::size_t ia = 0;
    for (std::size_t iv = 0; iv < vec.samples.size(); ++iv) {
      const auto& s = vec.samples[iv];
      if (!std::binary_search(grid.begin(), grid.end(), s.x)) continue;
      while (ia < amp.size() && amp[ia].x < s.x) ++ia;
      if (ia == amp.size() || amp[ia].x != s.x) throw ConsistencyError("prufer suite: grid mismatch");
      const double r = std::hypot(s.u1, s.u2);
      amp_err = std::max(amp_err, std::abs(amp[ia].amplitude - r) / r);
      ang_err = std::max(ang_err, std::abs(ang.at(s.x) - unwound[iv]));
    }
    out.push_back(check(suite, "amplitude_roundtrip/" + label, amp_err, 1e-6));
    out.push_back(check(suite, "angle_roundtrip/" + label, ang_err, 1e-6));

    const auto shifted = integrate_prufer(coeffs, 0.0, std::atan2(u2, u1) + kPi, 10.0, cfg);
    out.push_back(check(suite, "shift_equivariance/" + label,
                        std::abs(shifted.terminal() - ang.terminal() - kPi), 1e-8));
  }

  // Constant coefficients m = l = 0, q = 1: theta = theta0 + x.
  const auto flat = integrate_prufer(DiracCoefficients::constant(0.0, 0.0, 1.0), 0.0, 0.3, 10.0, cfg);
  out.push_back(check(suite, "constant_q/terminal", std::abs(flat.terminal() - 10.3), 1e-8));
  out.push_back(check(suite, "constant_q/crossings", std::abs(count_crossings(flat, 0.0) - 3), 0.0));
}

void factorization_suite(std::vector<CheckResult>& out, int jmax) {
  const std::string suite = "factorization";
  for (const char* text : {"0", "1/2", "1", "2", "7/3"}) {
    const Rational kappa = parse_rational(text);
    double nonzero = 0.0;
    for (int j = 1; j <= jmax; ++j) {
      nonzero += static_cast<double>(residual_eq5(level(kappa, j)).coeffs().size());
    }
    out.push_back(check(suite, std::string("residual_eq5_zero/kappa=") + text, nonzero, 0.0));
  }
  for (const char* text : {"0", "1/2", "1", "2.3"}) {
    const Rational kappa = parse_rational(text);
    double worst = 0.0;
    for (int j = 1; j <= jmax; ++j) {
      int zeros = -1;
      try {
        zeros = count_zeros(level(kappa, j));
      } catch (const ConsistencyError&) {
        zeros = -1000;  // multiple root
      }
      worst = std::max(worst, std::abs(static_cast<double>(zeros - (j - 1))));
    }
    out.push_back(check(suite, std::string("zero_count/kappa=") + text, worst, 0.0));

    double failures = 0.0;
    for (int j = 1; j <= jmax; ++j) {
      try {
        const auto limits = ratio_limits(j, kappa);
        if (limits.second != 0) failures += 1.0;
      } catch (const ConsistencyError&) {
        failures += 1.0;
      }
    }
    out.push_back(check(suite, std::string("ratio_limits/kappa=") + text, failures, 0.0));
  }

  const auto ts = uniform_grid(-5.0, 5.0, 201);
  for (const auto& [k, j] : std::vector<std::pair<double, int>>{{2, 1}, {3, 1}, {3, 2}, {4.7, 3}}) {
    if (j > jmax) continue;
    const DiracSolution sol(k, j);
    double worst = 0.0;
    for (double t : ts) worst = std::max(worst, sol.relative_residual(t));
    char label[64];
    std::snprintf(label, sizeof label, "dirac_residual/k=%g,j=%d", k, j);
    out.push_back(check(suite, label, worst, 1e-8));
  }

  for (const char* text : {"1/2", "1", "2"}) {
    const Rational kappa = parse_rational(text);
    double worst = 0.0;
    for (int j = 1; j <= std::min(jmax, 5); ++j) {
      const AngleFunction phi(j, kappa);
      worst = std::max({worst, std::abs(phi(40.0) - phi.limit_plus_inf()), std::abs(phi(-40.0) - kPi)});
    }
    out.push_back(check(suite, std::string("angle_limits/kappa=") + text, worst, 1e-4));
  }
}

void ladder_suite(std::vector<CheckResult>& out, int nmax) {
  const std::string suite = "ladder";
  out.push_back(check(suite, "chain_exact/harmonic",
                      validate_chain_exact(harmonic_chain(), nmax + 1).passed ? 0.0 : 1.0, 0.0));
  for (const char* text : {"1/2", "1", "2"}) {
    out.push_back(check(suite, std::string("chain_exact/morse/kappa=") + text,
                        validate_chain_exact(morse_chain(parse_rational(text)), nmax + 1).passed ? 0.0 : 1.0,
                        0.0));
  }

  const auto grid = uniform_grid(-7.5, 7.5, 121);
  for (int n = 1; n <= nmax; ++n) {
    const auto level_n = harmonic_example(n);
    const auto r1 = sl_residual(level_n.state, SlForm::FirstComponent, grid);
    const auto r2 = sl_residual(level_n.state, SlForm::SecondComponent, grid);
    out.push_back(check(suite, "harmonic_first_component/n=" + std::to_string(n), r1.relative, 1e-8));
    out.push_back(check(suite, "harmonic_second_component/n=" + std::to_string(n), r2.relative, 1e-8));
    if (n >= 2) {
      const auto prev = harmonic_example(n - 1);
      out.push_back(check(suite, "harmonic_dirac/n=" + std::to_string(n),
                          dirac_residual9(prev.state, level_n.state, 1.0, grid), 1e-8));
    }
  }

  const auto xs = uniform_grid(-3.0, 12.0, 151);
  for (const char* text : {"1/2", "1", "2"}) {
    const Rational kappa = parse_rational(text);
    double worst = 0.0;
    for (int n = 1; n <= nmax; ++n) {
      const auto state = morse_example(to_double(kappa), n);
      const auto reference = level(kappa, n);
      // Ladder v_1 is anchored at x0 = 0: v_1 = exp(kappa x0 + e^{-x0}) times the other one.
      const double constant = std::exp(1.0);
      double err = 0.0;
      double scale = 0.0;
      for (double x : xs) {
        const auto ref = evaluate_v(reference, x);
        const double r = ref.sign * std::exp(ref.log_abs) * constant;
        err = std::max(err, std::abs(state.value(x) - r));
        scale = std::max(scale, std::abs(r));
      }
      worst = std::max(worst, err / scale);
    }
    out.push_back(check(suite, std::string("morse_matches_factorization/kappa=") + text, worst, 1e-10));
  }
}

}  // namespace

bool is_suite(const std::string& name) {
  return name == "prufer" || name == "factorization" || name == "ladder" || name == "all";
}

std::vector<CheckResult> run_suite(const std::string& name, std::optional<int> level) {
  if (!is_suite(name)) throw DomainError("run_suite: unknown suite '" + name + "'");
  if (level && *level < 1) throw DomainError("run_suite: level must be at least 1");
  std::vector<CheckResult> out;
  if (name == "prufer" || name == "all") prufer_suite(out);
  if (name == "factorization" || name == "all") factorization_suite(out, level.value_or(12));
  if (name == "ladder" || name == "all") ladder_suite(out, level.value_or(8));
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace ecc
