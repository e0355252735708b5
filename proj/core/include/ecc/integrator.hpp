#pragma once

// Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems.
//
// Integration towards smaller abscissae is carried out as forward integration
// in the reversed variable tau = -x. Every accepted step produces a sample
// (x, y, y'), and steps are shortened so that each requested checkpoint is hit
// exactly. A caller-supplied guard can veto accepted steps (used to cap the
// Pruefer-angle increment per step).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ecc/errors.hpp"

namespace ecc {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.5;
  long max_steps = 2'000'000;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(max_step > 0.0) || max_steps <= 0) {
      throw DomainError("IntegratorConfig: tolerances, max_step and max_steps must be positive");
    }
  }
};

template <std::size_t N>
using State = std::array<double, N>;

/// How local errors are weighed. `Mixed` uses abs_tol + rel_tol * |y|;
/// `Absolute` uses abs_tol + rel_tol for every component, which keeps the
/// step sequence invariant under constant shifts of the state (angles).
enum class ErrorScale { Mixed, Absolute };

template <std::size_t N>
struct Sample {
  double x;
  State<N> y;
  State<N> dy;  // derivative with respect to x
};

struct AcceptAll {
  template <class S>
  bool operator()(const S&, const S&) const noexcept {
    return true;
  }
};

namespace detail {

template <std::size_t N>
double scaled_rms(const State<N>& v, const State<N>& y0, const State<N>& y1,
                  const IntegratorConfig& cfg, ErrorScale mode) {
  double acc = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double sc =
        mode == ErrorScale::Absolute
            ? cfg.abs_tol + cfg.rel_tol
            : cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = v[i] / sc;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(N));
}

template <std::size_t N>
bool all_finite(const State<N>& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

// Forward integration of dy/dtau = g(tau, y) on [a, b], a <= b. `stops` must be
// ascending and inside (a, b].
template <std::size_t N, class Rhs, class Guard>
std::vector<Sample<N>> dopri_forward(Rhs& g, double a, const State<N>& ya, double b,
                                     const IntegratorConfig& cfg, std::span<const double> stops,
                                     Guard& guard, ErrorScale mode) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  using S = State<N>;
  auto axpy = [](const S& y, double h, std::initializer_list<std::pair<double, const S*>> terms) {
    S out = y;
    for (std::size_t i = 0; i < N; ++i) {
      double acc = 0.0;
      for (const auto& [coef, k] : terms) acc += coef * (*k)[i];
      out[i] += h * acc;
    }
    return out;
  };

  std::vector<Sample<N>> out;
  S y = ya;
  double tau = a;
  S k1 = g(tau, y);
  out.push_back({tau, y, k1});
  if (a == b) return out;

  // Initial step estimate (Hairer, Norsett & Wanner, II.4).
  double h;
  {
    const S zero{};
    S unit;
    unit.fill(1.0);
    const double d0 = scaled_rms(mode == ErrorScale::Absolute ? unit : y, y, zero, cfg, mode);
    const double d1 = scaled_rms(k1, y, zero, cfg, mode);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, b - a);
    const S y1 = axpy(y, h0, {{1.0, &k1}});
    const S f1 = g(tau + h0, y1);
    S df;
    for (std::size_t i = 0; i < N; ++i) df[i] = f1[i] - k1[i];
    const double d2 = scaled_rms(df, y, zero, cfg, mode) / h0;
    const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                                : std::pow(0.01 / std::max(d1, d2), 0.2);
    h = std::min({100.0 * h0, h1, cfg.max_step});
    if (!(h > 0.0) || !std::isfinite(h)) h = 1e-6;
  }

  std::size_t next_stop = 0;
  long steps = 0;
  while (tau < b) {
    if (++steps > cfg.max_steps) {
      throw IntegrationError(IntegrationFailure::MaxStepsExceeded, tau,
                             "integrator: step budget exhausted");
    }
    while (next_stop < stops.size() && stops[next_stop] <= tau) ++next_stop;
    const double target = next_stop < stops.size() ? std::min(stops[next_stop], b) : b;
    h = std::min(h, cfg.max_step);
    const bool hits_target = tau + h >= target;
    const double step = hits_target ? target - tau : h;
    const double h_min = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(tau));
    if (step < h_min && !(hits_target && step > 0.0)) {
      throw IntegrationError(IntegrationFailure::StepSizeUnderflow, tau,
                             "integrator: step size underflow");
    }

    const S k2 = g(tau + c2 * step, axpy(y, step, {{a21, &k1}}));
    const S k3 = g(tau + c3 * step, axpy(y, step, {{a31, &k1}, {a32, &k2}}));
    const S k4 = g(tau + c4 * step, axpy(y, step, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const S k5 = g(tau + c5 * step, axpy(y, step, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const S k6 = g(tau + step,
                   axpy(y, step, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const S y5 = axpy(y, step, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const double tau_new = hits_target ? target : tau + step;
    const S k7 = g(tau_new, y5);

    S err;
    for (std::size_t i = 0; i < N; ++i) {
      err[i] = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    }
    const bool finite = all_finite(y5) && all_finite(k7);
    const double en = finite ? scaled_rms(err, y, y5, cfg, mode) : std::numeric_limits<double>::infinity();

    if (finite && en <= 1.0 && guard(y, y5)) {
      tau = tau_new;
      y = y5;
      k1 = k7;
      out.push_back({tau, y, k1});
      const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      h = hits_target ? std::max(h * std::min(fac, 1.0), step * fac) : step * fac;
    } else if (!finite || en > 1.0) {
      h = step * (std::isfinite(en) ? std::max(0.2, 0.9 * std::pow(en, -0.2)) : 0.2);
    } else {
      h = 0.5 * step;  // guard veto
    }
  }
  return out;
}

}  // namespace detail

/// Integrates y' = f(x, y) from x0 to x1 (either direction). Every checkpoint
/// lying strictly between x0 and x1 (or equal to x1) appears as a sample.
template <std::size_t N, class Rhs, class Guard = AcceptAll>
std::vector<Sample<N>> integrate(Rhs&& f, double x0, const State<N>& y0, double x1,
                                 const IntegratorConfig& cfg,
                                 std::span<const double> checkpoints = {}, Guard guard = {},
                                 ErrorScale mode = ErrorScale::Mixed) {
  cfg.validate();
  if (!std::isfinite(x0) || !std::isfinite(x1)) {
    throw DomainError("integrate: non-finite interval end");
  }
  const double dir = x1 >= x0 ? 1.0 : -1.0;
  std::vector<double> stops;
  for (double c : checkpoints) {
    const double tau = dir * c;
    if (tau > dir * x0 && tau <= dir * x1) stops.push_back(tau);
  }
  std::sort(stops.begin(), stops.end());

  auto g = [&](double tau, const State<N>& y) {
    State<N> d = f(dir * tau, y);
    if (dir < 0) {
      for (auto& v : d) v = -v;
    }
    return d;
  };
  auto samples = detail::dopri_forward<N>(g, dir * x0, y0, dir * x1, cfg, stops, guard, mode);
  if (dir < 0) {
    for (auto& s : samples) {
      s.x = -s.x;
      for (auto& v : s.dy) v = -v;
    }
  }
  samples.back().x = x1;
  return samples;
}

}  // namespace ecc
