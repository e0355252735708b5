#pragma once

// The rescaled model equation for the Pruefer angle in t = log(rho):
//
//   phi'(t) = c + (k - e^{-t}) sin 2phi,
//
// i.e. the Dirac system with m = 0, l(t) = k - e^{-t}, q = c. For k > 0 and
// c in (-k, 0) it has a unique solution theta0 with phi -> pi as t -> -inf
// and a unique solution theta_inf with phi -> theta_-(c, k) as t -> +inf.
// Exceptional couplings are the c where both coincide modulo pi.

#include <optional>
#include <span>
#include <vector>

#include "ecc/exceptional.hpp"
#include "ecc/integrator.hpp"
#include "ecc/prufer.hpp"

namespace ecc {

struct ModelParams {
  double k;
  double c;
};

struct AsymptoticAngles {
  double theta_minus;  // in (0, pi/4]
  double theta_plus;   // in [pi/4, pi/2)
};

struct ShootingConfig {
  double t_min = -40.0;
  double t_max = 40.0;
  /// Matching abscissa; defaults to -log k, where k - e^{-t} changes sign.
  std::optional<double> t_mid;
  /// theta0 is integrated numerically from max(t_min, t_stiff). Below that
  /// point the e^{-t} term makes the equation stiff and theta0 is given by its
  /// quasi-static expansion around pi, which is exact to rounding there.
  double t_stiff = -8.0;
  IntegratorConfig integrator{1e-11, 1e-13, 0.5, 4'000'000};
  double bisect_tol = 1e-9;
  double c_margin = 1e-4;
  /// Allowed decrease of the mismatch between neighbouring grid points.
  double monotone_slack = 1e-8;
  /// A margin-end mismatch closer than this (radians) above a lattice value
  /// -m pi is reported as a boundary-uncertain root.
  double boundary_band = 0.05;
  /// 0 selects max(50, 20 * ceil(k)).
  int grid_points = 0;
  int threads = 1;

  [[nodiscard]] double matching_point(double k) const;
  void validate() const;
};

/// The Dirac coefficients (m, l, q) = (0, k - e^{-t}, c) on [t_lo, t_hi].
[[nodiscard]] DiracCoefficients model_coefficients(double k, double c, double t_lo = -700.0,
                                                   double t_hi = 700.0);

/// theta_- = asin(-c/k)/2, theta_+ = pi/2 - theta_-. Accepts c = -k.
[[nodiscard]] AsymptoticAngles asymptotic_angles(ModelParams p);

/// Quasi-static expansion of theta0 near t = -inf (three terms in e^t).
[[nodiscard]] double theta0_expansion(ModelParams p, double t);

/// theta0 sampled at the given abscissae (any order, inside [t_min, t_max]).
[[nodiscard]] std::vector<double> theta0_at(ModelParams p, std::span<const double> ts,
                                            const ShootingConfig& cfg);
/// theta_inf sampled at the given abscissae. Below t_stiff the backward branch
/// is continued by its quasi-static approximation near pi/2 mod pi.
[[nodiscard]] std::vector<double> theta_inf_at(ModelParams p, std::span<const double> ts,
                                               const ShootingConfig& cfg);

[[nodiscard]] double theta0(ModelParams p, double t, const ShootingConfig& cfg);
[[nodiscard]] double theta_inf(ModelParams p, double t, const ShootingConfig& cfg);

/// True when sqrt(k^2 - c^2) < 10 c_margin: theta_+ and theta_- nearly merge
/// and the attraction towards them is slow.
[[nodiscard]] bool slow_attraction(ModelParams p, const ShootingConfig& cfg);

/// theta0(t_mid) - theta_inf(t_mid); nondecreasing in c, and equal to -m pi
/// exactly at the exceptional value c_m.
[[nodiscard]] double mismatch(ModelParams p, const ShootingConfig& cfg);

/// Brackets every crossing of the mismatch with the lattice -m pi on a grid
/// over (-k + margin, -margin) and bisects it to bisect_tol. Throws
/// ConsistencyError if the mismatch decreases by more than monotone_slack.
[[nodiscard]] ExceptionalValues find_exceptional_numeric(double k, const ShootingConfig& cfg);

/// The solution that is unstable at both ends for c = c_m: theta0 up to t_mid
/// and theta_inf - m pi beyond it. Each integration runs only in its
/// contracting direction.
[[nodiscard]] std::vector<double> matched_angle_at(ModelParams p, int m,
                                                   std::span<const double> ts,
                                                   const ShootingConfig& cfg);

struct IntervalIndex {
  int n = 0;             // c in (c_n, c_{n-1}), with c_{-1} := 0
  bool boundary = false;  // |c - c_j| <= tol for j = boundary_m
  int boundary_m = -1;
};

[[nodiscard]] IntervalIndex interval_index(double k, double c, double tol = 1e-9);

}  // namespace ecc
