#pragma once

// One-dimensional Dirac systems
//
//   (-i sigma_2 d/dx + m(x) sigma_3 + l(x) sigma_1 + q(x)) u = 0,
//
// equivalently u1' = -l u1 + (m - q) u2,  u2' = (m + q) u1 + l u2, and their
// Pruefer transformation u = |u| (cos theta, sin theta), which satisfies
//
//   theta' = m cos 2theta + l sin 2theta + q,
//   |u|'/|u| = m sin 2theta - l cos 2theta.

#include <array>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "ecc/integrator.hpp"

namespace ecc {

using CoefficientFn = std::function<double(double)>;

struct DiracCoefficients {
  CoefficientFn m;
  CoefficientFn l;
  CoefficientFn q;
  // Truncated domain; callers pick finite bounds for unbounded problems.
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static DiracCoefficients constant(double m, double l, double q);

  [[nodiscard]] bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

enum class Direction { Forward, Backward };

struct AngleSample {
  double x;
  double theta;
  double dtheta;  // theta'(x), kept for Hermite interpolation
};

/// A single continuous branch of a Pruefer angle.
struct AngleTrajectory {
  std::vector<AngleSample> samples;
  Direction direction = Direction::Forward;
  double tolerance_used = 0.0;
  double anchor_x = 0.0;
  double anchor_theta = 0.0;

  [[nodiscard]] double front_x() const { return samples.front().x; }
  [[nodiscard]] double back_x() const { return samples.back().x; }
  [[nodiscard]] double terminal() const { return samples.back().theta; }

  /// Cubic Hermite interpolation between samples. Throws DomainError outside
  /// the covered interval.
  [[nodiscard]] double at(double x) const;

  /// Largest |theta_{i+1} - theta_i| over consecutive samples.
  [[nodiscard]] double max_jump() const;
};

struct VectorSample {
  double x;
  double u1;
  double u2;
};

struct VectorTrajectory {
  std::vector<VectorSample> samples;

  /// Pruefer angle atan2(u2, u1) at every sample, unwound by nearest-branch
  /// selection starting from the branch closest to `reference`.
  [[nodiscard]] std::vector<double> unwound_angles(double reference = 0.0) const;
};

struct AmplitudeSample {
  double x;
  double amplitude;
};

/// m(x) cos 2theta + l(x) sin 2theta + q(x). Throws DomainError if x lies
/// outside the domain or a coefficient evaluates to a non-finite value.
[[nodiscard]] double prufer_rhs(const DiracCoefficients& coeffs, double x, double theta);

/// Integrates the Pruefer equation from (x0, theta0) to x1 (x1 < x0 allowed).
/// Steps are capped so that no step moves the angle by pi/2 or more, and
/// local errors are controlled against abs_tol + rel_tol (in radians).
[[nodiscard]] AngleTrajectory integrate_prufer(const DiracCoefficients& coeffs, double x0,
                                               double theta0, double x1,
                                               const IntegratorConfig& cfg,
                                               std::span<const double> checkpoints = {});

[[nodiscard]] VectorTrajectory integrate_dirac(const DiracCoefficients& coeffs, double x0,
                                               std::array<double, 2> u0, double x1,
                                               const IntegratorConfig& cfg,
                                               std::span<const double> checkpoints = {});

/// |u(x)| = amp0 * exp(int_{x0}^{x} (m sin 2theta - l cos 2theta)) at every
/// sample of the trajectory; x0 is the first sample.
[[nodiscard]] std::vector<AmplitudeSample> recover_amplitude(const AngleTrajectory& traj,
                                                             const DiracCoefficients& coeffs,
                                                             double amp0);

/// Number of points where theta - offset passes through an integer multiple of
/// pi. A starting value on the lattice is not counted; a sample landing
/// exactly on it is counted once. Throws RefinementError when two consecutive
/// samples are pi or more apart.
[[nodiscard]] int count_crossings(const AngleTrajectory& traj, double offset);

}  // namespace ecc
