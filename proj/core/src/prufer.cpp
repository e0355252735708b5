#include "ecc/prufer.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ecc {

namespace {

constexpr double kPi = std::numbers::pi;

void require_inside(const DiracCoefficients& c, double x, const char* who) {
  if (!c.contains(x)) {
    throw DomainError(std::string(who) + ": x = " + std::to_string(x) + " outside the domain");
  }
}

// No checks; non-finite values are handled by the integrator's step control.
double rhs_unchecked(const DiracCoefficients& c, double x, double theta) {
  const double two = 2.0 * theta;
  return c.m(x) * std::cos(two) + c.l(x) * std::sin(two) + c.q(x);
}

double hermite(const AngleSample& a, const AngleSample& b, double x) {
  const double h = b.x - a.x;
  const double s = (x - a.x) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * a.theta + (s3 - 2 * s2 + s) * h * a.dtheta +
         (-2 * s3 + 3 * s2) * b.theta + (s3 - s2) * h * b.dtheta;
}

}  // namespace

DiracCoefficients DiracCoefficients::constant(double m, double l, double q) {
  return {[m](double) { return m; }, [l](double) { return l; }, [q](double) { return q; }};
}

double AngleTrajectory::at(double x) const {
  if (samples.empty()) throw DomainError("AngleTrajectory::at: empty trajectory");
  const bool fwd = samples.back().x >= samples.front().x;
  const double lo = fwd ? samples.front().x : samples.back().x;
  const double hi = fwd ? samples.back().x : samples.front().x;
  if (x < lo || x > hi) throw DomainError("AngleTrajectory::at: x outside the trajectory");
  if (samples.size() == 1) return samples.front().theta;

  // Samples are monotone in x; binary search for the bracketing interval.
  std::size_t lo_i = 0;
  std::size_t hi_i = samples.size() - 1;
  while (hi_i - lo_i > 1) {
    const std::size_t mid = (lo_i + hi_i) / 2;
    if ((samples[mid].x <= x) == fwd) {
      lo_i = mid;
    } else {
      hi_i = mid;
    }
  }
  const auto& a = samples[lo_i];
  const auto& b = samples[hi_i];
  if (x == a.x) return a.theta;
  if (x == b.x) return b.theta;
  return hermite(a, b, x);
}

double AngleTrajectory::max_jump() const {
  double jump = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    jump = std::max(jump, std::abs(samples[i].theta - samples[i - 1].theta));
  }
  return jump;
}

std::vector<double> VectorTrajectory::unwound_angles(double reference) const {
  std::vector<double> out;
  out.reserve(samples.size());
  double prev = reference;
  for (const auto& s : samples) {
    const double raw = std::atan2(s.u2, s.u1);
    const double turns = std::round((prev - raw) / (2 * kPi));
    const double theta = raw + 2 * kPi * turns;
    out.push_back(theta);
    prev = theta;
  }
  return out;
}

double prufer_rhs(const DiracCoefficients& coeffs, double x, double theta) {
  require_inside(coeffs, x, "prufer_rhs");
  const double m = coeffs.m(x);
  const double l = coeffs.l(x);
  const double q = coeffs.q(x);
  if (!std::isfinite(m) || !std::isfinite(l) || !std::isfinite(q)) {
    throw DomainError("prufer_rhs: coefficient evaluation failed at x = " + std::to_string(x));
  }
  const double two = 2.0 * theta;
  return m * std::cos(two) + l * std::sin(two) + q;
}

AngleTrajectory integrate_prufer(const DiracCoefficients& coeffs, double x0, double theta0,
                                 double x1, const IntegratorConfig& cfg,
                                 std::span<const double> checkpoints) {
  require_inside(coeffs, x0, "integrate_prufer");
  require_inside(coeffs, x1, "integrate_prufer");
  auto f = [&](double x, const State<1>& y) { return State<1>{rhs_unchecked(coeffs, x, y[0])}; };
  auto cap = [](const State<1>& a, const State<1>& b) { return std::abs(b[0] - a[0]) < kPi / 2; };
  const auto raw =
      integrate<1>(f, x0, State<1>{theta0}, x1, cfg, checkpoints, cap, ErrorScale::Absolute);

  AngleTrajectory traj;
  traj.direction = x1 >= x0 ? Direction::Forward : Direction::Backward;
  traj.tolerance_used = cfg.abs_tol + cfg.rel_tol;
  traj.anchor_x = x0;
  traj.anchor_theta = theta0;
  traj.samples.reserve(raw.size());
  for (const auto& s : raw) traj.samples.push_back({s.x, s.y[0], s.dy[0]});
  return traj;
}

VectorTrajectory integrate_dirac(const DiracCoefficients& coeffs, double x0,
                                 std::array<double, 2> u0, double x1,
                                 const IntegratorConfig& cfg,
                                 std::span<const double> checkpoints) {
  if (u0[0] == 0.0 && u0[1] == 0.0) {
    throw DomainError("integrate_dirac: initial vector must be nonzero");
  }
  require_inside(coeffs, x0, "integrate_dirac");
  require_inside(coeffs, x1, "integrate_dirac");
  auto f = [&](double x, const State<2>& u) {
    const double m = coeffs.m(x);
    const double l = coeffs.l(x);
    const double q = coeffs.q(x);
    return State<2>{-l * u[0] + (m - q) * u[1], (m + q) * u[0] + l * u[1]};
  };
  const auto raw = integrate<2>(f, x0, State<2>{u0[0], u0[1]}, x1, cfg, checkpoints);
  VectorTrajectory traj;
  traj.samples.reserve(raw.size());
  for (const auto& s : raw) traj.samples.push_back({s.x, s.y[0], s.y[1]});
  return traj;
}

std::vector<AmplitudeSample> recover_amplitude(const AngleTrajectory& traj,
                                               const DiracCoefficients& coeffs, double amp0) {
  if (!(amp0 > 0.0) || !std::isfinite(amp0)) {
    throw DomainError("recover_amplitude: initial amplitude must be positive");
  }
  if (traj.samples.empty()) throw DomainError("recover_amplitude: empty trajectory");

  // 5-point Gauss-Legendre on each inter-sample interval, with theta taken
  // from the cubic Hermite interpolant.
  static constexpr std::array<double, 5> nodes = {
      -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
  static constexpr std::array<double, 5> weights = {
      0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
      0.2369268850561891};
  auto integrand = [&](double x, double theta) {
    const double two = 2.0 * theta;
    return coeffs.m(x) * std::sin(two) - coeffs.l(x) * std::cos(two);
  };

  std::vector<AmplitudeSample> out;
  out.reserve(traj.samples.size());
  double log_amp = std::log(amp0);
  out.push_back({traj.samples.front().x, amp0});
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    const auto& a = traj.samples[i - 1];
    const auto& b = traj.samples[i];
    const double half = 0.5 * (b.x - a.x);
    const double mid = 0.5 * (a.x + b.x);
    double acc = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const double x = mid + half * nodes[k];
      acc += weights[k] * integrand(x, hermite(a, b, x));
    }
    log_amp += half * acc;
    out.push_back({b.x, std::exp(log_amp)});
  }
  return out;
}

int count_crossings(const AngleTrajectory& traj, double offset) {
  int count = 0;
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    const double y0 = traj.samples[i - 1].theta - offset;
    const double y1 = traj.samples[i].theta - offset;
    if (!(std::abs(y1 - y0) < kPi)) {
      throw RefinementError("count_crossings: consecutive samples differ by pi or more");
    }
    if (y1 > y0) {
      count += static_cast<int>(std::floor(y1 / kPi) - std::floor(y0 / kPi));
    } else if (y1 < y0) {
      count += static_cast<int>(std::ceil(y0 / kPi) - std::ceil(y1 / kPi));
    }
  }
  return count;
}

}  // namespace ecc
