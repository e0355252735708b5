#include "ecc/coulomb_model.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

#include "ecc/closed_form.hpp"
#include "ecc/errors.hpp"

namespace ecc {

namespace {

constexpr double kPi = std::numbers::pi;

void require_model(ModelParams p, const ShootingConfig& cfg, const char* who) {
  if (!(p.k > 0.0) || !std::isfinite(p.k)) {
    throw DomainError(std::string(who) + ": k must be positive");
  }
  if (!(p.c >= -p.k + cfg.c_margin && p.c <= -cfg.c_margin)) {
    throw DomainError(std::string(who) + ": c must lie in [-k + margin, -margin]");
  }
}

void require_inside(double t, const ShootingConfig& cfg, const char* who) {
  if (!(t >= cfg.t_min && t <= cfg.t_max)) {
    throw DomainError(std::string(who) + ": t outside [t_min, t_max]");
  }
}

// Left end of the numerically integrated part of theta0. The expansion in
// e^t is accurate while k e^t is small, hence the k-dependent cap.
double theta0_start(double k, const ShootingConfig& cfg) {
  return std::max(cfg.t_min, std::min(cfg.t_stiff, -std::log(k) - 6.0));
}

// Quasi-static continuation of a branch near pi/2 + n pi, valid for t -> -inf.
double near_half_pi(ModelParams p, double t, double branch_value) {
  const double n = std::round((branch_value - kPi / 2) / kPi);
  const double s = std::exp(t);
  return kPi / 2 + n * kPi - p.c * s / (2.0 * (1.0 - p.k * s));
}

// Evaluates fn(t) on a pool of cfg.threads workers; results keep input order.
template <class Fn>
std::vector<double> parallel_map(const std::vector<double>& xs, int threads, Fn fn) {
  std::vector<double> out(xs.size());
  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, xs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = fn(xs[i]);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < xs.size(); i += workers) out[i] = fn(xs[i]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace

double ShootingConfig::matching_point(double k) const {
  return t_mid.value_or(-std::log(k));
}

void ShootingConfig::validate() const {
  integrator.validate();
  if (!(t_min < t_max)) throw DomainError("ShootingConfig: need t_min < t_max");
  if (t_mid && !(*t_mid > t_min && *t_mid < t_max)) {
    throw DomainError("ShootingConfig: t_mid must lie in (t_min, t_max)");
  }
  if (!(bisect_tol > 0.0) || !(c_margin > 0.0) || !(monotone_slack >= 0.0) ||
      !(boundary_band >= 0.0)) {
    throw DomainError("ShootingConfig: tolerances must be positive");
  }
  if (grid_points != 0 && grid_points < 3) throw DomainError("ShootingConfig: grid too small");
}

DiracCoefficients model_coefficients(double k, double c, double t_lo, double t_hi) {
  DiracCoefficients coeffs{[](double) { return 0.0; },
                           [k](double t) { return k - std::exp(-t); },
                           [c](double) { return c; }};
  coeffs.lo = t_lo;
  coeffs.hi = t_hi;
  return coeffs;
}

AsymptoticAngles asymptotic_angles(ModelParams p) {
  if (!(p.k > 0.0) || !std::isfinite(p.k)) throw DomainError("asymptotic_angles: k must be positive");
  if (!(p.c < 0.0 && p.c >= -p.k)) throw DomainError("asymptotic_angles: c must lie in [-k, 0)");
  // tan theta_- = (k - sqrt(k^2 - c^2)) / (-c) = -c / (k + sqrt(k^2 - c^2)), free of
  // cancellation; asin(-c/k) loses half the digits as c -> -k.
  const double root = std::sqrt(std::max(0.0, (p.k - p.c) * (p.k + p.c)));
  const double minus = std::atan(-p.c / (p.k + root));
  const AsymptoticAngles a{minus, kPi / 2 - minus};

  const double via_sine = 0.5 * std::asin(std::min(1.0, -p.c / p.k));
  const double slack = root > 1e-3 * p.k ? 1e-10 : 1e-7;
  if (std::abs(via_sine - minus) > slack) {
    throw ConsistencyError("asymptotic_angles: sine and tangent forms disagree");
  }
  return a;
}

double theta0_expansion(ModelParams p, double t) {
  const double s = std::exp(t);
  const double a1 = p.c / 2.0;
  const double a2 = (2.0 * p.k - 1.0) * a1 / 2.0;
  const double a3 = ((2.0 * p.k - 2.0) * a2 + 4.0 / 3.0 * a1 * a1 * a1) / 2.0;
  return kPi + s * (a1 + s * (a2 + s * a3));
}

std::vector<double> theta0_at(ModelParams p, std::span<const double> ts, const ShootingConfig& cfg) {
  cfg.validate();
  require_model(p, cfg, "theta0");
  for (double t : ts) require_inside(t, cfg, "theta0");

  const double start = theta0_start(p.k, cfg);
  std::vector<double> stops;
  for (double t : ts) {
    if (t > start) stops.push_back(t);
  }
  std::vector<double> out(ts.size());
  std::optional<AngleTrajectory> traj;
  if (!stops.empty()) {
    const double end = *std::max_element(stops.begin(), stops.end());
    traj = integrate_prufer(model_coefficients(p.k, p.c), start, theta0_expansion(p, start), end,
                            cfg.integrator, stops);
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out[i] = ts[i] > start ? traj->at(ts[i]) : theta0_expansion(p, ts[i]);
  }
  return out;
}

std::vector<double> theta_inf_at(ModelParams p, std::span<const double> ts,
                                 const ShootingConfig& cfg) {
  cfg.validate();
  require_model(p, cfg, "theta_inf");
  for (double t : ts) require_inside(t, cfg, "theta_inf");

  const double floor_t = theta0_start(p.k, cfg);
  double end = cfg.t_max;
  for (double t : ts) end = std::min(end, std::max(t, floor_t));
  const double init = asymptotic_angles(p).theta_minus;
  std::vector<double> stops(ts.begin(), ts.end());
  stops.push_back(floor_t);
  const auto traj =
      integrate_prufer(model_coefficients(p.k, p.c), cfg.t_max, init, end, cfg.integrator, stops);

  std::vector<double> out(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] >= floor_t) {
      out[i] = traj.at(ts[i]);
    } else {
      out[i] = near_half_pi(p, ts[i], traj.at(floor_t));
    }
  }
  return out;
}

double theta0(ModelParams p, double t, const ShootingConfig& cfg) {
  const double ts[] = {t};
  return theta0_at(p, ts, cfg).front();
}

double theta_inf(ModelParams p, double t, const ShootingConfig& cfg) {
  const double ts[] = {t};
  return theta_inf_at(p, ts, cfg).front();
}

bool slow_attraction(ModelParams p, const ShootingConfig& cfg) {
  return std::sqrt(std::max(0.0, (p.k - p.c) * (p.k + p.c))) < 10.0 * cfg.c_margin;
}

double mismatch(ModelParams p, const ShootingConfig& cfg) {
  const double t = cfg.matching_point(p.k);
  return theta0(p, t, cfg) - theta_inf(p, t, cfg);
}

ExceptionalValues find_exceptional_numeric(double k, const ShootingConfig& cfg) {
  cfg.validate();
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("find_exceptional_numeric: k must be positive");
  const double t_mid = cfg.matching_point(k);
  if (!(t_mid > cfg.t_min && t_mid < cfg.t_max)) {
    throw DomainError("find_exceptional_numeric: matching point outside (t_min, t_max)");
  }

  ExceptionalValues out;
  out.k = k;
  const double lo = -k + cfg.c_margin;
  const double hi = -cfg.c_margin;
  if (!(lo < hi)) return out;

  const int n = cfg.grid_points > 0
                    ? cfg.grid_points
                    : std::max(50, 20 * static_cast<int>(std::ceil(k)));
  std::vector<double> cs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    cs[static_cast<std::size_t>(i)] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
  }
  auto delta = [&](double c) { return mismatch({k, c}, cfg); };
  const std::vector<double> d = parallel_map(cs, cfg.threads, delta);

  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i + 1] < d[i] - cfg.monotone_slack) {
      throw ConsistencyError("find_exceptional_numeric: mismatch decreases between c = " +
                             std::to_string(cs[i]) + " and c = " + std::to_string(cs[i + 1]));
    }
  }
  if (slow_attraction({k, lo}, cfg)) {
    out.warnings.emplace_back("slow attraction near c = -k: theta_+ and theta_- nearly merge");
  }

  const double d_lo = d.front();
  const double d_hi = d.back();
  const int m_first = std::max(0, static_cast<int>(std::ceil(-d_hi / kPi)));
  const int m_last = static_cast<int>(std::floor(-d_lo / kPi));

  for (int m = 0; m < m_first; ++m) out.boundary_uncertain.push_back({m, hi});

  for (int m = m_first; m <= m_last; ++m) {
    const double level = -m * kPi;
    std::size_t i = 0;
    while (i + 1 < d.size() && !(d[i] <= level && level <= d[i + 1])) ++i;
    if (i + 1 >= d.size()) {
      throw ConsistencyError("find_exceptional_numeric: lost bracket for m = " + std::to_string(m));
    }
    double a = cs[i];
    double b = cs[i + 1];
    double fa = d[i] - level;
    double fb = d[i + 1] - level;
    while (b - a > cfg.bisect_tol) {
      const double mid = 0.5 * (a + b);
      const double fm = delta(mid) - level;
      if (fm <= 0.0) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
        fb = fm;
      }
    }
    if (!(fa <= 0.0 && fb >= 0.0)) {
      throw ConsistencyError("find_exceptional_numeric: final bracket without sign change");
    }
    if (fa == fb) {
      out.warnings.push_back("flat bracket for m = " + std::to_string(m));
    }
    out.entries.push_back({m, 0.5 * (a + b), Source::Numeric});
  }

  // A crossing of the next lattice value inside (-k, -k + margin) shows up as
  // a left-end mismatch slightly above it.
  const double next_level = -(m_last + 1) * kPi;
  if (d_lo - next_level < cfg.boundary_band) {
    out.boundary_uncertain.push_back({m_last + 1, lo});
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const auto& x, const auto& y) { return x.m < y.m; });
  return out;
}

std::vector<double> matched_angle_at(ModelParams p, int m, std::span<const double> ts,
                                     const ShootingConfig& cfg) {
  const double t_mid = cfg.matching_point(p.k);
  std::vector<double> left;
  std::vector<double> right;
  for (double t : ts) (t <= t_mid ? left : right).push_back(t);
  const auto l = theta0_at(p, left, cfg);
  const auto r = theta_inf_at(p, right, cfg);
  std::vector<double> out(ts.size());
  std::size_t li = 0;
  std::size_t ri = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out[i] = ts[i] <= t_mid ? l[li++] : r[ri++] - m * kPi;
  }
  return out;
}

IntervalIndex interval_index(double k, double c, double tol) {
  if (!(k > 0.0)) throw DomainError("interval_index: k must be positive");
  if (!(c > -k && c < 0.0)) throw DomainError("interval_index: c must lie in (-k, 0)");
  IntervalIndex idx;
  for (const auto& e : exceptional_values(k).entries) {
    if (std::abs(c - e.c) <= tol) {
      idx.boundary = true;
      idx.boundary_m = e.m;
    }
    if (c < e.c) idx.n = e.m + 1;
  }
  return idx;
}

}  // namespace ecc
