#include "ecc/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ecc/closed_form.hpp"
#include "ecc/coulomb_model.hpp"

namespace ecc {

namespace {

constexpr double kPi = std::numbers::pi;

Polynomial<double> to_floating(const Polynomial<Rational>& p) { return p.cast<double>(); }

}  // namespace

DiracSolution::DiracSolution(double k, int j) : k_(k), j_(j) {
  if (j < 1) throw DomainError("DiracSolution: j must be a positive integer");
  if (!(k >= j)) throw DomainError("DiracSolution: need j <= k");
  degenerate_ = !(j < k);
  c_ = degenerate_ ? -k : exceptional_value(k, j);
  lower_ = level<double>(k - j, j);
  upper_ = raise(lower_);
}

std::pair<SignedLog, SignedLog> DiracSolution::components(double t) const {
  SignedLog u1 = evaluate_v(upper_, t);
  u1.log_abs -= std::log(-c_);
  return {u1, evaluate_v(lower_, t)};
}

std::pair<double, double> DiracSolution::value(double t) const {
  const auto [a, b] = components(t);
  return {a.sign * std::exp(a.log_abs), b.sign * std::exp(b.log_abs)};
}

double DiracSolution::relative_residual(double t) const {
  // Every term carries the weight exp(-s - kappa t); compare polynomial factors.
  const double kappa = k_ - j_;
  const double abs_c = -c_;
  const Polynomial<double> p1 = (1.0 / abs_c) * upper_.p;
  const Polynomial<double>& p2 = lower_.p;
  const Polynomial<double> dp1 = weighted_derivative(p1, kappa);
  const Polynomial<double> dp2 = weighted_derivative(p2, kappa);
  const Polynomial<double> s_minus_k(std::vector<double>{-k_, 1.0});

  const int d = j_ + 1;
  auto ev = [&](const Polynomial<double>& p) { return eval_scaled(p, t, d); };
  // u1' = (s - k) u1 - c u2
  const double a1 = ev(dp1);
  const double b1 = ev(s_minus_k * p1);
  const double c1 = c_ * ev(p2);
  const double r1 = std::abs(a1 - b1 + c1) / (std::abs(a1) + std::abs(b1) + std::abs(c1));
  // u2' = c u1 + (k - s) u2
  const double a2 = ev(dp2);
  const double b2 = c_ * ev(p1);
  const double c2 = ev(s_minus_k * p2);
  const double r2 = std::abs(a2 - b2 + c2) / (std::abs(a2) + std::abs(b2) + std::abs(c2));
  return std::max(r1, r2);
}

double DiracSolution::tan_limit_plus_inf() const {
  return -c_ * lower_.p.coeff(0) / upper_.p.coeff(0);
}

AngleFunction::AngleFunction(int j, const Rational& kappa) : j_(j), kappa_(to_double(kappa)) {
  const auto lower = level<Rational>(kappa, j);
  init(lower.p, raise(lower).p);
}

AngleFunction::AngleFunction(int j, double kappa) : j_(j), kappa_(kappa) {
  if (!std::isfinite(kappa)) throw DomainError("AngleFunction: kappa must be finite");
  const auto lower = level<Rational>(Rational(kappa), j);
  init(lower.p, raise(lower).p);
}

void AngleFunction::init(const Polynomial<Rational>& lower, const Polynomial<Rational>& upper) {
  scale_ = std::sqrt(j_ * (2.0 * kappa_ + j_));
  lower_ = to_floating(lower);
  upper_ = to_floating(upper);
  roots_ = positive_roots(upper);
  if (static_cast<int>(roots_.size()) != j_) {
    throw ConsistencyError("AngleFunction: v_{j+1} does not have exactly j zeros");
  }
  poles_.clear();
  for (auto it = roots_.rbegin(); it != roots_.rend(); ++it) poles_.push_back(-std::log(*it));
}

double AngleFunction::operator()(double t) const {
  const double s = std::exp(-t);
  const auto greater = [&](double x) {
    return static_cast<int>(roots_.end() - std::upper_bound(roots_.begin(), roots_.end(), x));
  };
  const double num = eval_scaled(lower_, t, j_);
  const double den = eval_scaled(upper_, t, j_);

  // Nearest root, to settle the side of a pole from the computed sign rather
  // than from s itself when s is within rounding distance of it.
  auto nearest = std::min_element(roots_.begin(), roots_.end(), [&](double a, double b) {
    return std::abs(a - s) < std::abs(b - s);
  });
  if (den == 0.0) return kPi / 2 - kPi * greater(*nearest);
  const double x = scale_ * num / den;
  int passed = greater(s);
  if (nearest != roots_.end() && std::abs(*nearest - s) <= 1e-8 * *nearest) {
    passed = greater(*nearest) + (x > 0.0 ? 1 : 0);
  }
  return kPi + std::atan(x) - kPi * passed;
}

double AngleFunction::limit_plus_inf() const {
  const double k = kappa_ + j_;
  const double c = -scale_;
  return asymptotic_angles({k, std::max(c, -k)}).theta_minus - (j_ - 1) * kPi;
}

double angle_phi(int j, double kappa, double t) { return AngleFunction(j, kappa)(t); }

}  // namespace ecc
