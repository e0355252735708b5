#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "ecc/closed_form.hpp"
#include "ecc/coulomb_model.hpp"
#include "ecc/errors.hpp"
#include "ecc/ladder.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using ecc::ModelParams;
using ecc::ShootingConfig;

namespace {

constexpr double pi = std::numbers::pi;

// Distance from x to the lattice pi Z.
double lattice_distance(double x) { return std::abs(x - pi * std::round(x / pi)); }

}  // namespace

TEST_CASE("asymptotic angle examples", "[coulomb_model]") {
  auto a = ecc::asymptotic_angles({3.7, -3.7});
  CHECK_THAT(a.theta_minus, WithinAbs(pi / 4, 1e-15));
  CHECK_THAT(a.theta_plus, WithinAbs(pi / 4, 1e-15));
  a = ecc::asymptotic_angles({1.0, -0.5});
  CHECK_THAT(a.theta_minus, WithinAbs(pi / 12, 1e-15));
  CHECK_THAT(a.theta_plus, WithinAbs(5 * pi / 12, 1e-15));
  CHECK_THAT(std::tan(a.theta_minus), WithinAbs(2 - std::sqrt(3.0), 1e-15));
  a = ecc::asymptotic_angles({2.0, -std::sqrt(3.0)});
  CHECK_THAT(a.theta_minus, WithinAbs(pi / 6, 1e-15));
  CHECK_THAT(std::tan(a.theta_minus), WithinAbs(1 / std::sqrt(3.0), 1e-15));
}

TEST_CASE("asymptotic angle invariants", "[coulomb_model]") {
  for (double k : {0.2, 1.0, 2.5, 40.0}) {
    for (double f : {1e-9, 1e-4, 0.1, 0.5, 0.9, 0.9999, 1 - 1e-12, 1.0}) {
      const double c = -f * k;
      const auto a = ecc::asymptotic_angles({k, c});
      CHECK_THAT(std::sin(2 * a.theta_minus), WithinAbs(-c / k, 1e-12));
      CHECK_THAT(std::sin(2 * a.theta_plus), WithinAbs(-c / k, 1e-12));
      CHECK_THAT(a.theta_minus + a.theta_plus, WithinAbs(pi / 2, 4e-16));
      CHECK(a.theta_minus > 0.0);
      CHECK(a.theta_minus <= pi / 4);
      CHECK(a.theta_plus >= pi / 4);
      CHECK(a.theta_plus < pi / 2);
    }
  }
  CHECK_THROWS_AS(ecc::asymptotic_angles({2.0, 0.0}), ecc::DomainError);
  CHECK_THROWS_AS(ecc::asymptotic_angles({2.0, -2.1}), ecc::DomainError);
  CHECK_THROWS_AS(ecc::asymptotic_angles({-1.0, -0.5}), ecc::DomainError);
}

// Reference values: scipy Radau / DOP853 at rtol 1e-13 (tests/oracles/derive_oracles.py).
TEST_CASE("theta0 matches an independent stiff integration", "[coulomb_model]") {
  const ShootingConfig cfg;
  CHECK_THAT(ecc::theta0({2.0, -1.0}, -std::log(2.0), cfg), WithinAbs(2.5717529358796383, 1e-8));
  CHECK_THAT(ecc::theta0({2.0, -1.0}, 0.0, cfg), WithinAbs(1.6351554858301343, 1e-8));
  CHECK_THAT(ecc::theta0({2.0, -1.0}, 3.0, cfg), WithinAbs(1.2981200292604547, 1e-8));
  CHECK_THAT(ecc::theta0({3.0, -2.0}, -std::log(3.0), cfg), WithinAbs(2.1365151986320745, 1e-8));
  CHECK_THAT(ecc::theta0({0.5, -0.3}, 1.0, cfg), WithinAbs(2.733290611804761, 1e-8));
}

TEST_CASE("theta_inf matches an independent integration", "[coulomb_model]") {
  const ShootingConfig cfg;
  CHECK_THAT(ecc::theta_inf({2.0, -1.0}, -std::log(2.0), cfg), WithinAbs(0.794664529266414, 1e-8));
  CHECK_THAT(ecc::theta_inf({2.0, -1.0}, 2.0, cfg), WithinAbs(0.27772292721764635, 1e-8));
  CHECK_THAT(ecc::theta_inf({3.0, -2.0}, -std::log(3.0), cfg), WithinAbs(1.5376446548017688, 1e-8));
  const ModelParams p{2.0, -1.0};
  CHECK(ecc::theta_inf(p, cfg.t_max, cfg) == ecc::asymptotic_angles(p).theta_minus);
}

TEST_CASE("theta0 left asymptotics", "[coulomb_model]") {
  const ShootingConfig cfg;
  for (double c : {-0.3, -1.0, -1.9}) {
    const ModelParams p{2.0, c};
    const double t = -20.0;
    // Near pi only absolute agreement at the ulp level is meaningful.
    CHECK_THAT(ecc::theta0(p, t, cfg) - pi, WithinAbs(0.5 * c * std::exp(t), 1e-15));
    CHECK(ecc::theta0(p, t, cfg) < pi);
    CHECK_THAT(ecc::theta0(p, cfg.t_min, cfg), WithinAbs(pi, 1e-15));
  }
}

TEST_CASE("theta0 is insensitive to where numerical integration starts", "[coulomb_model]") {
  ShootingConfig a;
  a.t_stiff = -12.0;
  a.t_min = -6.0;
  ShootingConfig b = a;
  b.t_min = -12.0;
  for (const ModelParams p : {ModelParams{2.0, -1.0}, ModelParams{2.0, -std::sqrt(3.0)}, ModelParams{4.7, -4.0}}) {
    const double tm = a.matching_point(p.k);
    CHECK_THAT(ecc::theta0(p, tm, a), WithinAbs(ecc::theta0(p, tm, b), 1e-10));
  }
  ShootingConfig c;
  ShootingConfig d;
  d.t_min = -80.0;
  CHECK(ecc::theta0({2.0, -1.0}, -0.5, c) == ecc::theta0({2.0, -1.0}, -0.5, d));
}

TEST_CASE("matching at an exceptional coupling", "[coulomb_model]") {
  const ShootingConfig cfg;
  const ModelParams ex{2.0, -std::sqrt(3.0)};
  const double tm = cfg.matching_point(2.0);
  CHECK_THAT(tm, WithinAbs(-std::log(2.0), 1e-15));
  CHECK(lattice_distance(ecc::theta_inf(ex, tm, cfg) - ecc::theta0(ex, tm, cfg)) <= 1e-6);
  CHECK(lattice_distance(ecc::mismatch(ex, cfg)) <= 1e-6);
  const ModelParams generic{2.0, -1.0};
  CHECK(lattice_distance(ecc::mismatch(generic, cfg)) > 0.01);
}

TEST_CASE("theta0 at a generic coupling approaches theta_+ mod pi", "[coulomb_model]") {
  const ShootingConfig cfg;
  const ModelParams p{2.0, -0.1};
  const auto a = ecc::asymptotic_angles(p);
  CHECK(lattice_distance(ecc::theta0(p, cfg.t_max, cfg) - a.theta_plus) <= 1e-4);
}

TEST_CASE("mod-pi dichotomy on a sample of couplings", "[coulomb_model]") {
  const ShootingConfig cfg;
  for (double k : {0.7, 2.0, 3.5}) {
    const auto closed = ecc::exceptional_values(k);
    for (int i = 1; i < 25; ++i) {
      const double c = -k * i / 25.0;
      bool near = false;
      for (const auto& e : closed.entries) near = near || std::abs(c - e.c) < 1e-5;
      if (near) continue;
      const ModelParams p{k, c};
      const auto a = ecc::asymptotic_angles(p);
      const double end = ecc::theta0(p, cfg.t_max, cfg);
      INFO("k=" << k << " c=" << c);
      CHECK(lattice_distance(end - a.theta_plus) <= 1e-3);
      CHECK(lattice_distance(end - a.theta_minus) > 1e-3);
    }
  }
}

TEST_CASE("mismatch is monotone and stays positive when k <= 1", "[coulomb_model]") {
  const ShootingConfig cfg;
  double prev = -INFINITY;
  for (const double c : ecc::uniform_grid(-2.0 + cfg.c_margin, -cfg.c_margin, 50)) {
    const double d = ecc::mismatch({2.0, c}, cfg);
    CHECK(d >= prev - 1e-8);
    prev = d;
  }
  for (const double c : ecc::uniform_grid(-0.5 + cfg.c_margin, -cfg.c_margin, 40)) {
    // Admissible roots sit at -m pi with m >= 0; the +pi end at c -> 0 is not one.
    const double d = ecc::mismatch({0.5, c}, cfg);
    CHECK(d > 1e-3);
    CHECK(d < pi);
  }
}

TEST_CASE("numeric finder examples", "[coulomb_model]") {
  const ShootingConfig cfg;
  auto ev = ecc::find_exceptional_numeric(2.0, cfg);
  REQUIRE(ev.size() == 1);
  CHECK(ev.entries[0].m == 0);
  CHECK(ev.entries[0].source == ecc::Source::Numeric);
  CHECK_THAT(ev.entries[0].c, WithinAbs(-1.7320508, 1e-7));
  CHECK(ev.boundary_uncertain.empty());

  CHECK(ecc::find_exceptional_numeric(1.0, cfg).empty());

  ev = ecc::find_exceptional_numeric(2.5, cfg);
  REQUIRE(ev.size() == 2);
  CHECK_THAT(ev.entries[0].c, WithinAbs(-2.0, 1e-7));
  CHECK_THAT(ev.entries[1].c, WithinAbs(-2.4494897, 1e-7));
  CHECK_NOTHROW(ev.validate());
}

TEST_CASE("every numeric root straddles a sign change", "[coulomb_model]") {
  const ShootingConfig cfg;
  const double k = 3.5;
  for (const auto& e : ecc::find_exceptional_numeric(k, cfg).entries) {
    const double level = -e.m * pi;
    CHECK(ecc::mismatch({k, e.c - cfg.bisect_tol}, cfg) - level <= 0.0);
    CHECK(ecc::mismatch({k, e.c + cfg.bisect_tol}, cfg) - level >= 0.0);
  }
}

TEST_CASE("truncation robustness", "[coulomb_model]") {
  const ShootingConfig base;
  ShootingConfig wide = base;
  wide.t_min = 2 * base.t_min;
  wide.t_max = 2 * base.t_max;
  for (double k : {1.5, 3.0, 4.7}) {
    const auto a = ecc::find_exceptional_numeric(k, base);
    const auto b = ecc::find_exceptional_numeric(k, wide);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a.entries[i].c - b.entries[i].c) < base.bisect_tol);
  }
}

TEST_CASE("threads do not change results", "[coulomb_model]") {
  ShootingConfig one;
  ShootingConfig four = one;
  four.threads = 4;
  const auto a = ecc::find_exceptional_numeric(3.3, one);
  const auto b = ecc::find_exceptional_numeric(3.3, four);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.entries[i].c == b.entries[i].c);
}

TEST_CASE("a root inside the left margin is reported, not counted", "[coulomb_model]") {
  // For k = 2.01 the second value sits about 2.5e-5 above -k.
  const ShootingConfig cfg;
  const double k = 2.01;
  REQUIRE(ecc::exceptional_value(k, 2) + k < cfg.c_margin);
  const auto ev = ecc::find_exceptional_numeric(k, cfg);
  CHECK(ev.size() == 1);
  REQUIRE(ev.boundary_uncertain.size() == 1);
  CHECK(ev.boundary_uncertain[0].m == 1);
  // Integer k: the value -k itself is excluded and nothing is flagged.
  CHECK(ecc::find_exceptional_numeric(3.0, cfg).boundary_uncertain.empty());
}

TEST_CASE("slow attraction flag", "[coulomb_model]") {
  const ShootingConfig cfg;
  CHECK(ecc::slow_attraction({1.0, -1.0 + 1e-8}, cfg));
  CHECK_FALSE(ecc::slow_attraction({1.0, -0.5}, cfg));
}

TEST_CASE("matched trajectory is continuous at the matching point", "[coulomb_model]") {
  const ShootingConfig cfg;
  const ModelParams p{3.0, ecc::exceptional_value(3.0, 2)};
  const double tm = cfg.matching_point(3.0);
  const std::vector<double> ts{tm - 1e-9, tm, tm + 1e-9};
  const auto th = ecc::matched_angle_at(p, 1, ts, cfg);
  CHECK_THAT(th[2], WithinAbs(th[0], 1e-6));
}

TEST_CASE("interval index", "[coulomb_model]") {
  auto idx = ecc::interval_index(2.0, -1.0);
  CHECK(idx.n == 0);
  CHECK_FALSE(idx.boundary);
  idx = ecc::interval_index(2.0, -1.9);
  CHECK(idx.n == 1);
  idx = ecc::interval_index(2.0, -std::sqrt(3.0));
  CHECK(idx.boundary);
  CHECK(idx.boundary_m == 0);
  CHECK(ecc::interval_index(4.7, -4.5).n == 3);
  CHECK_THROWS_AS(ecc::interval_index(2.0, 0.0), ecc::DomainError);
}

TEST_CASE("argument validation", "[coulomb_model]") {
  const ShootingConfig cfg;
  CHECK_THROWS_AS(ecc::theta0({2.0, -2.0}, 0.0, cfg), ecc::DomainError);
  CHECK_THROWS_AS(ecc::theta0({2.0, -1.0}, 50.0, cfg), ecc::DomainError);
  CHECK_THROWS_AS(ecc::theta_inf({2.0, 0.0}, 0.0, cfg), ecc::DomainError);
  CHECK_THROWS_AS(ecc::find_exceptional_numeric(0.0, cfg), ecc::DomainError);
  ShootingConfig bad = cfg;
  bad.t_min = 50.0;
  CHECK_THROWS_AS(bad.validate(), ecc::DomainError);
  bad = cfg;
  bad.bisect_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), ecc::DomainError);
  // Matching point outside the truncated interval.
  CHECK_THROWS_AS(ecc::find_exceptional_numeric(1e-30, cfg), ecc::DomainError);
}
