#include <catch_amalgamated.hpp>

#include <cmath>

#include "ecc/errors.hpp"
#include "ecc/polynomial.hpp"

using Catch::Matchers::WithinRel;
using ecc::Polynomial;
using ecc::Rational;
using P = Polynomial<Rational>;

namespace {

P poly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return P(v);
}

}  // namespace

TEST_CASE("parse_rational handles fractions and decimals exactly", "[polynomial]") {
  CHECK(ecc::parse_rational("7/3") == Rational(7, 3));
  CHECK(ecc::parse_rational("2.3") == Rational(23, 10));
  CHECK(ecc::parse_rational("-0.5") == Rational(-1, 2));
  CHECK(ecc::parse_rational("+3") == Rational(3));
  CHECK(ecc::parse_rational("1e-3") == Rational(1, 1000));
  CHECK(ecc::parse_rational("2.5E2") == Rational(250));
  CHECK(ecc::parse_rational(" 1 / 2 ") == Rational(1, 2));
  CHECK(ecc::parse_rational("0") == Rational(0));
  for (const char* bad : {"", "abc", "1/0", "1.2.3", "1e", "--1", "1/x", "e5"}) {
    INFO(bad);
    CHECK_THROWS_AS(ecc::parse_rational(bad), ecc::DomainError);
  }
}

TEST_CASE("exact conversion from double", "[polynomial]") {
  CHECK(Rational(0.1) != Rational(1, 10));
  CHECK(ecc::to_double(Rational(0.1)) == 0.1);
  CHECK(Rational(0.5) == Rational(1, 2));
}

TEST_CASE("polynomial arithmetic", "[polynomial]") {
  const P a = poly({1, 1});
  const P b = poly({1, -1});
  CHECK(a * b == poly({1, 0, -1}));
  CHECK((a + b) == poly({2}));
  CHECK((a - a).is_zero());
  CHECK((a - a).degree() == -1);
  CHECK(poly({3, 0, 5}).derivative() == poly({0, 10}));
  CHECK(poly({3, 2}).shifted() == poly({0, 3, 2}));
  CHECK(poly({1, 2, 3})(Rational(2)) == Rational(17));
  CHECK(poly({0, 0, 0}).is_zero());
  CHECK(P::monomial(Rational(4), 3).degree() == 3);
  CHECK(P::monomial(Rational(4), 3).leading() == Rational(4));
  CHECK(poly({1, 2}).coeff(5) == Rational(0));

  const auto [q, r] = poly({-1, 0, 0, 1}).divmod(poly({-1, 1}));
  CHECK(q == poly({1, 1, 1}));
  CHECK(r.is_zero());
  CHECK_THROWS_AS(poly({1}).divmod(P{}), ecc::DomainError);
}

TEST_CASE("gcd is monic", "[polynomial]") {
  const P g = ecc::gcd(poly({2, -6, 4}), poly({-2, 2}) * poly({3, 1}));  // 2(s-1)(2s-1), 2(s-1)(s+3)
  CHECK(g == poly({-1, 1}));
  CHECK(ecc::gcd(poly({1, 1}), poly({2, 1})) == poly({1}));
}

TEST_CASE("Sturm counts", "[polynomial]") {
  const P cubic = poly({-1, 1}) * poly({-2, 1}) * poly({-3, 1});
  auto rc = ecc::count_roots_above(cubic, Rational(0));
  CHECK(rc.distinct == 3);
  CHECK(rc.all_simple);
  CHECK(ecc::count_roots_above(cubic, Rational(5, 2)).distinct == 1);

  const P repeated = poly({-1, 1}) * poly({-1, 1}) * poly({-2, 1});
  rc = ecc::count_roots_above(repeated, Rational(0));
  CHECK(rc.distinct == 2);
  CHECK_FALSE(rc.all_simple);

  CHECK(ecc::count_roots_above(poly({1, 0, 1}), Rational(-100)).distinct == 0);
  CHECK(ecc::count_roots_above(poly({1, 1}), Rational(0)).distinct == 0);
}

TEST_CASE("positive roots are isolated and refined", "[polynomial]") {
  const auto roots = ecc::positive_roots(poly({2, -8, 4}));
  REQUIRE(roots.size() == 2);
  CHECK_THAT(roots[0], WithinRel(1 - 1 / std::sqrt(2.0), 1e-15));
  CHECK_THAT(roots[1], WithinRel(1 + 1 / std::sqrt(2.0), 1e-15));

  const auto exact = ecc::positive_roots(poly({-6, 11, -6, 1}));
  REQUIRE(exact.size() == 3);
  CHECK(exact[0] == 1.0);
  CHECK(exact[1] == 2.0);
  CHECK(exact[2] == 3.0);

  // Large spread of magnitudes.
  const auto wide = ecc::positive_roots(P(std::vector<Rational>{Rational(-1, 1000000), Rational(1)}) *
                                        poly({-1000, 1}));
  REQUIRE(wide.size() == 2);
  CHECK_THAT(wide[0], WithinRel(1e-6, 1e-15));
  CHECK_THAT(wide[1], WithinRel(1000.0, 1e-15));

  CHECK(ecc::positive_roots(poly({1, 1})).empty());
  CHECK_THROWS_AS(ecc::positive_roots(P{}), ecc::DomainError);
  CHECK_THROWS_AS(ecc::positive_roots(poly({0, 1})), ecc::DomainError);
}
