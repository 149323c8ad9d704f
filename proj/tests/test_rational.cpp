#include <catch2/catch_amalgamated.hpp>

#include "niemytzki/errors.hpp"
#include "niemytzki/rational.hpp"

using niemytzki::ArgumentError;
using niemytzki::OverflowError;
using niemytzki::Rational;

TEST_CASE("construction normalizes sign and gcd") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0, 7).den() == 1);
  CHECK_THROWS_AS(Rational(1, 0), ArgumentError);
}

TEST_CASE("arithmetic is exact") {
  const Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK(a.inverse() == Rational(3));
  CHECK_THROWS_AS(a / Rational(0), ArgumentError);
  CHECK_THROWS_AS(Rational(0).inverse(), ArgumentError);
}

TEST_CASE("harmonic shift exponents compose exactly") {
  // e_n = (n+1)/n; the criterion's x-exponent at E=2 is 2(1/e_m - 1/e_n)
  const auto e = [](int n) { return Rational(n + 1, n); };
  const Rational x_exp = Rational(2) * (e(2).inverse() - e(1).inverse());
  CHECK(x_exp == Rational(1, 3));
  CHECK(e(6).inverse() == Rational(6, 7));
}

TEST_CASE("comparisons agree with cross multiplication") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(7, 5) > Rational(4, 3));
  CHECK(Rational(2, 6) <= Rational(1, 3));
  CHECK(Rational(2, 6) >= Rational(1, 3));
  CHECK(Rational(1, 3) != Rational(1, 4));
}

TEST_CASE("sign, integrality, rendering") {
  CHECK(Rational(-3, 7).sign() == -1);
  CHECK(Rational(0).sign() == 0);
  CHECK(Rational(5).sign() == 1);
  CHECK(Rational(4, 2).is_integer());
  CHECK_FALSE(Rational(1, 2).is_integer());
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(-7).str() == "-7");
  CHECK(Rational(1, 2).to_double() == 0.5);
}

TEST_CASE("overflow throws instead of wrapping") {
  const Rational big(std::numeric_limits<std::int64_t>::max(), 1);
  CHECK_THROWS_AS(big + big, OverflowError);
  CHECK_THROWS_AS(big * Rational(2), OverflowError);
  CHECK_THROWS_AS(-Rational(std::numeric_limits<std::int64_t>::min(), 1), OverflowError);
}

TEST_CASE("from_double recovers small fractions") {
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(-0.25) == Rational(-1, 4));
  CHECK(Rational::from_double(2.0) == Rational(2));
  CHECK(Rational::from_double(1.0 / 3.0) == Rational(1, 3));
  CHECK(Rational::from_double(1.5) == Rational(3, 2));
  CHECK_THROWS_AS(Rational::from_double(0.1234567890123), ArgumentError);
  CHECK_THROWS_AS(Rational::from_double(std::numeric_limits<double>::infinity()),
                  ArgumentError);
}
