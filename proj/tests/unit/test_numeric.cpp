#include <doctest.h>

#include "rnlab/error.hpp"
#include "rnlab/interval.hpp"
#include "rnlab/numeric.hpp"

using namespace rnlab;

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
  CHECK(parse_rational("7/50") == Rational(7, 50));
  CHECK(parse_rational("14/100") == Rational(7, 50));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(parse_rational("0.953") == Rational(953, 1000));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_int("12x"), Error);
}

TEST_CASE("binomial edge conventions") {
  CHECK(binomial(8, 4) == 70);
  CHECK(binomial(9, 9) == 1);
  CHECK(binomial(4, -1) == 0);
  CHECK(binomial(4, 5) == 0);
}

TEST_CASE("decimal digit counts are exact at powers of ten") {
  CHECK(decimal_digits(Int(0)) == 1);
  CHECK(decimal_digits(Int(9)) == 1);
  CHECK(decimal_digits(Int(10)) == 2);
  CHECK(decimal_digits(ipow(Int(10), 100) - 1) == 100);
  CHECK(decimal_digits(ipow(Int(10), 100)) == 101);
  // floor(750 log10 101) + 1
  CHECK(decimal_digits(ipow(Int(101), 750)) == 1504);
}

TEST_CASE("to_decimal truncates toward zero") {
  CHECK(to_decimal(Rational(2, 3), 4) == "0.6666");
  CHECK(to_decimal(Rational(-2, 3), 2) == "-0.66");
  CHECK(to_decimal(Rational(5), 2) == "5.00");
}

TEST_CASE("interval enclosures contain exact values") {
  const Interval third(Rational(1, 3), 64);
  CHECK(third.lower_string(20) < third.upper_string(20));
  const Interval pi = Interval::pi(128);
  CHECK(pi.lower_string(10) == "3.141592653");
  CHECK(pi.upper_string(10) == "3.141592654");
  const Interval two(Int(2), 64);
  const Interval root = two.sqrt();
  CHECK((root * root - two).contains_zero());
  CHECK_THROWS_AS(Interval(Int(1), 64) / Interval(Int(0), 64), Error);
}

TEST_CASE("certified_sign escalates and stops at the cap") {
  const PrecisionPolicy policy = PrecisionPolicy::with_cap_digits(50);
  // 2^(1/2) - 1.41421356237 > 0 needs only modest precision.
  CHECK(certified_sign([](mpfr_prec_t b) { return Interval(Int(2), b).sqrt() - Interval(decimal("1.41421356237"), b); },
                       policy) == CertifiedSign::Positive);
  // An exact zero is never separated.
  CHECK(certified_sign([](mpfr_prec_t b) { return Interval(Int(2), b).sqrt() * Interval(Int(2), b).sqrt() - Interval(Int(2), b); },
                       policy) == CertifiedSign::Undecidable);
}

TEST_CASE("error classes map to exit categories") {
  CHECK(classify(ErrorCode::ContentViolation) == ErrorClass::InternalInvariant);
  CHECK(classify(ErrorCode::Undecidable) == ErrorClass::Undecidable);
  CHECK(classify(ErrorCode::SquareD) == ErrorClass::InvalidInput);
}
