#pragma once

// Exact integer and rational helpers on top of GMP's C++ classes.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace rnlab {

using Int = mpz_class;
using Rational = mpq_class;

/// Parses an optionally signed decimal integer. Throws InvalidArgument.
Int parse_int(std::string_view text);

/// Parses "a/b", "a" or a decimal literal such as "0.953" into an exact,
/// canonical rational. Throws InvalidArgument.
Rational parse_rational(std::string_view text);

/// Exact value of a decimal literal; shorthand for the constant tables.
Rational decimal(std::string_view literal);

std::string to_string(const Int& value);
/// "a/b", or "a" when the denominator is 1.
std::string to_string(const Rational& value);

Int ipow(const Int& base, unsigned long exponent);
Rational rpow(const Rational& base, long exponent);

Int binomial(unsigned long n, long k);
Int factorial(unsigned long n);

bool is_perfect_square(const Int& value);
Int isqrt(const Int& value);
bool is_probable_prime(const Int& value);

/// Number of decimal digits of |value| (1 for zero), computed exactly.
std::size_t decimal_digits(const Int& value);

/// log10 |value| to double precision; value must be nonzero.
double log10_abs(const Int& value);

/// Decimal rendering of a rational with a fixed number of fractional digits,
/// rounded toward zero. Used for human-readable reports.
std::string to_decimal(const Rational& value, unsigned fractional_digits);

Int lcm(const Int& a, const Int& b);

/// Exact integer value of a nonnegative Int that fits in unsigned long.
unsigned long to_ulong(const Int& value);

}  // namespace rnlab
