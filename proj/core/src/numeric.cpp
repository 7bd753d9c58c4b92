#include "rnlab/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "rnlab/error.hpp"

namespace rnlab {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Int parse_int(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  if (!all_digits(body)) {
    throw Error(ErrorCode::InvalidArgument, "not a decimal integer: '" + std::string(text) + "'");
  }
  Int value;
  value.set_str(std::string(text.front() == '+' ? text.substr(1) : text), 10);
  return value;
}

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    std::string_view whole_digits = negative || (!whole.empty() && whole.front() == '+') ? whole.substr(1) : whole;
    if ((!whole_digits.empty() && !all_digits(whole_digits)) || !all_digits(frac)) {
      throw Error(ErrorCode::InvalidArgument, "not a decimal literal: '" + std::string(text) + "'");
    }
    Int num = parse_int(std::string(whole_digits.empty() ? "0" : whole_digits) + std::string(frac));
    Rational q(num, ipow(Int(10), frac.size()));
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }
  return Rational(parse_int(text));
}

Rational decimal(std::string_view literal) { return parse_rational(literal); }

std::string to_string(const Int& value) { return value.get_str(10); }

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str(10);
  return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

Int ipow(const Int& base, unsigned long exponent) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational rpow(const Rational& base, long exponent) {
  unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  Rational out(ipow(base.get_num(), e), ipow(base.get_den(), e));
  out.canonicalize();
  if (exponent < 0) {
    if (out == 0) throw Error(ErrorCode::DivisionByZero, "rpow: zero to a negative power");
    out = 1 / out;
  }
  return out;
}

Int binomial(unsigned long n, long k) {
  if (k < 0 || static_cast<unsigned long>(k) > n) return 0;
  Int out;
  mpz_bin_uiui(out.get_mpz_t(), n, static_cast<unsigned long>(k));
  return out;
}

Int factorial(unsigned long n) {
  Int out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

bool is_perfect_square(const Int& value) {
  return value >= 0 && mpz_perfect_square_p(value.get_mpz_t()) != 0;
}

Int isqrt(const Int& value) {
  if (value < 0) throw Error(ErrorCode::InvalidArgument, "isqrt of a negative integer");
  Int out;
  mpz_sqrt(out.get_mpz_t(), value.get_mpz_t());
  return out;
}

bool is_probable_prime(const Int& value) {
  return value >= 2 && mpz_probab_prime_p(value.get_mpz_t(), 30) > 0;
}

std::size_t decimal_digits(const Int& value) {
  if (value == 0) return 1;
  // sizeinbase may overshoot by one.
  std::size_t estimate = mpz_sizeinbase(value.get_mpz_t(), 10);
  Int bound = ipow(Int(10), estimate - 1);
  return abs(value) >= bound ? estimate : estimate - 1;
}

double log10_abs(const Int& value) {
  if (value == 0) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  double mantissa = mpz_get_d_2exp(&exp2, value.get_mpz_t());
  return std::log10(std::fabs(mantissa)) + static_cast<double>(exp2) * std::log10(2.0);
}

std::string to_decimal(const Rational& value, unsigned fractional_digits) {
  Rational magnitude = abs(value);
  Int scaled = magnitude.get_num() * ipow(Int(10), fractional_digits) / magnitude.get_den();
  std::string digits = scaled.get_str(10);
  if (digits.size() <= fractional_digits) digits.insert(0, fractional_digits + 1 - digits.size(), '0');
  std::string out = value < 0 && scaled != 0 ? "-" : "";
  out += digits.substr(0, digits.size() - fractional_digits);
  if (fractional_digits > 0) out += "." + digits.substr(digits.size() - fractional_digits);
  return out;
}

Int lcm(const Int& a, const Int& b) {
  Int out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

unsigned long to_ulong(const Int& value) {
  if (value < 0 || !value.fits_ulong_p()) {
    throw Error(ErrorCode::InvalidArgument, "integer out of range: " + value.get_str());
  }
  return value.get_ui();
}

}  // namespace rnlab
