#pragma once

// Outward-rounded real enclosures over MPFR. Every operation rounds the lower
// endpoint down and the upper endpoint up, so the true value of an expression
// built from exact inputs always lies inside the resulting interval.

#include <mpfr.h>

#include <functional>
#include <string>

#include "rnlab/numeric.hpp"

namespace rnlab {

class Interval {
 public:
  explicit Interval(mpfr_prec_t precision);
  Interval(const Int& value, mpfr_prec_t precision);
  Interval(const Rational& value, mpfr_prec_t precision);

  static Interval pi(mpfr_prec_t precision);

  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  mpfr_prec_t precision() const noexcept { return precision_; }

  bool is_positive() const;  // lower endpoint > 0
  bool is_negative() const;  // upper endpoint < 0
  bool contains_zero() const { return !is_positive() && !is_negative(); }

  /// True when every point of *this is strictly below every point of other.
  bool certainly_less(const Interval& other) const;

  Interval log() const;
  Interval exp() const;
  Interval sqrt() const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval operator-() const;

  /// Decimal renderings rounded outward, with `digits` significant digits.
  std::string lower_string(int digits = 15) const;
  std::string upper_string(int digits = 15) const;
  double midpoint() const;

  mpfr_srcptr lower() const { return lo_; }
  mpfr_srcptr upper() const { return hi_; }

 private:
  mpfr_prec_t precision_;
  mpfr_t lo_;
  mpfr_t hi_;
};

/// base^exponent for a strictly positive base, via exp(exponent * log base).
Interval pow(const Interval& base, const Rational& exponent);

/// Working-precision schedule for escalating evaluations.
struct PrecisionPolicy {
  mpfr_prec_t start_bits = 64;
  mpfr_prec_t cap_bits = 6644;  // ~2000 decimal digits

  /// Reads the cap, in decimal digits, from RNLAB_PRECISION_CAP when set.
  static PrecisionPolicy from_env();
  static PrecisionPolicy with_cap_digits(unsigned long digits);
  PrecisionPolicy doubled_cap() const;
  unsigned long cap_digits() const;
};

enum class CertifiedSign { Negative, Positive, Undecidable };

/// Evaluates `expression` at increasing precision (doubling from start_bits)
/// until its enclosure excludes zero, or the cap is reached.
CertifiedSign certified_sign(const std::function<Interval(mpfr_prec_t)>& expression,
                             const PrecisionPolicy& policy);

}  // namespace rnlab
