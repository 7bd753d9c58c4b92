#pragma once

// Dense univariate polynomials with exact coefficients. Index i holds the
// coefficient of z^i; the trailing (leading-degree) coefficient is nonzero
// unless the polynomial is zero, which has no coefficients at all.

#include <optional>
#include <utility>
#include <vector>

#include "rnlab/numeric.hpp"

namespace rnlab {

class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> coeffs);

  static IntPolynomial monomial(const Int& coeff, std::size_t degree);
  /// (1 - z)^k
  static IntPolynomial one_minus_z_pow(unsigned k);

  const std::vector<Int>& coeffs() const noexcept { return coeffs_; }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  Int coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Int(0); }

  /// gcd of the coefficients (0 for the zero polynomial).
  Int content() const;
  /// Divides every coefficient by d when all divisions are exact.
  std::optional<IntPolynomial> divide_exact(const Int& d) const;

  /// The single nonzero term (degree, coefficient), if there is exactly one.
  std::optional<std::pair<std::size_t, Int>> as_monomial() const;

  Int evaluate(const Int& z) const;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const Int& s, const IntPolynomial& a);
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  void trim();
  std::vector<Int> coeffs_;
};

struct RationalRange {
  Rational lo;
  Rational hi;
};

class RatPolynomial {
 public:
  RatPolynomial() = default;
  explicit RatPolynomial(std::vector<Rational> coeffs);
  explicit RatPolynomial(const IntPolynomial& p);

  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const Rational& leading() const { return coeffs_.back(); }

  RatPolynomial derivative() const;
  /// Exact value of the integral over [0, 1].
  Rational integral_0_1() const;
  Rational evaluate(const Rational& t) const;
  /// Enclosure of { p(t) : t in [lo, hi] } by interval Horner evaluation.
  RationalRange evaluate_range(const Rational& lo, const Rational& hi) const;

  RatPolynomial monic() const;
  /// Quotient and remainder of Euclidean division; divisor must be nonzero.
  std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& divisor) const;

  friend RatPolynomial operator+(const RatPolynomial& a, const RatPolynomial& b);
  friend RatPolynomial operator-(const RatPolynomial& a, const RatPolynomial& b);
  friend RatPolynomial operator*(const RatPolynomial& a, const RatPolynomial& b);
  friend RatPolynomial operator*(const Rational& s, const RatPolynomial& a);
  friend bool operator==(const RatPolynomial&, const RatPolynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b);
RatPolynomial squarefree_part(const RatPolynomial& p);

/// Disjoint isolating ranges, one per distinct real root of p in [lo, hi],
/// each of width at most max_width (a root hit exactly gives lo == hi).
std::vector<RationalRange> isolate_real_roots(const RatPolynomial& p, const Rational& lo,
                                              const Rational& hi, const Rational& max_width);

}  // namespace rnlab
