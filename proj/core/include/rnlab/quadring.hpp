#pragma once

// Exact arithmetic in Z[sqrt(-D)] and, when D = 3 (mod 4), in the larger
// order Z[(1 + sqrt(-D))/2]. Every element is stored as a pair of numerators
// over the fixed denominator 2:
//
//     value = (u + v * sqrt(-D)) / 2
//
// with u = v (mod 2) when D = 3 (mod 4) and u, v both even otherwise. The
// parity rule is enforced on construction and preserved by every operation.

#include <optional>
#include <string>

#include "rnlab/numeric.hpp"

namespace rnlab {

struct QuadNorm {
  Int value;

  friend bool operator==(const QuadNorm&, const QuadNorm&) = default;
};

class QuadInt {
 public:
  /// (u + v sqrt(-D)) / 2. With allow_half == false the element must lie in
  /// Z[sqrt(-D)] (u and v even). Throws SquareD or ParityViolation.
  static QuadInt from_numerators(Int u, Int v, Int D, bool allow_half);

  /// a + b sqrt(-D).
  static QuadInt integral(const Int& a, const Int& b, const Int& D);

  static QuadInt from_int(const Int& a, const Int& D) { return integral(a, 0, D); }

  const Int& u() const noexcept { return u_; }
  const Int& v() const noexcept { return v_; }
  const Int& d() const noexcept { return d_; }

  /// True when the element is outside Z[sqrt(-D)].
  bool is_half_integral() const { return mpz_odd_p(u_.get_mpz_t()) != 0; }
  bool is_zero() const { return u_ == 0 && v_ == 0; }

  QuadNorm norm() const;
  QuadInt conj() const { return QuadInt(u_, -v_, d_); }

  QuadInt operator-() const { return QuadInt(-u_, -v_, d_); }
  friend QuadInt operator+(const QuadInt& a, const QuadInt& b);
  friend QuadInt operator-(const QuadInt& a, const QuadInt& b);
  friend QuadInt operator*(const QuadInt& a, const QuadInt& b);
  friend QuadInt operator*(const Int& scalar, const QuadInt& a);
  friend bool operator==(const QuadInt& a, const QuadInt& b) {
    return a.d_ == b.d_ && a.u_ == b.u_ && a.v_ == b.v_;
  }

  /// e.g. "1015+sqrt(-76)", "(181-sqrt(-7))/2", "-75+2*sqrt(-76)".
  std::string to_string() const;

 private:
  QuadInt(Int u, Int v, Int d) : u_(std::move(u)), v_(std::move(v)), d_(std::move(d)) {}

  Int u_;
  Int v_;
  Int d_;
};

QuadInt pow(const QuadInt& base, unsigned long exponent);

/// The quotient a / b when it lies in the same order, computed as
/// a * conj(b) / norm(b) with an exact integrality check. Throws
/// DivisionByZero for b == 0 and MixedD for mismatched D.
std::optional<QuadInt> exact_div(const QuadInt& a, const QuadInt& b);

}  // namespace rnlab
