#pragma once

// Exact Pade approximants to (1 - z)^k.
//
// General family, parameters A, B, C (S = A + B + C + 1):
//
//   P_A(z) = (-1)^C sum_{i=0..C} binom(S, i) binom(A+C-i, A) (-z)^i
//   Q_A(z) = (-1)^C sum_{i=0..A} binom(A+C-i, C) binom(B+i, i) z^i
//   E_A(z) =        sum_{i=0..B} binom(A+i, i) binom(S, A+C+i+1) (-z)^i
//
// with P_A - (1-z)^(B+C+1) Q_A = z^(A+C+1) E_A. The signs follow the integral
// representation (the (z - t)^C kernel contributes (-1)^C at z = 0).
//
// Diagonal family, k = 5j, r = 4j - g, g in {0, 1}:
//
//   P_r(z) = sum_{i=0..r} binom(9j-g, i) binom(8j-2g-i, 4j-g) (-z)^i
//   Q_r(z) = sum_{i=0..r} binom(8j-2g-i, 4j-g) binom(j+g-1+i, i) z^i
//   E_r(z) = sum_{i=0..j+g-1} binom(4j-g+i, i) binom(9j-g, 8j-2g+i+1) (-z)^i
//
// with P_r - (1-z)^k Q_r = (-1)^r z^(2r+1) E_r.

#include <variant>

#include "rnlab/numeric.hpp"
#include "rnlab/polynomial.hpp"
#include "rnlab/quadring.hpp"

namespace rnlab {

struct GeneralParams {
  unsigned a = 0;
  unsigned b = 0;
  unsigned c = 0;
};

struct DiagonalParams {
  unsigned j = 0;
  unsigned g = 0;

  unsigned k() const { return 5 * j; }
  unsigned r() const { return 4 * j - g; }
};

struct PadeSystem {
  std::variant<GeneralParams, DiagonalParams> params;
  IntPolynomial p;
  IntPolynomial q;
  IntPolynomial e;
  /// 1 for raw systems; c_g(j) once normalized.
  Int content{1};
  bool normalized = false;

  bool is_diagonal() const { return std::holds_alternative<DiagonalParams>(params); }
  /// Exponent of the approximated power (1 - z)^k.
  unsigned k() const;
  /// Exponent of the remainder's leading z-power in the identity.
  unsigned remainder_order() const;
  /// Degree bound of P and Q (A for general systems, r for diagonal ones).
  unsigned r() const;
};

Int binom(unsigned long n, long k);

/// Requires A, B, C >= 1 unless allow_zero is set. The identity is checked
/// before returning; a failure throws IdentityViolation.
PadeSystem build_general(unsigned a, unsigned b, unsigned c, bool allow_zero = false);

/// Requires j >= 1 and g in {0, 1}.
PadeSystem build_diagonal(unsigned j, unsigned g);

/// Exact check of the defining identity for either family (raw or normalized).
bool verify_identity(const PadeSystem& system);

/// c_g(j): gcd of the coefficients of Q_r.
Int content(unsigned j, unsigned g);

/// Divides P, Q and E by c_g(j). Throws ContentViolation when any division
/// is inexact.
PadeSystem normalize(const PadeSystem& system);

/// P_r Q_{r+1} - Q_r P_{r+1}, which must be a nonzero monomial of degree
/// 2r+1. Both systems must share k and have r-values differing by one.
/// Throws InvalidArgument on mismatched inputs and NotMonomial otherwise.
Int cross_constant(const PadeSystem& lower, const PadeSystem& upper);

/// beta^deg_scale * poly(lambda / beta) with lambda = beta - conj(beta),
/// i.e. sum_i c_i lambda^i beta^(deg_scale - i). Exact in the quadratic ring.
QuadInt eval_at_z0(const IntPolynomial& poly, const QuadInt& beta, unsigned deg_scale);

/// The diagonal system evaluated at z0 and scaled to algebraic integers:
/// p = beta^r P*(z0), q = beta^r Q*(z0), e = beta^(k-r-1) E*(z0).
struct ScaledEvaluation {
  QuadInt p;
  QuadInt q;
  QuadInt e;
};

ScaledEvaluation evaluate_scaled(const PadeSystem& diagonal, const QuadInt& beta);

/// beta^k p - conj(beta)^k q == (-1)^r lambda^(2r+1) e, exactly.
bool verify_assembled_identity(const PadeSystem& diagonal, const QuadInt& beta);

}  // namespace rnlab
