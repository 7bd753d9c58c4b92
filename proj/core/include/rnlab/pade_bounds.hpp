#pragma once

// Numeric bounds attached to the diagonal Pade family. Every PASS is decided
// either by an exact integer comparison (decimal literals cleared into
// integers) or by an outward-rounded enclosure that separates strictly.

#include <optional>
#include <string>

#include "rnlab/interval.hpp"
#include "rnlab/numeric.hpp"
#include "rnlab/quadring.hpp"

namespace rnlab {

/// Decimal constants, stored exactly.
struct BoundConstants {
  Rational q_coeff = decimal("0.308");
  Rational q_base = decimal("89.3445");
  Rational e_coeff = decimal("0.377");
  Rational e_base = decimal("7.847");
  Rational raw_base = decimal("262.9407");
  Rational content_base = decimal("2.943");
  Rational kernel_max = decimal("0.044479");
  Rational kernel_integral = decimal("0.114552");
  Rational b_min = decimal("0.953");
};

const BoundConstants& bound_constants();

/// b = Re(conj(beta)/beta); equals 1 - 2D/|x0 + sqrt(-D)|^2 in both the
/// integral and the halved convention.
Rational b_parameter(const QuadInt& beta);

/// |Q*_r(z0)| < q_coeff * q_base^j for the normalized g = 0 system.
struct QBoundReport {
  unsigned j = 0;
  unsigned g = 0;
  bool claimed = true;  // false for g = 1: no bound is asserted there
  bool passed = false;
  Rational b;            // b_parameter(beta)
  Int content;           // c_g(j)
  double abs_q = 0.0;    // |Q*(z0)|, for display
  double bound = 0.0;    // q_coeff * q_base^j, for display
  double log10_margin = 0.0;  // log10(bound / |Q*(z0)|)
};

/// Throws BOutOfRange when b < 0.953.
QBoundReport check_q_bound(unsigned j, const QuadInt& beta, unsigned g = 0);

struct EBoundReport {
  unsigned j = 0;
  unsigned g = 0;
  Int ratio;    // (k+r)! / ((k-r-1)! (2r+1)!)
  Int content;  // c_g(j)
  bool raw_claimed = false;  // the sqrt(j) form is stated for g = 1
  bool raw_passed = false;   // ratio < e_coeff/sqrt(j) * (9^9/8^8)^j
  double raw_log10_margin = 0.0;
  bool normalized_passed = false;  // ratio / c_g(j) < e_coeff/j * e_base^j
  double normalized_log10_margin = 0.0;
};

EBoundReport check_e_bound(unsigned j, unsigned g);

/// Integral of t^r (1-t)^r over [0, 1] by expanding and integrating the
/// polynomial termwise.
Rational beta_integral(unsigned r);

struct KernelReport {
  Rational b;
  Rational integral;  // exact integral of (1-t)^4 (1-2bt+t^2)^2 over [0,1]
  bool integral_below = false;  // integral < kernel_integral
  Rational max_lower;  // certified: max of (1-t)^4 t (1-2bt+t^2)^2 lies in [max_lower, max_upper]
  Rational max_upper;
  Rational argmax_lo;
  Rational argmax_hi;
  bool max_below = false;   // max_upper <= kernel_max
  bool max_above = false;   // max_lower > kernel_max (certified failure)
};

/// b must lie in [0.953, 1]; throws BOutOfRange otherwise.
KernelReport kernel_extrema(const Rational& b);

struct FactorialBoundReport {
  std::string form;
  bool passed = false;
  bool decided = true;
  double log10_margin = 0.0;  // log10(rhs / lhs)
};

/// With c: (A+B+C)!/(A!B!C!) < 1/(2 pi) sqrt((A+B+C)/(ABC)) (A+B+C)^(A+B+C)/(A^A B^B C^C).
/// Without: (A+B)!/(A!B!) < 1/sqrt(2 pi) sqrt((A+B)/(AB)) (A+B)^(A+B)/(A^A B^B).
FactorialBoundReport factorial_ratio_bounds(unsigned a, unsigned b, std::optional<unsigned> c,
                                            const PrecisionPolicy& policy = PrecisionPolicy::from_env());

/// (9j)!/((j-1)! (4j)!^2) < 3/(8 pi) * (3^18 2^-16)^j.
FactorialBoundReport diagonal_ratio_bound(unsigned j, const PrecisionPolicy& policy = PrecisionPolicy::from_env());

}  // namespace rnlab
