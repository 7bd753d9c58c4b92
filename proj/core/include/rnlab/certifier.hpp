#pragma once

// Certification of the size condition on a base solution x0^2 + D = p^n0,
// and the thresholds it unlocks.

#include <optional>
#include <string>
#include <vector>

#include "rnlab/interval.hpp"
#include "rnlab/numeric.hpp"

namespace rnlab {

enum class Variant { FiveJ, SevenJ };

std::string to_string(Variant variant);
/// Accepts "5j" or "7j". Throws InvalidArgument.
Variant parse_variant(const std::string& text);

struct VariantConstants {
  Variant variant;
  // eta(s) = (eta_a - eta_b s) / (den_a - den_b s)
  // exponent(s) = (exp_a - s) / (den_a - den_b s)
  Rational eta_a, eta_b, den_a, den_b, exp_a;
  Rational base_odd, base_two;
  Rational beta_floor;
  bool floor_strict;  // |beta| > floor rather than >=
  Rational sigma_max;

  Rational eta(const Rational& sigma) const;
  Rational exponent(const Rational& sigma) const;
};

const VariantConstants& variant_constants(Variant variant);

struct AuditConstants {
  Rational q_lambda_coeff = decimal("0.238074");
  Rational beta_exp = decimal("0.4873");
  Rational nine_tenths{9, 10};
  Rational mu_div = decimal("6.89");
  Rational x_coeff = decimal("0.7");
  Rational final_coeff = decimal("6.32");
  Rational mid_coeff = decimal("5.24");
};

const AuditConstants& audit_constants();

/// coeff * prod base_i^exponent_i with positive rational bases.
struct PowerProduct {
  struct Factor {
    Rational base;
    Rational exponent;
  };
  Rational coeff{1};
  std::vector<Factor> factors;

  PowerProduct& times(const Rational& base, const Rational& exponent);
  Interval log_enclosure(mpfr_prec_t bits) const;
  Interval enclosure(mpfr_prec_t bits) const;
};

enum class Comparison { Less, Equal, Greater, Undecidable };
std::string to_string(Comparison c);

/// Compares two power products. Uses exact integer arithmetic when every
/// exponent has a small common denominator, otherwise log enclosures with
/// escalating precision. Equal is only ever returned by the exact path.
Comparison rigorous_compare(const PowerProduct& lhs, const PowerProduct& rhs,
                            const PrecisionPolicy& policy = PrecisionPolicy::from_env());

enum class FailureReason { NotExactPower, SharedFactor, SquareD, BetaTooSmall, SmallD, ConditionFails, BOutOfRange, Undecidable };
std::string to_string(FailureReason reason);

struct HugeSolutionCertificate {
  Int D, p, x0;
  unsigned long n0 = 0;
  Rational sigma;
  Variant variant = Variant::FiveJ;
  Rational eta;
  Rational exponent;
  Rational b;  // 1 - 2D/|x0 + sqrt(-D)|^2
  // Enclosures rendered at a fixed report precision.
  std::string beta_abs_lo, beta_abs_hi;
  std::string c_const_lo, c_const_hi;
  std::string threshold_lo, threshold_hi;  // C * D^eta
  double log_margin = 0.0;                 // ln |beta| - ln threshold
  unsigned long M = 0;
  Int X_star;
  Int x_min_inference;
  bool certified = false;
  std::vector<FailureReason> failures;  // in check order; first is primary
  std::string meaning;

  std::optional<FailureReason> primary_failure() const {
    if (failures.empty()) return std::nullopt;
    return failures.front();
  }
};

/// Throws InvalidSigma outside (0, 0.847), InvalidArgument for non-prime p
/// or non-positive inputs. All other problems are reported as failures.
HugeSolutionCertificate certify(const Int& D, const Int& p, const Int& x0, unsigned long n0, const Rational& sigma,
                                Variant variant, const PrecisionPolicy& policy = PrecisionPolicy::from_env());

struct Thresholds {
  unsigned long M;
  Int X_star;
  Int x_min_inference;
};

Thresholds thresholds(const HugeSolutionCertificate& cert);

struct SigmaInterval {
  bool empty = false;
  Rational lo, hi;  // condition holds at lo, fails at hi
  std::string reason;
  bool beta_floor_ok = true;
  bool monotone = true;
  unsigned grid_points = 0;
  std::optional<Rational> reference_sigma;
  std::optional<bool> reference_holds;
};

/// Largest sigma for which the size condition holds, as an enclosing interval
/// of width at most 1e-6. Throws NotMonotone when the sampled threshold is
/// not increasing.
SigmaInterval max_sigma(const Int& D, const Int& p, const Int& x0, unsigned long n0, Variant variant,
                        std::optional<Rational> reference = std::nullopt,
                        const PrecisionPolicy& policy = PrecisionPolicy::from_env());

/// Compares the threshold C * D^eta with |beta| at the given sigma; Less
/// means the size condition holds.
Comparison condition_compare(const Int& D, const Int& p, unsigned long n0, const Rational& sigma, Variant variant,
                             const PrecisionPolicy& policy);

}  // namespace rnlab
