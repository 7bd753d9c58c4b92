#include "rnlab/certifier.hpp"

#include <cmath>

#include "rnlab/error.hpp"

namespace rnlab {

namespace {

constexpr mpfr_prec_t kReportBits = 256;
constexpr int kReportDigits = 12;
constexpr unsigned long kExactLcmLimit = 64;
constexpr unsigned long kExactBitBudget = 1UL << 22;

unsigned long bits_of(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

// value^exponent for a positive rational value and integer exponent of either sign.
Rational rational_power(const Rational& value, const Int& exponent) {
  const unsigned long magnitude = to_ulong(abs(exponent));
  Rational result = rpow(value, static_cast<long>(magnitude));
  if (exponent < 0) result = 1 / result;
  result.canonicalize();
  return result;
}

// Raises a power product to the integer power `scale` exactly.
Rational exact_scaled(const PowerProduct& product, const Int& scale) {
  Rational value = rational_power(product.coeff, scale);
  for (const auto& f : product.factors) {
    Rational e = f.exponent * scale;
    e.canonicalize();
    value *= rational_power(f.base, e.get_num());
  }
  value.canonicalize();
  return value;
}

std::optional<Int> exact_scale(const PowerProduct& lhs, const PowerProduct& rhs) {
  Int scale = 1;
  unsigned long budget = 0;
  for (const PowerProduct* side : {&lhs, &rhs}) {
    for (const auto& f : side->factors) {
      scale = lcm(scale, f.exponent.get_den());
      if (scale > kExactLcmLimit) return std::nullopt;
    }
  }
  for (const PowerProduct* side : {&lhs, &rhs}) {
    budget += bits_of(side->coeff) * to_ulong(scale);
    for (const auto& f : side->factors) {
      Rational e = abs(f.exponent * scale);
      if (e > Rational(kExactBitBudget)) return std::nullopt;
      budget += bits_of(f.base) * to_ulong(e.get_num());
    }
  }
  if (budget > kExactBitBudget) return std::nullopt;
  return scale;
}

PowerProduct beta_abs_product(const Int& p, unsigned long n0) {
  PowerProduct beta;
  if (p == 2) {
    beta.times(Rational(2), Rational(static_cast<long>(n0) - 2, 2));
  } else {
    beta.times(Rational(p), Rational(static_cast<long>(n0), 2));
  }
  return beta;
}

PowerProduct threshold_product(const Int& D, const Int& p, const Rational& sigma, Variant variant) {
  const VariantConstants& vc = variant_constants(variant);
  PowerProduct t;
  t.times(p == 2 ? vc.base_two : vc.base_odd, vc.exponent(sigma));
  t.times(Rational(D), vc.eta(sigma));
  return t;
}

// |beta|^2 as an exact integer-or-rational.
Rational beta_norm(const Int& p, unsigned long n0) {
  if (p == 2) return rpow(Rational(2), static_cast<long>(n0) - 2);
  return Rational(ipow(p, n0));
}

bool beta_floor_ok(const Int& p, unsigned long n0, Variant variant) {
  const VariantConstants& vc = variant_constants(variant);
  const Rational norm = beta_norm(p, n0);
  const Rational floor_sq = vc.beta_floor * vc.beta_floor;
  return vc.floor_strict ? norm > floor_sq : norm >= floor_sq;
}

void validate_sigma(const Rational& sigma, Variant variant) {
  const VariantConstants& vc = variant_constants(variant);
  if (sigma <= 0 || sigma >= vc.sigma_max) {
    throw Error(ErrorCode::InvalidSigma, "sigma = " + to_string(sigma) + " must lie in (0, 0.847)");
  }
}

void validate_base(const Int& D, const Int& p, const Int& x0, unsigned long n0) {
  if (D <= 0) throw Error(ErrorCode::InvalidArgument, "D must be positive");
  if (x0 < 1 || n0 < 1) throw Error(ErrorCode::InvalidArgument, "x0 and n0 must be positive");
  if (p < 2 || !is_probable_prime(p)) throw Error(ErrorCode::CompositeModulus, to_string(p) + " is not prime");
}

}  // namespace

std::string to_string(Variant variant) { return variant == Variant::FiveJ ? "5j" : "7j"; }

Variant parse_variant(const std::string& text) {
  if (text == "5j") return Variant::FiveJ;
  if (text == "7j") return Variant::SevenJ;
  throw Error(ErrorCode::InvalidArgument, "variant must be 5j or 7j, got '" + text + "'");
}

Rational VariantConstants::eta(const Rational& sigma) const {
  Rational v = (eta_a - eta_b * sigma) / (den_a - den_b * sigma);
  v.canonicalize();
  return v;
}

Rational VariantConstants::exponent(const Rational& sigma) const {
  Rational v = (exp_a - sigma) / (den_a - den_b * sigma);
  v.canonicalize();
  return v;
}

const VariantConstants& variant_constants(Variant variant) {
  static const VariantConstants five{Variant::FiveJ,    decimal("7.84"),     Rational(4),      decimal("7.64"),
                                     Rational(9),       decimal("1.96"),     decimal("2008.832"),
                                     decimal("7.847"),  decimal("90.93"),    false,
                                     decimal("0.847")};
  static const VariantConstants seven{Variant::SevenJ,  decimal("11.76"),    Rational(6),      decimal("11.48"),
                                      Rational(13),     decimal("1.96"),     Rational(42106),
                                      decimal("10.28"), Rational(1300),      true,
                                      decimal("0.847")};
  return variant == Variant::FiveJ ? five : seven;
}

const AuditConstants& audit_constants() {
  static const AuditConstants constants{};
  return constants;
}

PowerProduct& PowerProduct::times(const Rational& base, const Rational& exponent) {
  if (base <= 0) throw Error(ErrorCode::InvalidArgument, "power bases must be positive");
  factors.push_back({base, exponent});
  return *this;
}

Interval PowerProduct::log_enclosure(mpfr_prec_t bits) const {
  Interval acc = Interval(coeff, bits).log();
  for (const auto& f : factors) acc = acc + Interval(f.exponent, bits) * Interval(f.base, bits).log();
  return acc;
}

Interval PowerProduct::enclosure(mpfr_prec_t bits) const { return log_enclosure(bits).exp(); }

std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::Less: return "Less";
    case Comparison::Equal: return "Equal";
    case Comparison::Greater: return "Greater";
    case Comparison::Undecidable: return "Undecidable";
  }
  return "?";
}

Comparison rigorous_compare(const PowerProduct& lhs, const PowerProduct& rhs, const PrecisionPolicy& policy) {
  if (lhs.coeff <= 0 || rhs.coeff <= 0) throw Error(ErrorCode::InvalidArgument, "power products must be positive");
  if (const auto scale = exact_scale(lhs, rhs)) {
    const Rational a = exact_scaled(lhs, *scale);
    const Rational b = exact_scaled(rhs, *scale);
    const int c = cmp(a, b);
    return c < 0 ? Comparison::Less : (c > 0 ? Comparison::Greater : Comparison::Equal);
  }
  const CertifiedSign sign = certified_sign(
      [&](mpfr_prec_t bits) { return lhs.log_enclosure(bits) - rhs.log_enclosure(bits); }, policy);
  switch (sign) {
    case CertifiedSign::Negative: return Comparison::Less;
    case CertifiedSign::Positive: return Comparison::Greater;
    case CertifiedSign::Undecidable: break;
  }
  return Comparison::Undecidable;
}

std::string to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::NotExactPower: return "NotExactPower";
    case FailureReason::SharedFactor: return "SharedFactor";
    case FailureReason::SquareD: return "SquareD";
    case FailureReason::BetaTooSmall: return "BetaTooSmall";
    case FailureReason::SmallD: return "SmallD";
    case FailureReason::ConditionFails: return "ConditionFails";
    case FailureReason::BOutOfRange: return "BOutOfRange";
    case FailureReason::Undecidable: return "Undecidable";
  }
  return "?";
}

Comparison condition_compare(const Int& D, const Int& p, unsigned long n0, const Rational& sigma, Variant variant,
                             const PrecisionPolicy& policy) {
  return rigorous_compare(threshold_product(D, p, sigma, variant), beta_abs_product(p, n0), policy);
}

HugeSolutionCertificate certify(const Int& D, const Int& p, const Int& x0, unsigned long n0, const Rational& sigma,
                                Variant variant, const PrecisionPolicy& policy) {
  validate_base(D, p, x0, n0);
  validate_sigma(sigma, variant);
  const VariantConstants& vc = variant_constants(variant);

  HugeSolutionCertificate cert;
  cert.D = D;
  cert.p = p;
  cert.x0 = x0;
  cert.n0 = n0;
  cert.sigma = sigma;
  cert.variant = variant;
  cert.eta = vc.eta(sigma);
  cert.exponent = vc.exponent(sigma);
  cert.b = Rational(x0 * x0 - D, x0 * x0 + D);
  cert.b.canonicalize();

  const Thresholds t = thresholds(cert);
  cert.M = t.M;
  cert.X_star = t.X_star;
  cert.x_min_inference = t.x_min_inference;

  const PowerProduct beta = beta_abs_product(p, n0);
  const PowerProduct threshold = threshold_product(D, p, sigma, variant);
  PowerProduct c_const;
  c_const.factors.push_back(threshold.factors.front());
  const Interval beta_enc = beta.enclosure(kReportBits);
  const Interval c_enc = c_const.enclosure(kReportBits);
  const Interval t_enc = threshold.enclosure(kReportBits);
  cert.beta_abs_lo = beta_enc.lower_string(kReportDigits);
  cert.beta_abs_hi = beta_enc.upper_string(kReportDigits);
  cert.c_const_lo = c_enc.lower_string(kReportDigits);
  cert.c_const_hi = c_enc.upper_string(kReportDigits);
  cert.threshold_lo = t_enc.lower_string(kReportDigits);
  cert.threshold_hi = t_enc.upper_string(kReportDigits);
  const Interval margin = beta.log_enclosure(kReportBits) - threshold.log_enclosure(kReportBits);
  // Rounded to 9 decimals so the report does not depend on libm details.
  cert.log_margin = std::round(margin.midpoint() * 1e9) / 1e9;

  if (x0 * x0 + D != ipow(p, n0)) cert.failures.push_back(FailureReason::NotExactPower);
  if (D % p == 0) cert.failures.push_back(FailureReason::SharedFactor);
  if (is_perfect_square(D)) cert.failures.push_back(FailureReason::SquareD);
  if (!beta_floor_ok(p, n0, variant)) cert.failures.push_back(FailureReason::BetaTooSmall);
  if (D <= 12) cert.failures.push_back(FailureReason::SmallD);
  switch (rigorous_compare(threshold, beta, policy)) {
    case Comparison::Less: break;
    case Comparison::Undecidable: cert.failures.push_back(FailureReason::Undecidable); break;
    default: cert.failures.push_back(FailureReason::ConditionFails); break;
  }
  if (cert.b < decimal("0.953")) cert.failures.push_back(FailureReason::BOutOfRange);
  cert.certified = cert.failures.empty();

  const std::string pstr = to_string(p);
  const std::string n0str = std::to_string(n0);
  if (cert.certified) {
    cert.meaning = "for x > X_star = " + pstr + "^" + std::to_string(cert.M) + ", x^2+" + to_string(D) + " = " + pstr +
                   "^n*m forces m > x^(" + to_string(sigma) + "); any solution with n > M = " +
                   std::to_string(cert.M) + " has x > " + pstr + "^(125*" + n0str + ")";
  } else {
    cert.meaning = "hypotheses not met (" + to_string(cert.failures.front()) +
                   "); thresholds reported for reference only";
  }
  return cert;
}

Thresholds thresholds(const HugeSolutionCertificate& cert) {
  return {250 * cert.n0, ipow(cert.p, 250 * cert.n0), ipow(cert.p, 125 * cert.n0)};
}

SigmaInterval max_sigma(const Int& D, const Int& p, const Int& x0, unsigned long n0, Variant variant,
                        std::optional<Rational> reference, const PrecisionPolicy& policy) {
  validate_base(D, p, x0, n0);
  if (x0 * x0 + D != ipow(p, n0)) {
    throw Error(ErrorCode::InvalidArgument, "x0^2 + D is not p^n0");
  }
  const VariantConstants& vc = variant_constants(variant);
  const Rational resolution(1, 1000000);

  SigmaInterval out;
  out.beta_floor_ok = beta_floor_ok(p, n0, variant);

  auto holds = [&](const Rational& sigma) {
    const Comparison c = condition_compare(D, p, n0, sigma, variant, policy);
    if (c == Comparison::Undecidable) {
      throw Error(ErrorCode::Undecidable, "size condition undecidable at sigma = " + to_string(sigma));
    }
    return c == Comparison::Less;
  };

  // Threshold must increase along a grid before bisection is trusted.
  constexpr unsigned kGrid = 64;
  out.grid_points = kGrid - 1;
  Interval previous(kReportBits);
  bool have_previous = false;
  bool failed_seen = false;
  for (unsigned i = 1; i < kGrid; ++i) {
    Rational sigma = vc.sigma_max * Rational(i, kGrid);
    sigma.canonicalize();
    const Interval current = threshold_product(D, p, sigma, variant).log_enclosure(kReportBits);
    if (have_previous && !previous.certainly_less(current)) out.monotone = false;
    const bool ok = holds(sigma);
    if (ok && failed_seen) out.monotone = false;
    if (!ok) failed_seen = true;
    previous = current;
    have_previous = true;
  }
  if (!out.monotone) throw Error(ErrorCode::NotMonotone, "threshold is not increasing in sigma on the sampled grid");

  if (reference) {
    out.reference_sigma = *reference;
    out.reference_holds = *reference > 0 && *reference < vc.sigma_max && holds(*reference);
  }

  Rational lo = resolution;
  Rational hi = vc.sigma_max - resolution;
  hi.canonicalize();
  if (!holds(lo)) {
    out.empty = true;
    out.reason = "size condition fails already at sigma = " + to_string(lo);
    return out;
  }
  if (holds(hi)) {
    out.lo = hi;
    out.hi = vc.sigma_max;
    out.reason = "size condition holds up to the admissible bound";
    return out;
  }
  while (hi - lo > resolution) {
    Rational mid = (lo + hi) / 2;
    mid.canonicalize();
    if (holds(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.lo = lo;
  out.hi = hi;
  out.reason = out.beta_floor_ok ? "" : "beta floor of the variant not met";
  return out;
}

}  // namespace rnlab
