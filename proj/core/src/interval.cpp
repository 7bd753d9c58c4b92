#include "rnlab/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "rnlab/error.hpp"

namespace rnlab {

namespace {

mpfr_prec_t common_precision(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

std::string render(mpfr_srcptr value, int digits, mpfr_rnd_t rounding) {
  if (mpfr_zero_p(value)) return "0";
  if (mpfr_inf_p(value)) return mpfr_sgn(value) > 0 ? "inf" : "-inf";
  mpfr_exp_t exponent = 0;
  char* raw = mpfr_get_str(nullptr, &exponent, 10, static_cast<size_t>(digits), value, rounding);
  std::string mantissa(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!mantissa.empty() && mantissa.front() == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  // mantissa is 0.DDDD * 10^exponent
  std::string out;
  if (exponent > 0 && exponent <= 30) {
    auto whole = static_cast<std::size_t>(exponent);
    if (mantissa.size() < whole) mantissa.append(whole - mantissa.size(), '0');
    out = mantissa.substr(0, whole);
    std::string frac = mantissa.substr(whole);
    if (!frac.empty()) out += "." + frac;
  } else if (exponent <= 0 && exponent > -8) {
    out = "0." + std::string(static_cast<std::size_t>(-exponent), '0') + mantissa;
  } else {
    out = mantissa.substr(0, 1) + "." + mantissa.substr(1) + "e" + std::to_string(exponent - 1);
  }
  return sign + out;
}

}  // namespace

Interval::Interval(mpfr_prec_t precision) : precision_(precision) {
  mpfr_init2(lo_, precision_);
  mpfr_init2(hi_, precision_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Int& value, mpfr_prec_t precision) : Interval(precision) {
  mpfr_set_z(lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, value.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const Rational& value, mpfr_prec_t precision) : Interval(precision) {
  mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

Interval Interval::pi(mpfr_prec_t precision) {
  Interval out(precision);
  mpfr_const_pi(out.lo_, MPFR_RNDD);
  mpfr_const_pi(out.hi_, MPFR_RNDU);
  return out;
}

Interval::Interval(const Interval& other) : precision_(other.precision_) {
  mpfr_init2(lo_, precision_);
  mpfr_init2(hi_, precision_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : precision_(other.precision_) {
  mpfr_init2(lo_, precision_);
  mpfr_init2(hi_, precision_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this == &other) return *this;
  precision_ = other.precision_;
  mpfr_set_prec(lo_, precision_);
  mpfr_set_prec(hi_, precision_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  if (this == &other) return *this;
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  std::swap(precision_, other.precision_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

bool Interval::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::is_negative() const { return mpfr_sgn(hi_) < 0; }

bool Interval::certainly_less(const Interval& other) const {
  return mpfr_less_p(hi_, other.lo_) != 0;
}

Interval Interval::log() const {
  if (!is_positive()) throw Error(ErrorCode::InvalidArgument, "log of an interval touching zero");
  Interval out(precision_);
  mpfr_log(out.lo_, lo_, MPFR_RNDD);
  mpfr_log(out.hi_, hi_, MPFR_RNDU);
  return out;
}

Interval Interval::exp() const {
  Interval out(precision_);
  mpfr_exp(out.lo_, lo_, MPFR_RNDD);
  mpfr_exp(out.hi_, hi_, MPFR_RNDU);
  return out;
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(lo_) < 0) throw Error(ErrorCode::InvalidArgument, "sqrt of a negative interval");
  Interval out(precision_);
  mpfr_sqrt(out.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(out.hi_, hi_, MPFR_RNDU);
  return out;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval out(common_precision(a, b));
  mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval out(common_precision(a, b));
  mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return out;
}

Interval Interval::operator-() const {
  Interval out(precision_);
  mpfr_neg(out.lo_, hi_, MPFR_RNDD);
  mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  return out;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t prec = common_precision(a, b);
  Interval out(prec);
  mpfr_t down, up;
  mpfr_init2(down, prec);
  mpfr_init2(up, prec);
  bool first = true;
  for (mpfr_srcptr x : {a.lower(), a.upper()}) {
    for (mpfr_srcptr y : {b.lower(), b.upper()}) {
      mpfr_mul(down, x, y, MPFR_RNDD);
      mpfr_mul(up, x, y, MPFR_RNDU);
      if (first || mpfr_less_p(down, out.lo_)) mpfr_set(out.lo_, down, MPFR_RNDD);
      if (first || mpfr_greater_p(up, out.hi_)) mpfr_set(out.hi_, up, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(down);
  mpfr_clear(up);
  return out;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw Error(ErrorCode::DivisionByZero, "interval division by a range containing zero");
  Interval inverse(b.precision());
  mpfr_ui_div(inverse.lo_, 1, b.hi_, MPFR_RNDD);
  mpfr_ui_div(inverse.hi_, 1, b.lo_, MPFR_RNDU);
  return a * inverse;
}

std::string Interval::lower_string(int digits) const { return render(lo_, digits, MPFR_RNDD); }
std::string Interval::upper_string(int digits) const { return render(hi_, digits, MPFR_RNDU); }

double Interval::midpoint() const {
  return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN));
}

Interval pow(const Interval& base, const Rational& exponent) {
  Interval e(exponent, base.precision());
  return (e * base.log()).exp();
}

PrecisionPolicy PrecisionPolicy::from_env() {
  PrecisionPolicy policy;
  if (const char* raw = std::getenv("RNLAB_PRECISION_CAP"); raw != nullptr && *raw != '\0') {
    Int digits = parse_int(raw);
    if (digits < 1) throw Error(ErrorCode::InvalidArgument, "RNLAB_PRECISION_CAP must be positive");
    return with_cap_digits(to_ulong(digits));
  }
  return policy;
}

PrecisionPolicy PrecisionPolicy::with_cap_digits(unsigned long digits) {
  PrecisionPolicy policy;
  policy.cap_bits = static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(digits) * 3.3219280948873623));
  policy.start_bits = std::min(policy.start_bits, policy.cap_bits);
  return policy;
}

PrecisionPolicy PrecisionPolicy::doubled_cap() const {
  PrecisionPolicy policy = *this;
  policy.cap_bits *= 2;
  return policy;
}

unsigned long PrecisionPolicy::cap_digits() const {
  return static_cast<unsigned long>(std::floor(static_cast<double>(cap_bits) / 3.3219280948873623));
}

CertifiedSign certified_sign(const std::function<Interval(mpfr_prec_t)>& expression,
                             const PrecisionPolicy& policy) {
  mpfr_prec_t bits = std::max<mpfr_prec_t>(policy.start_bits, MPFR_PREC_MIN);
  while (true) {
    const mpfr_prec_t used = std::min(bits, policy.cap_bits);
    Interval value = expression(used);
    if (value.is_positive()) return CertifiedSign::Positive;
    if (value.is_negative()) return CertifiedSign::Negative;
    if (used >= policy.cap_bits) return CertifiedSign::Undecidable;
    bits *= 2;
  }
}

}  // namespace rnlab
