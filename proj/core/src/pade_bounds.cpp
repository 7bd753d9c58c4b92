#include "rnlab/pade_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "rnlab/error.hpp"
#include "rnlab/pade.hpp"
#include "rnlab/polynomial.hpp"

namespace rnlab {

namespace {

double log10_ratio(const Int& num, const Int& den) { return log10_abs(num) - log10_abs(den); }

}  // namespace

Rational b_parameter(const QuadInt& beta) {
  // Re(conj(beta) / beta) = (u^2 - D v^2) / (u^2 + D v^2).
  const Int u2 = beta.u() * beta.u();
  const Int dv2 = beta.d() * beta.v() * beta.v();
  Rational b(u2 - dv2, u2 + dv2);
  b.canonicalize();
  return b;
}

namespace {

// pi^power < ratio, decided with escalating precision.
CertifiedSign compare_pi_power_below(const Rational& ratio, unsigned power, const PrecisionPolicy& policy) {
  return certified_sign(
      [&](mpfr_prec_t bits) {
        Interval pi_pow(Rational(1), bits);
        const Interval pi = Interval::pi(bits);
        for (unsigned i = 0; i < power; ++i) pi_pow = pi_pow * pi;
        return Interval(ratio, bits) - pi_pow;
      },
      policy);
}

double log10_q(const Rational& q) { return log10_ratio(q.get_num(), q.get_den()); }

}  // namespace

const BoundConstants& bound_constants() {
  static const BoundConstants constants{};
  return constants;
}

QBoundReport check_q_bound(unsigned j, const QuadInt& beta, unsigned g) {
  const BoundConstants& k = bound_constants();
  QBoundReport report;
  report.j = j;
  report.g = g;
  report.b = b_parameter(beta);
  if (report.b < k.b_min) {
    throw Error(ErrorCode::BOutOfRange, "b = " + to_string(report.b) + " is below 0.953 for beta = " + beta.to_string());
  }
  const PadeSystem sys = normalize(build_diagonal(j, g));
  report.content = sys.content;
  report.claimed = g == 0;

  // |Q*(z0)|^2 = norm(beta^r Q*(z0)) / N^r with N = norm(beta).
  const unsigned r = sys.r();
  const Int scaled_norm = eval_at_z0(sys.q, beta, r).norm().value;
  const Int beta_norm_r = ipow(beta.norm().value, r);

  // bound^2 = (q_coeff)^2 q_base^(2j); compare cleared integers.
  const Rational bound_sq = rpow(k.q_coeff, 2) * rpow(k.q_base, 2 * static_cast<long>(j));
  const Int lhs = scaled_norm * bound_sq.get_den();
  const Int rhs = bound_sq.get_num() * beta_norm_r;
  report.passed = lhs < rhs;

  const double log10_abs_q = 0.5 * (log10_abs(scaled_norm) - log10_abs(beta_norm_r));
  const double log10_bound = log10_q(k.q_coeff) + j * log10_q(k.q_base);
  report.abs_q = std::pow(10.0, log10_abs_q);
  report.bound = std::pow(10.0, log10_bound);
  report.log10_margin = log10_bound - log10_abs_q;
  return report;
}

EBoundReport check_e_bound(unsigned j, unsigned g) {
  if (j == 0 || g > 1) throw Error(ErrorCode::InvalidArgument, "check_e_bound requires j >= 1 and g in {0,1}");
  const BoundConstants& k = bound_constants();
  const DiagonalParams params{j, g};
  const unsigned long kk = params.k();
  const unsigned long r = params.r();

  EBoundReport report;
  report.j = j;
  report.g = g;
  report.ratio = factorial(kk + r) / (factorial(kk - r - 1) * factorial(2 * r + 1));
  report.content = content(j, g);
  report.raw_claimed = g == 1;

  // ratio < e_coeff / sqrt(j) * (9^9/8^8)^j
  //   <=>  ratio^2 * j * 8^(16j) * den(e)^2 < num(e)^2 * 9^(18j)
  const Int nine_pow = ipow(Int(9), 18UL * j);
  const Int eight_pow = ipow(Int(8), 16UL * j);
  const Int e_num = k.e_coeff.get_num();
  const Int e_den = k.e_coeff.get_den();
  const Int raw_lhs = report.ratio * report.ratio * j * eight_pow * e_den * e_den;
  const Int raw_rhs = e_num * e_num * nine_pow;
  report.raw_passed = raw_lhs < raw_rhs;
  report.raw_log10_margin = 0.5 * log10_ratio(raw_rhs, raw_lhs);

  // ratio / c < e_coeff / j * e_base^j
  const Rational norm_bound = k.e_coeff / Rational(j) * rpow(k.e_base, static_cast<long>(j));
  const Int norm_lhs = report.ratio * norm_bound.get_den();
  const Int norm_rhs = norm_bound.get_num() * report.content;
  report.normalized_passed = norm_lhs < norm_rhs;
  report.normalized_log10_margin = log10_ratio(norm_rhs, norm_lhs);
  return report;
}

Rational beta_integral(unsigned r) {
  IntPolynomial t_pow = IntPolynomial::monomial(1, r);
  IntPolynomial integrand = t_pow * IntPolynomial::one_minus_z_pow(r);
  return RatPolynomial(integrand).integral_0_1();
}

KernelReport kernel_extrema(const Rational& b) {
  const BoundConstants& k = bound_constants();
  if (b < k.b_min || b > 1) {
    throw Error(ErrorCode::BOutOfRange, "kernel_extrema requires b in [0.953, 1], got " + to_string(b));
  }
  KernelReport report;
  report.b = b;

  const RatPolynomial one_minus_t_4(IntPolynomial::one_minus_z_pow(4));
  const RatPolynomial quad(std::vector<Rational>{Rational(1), Rational(-2 * b), Rational(1)});
  const RatPolynomial h = one_minus_t_4 * quad * quad;
  const RatPolynomial f = h * RatPolynomial(std::vector<Rational>{Rational(0), Rational(1)});

  report.integral = h.integral_0_1();
  report.integral_below = report.integral < k.kernel_integral;

  // Critical points of f in [0, 1]; f(0) = f(1) = 0 and f > 0 inside, so the
  // maximum is attained at an interior critical point.
  const Rational width(1, Int(1) << 80);
  const auto ranges = isolate_real_roots(f.derivative(), Rational(0), Rational(1), width);
  bool have = false;
  for (const RationalRange& range : ranges) {
    const RationalRange value = f.evaluate_range(range.lo, range.hi);
    Rational mid = (range.lo + range.hi) / 2;
    mid.canonicalize();
    const Rational at_mid = f.evaluate(mid);
    if (!have || value.hi > report.max_upper) {
      report.max_upper = value.hi;
      report.argmax_lo = range.lo;
      report.argmax_hi = range.hi;
    }
    if (!have || at_mid > report.max_lower) report.max_lower = at_mid;
    have = true;
  }
  if (!have) throw Error(ErrorCode::IdentityViolation, "no interior critical point of the kernel found");
  report.max_lower.canonicalize();
  report.max_upper.canonicalize();
  report.max_below = report.max_upper <= k.kernel_max;
  report.max_above = report.max_lower > k.kernel_max;
  return report;
}

FactorialBoundReport factorial_ratio_bounds(unsigned a, unsigned b, std::optional<unsigned> c,
                                            const PrecisionPolicy& policy) {
  if (a == 0 || b == 0 || (c && *c == 0)) {
    throw Error(ErrorCode::InvalidArgument, "factorial_ratio_bounds requires positive arguments");
  }
  FactorialBoundReport report;
  Rational ratio;  // compared against pi^power
  unsigned power = 0;
  if (c) {
    // L * A^A B^B C^C * 2 pi < sqrt(S/(ABC)) S^S
    //   <=>  pi^2 < S^(2S+1) / (4 ABC (L A^A B^B C^C)^2)
    const unsigned long s = static_cast<unsigned long>(a) + b + *c;
    const Int lhs = factorial(s) / (factorial(a) * factorial(b) * factorial(*c));
    const Int weighted = lhs * ipow(Int(a), a) * ipow(Int(b), b) * ipow(Int(*c), *c);
    ratio = Rational(ipow(Int(s), 2 * s + 1), 4 * Int(a) * b * *c * weighted * weighted);
    power = 2;
    report.form = "trinomial(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(*c) + ")";
  } else {
    // L * A^A B^B * sqrt(2 pi) < sqrt((A+B)/(AB)) (A+B)^(A+B)
    //   <=>  pi < (A+B)^(2(A+B)+1) / (2 AB (L A^A B^B)^2)
    const unsigned long s = static_cast<unsigned long>(a) + b;
    const Int lhs = binomial(s, b);
    const Int weighted = lhs * ipow(Int(a), a) * ipow(Int(b), b);
    ratio = Rational(ipow(Int(s), 2 * s + 1), 2 * Int(a) * b * weighted * weighted);
    power = 1;
    report.form = "binomial(" + std::to_string(a) + "," + std::to_string(b) + ")";
  }
  ratio.canonicalize();
  const CertifiedSign sign = compare_pi_power_below(ratio, power, policy);
  report.decided = sign != CertifiedSign::Undecidable;
  report.passed = sign == CertifiedSign::Positive;
  // rhs/lhs = (ratio / pi^power)^(1/2)
  report.log10_margin = 0.5 * (log10_q(ratio) - power * std::log10(M_PI));
  return report;
}

FactorialBoundReport diagonal_ratio_bound(unsigned j, const PrecisionPolicy& policy) {
  if (j == 0) throw Error(ErrorCode::InvalidArgument, "diagonal_ratio_bound requires j >= 1");
  // L * 2^(16j) * 8 pi < 3 * 3^(18j)  <=>  pi < 3^(18j+1) / (8 L 2^(16j))
  const Int lhs = factorial(9UL * j) / (factorial(j - 1) * factorial(4UL * j) * factorial(4UL * j));
  Rational ratio(ipow(Int(3), 18UL * j + 1), 8 * lhs * ipow(Int(2), 16UL * j));
  ratio.canonicalize();
  FactorialBoundReport report;
  report.form = "diagonal(j=" + std::to_string(j) + ")";
  const CertifiedSign sign = compare_pi_power_below(ratio, 1, policy);
  report.decided = sign != CertifiedSign::Undecidable;
  report.passed = sign == CertifiedSign::Positive;
  report.log10_margin = log10_q(ratio) - std::log10(M_PI);
  return report;
}

}  // namespace rnlab
