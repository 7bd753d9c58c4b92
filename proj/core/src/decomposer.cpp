#include "rnlab/decomposer.hpp"

#include <cmath>
#include <optional>

#include "rnlab/error.hpp"
#include "rnlab/pade.hpp"

namespace rnlab {

namespace {

QuadInt base_element(const Int& x, const Int& D, bool halved) {
  return halved ? QuadInt::from_numerators(x, 1, D, true) : QuadInt::integral(x, 1, D);
}

// log10 of sqrt(a) + sqrt(b) minus log10 sqrt(c), for display only.
double log10_sum_margin(const Int& a, const Int& b, const Int& c) {
  const auto half_log = [](const Int& v) { return v == 0 ? -1e300 : 0.5 * log10_abs(v); };
  const double la = half_log(a);
  const double lb = half_log(b);
  const double hi = std::max(la, lb);
  const double sum = hi + std::log10(std::pow(10.0, la - hi) + std::pow(10.0, lb - hi));
  return sum - half_log(c);
}

// sqrt(c) <= sqrt(a) + sqrt(b), exactly, for nonnegative integers.
bool sqrt_sum_dominates(const Int& a, const Int& b, const Int& c) {
  const Int excess = c - a - b;
  if (excess <= 0) return true;
  return excess * excess <= 4 * a * b;
}

}  // namespace

std::string to_string(Branch branch) { return branch == Branch::Plus ? "plus" : "minus"; }

Decomposition decompose(const Int& D, const Int& p, const Int& x0, unsigned long n0, const Int& x, unsigned long n) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::PreconditionFail, what); };
  if (D <= 0 || x0 < 1 || x < 1 || n0 < 1) fail("D, x0, x and n0 must be positive");
  if (p < 2 || !is_probable_prime(p)) fail(to_string(p) + " is not prime");
  if (D % p == 0) fail("p divides D");
  if (x0 * x0 + D != ipow(p, n0)) fail("x0^2 + D is not p^n0");
  const Int pn = ipow(p, n);
  if ((x * x + D) % pn != 0) fail("p^n does not divide x^2 + D");

  const bool two = p == 2;
  // Norm exponents of gamma and beta.
  const unsigned long shift = two ? 2 : 0;
  if (two && (n0 <= 2 || D % 8 != 7)) fail("p = 2 needs n0 > 2 and D = 7 mod 8");
  const unsigned long base_exp = n0 - shift;
  if (n <= 5 * n0) fail("n = " + std::to_string(n) + " must exceed 5 n0 = " + std::to_string(5 * n0));

  const unsigned j = static_cast<unsigned>((n - shift) / (5 * base_exp));
  const unsigned k = 5 * j;
  const QuadInt beta = base_element(x0, D, two);
  const QuadInt gamma = base_element(x, D, two);
  const QuadInt beta_k = pow(beta, k);
  const std::optional<QuadInt> plus = exact_div(gamma, beta_k);
  const std::optional<QuadInt> minus = exact_div(gamma, beta_k.conj());
  if (plus && minus) {
    throw Error(ErrorCode::AmbiguousBranch, "both beta^k and its conjugate divide gamma");
  }
  if (!plus && !minus) {
    throw Error(ErrorCode::NeitherBranch, "neither beta^k nor its conjugate divides gamma");
  }
  // On the minus branch gamma = conj(beta)^k nu, so conj(gamma) = beta^k conj(nu).
  Decomposition dec{.D = D,
                    .p = p,
                    .x0 = x0,
                    .x = x,
                    .n0 = n0,
                    .n = n,
                    .j = j,
                    .k = k,
                    .l = (n - shift) - base_exp * k,
                    .branch = plus ? Branch::Plus : Branch::Minus,
                    .sign = plus ? 1 : -1,
                    .beta = beta,
                    .gamma = gamma,
                    .lambda = beta - beta.conj(),
                    .mu = plus ? *plus : minus->conj(),
                    .m = (x * x + D) / pn};

  const QuadInt lhs = beta_k * dec.mu - beta_k.conj() * dec.mu.conj();
  const QuadInt rhs = dec.sign > 0 ? dec.lambda : -dec.lambda;
  if (!(lhs == rhs)) throw Error(ErrorCode::IdentityViolation, "beta^k mu - conj(beta^k mu) != +-lambda");
  if (dec.mu.norm().value != ipow(p, dec.l) * dec.m) {
    throw Error(ErrorCode::IdentityViolation, "norm(mu) != p^l m");
  }
  return dec;
}

ChainAudit audit_chain(const HugeSolutionCertificate& cert, const Decomposition& dec, unsigned g) {
  if (g > 1) throw Error(ErrorCode::InvalidArgument, "g must be 0 or 1");
  if (dec.j == 0) throw Error(ErrorCode::InvalidArgument, "decomposition has j = 0");
  if (cert.D != dec.D || cert.p != dec.p || cert.x0 != dec.x0 || cert.n0 != dec.n0) {
    throw Error(ErrorCode::InvalidArgument, "certificate and decomposition describe different base solutions");
  }
  ChainAudit audit;
  audit.j = dec.j;
  audit.g = g;

  const PadeSystem sys = normalize(build_diagonal(dec.j, g));
  audit.r = sys.r();
  const ScaledEvaluation v = evaluate_scaled(sys, dec.beta);
  const QuadInt& P = v.p;
  const QuadInt& Q = v.q;
  QuadInt E = pow(dec.lambda, 2 * audit.r + 1) * v.e;
  if (audit.r % 2 == 1) E = -E;

  const QuadInt beta_k = pow(dec.beta, dec.k);
  const QuadInt mu_bar = dec.mu.conj();
  audit.pade_identity = beta_k * P - beta_k.conj() * Q == E;

  const QuadInt difference = Q * dec.mu - P * mu_bar;
  const QuadInt signed_q_lambda = dec.sign > 0 ? Q * dec.lambda : -(Q * dec.lambda);
  audit.combined_identity = beta_k * difference == signed_q_lambda - E * mu_bar;
  audit.nonzero = !difference.is_zero();
  audit.difference_norm = difference.norm().value;

  const Int beta_k_norm = beta_k.norm().value;
  const Int q_lambda_norm = Q.norm().value * dec.lambda.norm().value;
  const Int e_mu_norm = E.norm().value * dec.mu.norm().value;
  audit.chain_holds = sqrt_sum_dominates(q_lambda_norm, e_mu_norm, beta_k_norm);
  audit.chain_log10_margin = log10_sum_margin(q_lambda_norm, e_mu_norm, beta_k_norm);

  const bool two = dec.p == 2;
  audit.p_pow_gap = two ? 5 * (dec.n0 - 2) - 1 : 5 * dec.n0 - 1;
  audit.final_bound = dec.m * ipow(dec.p, audit.p_pow_gap) >= dec.mu.norm().value;

  audit.nine_tenths = 100 * q_lambda_norm < 81 * beta_k_norm;
  // |beta^k mu| = |gamma|; compare |gamma|^2 with 0.49 x^2.
  audit.point_seven = 100 * dec.gamma.norm().value > 49 * dec.x * dec.x;

  if (!audit.pade_identity || !audit.combined_identity) {
    throw Error(ErrorCode::IdentityViolation, "assembled identity fails in the chain audit");
  }
  return audit;
}

ChainAuditPair audit_both(const HugeSolutionCertificate& cert, const Decomposition& dec) {
  ChainAuditPair pair{audit_chain(cert, dec, 0), audit_chain(cert, dec, 1)};
  if (!pair.g0.nonzero && !pair.g1.nonzero) {
    throw Error(ErrorCode::BothBranchesVanish, "Q mu - P conj(mu) vanishes for g = 0 and g = 1");
  }
  return pair;
}

}  // namespace rnlab
