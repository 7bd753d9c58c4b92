#include "rnlab/pade.hpp"

#include <string>

#include "rnlab/error.hpp"

namespace rnlab {

namespace {

Int signed_if(bool negative, Int value) { return negative ? Int(-value) : value; }

std::string describe(const PadeSystem& s) {
  if (const auto* d = std::get_if<DiagonalParams>(&s.params)) {
    return "diagonal(j=" + std::to_string(d->j) + ", g=" + std::to_string(d->g) + ")";
  }
  const auto& g = std::get<GeneralParams>(s.params);
  return "general(A=" + std::to_string(g.a) + ", B=" + std::to_string(g.b) + ", C=" + std::to_string(g.c) + ")";
}

}  // namespace

unsigned PadeSystem::k() const {
  if (const auto* d = std::get_if<DiagonalParams>(&params)) return d->k();
  const auto& g = std::get<GeneralParams>(params);
  return g.b + g.c + 1;
}

unsigned PadeSystem::remainder_order() const {
  if (const auto* d = std::get_if<DiagonalParams>(&params)) return 2 * d->r() + 1;
  const auto& g = std::get<GeneralParams>(params);
  return g.a + g.c + 1;
}

unsigned PadeSystem::r() const {
  if (const auto* d = std::get_if<DiagonalParams>(&params)) return d->r();
  return std::get<GeneralParams>(params).a;
}

Int binom(unsigned long n, long k) { return binomial(n, k); }

PadeSystem build_general(unsigned a, unsigned b, unsigned c, bool allow_zero) {
  if (!allow_zero && (a == 0 || b == 0 || c == 0)) {
    throw Error(ErrorCode::InvalidArgument, "build_general requires A, B, C >= 1 (got " + std::to_string(a) + ", " +
                                                std::to_string(b) + ", " + std::to_string(c) + ")");
  }
  const unsigned long s = static_cast<unsigned long>(a) + b + c + 1;
  const bool c_odd = c % 2 == 1;

  std::vector<Int> p(c + 1), q(a + 1), e(b + 1);
  for (unsigned i = 0; i <= c; ++i) {
    p[i] = signed_if(c_odd != (i % 2 == 1), binom(s, i) * binom(a + c - i, a));
  }
  for (unsigned i = 0; i <= a; ++i) {
    q[i] = signed_if(c_odd, binom(a + c - i, c) * binom(b + i, i));
  }
  for (unsigned i = 0; i <= b; ++i) {
    e[i] = signed_if(i % 2 == 1, binom(a + i, i) * binom(s, static_cast<long>(a + c + i + 1)));
  }

  PadeSystem sys{GeneralParams{a, b, c}, IntPolynomial(std::move(p)), IntPolynomial(std::move(q)),
                 IntPolynomial(std::move(e))};
  if (!verify_identity(sys)) throw Error(ErrorCode::IdentityViolation, "identity fails for " + describe(sys));
  return sys;
}

PadeSystem build_diagonal(unsigned j, unsigned g) {
  if (j == 0 || g > 1) {
    throw Error(ErrorCode::InvalidArgument, "build_diagonal requires j >= 1 and g in {0,1}");
  }
  const DiagonalParams params{j, g};
  const unsigned r = params.r();
  const unsigned long top = 9UL * j - g;    // k + r
  const unsigned long mid = 8UL * j - 2 * g;  // 2r

  std::vector<Int> p(r + 1), q(r + 1), e(j + g);
  for (unsigned i = 0; i <= r; ++i) {
    p[i] = signed_if(i % 2 == 1, binom(top, i) * binom(mid - i, r));
    q[i] = binom(mid - i, r) * binom(j + g - 1 + i, i);
  }
  // The printed upper limit i = j + g contributes binom(9j-g, 9j-g+1) = 0.
  for (unsigned i = 0; i < j + g; ++i) {
    e[i] = signed_if(i % 2 == 1, binom(r + i, i) * binom(top, static_cast<long>(mid + i + 1)));
  }
  return PadeSystem{params, IntPolynomial(std::move(p)), IntPolynomial(std::move(q)), IntPolynomial(std::move(e))};
}

bool verify_identity(const PadeSystem& s) {
  const IntPolynomial lhs = s.p - IntPolynomial::one_minus_z_pow(s.k()) * s.q;
  Int sign = 1;
  if (s.is_diagonal() && s.r() % 2 == 1) sign = -1;
  const IntPolynomial rhs = IntPolynomial::monomial(sign, s.remainder_order()) * s.e;
  return lhs == rhs;
}

Int content(unsigned j, unsigned g) { return build_diagonal(j, g).q.content(); }

PadeSystem normalize(const PadeSystem& s) {
  if (!s.is_diagonal()) throw Error(ErrorCode::InvalidArgument, "normalize expects a diagonal system");
  if (s.normalized) return s;
  const Int c = s.q.content();
  auto p = s.p.divide_exact(c);
  auto q = s.q.divide_exact(c);
  auto e = s.e.divide_exact(c);
  if (!p || !q || !e) {
    throw Error(ErrorCode::ContentViolation,
                "c_g(j) = " + to_string(c) + " does not divide every coefficient of " + describe(s));
  }
  PadeSystem out{s.params, std::move(*p), std::move(*q), std::move(*e), c, true};
  return out;
}

Int cross_constant(const PadeSystem& lower, const PadeSystem& upper) {
  if (lower.k() != upper.k() || lower.r() + 1 != upper.r()) {
    throw Error(ErrorCode::InvalidArgument, "cross_constant needs a shared k and adjacent r: " + describe(lower) +
                                                " vs " + describe(upper));
  }
  const IntPolynomial residual = lower.p * upper.q - lower.q * upper.p;
  const auto mono = residual.as_monomial();
  const std::size_t expected = 2 * static_cast<std::size_t>(lower.r()) + 1;
  if (!mono || mono->first != expected) {
    throw Error(ErrorCode::NotMonomial, "P_r Q_{r+1} - Q_r P_{r+1} is not c*z^" + std::to_string(expected) + " for " +
                                            describe(lower) + " / " + describe(upper));
  }
  return mono->second;
}

QuadInt eval_at_z0(const IntPolynomial& poly, const QuadInt& beta, unsigned deg_scale) {
  if (poly.degree() > static_cast<long>(deg_scale)) {
    throw Error(ErrorCode::InvalidArgument, "eval_at_z0: deg_scale " + std::to_string(deg_scale) +
                                                " below polynomial degree " + std::to_string(poly.degree()));
  }
  if (poly.is_zero()) return QuadInt::from_int(0, beta.d());
  const QuadInt lambda = beta - beta.conj();
  const auto& c = poly.coeffs();
  const std::size_t n = c.size() - 1;

  // Homogeneous Horner: acc = sum_i c_i lambda^i beta^(n-i).
  QuadInt acc = QuadInt::from_int(c[n], beta.d());
  QuadInt beta_pow = beta;
  for (std::size_t i = n; i-- > 0;) {
    acc = acc * lambda + c[i] * beta_pow;
    if (i > 0) beta_pow = beta_pow * beta;
  }
  return acc * pow(beta, deg_scale - n);
}

ScaledEvaluation evaluate_scaled(const PadeSystem& diagonal, const QuadInt& beta) {
  if (!diagonal.is_diagonal()) throw Error(ErrorCode::InvalidArgument, "evaluate_scaled expects a diagonal system");
  const unsigned r = diagonal.r();
  const unsigned k = diagonal.k();
  return ScaledEvaluation{eval_at_z0(diagonal.p, beta, r), eval_at_z0(diagonal.q, beta, r),
                          eval_at_z0(diagonal.e, beta, k - r - 1)};
}

bool verify_assembled_identity(const PadeSystem& diagonal, const QuadInt& beta) {
  const ScaledEvaluation v = evaluate_scaled(diagonal, beta);
  const unsigned r = diagonal.r();
  const unsigned k = diagonal.k();
  const QuadInt lambda = beta - beta.conj();
  const QuadInt lhs = pow(beta, k) * v.p - pow(beta.conj(), k) * v.q;
  QuadInt rhs = pow(lambda, 2 * r + 1) * v.e;
  if (r % 2 == 1) rhs = -rhs;
  return lhs == rhs;
}

}  // namespace rnlab
