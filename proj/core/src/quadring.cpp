#include "rnlab/quadring.hpp"

#include "rnlab/error.hpp"

namespace rnlab {

namespace {

bool admits_half(const Int& d) { return mpz_fdiv_ui(d.get_mpz_t(), 4) == 3; }

void require_same_d(const QuadInt& a, const QuadInt& b) {
  if (a.d() != b.d()) {
    throw Error(ErrorCode::MixedD, "operands live in different rings: D=" + to_string(a.d()) +
                                       " vs D=" + to_string(b.d()));
  }
}

Int halve(const Int& even) {
  Int out;
  mpz_divexact_ui(out.get_mpz_t(), even.get_mpz_t(), 2);
  return out;
}

}  // namespace

QuadInt QuadInt::from_numerators(Int u, Int v, Int D, bool allow_half) {
  if (D <= 0) throw Error(ErrorCode::InvalidArgument, "D must be positive, got " + rnlab::to_string(D));
  if (is_perfect_square(D)) throw Error(ErrorCode::SquareD, "D=" + rnlab::to_string(D) + " is a perfect square");
  const bool u_odd = mpz_odd_p(u.get_mpz_t()) != 0;
  const bool v_odd = mpz_odd_p(v.get_mpz_t()) != 0;
  if (u_odd || v_odd) {
    if (!allow_half) {
      throw Error(ErrorCode::ParityViolation, "(" + rnlab::to_string(u) + ", " + rnlab::to_string(v) +
                                                  ") is not in Z[sqrt(-D)]; half-integral value not requested");
    }
    if (!admits_half(D) || u_odd != v_odd) {
      throw Error(ErrorCode::ParityViolation, "(" + rnlab::to_string(u) + " + " + rnlab::to_string(v) + "*sqrt(-" +
                                                  rnlab::to_string(D) + "))/2 is not an algebraic integer");
    }
  }
  return QuadInt(std::move(u), std::move(v), std::move(D));
}

QuadInt QuadInt::integral(const Int& a, const Int& b, const Int& D) {
  return from_numerators(2 * a, 2 * b, D, false);
}

QuadNorm QuadInt::norm() const {
  Int n = u_ * u_ + d_ * v_ * v_;
  mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), 4);
  return QuadNorm{std::move(n)};
}

QuadInt operator+(const QuadInt& a, const QuadInt& b) {
  require_same_d(a, b);
  return QuadInt(a.u_ + b.u_, a.v_ + b.v_, a.d_);
}

QuadInt operator-(const QuadInt& a, const QuadInt& b) {
  require_same_d(a, b);
  return QuadInt(a.u_ - b.u_, a.v_ - b.v_, a.d_);
}

QuadInt operator*(const QuadInt& a, const QuadInt& b) {
  require_same_d(a, b);
  // ((u1 + v1 s)(u2 + v2 s)) / 4 with s^2 = -D, rewritten over denominator 2.
  Int u = a.u_ * b.u_ - a.d_ * a.v_ * b.v_;
  Int v = a.u_ * b.v_ + a.v_ * b.u_;
  return QuadInt(halve(u), halve(v), a.d_);
}

QuadInt operator*(const Int& scalar, const QuadInt& a) { return QuadInt(scalar * a.u_, scalar * a.v_, a.d_); }

std::string QuadInt::to_string() const {
  const bool half = is_half_integral();
  Int re = half ? u_ : halve(u_);
  Int im = half ? v_ : halve(v_);
  std::string out;
  if (re != 0 || im == 0) out = rnlab::to_string(re);
  if (im != 0) {
    Int mag = abs(im);
    if (im < 0) out += "-";
    else if (!out.empty()) out += "+";
    if (mag != 1) out += rnlab::to_string(mag) + "*";
    out += "sqrt(-" + rnlab::to_string(d_) + ")";
  }
  return half ? "(" + out + ")/2" : out;
}

QuadInt pow(const QuadInt& base, unsigned long exponent) {
  QuadInt result = QuadInt::from_int(1, base.d());
  QuadInt square = base;
  while (exponent > 0) {
    if (exponent & 1UL) result = result * square;
    exponent >>= 1;
    if (exponent > 0) square = square * square;
  }
  return result;
}

std::optional<QuadInt> exact_div(const QuadInt& a, const QuadInt& b) {
  require_same_d(a, b);
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "exact_div by zero");
  const Int n = b.norm().value;
  const QuadInt c = a * b.conj();
  // c = (cu + cv s)/2 and the quotient is (cu/n + (cv/n) s)/2.
  if (!mpz_divisible_p(c.u().get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(c.v().get_mpz_t(), n.get_mpz_t())) {
    return std::nullopt;
  }
  Int u, v;
  mpz_divexact(u.get_mpz_t(), c.u().get_mpz_t(), n.get_mpz_t());
  mpz_divexact(v.get_mpz_t(), c.v().get_mpz_t(), n.get_mpz_t());
  const bool u_odd = mpz_odd_p(u.get_mpz_t()) != 0;
  const bool v_odd = mpz_odd_p(v.get_mpz_t()) != 0;
  if ((u_odd || v_odd) && (u_odd != v_odd || mpz_fdiv_ui(a.d().get_mpz_t(), 4) != 3)) return std::nullopt;
  return QuadInt::from_numerators(std::move(u), std::move(v), a.d(), true);
}

}  // namespace rnlab
