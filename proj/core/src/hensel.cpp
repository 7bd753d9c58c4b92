#include "rnlab/hensel.hpp"

#include <algorithm>

#include "rnlab/error.hpp"

namespace rnlab {

namespace {

Int mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

Int powm(const Int& base, const Int& exponent, const Int& m) {
  Int result;
  mpz_powm(result.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), m.get_mpz_t());
  return result;
}

Int invert(const Int& a, const Int& m) {
  Int result;
  if (mpz_invert(result.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error(ErrorCode::InvalidArgument, to_string(a) + " is not invertible mod " + to_string(m));
  }
  return result;
}

Int tonelli_shanks(const Int& a, const Int& p) {
  if (p % 4 == 3) return powm(a, (p + 1) / 4, p);
  Int q = p - 1;
  unsigned long s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  // Smallest non-residue, searched deterministically.
  Int z = 2;
  while (legendre(z, p) != -1) ++z;
  Int c = powm(z, q, p);
  Int x = powm(a, (q + 1) / 2, p);
  Int t = powm(a, q, p);
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    Int t2 = t;
    while (t2 != 1) {
      t2 = t2 * t2 % p;
      ++i;
    }
    Int b = c;
    for (unsigned long e = 0; e + i + 1 < m; ++e) b = b * b % p;
    x = x * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return x;
}

void require_invariant(const LiftState& state) {
  if (!verify_state(state)) {
    throw Error(ErrorCode::IdentityViolation, "lifted root fails its congruence at n = " + std::to_string(state.n));
  }
}

}  // namespace

std::vector<Int> LiftState::roots() const {
  std::vector<Int> out;
  out.reserve(2 * seeds.size());
  if (p == 2) {
    // Seeds are all roots below 2^(n-1) (or all roots when n <= 2); the rest
    // are their negatives.
    for (const Int& s : seeds) {
      out.push_back(s);
      Int neg = mod(-s, modulus);
      out.push_back(neg);
    }
  } else {
    for (const Int& s : seeds) {
      out.push_back(s);
      out.push_back(modulus - s);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int legendre(const Int& a, const Int& p) { return mpz_legendre(mod(a, p).get_mpz_t(), p.get_mpz_t()); }

std::optional<std::pair<Int, Int>> sqrt_mod_p(const Int& a, const Int& p) {
  if (p <= 2 || !is_probable_prime(p)) {
    throw Error(ErrorCode::CompositeModulus, to_string(p) + " is not an odd prime");
  }
  const Int r = mod(a, p);
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "sqrt_mod_p requires p not dividing a");
  if (legendre(r, p) != 1) return std::nullopt;
  Int x = tonelli_shanks(r, p);
  Int y = p - x;
  if (y < x) std::swap(x, y);
  return std::make_pair(x, y);
}

LiftState lift_step_odd(const LiftState& state) {
  LiftState next;
  next.p = state.p;
  next.D = state.D;
  next.n = state.n + 1;
  next.modulus = state.modulus * state.p;
  for (const Int& r : state.seeds) {
    // r + t p^n with t = -((r^2 + D) / p^n) * (2r)^(-1) mod p.
    const Int quotient = (r * r + state.D) / state.modulus;
    const Int t = mod(-quotient * invert(2 * r, state.p), state.p);
    Int lifted = r + t * state.modulus;
    const Int other = next.modulus - lifted;
    next.seeds.push_back(std::min(lifted, other));
  }
  std::sort(next.seeds.begin(), next.seeds.end());
  require_invariant(next);
  return next;
}

LiftState lift_step_two(const LiftState& state) {
  if (state.n < 3) throw Error(ErrorCode::InvalidArgument, "lift_step_two requires n >= 3");
  LiftState next;
  next.p = state.p;
  next.D = state.D;
  next.n = state.n + 1;
  next.modulus = state.modulus * 2;
  const Int half = state.modulus / 2;  // 2^(n-1)
  // A root s mod 2^n either stays a root mod 2^(n+1) or s + 2^(n-1) does.
  // The roots mod 2^(n+1) are then +-s' and +-s' + 2^n.
  const Int& s = state.seeds.front();
  Int base = (s * s + state.D) % next.modulus == 0 ? s : s + half;
  std::vector<Int> all = {mod(base, next.modulus), mod(-base, next.modulus), mod(base + state.modulus, next.modulus),
                          mod(-base + state.modulus, next.modulus)};
  const Int next_half = next.modulus / 2;
  for (const Int& r : all) {
    if (r < next_half) next.seeds.push_back(r);
  }
  std::sort(next.seeds.begin(), next.seeds.end());
  next.seeds.erase(std::unique(next.seeds.begin(), next.seeds.end()), next.seeds.end());
  require_invariant(next);
  return next;
}

LiftState lift_step(const LiftState& state) { return state.p == 2 ? lift_step_two(state) : lift_step_odd(state); }

LiftState lift_two(const Int& D, unsigned long n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "exponent must be at least 1");
  if (D <= 0 || D % 2 == 0) throw Error(ErrorCode::NoRoot, "x^2 + D mod 2^n needs odd positive D");
  LiftState state;
  state.p = 2;
  state.D = D;
  const unsigned long direct = std::min<unsigned long>(n, 3);
  state.n = direct;
  state.modulus = ipow(Int(2), direct);
  // n <= 2: every seed is kept; n = 3: residues below 4.
  for (Int r = 0; r < state.modulus; ++r) {
    if ((r * r + D) % state.modulus != 0) continue;
    if (direct < 3 || r < state.modulus / 2) state.seeds.push_back(r);
  }
  if (state.seeds.empty()) {
    throw Error(ErrorCode::NoRoot, "x^2 + " + to_string(D) + " has no root mod 2^" + std::to_string(direct));
  }
  while (state.n < n) state = lift_step_two(state);
  return state;
}

LiftState roots_mod_pn(const Int& D, const Int& p, unsigned long n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "exponent must be at least 1");
  if (D <= 0) throw Error(ErrorCode::InvalidArgument, "D must be positive");
  if (p < 2 || !is_probable_prime(p)) throw Error(ErrorCode::CompositeModulus, to_string(p) + " is not prime");
  if (D % p == 0) throw Error(ErrorCode::NoRoot, "p divides D");
  if (p == 2) return lift_two(D, n);
  const auto base = sqrt_mod_p(-D, p);
  if (!base) throw Error(ErrorCode::NoSplit, "-" + to_string(D) + " is not a square mod " + to_string(p));
  LiftState state;
  state.p = p;
  state.D = D;
  state.n = 1;
  state.modulus = p;
  state.seeds = {base->first};
  while (state.n < n) state = lift_step_odd(state);
  return state;
}

bool verify_state(const LiftState& state) {
  for (const Int& r : state.roots()) {
    if ((r * r + state.D) % state.modulus != 0) return false;
  }
  return true;
}

}  // namespace rnlab
