#pragma once

// Roots of x^2 + D modulo prime powers.

#include <optional>
#include <utility>
#include <vector>

#include "rnlab/numeric.hpp"

namespace rnlab {

/// Snapshot of the root set of x^2 + D = 0 mod p^n.
///
/// For odd p only the smaller representative of each pair {r, p^n - r} is
/// stored; for p = 2 the stored seeds are the residues below 2^(n-1).
struct LiftState {
  Int p;
  Int D;
  unsigned long n = 0;
  Int modulus;             // p^n
  std::vector<Int> seeds;  // sorted ascending

  /// Full root set in [0, p^n), ascending.
  std::vector<Int> roots() const;
};

/// Both square roots of a modulo an odd prime p, smaller first, or nullopt
/// when a is a non-residue. Throws CompositeModulus when p is not prime and
/// InvalidArgument when p | a.
std::optional<std::pair<Int, Int>> sqrt_mod_p(const Int& a, const Int& p);

/// Legendre symbol (a|p) for an odd prime p.
int legendre(const Int& a, const Int& p);

/// One lifting step for odd p: roots mod p^n -> roots mod p^(n+1).
LiftState lift_step_odd(const LiftState& state);

/// One lifting step for p = 2, n >= 3.
LiftState lift_step_two(const LiftState& state);

LiftState lift_step(const LiftState& state);

/// Roots of x^2 + D mod 2^n for odd D. Throws NoRoot when there are none.
LiftState lift_two(const Int& D, unsigned long n);

/// Full root set mod p^n. Throws NoRoot when p | D or (p = 2) no root exists,
/// NoSplit when p is odd and -D is a non-residue.
LiftState roots_mod_pn(const Int& D, const Int& p, unsigned long n);

/// Checks r^2 + D = 0 mod p^n for every root of the state.
bool verify_state(const LiftState& state);

}  // namespace rnlab
