#include <doctest.h>

#include <algorithm>

#include "../oracles/oracles.hpp"
#include "rnlab/error.hpp"
#include "rnlab/hensel.hpp"

using namespace rnlab;

namespace {
std::vector<std::uint64_t> as_u64(const std::vector<Int>& v) {
  std::vector<std::uint64_t> out;
  for (const Int& x : v) out.push_back(x.get_ui());
  return out;
}
}  // namespace

TEST_CASE("square roots mod p") {
  const auto r = sqrt_mod_p(Int(101 - 76), Int(101));
  REQUIRE(r);
  CHECK(r->first == 5);
  CHECK(r->second == 96);
  CHECK_FALSE(sqrt_mod_p(Int(6), Int(7)));
  const auto s = sqrt_mod_p(Int(2), Int(7));
  REQUIRE(s);
  CHECK(s->first == 3);
  CHECK(s->second == 4);
  // p = 1 mod 8 exercises the full Tonelli-Shanks loop.
  for (long prime : {41L, 73L, 97L, 113L, 257L, 7681L}) {
    for (long a = 1; a < prime; ++a) {
      bool residue = false;
      for (long x = 1; x < prime && !residue; ++x) residue = (x * x - a) % prime == 0;
      const auto t = sqrt_mod_p(Int(a), Int(prime));
      CHECK(t.has_value() == residue);
      if (t) {
        CHECK((t->first * t->first - a) % prime == 0);
        CHECK(t->first + t->second == prime);
      }
    }
  }
  try {
    sqrt_mod_p(Int(2), Int(15));
    FAIL("composite accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CompositeModulus);
  }
}

TEST_CASE("odd lifting") {
  LiftState s = roots_mod_pn(76, 101, 1);
  CHECK(s.roots() == std::vector<Int>{5, 96});
  s = lift_step_odd(s);
  CHECK(s.roots() == std::vector<Int>{1015, 9186});
  s = lift_step_odd(s);
  CHECK(s.roots() == std::vector<Int>{1015, 1029286});
  const LiftState t = roots_mod_pn(76, 101, 40);
  CHECK(t.roots().size() == 2);
  CHECK(t.roots()[0] + t.roots()[1] == t.modulus);
  CHECK(verify_state(t));
}

TEST_CASE("lifting modulo powers of two") {
  const LiftState s = lift_two(7, 15);
  const auto roots = s.roots();
  CHECK(std::find(roots.begin(), roots.end(), Int(181)) != roots.end());
  CHECK(roots.size() == 4);
  CHECK(lift_two(7, 3).roots() == std::vector<Int>{1, 3, 5, 7});
  CHECK(lift_two(7, 1).roots().size() == 1);
  CHECK(lift_two(7, 2).roots().size() == 2);
  try {
    lift_two(5, 3);
    FAIL("D = 5 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoRoot);
  }
}

TEST_CASE("roots_mod_pn errors") {
  // -76 mod 103: Legendre symbol decides.
  const int symbol = legendre(Int(-76), Int(103));
  if (symbol == 1) {
    CHECK(roots_mod_pn(76, 103, 1).roots().size() == 2);
  } else {
    CHECK_THROWS_AS(roots_mod_pn(76, 103, 1), Error);
  }
  try {
    roots_mod_pn(76, 2, 3);
    FAIL("p | D accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoRoot);
  }
  try {
    roots_mod_pn(7, 5, 1);  // -7 = 3 mod 5 is a non-residue
    FAIL("non-split accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoSplit);
  }
}

TEST_CASE("agreement with brute force for small moduli") {
  for (long D : {7L, 23L, 47L, 76L}) {
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 101L}) {
      if (D % p == 0) continue;
      std::uint64_t modulus = 1;
      for (unsigned long n = 1; modulus * p <= 1000000; ++n) {
        modulus *= p;
        const auto expected = oracle::brute_roots(D, modulus);
        std::vector<std::uint64_t> got;
        try {
          got = as_u64(roots_mod_pn(D, p, n).roots());
        } catch (const Error& e) {
          CHECK((e.code() == ErrorCode::NoSplit || e.code() == ErrorCode::NoRoot));
        }
        CAPTURE(D);
        CAPTURE(p);
        CAPTURE(n);
        CHECK(got == expected);
      }
    }
  }
}

TEST_CASE("lift compatibility") {
  const LiftState a = roots_mod_pn(23, 3, 8);
  const LiftState b = lift_step(a);
  for (const Int& r : b.roots()) {
    const Int reduced = r % a.modulus;
    const auto roots = a.roots();
    CHECK(std::find(roots.begin(), roots.end(), reduced) != roots.end());
  }
}
