#include <doctest.h>

#include <cmath>

#include "../oracles/oracles.hpp"
#include "rnlab/error.hpp"
#include "rnlab/pade.hpp"

using namespace rnlab;

namespace {
IntPolynomial poly(std::initializer_list<long> c) {
  std::vector<Int> v;
  for (long x : c) v.emplace_back(x);
  return IntPolynomial(v);
}
}  // namespace

TEST_CASE("binom") {
  CHECK(binom(8, 4) == 70);
  CHECK(binom(9, 9) == 1);
  CHECK(binom(4, -1) == 0);
}

TEST_CASE("diagonal j=1 systems") {
  const PadeSystem s0 = build_diagonal(1, 0);
  CHECK(s0.p == poly({70, -315, 540, -420, 126}));
  CHECK(s0.q == poly({70, 35, 15, 5, 1}));
  CHECK(s0.e == poly({1}));
  CHECK(s0.p - IntPolynomial::one_minus_z_pow(5) * s0.q == IntPolynomial::monomial(1, 9));

  const PadeSystem s1 = build_diagonal(1, 1);
  CHECK(s1.q == poly({20, 20, 12, 4}));
  CHECK(s1.p == poly({20, -80, 112, -56}));
  CHECK(s1.e == poly({8, -4}));
  // r = 3 is odd, so the remainder carries a minus sign.
  CHECK(s1.p - IntPolynomial::one_minus_z_pow(5) * s1.q == -1 * (IntPolynomial::monomial(1, 7) * s1.e));
}

TEST_CASE("general systems with the zero extension") {
  const PadeSystem s = build_general(4, 0, 4, true);
  CHECK(s.p == poly({70, -315, 540, -420, 126}));
  CHECK(s.q == poly({70, 35, 15, 5, 1}));
  CHECK(s.e == poly({1}));
  CHECK_THROWS_AS(build_general(4, 0, 4), Error);
  const PadeSystem t = build_general(1, 1, 1);
  CHECK(t.p - IntPolynomial::one_minus_z_pow(3) * t.q == IntPolynomial::monomial(1, 3) * t.e);
}

TEST_CASE("general systems agree with the linear-solve oracle") {
  for (unsigned A = 1; A <= 6; ++A) {
    for (unsigned B = 1; B <= 6; ++B) {
      for (unsigned C = 1; C <= 6; ++C) {
        const PadeSystem s = build_general(A, B, C);
        const oracle::RationalPair o = oracle::pade_by_linear_solve(A, B, C);
        CAPTURE(A);
        CAPTURE(B);
        CAPTURE(C);
        REQUIRE(static_cast<long>(o.p.size()) - 1 >= s.p.degree());
        for (std::size_t i = 0; i < o.p.size(); ++i) CHECK(Rational(s.p.coeff(i)) == o.p[i]);
        for (std::size_t i = 0; i < o.q.size(); ++i) CHECK(Rational(s.q.coeff(i)) == o.q[i]);
        CHECK(s.p.coeff(0) == s.q.coeff(0));
      }
    }
  }
}

TEST_CASE("diagonal degrees and identity for j <= 8") {
  for (unsigned j = 1; j <= 8; ++j) {
    for (unsigned g = 0; g <= 1; ++g) {
      const PadeSystem s = build_diagonal(j, g);
      CHECK(s.p.degree() == 4 * j - g);
      CHECK(s.q.degree() == 4 * j - g);
      CHECK(s.e.degree() == j + g - 1);
      CHECK(verify_identity(s));
    }
  }
}

TEST_CASE("contents") {
  const long c0[] = {1, 9, 13, 51, 231, 585, 899, 1683, 9139, 19393};
  const long c1[] = {4, 4, 52, 68, 308, 260, 3596, 748, 36556, 77572};
  for (unsigned j = 1; j <= 10; ++j) {
    CHECK(content(j, 0) == c0[j - 1]);
    CHECK(content(j, 1) == c1[j - 1]);
    CHECK(content(j, 0) == oracle::content_by_formula(j, 0));
    CHECK(content(j, 1) == oracle::content_by_formula(j, 1));
  }
  CHECK(Rational(content(51, 0)) > rpow(Rational(2943, 1000), 51));
}

TEST_CASE("normalization") {
  const PadeSystem n0 = normalize(build_diagonal(1, 0));
  CHECK(n0.q == build_diagonal(1, 0).q);
  const PadeSystem n1 = normalize(build_diagonal(1, 1));
  CHECK(n1.q == poly({5, 5, 3, 1}));
  CHECK(n1.content == 4);
  const PadeSystem n60 = normalize(build_diagonal(60, 0));
  CHECK(n60.q.content() == 1);
  const PadeSystem raw60 = build_diagonal(60, 0);
  CHECK(n60.content * n60.p == raw60.p);
  CHECK(n60.content * n60.e == raw60.e);
}

TEST_CASE("cross constants") {
  const Int expected[] = {Int("-560"),
                          Int("-1750320"),
                          Int("-7030805600"),
                          Int("-31472569220400"),
                          Int("-149702433070750560"),
                          Int("-740323716602694588000"),
                          Int("-3761596605292552665826880"),
                          Int("-19497518486385288718300691760")};
  for (unsigned j = 1; j <= 8; ++j) {
    CHECK(cross_constant(build_diagonal(j, 1), build_diagonal(j, 0)) == expected[j - 1]);
    const Int starred = cross_constant(normalize(build_diagonal(j, 1)), normalize(build_diagonal(j, 0)));
    CHECK(starred * content(j, 0) * content(j, 1) == expected[j - 1]);
  }
  try {
    cross_constant(build_diagonal(2, 0), build_diagonal(2, 0));
    FAIL("self pairing accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("evaluation at z0") {
  const QuadInt beta = QuadInt::integral(1015, 1, 76);
  CHECK(eval_at_z0(poly({1}), beta, 0) == QuadInt::from_int(1, 76));
  const PadeSystem s = build_diagonal(1, 0);
  const QuadInt v = eval_at_z0(s.q, beta, 4);
  // |Q(z0)| from the floating-point oracle.
  const long double expected = oracle::abs_at_z0(s.q.coeffs(), 2030, 2, 76);
  const long double got = std::sqrt(static_cast<long double>(v.norm().value.get_d()) / std::pow(1030301.0L, 4));
  CHECK(static_cast<double>(got) == doctest::Approx(static_cast<double>(expected)).epsilon(1e-12));
  CHECK(static_cast<double>(got) == doctest::Approx(70.00332).epsilon(1e-6));
  for (unsigned j = 1; j <= 4; ++j) {
    for (unsigned g = 0; g <= 1; ++g) CHECK(verify_assembled_identity(normalize(build_diagonal(j, g)), beta));
  }
  // Conjugating beta conjugates the result.
  CHECK(eval_at_z0(s.p, beta.conj(), 4) == eval_at_z0(s.p, beta, 4).conj());
  // The halved convention works as well.
  const QuadInt half = QuadInt::from_numerators(181, 1, 7, true);
  CHECK(verify_assembled_identity(build_diagonal(2, 1), half));
}
