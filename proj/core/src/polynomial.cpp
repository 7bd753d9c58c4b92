#include "rnlab/polynomial.hpp"

#include <algorithm>

#include "rnlab/error.hpp"

namespace rnlab {

// ---------------------------------------------------------------- IntPolynomial

IntPolynomial::IntPolynomial(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::monomial(const Int& coeff, std::size_t degree) {
  std::vector<Int> c(degree + 1, Int(0));
  c[degree] = coeff;
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::one_minus_z_pow(unsigned k) {
  std::vector<Int> c(k + 1);
  for (unsigned i = 0; i <= k; ++i) {
    c[i] = binomial(k, i);
    if (i % 2 == 1) c[i] = -c[i];
  }
  return IntPolynomial(std::move(c));
}

Int IntPolynomial::content() const {
  Int g = 0;
  for (const Int& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

std::optional<IntPolynomial> IntPolynomial::divide_exact(const Int& d) const {
  if (d == 0) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  std::vector<Int> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!mpz_divisible_p(coeffs_[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
    mpz_divexact(out[i].get_mpz_t(), coeffs_[i].get_mpz_t(), d.get_mpz_t());
  }
  return IntPolynomial(std::move(out));
}

std::optional<std::pair<std::size_t, Int>> IntPolynomial::as_monomial() const {
  if (coeffs_.empty()) return std::nullopt;
  const std::size_t top = coeffs_.size() - 1;
  for (std::size_t i = 0; i < top; ++i) {
    if (coeffs_[i] != 0) return std::nullopt;
  }
  return std::make_pair(top, coeffs_[top]);
}

Int IntPolynomial::evaluate(const Int& z) const {
  Int acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Int> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Int> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Int> c(a.coeffs_.size() + b.coeffs_.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpz_addmul(c[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const Int& s, const IntPolynomial& a) {
  std::vector<Int> c = a.coeffs_;
  for (Int& x : c) x *= s;
  return IntPolynomial(std::move(c));
}

// ---------------------------------------------------------------- RatPolynomial

RatPolynomial::RatPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (Rational& c : coeffs_) c.canonicalize();
  trim();
}

RatPolynomial::RatPolynomial(const IntPolynomial& p) {
  coeffs_.reserve(p.coeffs().size());
  for (const Int& c : p.coeffs()) coeffs_.emplace_back(c);
}

void RatPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RatPolynomial RatPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> c(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return RatPolynomial(std::move(c));
}

Rational RatPolynomial::integral_0_1() const {
  Rational total = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) total += coeffs_[i] / Rational(static_cast<unsigned long>(i + 1));
  total.canonicalize();
  return total;
}

Rational RatPolynomial::evaluate(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  acc.canonicalize();
  return acc;
}

RationalRange RatPolynomial::evaluate_range(const Rational& lo, const Rational& hi) const {
  Rational acc_lo = 0, acc_hi = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const Rational products[4] = {acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi};
    acc_lo = *std::min_element(std::begin(products), std::end(products)) + *it;
    acc_hi = *std::max_element(std::begin(products), std::end(products)) + *it;
  }
  return {acc_lo, acc_hi};
}

RatPolynomial RatPolynomial::monic() const {
  if (is_zero()) return *this;
  RatPolynomial out = *this;
  const Rational lead = leading();
  for (Rational& c : out.coeffs_) c /= lead;
  return out;
}

std::pair<RatPolynomial, RatPolynomial> RatPolynomial::divmod(const RatPolynomial& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (degree() < divisor.degree()) return {RatPolynomial{}, *this};
  std::vector<Rational> rem = coeffs_;
  std::vector<Rational> quot(coeffs_.size() - divisor.coeffs_.size() + 1, Rational(0));
  const std::size_t dd = divisor.coeffs_.size() - 1;
  for (std::size_t i = quot.size(); i-- > 0;) {
    const Rational factor = rem[i + dd] / divisor.leading();
    quot[i] = factor;
    if (factor == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[i + j] -= factor * divisor.coeffs_[j];
  }
  return {RatPolynomial(std::move(quot)), RatPolynomial(std::move(rem))};
}

RatPolynomial operator+(const RatPolynomial& a, const RatPolynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return RatPolynomial(std::move(c));
}

RatPolynomial operator-(const RatPolynomial& a, const RatPolynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return RatPolynomial(std::move(c));
}

RatPolynomial operator*(const RatPolynomial& a, const RatPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return RatPolynomial(std::move(c));
}

RatPolynomial operator*(const Rational& s, const RatPolynomial& a) {
  std::vector<Rational> c = a.coeffs_;
  for (Rational& x : c) x *= s;
  return RatPolynomial(std::move(c));
}

RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b) {
  RatPolynomial x = a, y = b;
  while (!y.is_zero()) {
    RatPolynomial r = x.divmod(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

RatPolynomial squarefree_part(const RatPolynomial& p) {
  if (p.degree() <= 0) return p.monic();
  RatPolynomial g = gcd(p, p.derivative());
  return p.divmod(g).first.monic();
}

namespace {

using SturmChain = std::vector<RatPolynomial>;

SturmChain sturm_chain(const RatPolynomial& p) {
  SturmChain chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    RatPolynomial r = chain[chain.size() - 2].divmod(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(Rational(-1) * r);
  }
  return chain;
}

int sign_changes(const SturmChain& chain, const Rational& t) {
  int changes = 0;
  int last = 0;
  for (const RatPolynomial& q : chain) {
    const int s = sgn(q.evaluate(t));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Number of distinct roots in (a, b] for a squarefree polynomial.
int roots_in(const SturmChain& chain, const Rational& a, const Rational& b) {
  return sign_changes(chain, a) - sign_changes(chain, b);
}

}  // namespace

std::vector<RationalRange> isolate_real_roots(const RatPolynomial& p, const Rational& lo, const Rational& hi,
                                              const Rational& max_width) {
  std::vector<RationalRange> out;
  if (p.degree() <= 0) return out;
  const RatPolynomial sf = squarefree_part(p);
  const SturmChain chain = sturm_chain(sf);

  // Sturm counts cover (a, b]; a root sitting on the left end is reported alone.
  if (sf.evaluate(lo) == 0) out.push_back({lo, lo});

  std::vector<RationalRange> pending{{lo, hi}};
  while (!pending.empty()) {
    RationalRange cur = pending.back();
    pending.pop_back();
    const int count = roots_in(chain, cur.lo, cur.hi);
    if (count == 0) continue;
    const Rational width = cur.hi - cur.lo;
    if (count == 1 && (width <= max_width || sf.evaluate(cur.hi) == 0)) {
      if (sf.evaluate(cur.hi) == 0) {
        out.push_back({cur.hi, cur.hi});
      } else {
        out.push_back(cur);
      }
      continue;
    }
    // Split at a point that is not itself a root: 1/2, then 1/3, 2/3, 1/4, ...
    Rational split;
    for (unsigned long den = 2;; ++den) {
      bool found = false;
      for (unsigned long num = 1; num < den && !found; ++num) {
        split = cur.lo + width * Rational(num, den);
        split.canonicalize();
        found = sf.evaluate(split) != 0;
      }
      if (found) break;
    }
    pending.push_back({split, cur.hi});
    pending.push_back({cur.lo, split});
  }
  std::sort(out.begin(), out.end(), [](const RationalRange& a, const RationalRange& b) { return a.lo < b.lo; });
  return out;
}

}  // namespace rnlab
