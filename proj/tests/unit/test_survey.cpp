#include <doctest.h>

#include <set>

#include "../oracles/oracles.hpp"
#include "rnlab/error.hpp"
#include "rnlab/survey.hpp"

using namespace rnlab;

namespace {
std::set<std::string> exception_xs(const SurveyReport& r) {
  std::set<std::string> out;
  for (const auto& e : r.exceptions) out.insert(to_string(e.x));
  return out;
}
}  // namespace

TEST_CASE("power_compare") {
  CHECK(power_compare(1, 5, 7, 50) == PowerOrder::LessOrEqual);
  CHECK(power_compare(92, 96, 7, 50) == PowerOrder::Greater);
  CHECK(power_compare(101, 1015, 7, 50) == PowerOrder::Greater);
  CHECK(power_compare(101, 1015, 9, 10) == PowerOrder::LessOrEqual);
  // 2^(1/2): m = 1 vs x = 1 is equality, never Greater.
  CHECK(power_compare(1, 1, 1, 2) == PowerOrder::LessOrEqual);
  CHECK(power_compare(4, 16, 1, 2) == PowerOrder::LessOrEqual);
  CHECK(power_compare(5, 16, 1, 2) == PowerOrder::Greater);
  CHECK_THROWS_AS(power_compare(1, 5, 5, 5), Error);
}

TEST_CASE("power_compare matches the exact comparison") {
  for (long m = 1; m < 60; ++m) {
    for (long x = 1; x < 60; ++x) {
      for (auto [a, b] : {std::pair{7L, 50L}, std::pair{9L, 10L}, std::pair{1L, 3L}}) {
        const bool exact = ipow(Int(m), b) > ipow(Int(x), a);
        CHECK((power_compare(m, x, a, b) == PowerOrder::Greater) == exact);
      }
    }
  }
}

TEST_CASE("small survey records") {
  std::vector<SurveyRecord> records;
  SurveyOptions options;
  options.on_record = [&](const SurveyRecord& r) { records.push_back(r); };
  const SurveyReport r = run_survey(76, 101, Rational(7, 50), 3, std::nullopt, options);
  REQUIRE(records.size() == 6);
  CHECK(records[0].x == 5);
  CHECK(records[0].m == 1);
  CHECK_FALSE(records[0].passed);
  CHECK(records[1].x == 96);
  CHECK(records[1].m == 92);
  CHECK(records[1].passed);
  CHECK(records[2].x == 1015);
  CHECK(records[2].m == 101);
  CHECK(records[2].passed);
  CHECK(exception_xs(r) == std::set<std::string>{"5", "1015"});
  CHECK(r.exceptions.size() == 2);
  for (const auto& rec : records) {
    CHECK(rec.x * rec.x + 76 == ipow(Int(101), rec.n) * rec.m);
  }
}

TEST_CASE("survey against brute force for p^n <= 10^6") {
  struct Case {
    long D, p;
  };
  for (const Case c : {Case{76, 101}, Case{7, 2}, Case{23, 3}, Case{47, 2}}) {
    for (const Rational& sigma : {Rational(7, 50), Rational(9, 10)}) {
      std::uint64_t modulus = 1;
      unsigned long n_max = 0;
      while (modulus * c.p <= 1000000) {
        modulus *= c.p;
        ++n_max;
      }
      std::set<std::pair<unsigned long, std::uint64_t>> expected;
      std::uint64_t pn = 1;
      for (unsigned long n = 1; n <= n_max; ++n) {
        pn *= c.p;
        for (std::uint64_t x : oracle::brute_roots(c.D, pn)) {
          if (x == 0) continue;
          const Int m = (Int(x) * x + c.D) / Int(pn);
          if (!(ipow(m, sigma.get_den().get_ui()) > ipow(Int(x), sigma.get_num().get_ui()))) expected.insert({n, x});
        }
      }
      const SurveyReport r = run_survey(c.D, c.p, sigma, n_max);
      std::set<std::pair<unsigned long, std::uint64_t>> got;
      for (const auto& e : r.exceptions) got.insert({e.n, e.x.get_ui()});
      CAPTURE(c.D);
      CAPTURE(c.p);
      CHECK(got == expected);
    }
  }
}

TEST_CASE("non-split prime gives an empty report") {
  const SurveyReport r = run_survey(7, 5, Rational(1, 2), 10);
  CHECK_FALSE(r.split);
  CHECK(r.records_checked == 0);
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("sigma validation") {
  try {
    run_survey(76, 101, Rational(1), 5);
    FAIL("sigma = 1 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSigma);
  }
}

TEST_CASE("checkpoint round trip and resume") {
  SurveyState state = start_survey(76, 101, Rational(7, 50));
  advance_survey(state, 100);
  const std::string blob = checkpoint(state);
  SurveyState restored = restore(blob);
  CHECK(checkpoint(restored) == blob);
  const SurveyReport resumed = run_survey(76, 101, Rational(7, 50), 150, restored);
  const SurveyReport straight = run_survey(76, 101, Rational(7, 50), 150);
  CHECK(resumed.records_checked == straight.records_checked);
  CHECK(exception_xs(resumed) == exception_xs(straight));
  REQUIRE(resumed.min_margin);
  CHECK(resumed.min_margin->log10_margin == straight.min_margin->log10_margin);

  try {
    run_survey(76, 103, Rational(7, 50), 150, restored);
    FAIL("mismatched resume accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CorruptBlob);
  }
  CHECK_THROWS_AS(restore("{not json"), Error);
  std::string tampered = blob;
  tampered.replace(tampered.find("\"n\":100"), 7, "\"n\":101");
  CHECK_THROWS_AS(restore(tampered), Error);
}

TEST_CASE("checkpoint after n = 750 stores two long roots") {
  SurveyState state = start_survey(76, 101, Rational(7, 50));
  advance_survey(state, 750);
  REQUIRE(state.lift);
  CHECK(state.lift->seeds.size() == 1);
  CHECK(state.lift->roots().size() == 2);
  CHECK(decimal_digits(state.lift->roots()[1]) >= 1500);
  CHECK(decimal_digits(state.lift->modulus) == 1504);
}

TEST_CASE("thread count does not change the report") {
  SurveyOptions one;
  SurveyOptions four;
  four.threads = 4;
  const SurveyReport a = run_survey(76, 101, Rational(9, 10), 300, std::nullopt, one);
  const SurveyReport b = run_survey(76, 101, Rational(9, 10), 300, std::nullopt, four);
  CHECK(a.records_checked == b.records_checked);
  REQUIRE(a.exceptions.size() == b.exceptions.size());
  for (std::size_t i = 0; i < a.exceptions.size(); ++i) {
    CHECK(a.exceptions[i].n == b.exceptions[i].n);
    CHECK(a.exceptions[i].x == b.exceptions[i].x);
  }
  CHECK(a.min_margin->log10_margin == b.min_margin->log10_margin);
}

TEST_CASE("exception sets grow with sigma") {
  const auto low = exception_xs(run_survey(76, 101, Rational(7, 50), 200));
  const auto high = exception_xs(run_survey(76, 101, Rational(9, 10), 200));
  for (const auto& x : low) CHECK(high.count(x) == 1);
}
