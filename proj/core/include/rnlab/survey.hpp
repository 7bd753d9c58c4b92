#pragma once

// Exhaustive check of m > x^sigma over all solutions of x^2 + D = p^n m with
// 0 < x < p^n, for n up to a bound.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rnlab/hensel.hpp"
#include "rnlab/numeric.hpp"

namespace rnlab {

enum class PowerOrder { Greater, LessOrEqual };

/// Decides m > x^(a/b) exactly via m^b > x^a; a bit-length bracket settles
/// most cases without forming the powers. Requires m, x >= 1 and 0 < a < b.
PowerOrder power_compare(const Int& m, const Int& x, const Int& a, const Int& b);

struct SurveyRecord {
  unsigned long n = 0;
  Int x;
  Int m;
  bool passed = false;
  std::size_t digits_x = 0;
};

struct MarginRecord {
  double log10_margin = 0.0;  // log10 m - sigma log10 x, rounded to 1e-9
  unsigned long n = 0;
  Int x;
};

/// Resumable progress of a survey: everything needed to continue from level n.
struct SurveyState {
  Int D;
  Int p;
  Rational sigma;
  unsigned long n = 0;  // last completed level
  std::optional<LiftState> lift;  // roots mod p^n; empty when n = 0 or no roots remain
  bool exhausted = false;         // no roots at level n or beyond
  unsigned long records_checked = 0;
  std::vector<SurveyRecord> exceptions;
  std::optional<MarginRecord> min_margin;
};

struct SurveyReport {
  Int D;
  Int p;
  Rational sigma;
  unsigned long n_max = 0;
  bool split = true;
  std::vector<SurveyRecord> exceptions;
  unsigned long records_checked = 0;
  std::optional<MarginRecord> min_margin;
  std::string note;
};

struct SurveyOptions {
  unsigned threads = 1;
  std::function<void(const SurveyRecord&)> on_record;
  /// Called with the state after every `checkpoint_every` completed levels.
  std::function<void(const SurveyState&)> on_checkpoint;
  unsigned long checkpoint_every = 0;
};

/// Fresh state. Throws InvalidSigma unless 0 < sigma < 1, InvalidArgument for
/// bad D or p.
SurveyState start_survey(const Int& D, const Int& p, const Rational& sigma);

/// Advances the state up to level n_max.
void advance_survey(SurveyState& state, unsigned long n_max, const SurveyOptions& options = {});

/// Runs (or resumes) a survey. A resume state must match D, p and sigma,
/// otherwise CorruptBlob is thrown.
SurveyReport run_survey(const Int& D, const Int& p, const Rational& sigma, unsigned long n_max,
                        const std::optional<SurveyState>& resume = std::nullopt, const SurveyOptions& options = {});

SurveyReport make_report(const SurveyState& state, unsigned long n_max);

/// Versioned JSON blob. restore() throws CorruptBlob on any inconsistency.
std::string checkpoint(const SurveyState& state);
SurveyState restore(const std::string& blob);

constexpr int kCheckpointVersion = 1;

/// Method note attached to reports.
extern const char* const kSurveyMethodNote;

}  // namespace rnlab
