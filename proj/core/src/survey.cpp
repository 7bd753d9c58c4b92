#include "rnlab/survey.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include <json.hpp>

#include "rnlab/error.hpp"

namespace rnlab {

const char* const kSurveyMethodNote =
    "every n in 1..n_max and every root 0 < x < p^n of x^2 + D = 0 mod p^n is tested; "
    "larger x in the same class satisfy m > x^2/p^n >= x >= x^sigma";

namespace {

bool is_split(const Int& D, const Int& p) {
  if (p == 2) return true;
  return legendre(-D, p) == 1;
}

double rounded_margin(const Int& m, const Int& x, const Rational& sigma) {
  const double value = log10_abs(m) - sigma.get_d() * log10_abs(x);
  return std::round(value * 1e9) / 1e9;
}

struct Evaluated {
  SurveyRecord record;
  double margin;
};

Evaluated evaluate(unsigned long n, const Int& modulus, const Int& x, const Int& D, const Rational& sigma) {
  Evaluated out;
  out.record.n = n;
  out.record.x = x;
  out.record.m = (x * x + D) / modulus;
  out.record.digits_x = decimal_digits(x);
  out.record.passed = power_compare(out.record.m, x, sigma.get_num(), sigma.get_den()) == PowerOrder::Greater;
  out.margin = rounded_margin(out.record.m, x, sigma);
  return out;
}

// Lift state at level n, or nullopt when no roots exist there.
std::optional<LiftState> level_state(const SurveyState& state, unsigned long n) {
  try {
    if (state.p == 2 && n <= 3) return lift_two(state.D, n);
    if (!state.lift) return roots_mod_pn(state.D, state.p, n);
    return lift_step(*state.lift);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoRoot) return std::nullopt;
    throw;
  }
}

void absorb(SurveyState& state, const Evaluated& e, const std::function<void(const SurveyRecord&)>& sink) {
  ++state.records_checked;
  if (!e.record.passed) state.exceptions.push_back(e.record);
  if (!state.min_margin || e.margin < state.min_margin->log10_margin) {
    state.min_margin = MarginRecord{e.margin, e.record.n, e.record.x};
  }
  if (sink) sink(e.record);
}

SurveyRecord record_from_json(const nlohmann::json& j) {
  SurveyRecord r;
  r.n = j.at("n").get<unsigned long>();
  r.x = parse_int(j.at("x").get<std::string>());
  r.m = parse_int(j.at("m").get<std::string>());
  r.passed = j.at("passed").get<bool>();
  r.digits_x = j.at("digits_x").get<std::size_t>();
  return r;
}

nlohmann::json record_to_json(const SurveyRecord& r) {
  return {{"n", r.n}, {"x", to_string(r.x)}, {"m", to_string(r.m)}, {"passed", r.passed}, {"digits_x", r.digits_x}};
}

}  // namespace

PowerOrder power_compare(const Int& m, const Int& x, const Int& a, const Int& b) {
  if (m < 1 || x < 1) throw Error(ErrorCode::InvalidArgument, "power_compare requires m, x >= 1");
  if (a <= 0 || a >= b) throw Error(ErrorCode::InvalidArgument, "power_compare requires 0 < a < b");
  // 2^(bm-1) <= m < 2^bm and likewise for x.
  const Int bm = static_cast<unsigned long>(mpz_sizeinbase(m.get_mpz_t(), 2));
  const Int bx = static_cast<unsigned long>(mpz_sizeinbase(x.get_mpz_t(), 2));
  if (b * (bm - 1) >= a * bx) return PowerOrder::Greater;
  if (b * bm <= a * (bx - 1)) return PowerOrder::LessOrEqual;
  return ipow(m, to_ulong(b)) > ipow(x, to_ulong(a)) ? PowerOrder::Greater : PowerOrder::LessOrEqual;
}

SurveyState start_survey(const Int& D, const Int& p, const Rational& sigma) {
  if (sigma <= 0 || sigma >= 1) throw Error(ErrorCode::InvalidSigma, "sigma must lie in (0, 1)");
  if (D <= 0) throw Error(ErrorCode::InvalidArgument, "D must be positive");
  if (p < 2 || !is_probable_prime(p)) throw Error(ErrorCode::CompositeModulus, to_string(p) + " is not prime");
  if (D % p == 0) throw Error(ErrorCode::InvalidArgument, "p divides D");
  SurveyState state;
  state.D = D;
  state.p = p;
  state.sigma = sigma;
  state.exhausted = !is_split(D, p);
  return state;
}

void advance_survey(SurveyState& state, unsigned long n_max, const SurveyOptions& options) {
  const unsigned threads = std::max(1u, options.threads);
  // Levels are lifted sequentially and evaluated in batches.
  const unsigned long batch = threads > 1 ? 8UL * threads : 1;
  unsigned long since_checkpoint = 0;
  while (state.n < n_max && !state.exhausted) {
    std::vector<LiftState> levels;
    SurveyState cursor = state;
    while (levels.size() < batch && cursor.n < n_max) {
      std::optional<LiftState> next = level_state(cursor, cursor.n + 1);
      if (!next) {
        cursor.exhausted = true;
        break;
      }
      cursor.lift = *next;
      cursor.n += 1;
      levels.push_back(*next);
    }
    if (levels.empty()) {
      state.exhausted = true;
      break;
    }

    std::vector<std::pair<const LiftState*, Int>> work;
    for (const LiftState& level : levels) {
      for (Int& x : level.roots()) work.emplace_back(&level, std::move(x));
    }
    std::vector<Evaluated> results(work.size());
    auto run = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        results[i] = evaluate(work[i].first->n, work[i].first->modulus, work[i].second, state.D, state.sigma);
      }
    };
    if (threads > 1 && work.size() > 1) {
      std::vector<std::future<void>> jobs;
      const std::size_t chunk = (work.size() + threads - 1) / threads;
      for (std::size_t begin = 0; begin < work.size(); begin += chunk) {
        jobs.push_back(std::async(std::launch::async, run, begin, std::min(work.size(), begin + chunk)));
      }
      for (auto& job : jobs) job.get();
    } else {
      run(0, work.size());
    }

    // Assemble in (n, x) order regardless of thread count.
    std::size_t cursor_index = 0;
    for (const LiftState& level : levels) {
      const std::size_t count = level.roots().size();
      for (std::size_t i = 0; i < count; ++i) absorb(state, results[cursor_index++], options.on_record);
      state.n = level.n;
      state.lift = level;
      if (options.on_checkpoint && options.checkpoint_every > 0 && ++since_checkpoint >= options.checkpoint_every) {
        options.on_checkpoint(state);
        since_checkpoint = 0;
      }
    }
    if (cursor.exhausted) state.exhausted = true;
  }
}

SurveyReport make_report(const SurveyState& state, unsigned long n_max) {
  SurveyReport report;
  report.D = state.D;
  report.p = state.p;
  report.sigma = state.sigma;
  report.n_max = n_max;
  report.split = is_split(state.D, state.p);
  report.exceptions = state.exceptions;
  report.records_checked = state.records_checked;
  report.min_margin = state.min_margin;
  if (!report.split) {
    report.note = "-D is not a square mod p: p^n divides no x^2 + D, nothing to check";
  } else if (state.exhausted && state.n < n_max) {
    report.note = "no roots of x^2 + D mod p^n beyond n = " + std::to_string(state.n);
  }
  return report;
}

SurveyReport run_survey(const Int& D, const Int& p, const Rational& sigma, unsigned long n_max,
                        const std::optional<SurveyState>& resume, const SurveyOptions& options) {
  SurveyState state = start_survey(D, p, sigma);
  if (resume) {
    if (resume->D != D || resume->p != p || resume->sigma != sigma) {
      throw Error(ErrorCode::CorruptBlob, "resume state was recorded for different D, p or sigma");
    }
    state = *resume;
  }
  advance_survey(state, n_max, options);
  return make_report(state, n_max);
}

std::string checkpoint(const SurveyState& state) {
  nlohmann::ordered_json j;
  j["version"] = kCheckpointVersion;
  j["D"] = to_string(state.D);
  j["p"] = to_string(state.p);
  j["n"] = state.n;
  nlohmann::json roots = nlohmann::json::array();
  if (state.lift) {
    for (const Int& r : state.lift->seeds) roots.push_back(to_string(r));
  }
  j["roots"] = roots;
  j["sigma"] = to_string(state.sigma);
  j["exhausted"] = state.exhausted;
  j["records_checked"] = state.records_checked;
  nlohmann::json exceptions = nlohmann::json::array();
  for (const SurveyRecord& r : state.exceptions) exceptions.push_back(record_to_json(r));
  j["exceptions"] = exceptions;
  if (state.min_margin) {
    j["min_margin"] = {{"log10_margin", state.min_margin->log10_margin},
                       {"n", state.min_margin->n},
                       {"x", to_string(state.min_margin->x)}};
  } else {
    j["min_margin"] = nullptr;
  }
  return j.dump();
}

SurveyState restore(const std::string& blob) {
  try {
    const nlohmann::json j = nlohmann::json::parse(blob);
    if (j.at("version").get<int>() != kCheckpointVersion) {
      throw Error(ErrorCode::CorruptBlob, "unsupported checkpoint version");
    }
    SurveyState state = start_survey(parse_int(j.at("D").get<std::string>()), parse_int(j.at("p").get<std::string>()),
                                     parse_rational(j.at("sigma").get<std::string>()));
    state.n = j.at("n").get<unsigned long>();
    state.exhausted = j.at("exhausted").get<bool>();
    state.records_checked = j.at("records_checked").get<unsigned long>();
    for (const auto& r : j.at("exceptions")) state.exceptions.push_back(record_from_json(r));
    const auto& mm = j.at("min_margin");
    if (!mm.is_null()) {
      state.min_margin = MarginRecord{mm.at("log10_margin").get<double>(), mm.at("n").get<unsigned long>(),
                                      parse_int(mm.at("x").get<std::string>())};
    }
    const auto& roots = j.at("roots");
    if (!roots.empty()) {
      if (state.n == 0) throw Error(ErrorCode::CorruptBlob, "roots stored at level 0");
      LiftState lift;
      lift.p = state.p;
      lift.D = state.D;
      lift.n = state.n;
      lift.modulus = ipow(state.p, state.n);
      for (const auto& r : roots) lift.seeds.push_back(parse_int(r.get<std::string>()));
      if (!std::is_sorted(lift.seeds.begin(), lift.seeds.end()) || !verify_state(lift)) {
        throw Error(ErrorCode::CorruptBlob, "stored roots do not solve x^2 + D = 0 mod p^n");
      }
      for (const Int& r : lift.seeds) {
        if (r <= 0 || r >= lift.modulus) throw Error(ErrorCode::CorruptBlob, "stored root out of range");
      }
      state.lift = std::move(lift);
    } else if (state.n > 0 && !state.exhausted) {
      throw Error(ErrorCode::CorruptBlob, "missing roots for a live survey");
    }
    return state;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CorruptBlob) throw;
    throw Error(ErrorCode::CorruptBlob, std::string("invalid checkpoint: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::CorruptBlob, std::string("invalid checkpoint: ") + e.what());
  }
}

}  // namespace rnlab
