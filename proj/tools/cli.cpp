#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rnlab/certifier.hpp"
#include "rnlab/decomposer.hpp"
#include "rnlab/error.hpp"
#include "rnlab/hensel.hpp"
#include "rnlab/pade.hpp"
#include "rnlab/pade_bounds.hpp"
#include "rnlab/survey.hpp"

namespace rnlab::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Json, Tsv, Human };

struct Output {
  Json json;
  std::string tsv;
  std::string human;
  int code = kOk;
};

struct Common {
  std::string format = "json";
  std::string out_path;
};

Format parse_format(const std::string& text) {
  if (text == "json") return Format::Json;
  if (text == "tsv") return Format::Tsv;
  if (text == "human") return Format::Human;
  throw Error(ErrorCode::InvalidArgument, "format must be json, tsv or human");
}

Json poly_json(const IntPolynomial& poly) {
  Json arr = Json::array();
  for (const Int& c : poly.coeffs()) arr.push_back(to_string(c));
  return arr;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string poly_text(const IntPolynomial& poly) {
  std::vector<std::string> parts;
  for (const Int& c : poly.coeffs()) parts.push_back(to_string(c));
  return "[" + join(parts, ", ") + "]";
}

// Rationals cross the CLI as "a/b" or integers only.
Rational parse_sigma(const std::string& text) {
  if (text.find('.') != std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "sigma must be given as a rational a/b, not a decimal");
  }
  return parse_rational(text);
}

QuadInt beta_for(const Int& x0, const Int& D, const Int& p) {
  return p == 2 ? QuadInt::from_numerators(x0, 1, D, true) : QuadInt::integral(x0, 1, D);
}

std::string fixed(double value, int digits = 6) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << value;
  return s.str();
}

// ---------------------------------------------------------------- hensel

struct HenselArgs {
  std::string D, p;
  unsigned long n = 1;
};

Output run_hensel(const HenselArgs& a) {
  const Int D = parse_int(a.D);
  const Int p = parse_int(a.p);
  const LiftState state = roots_mod_pn(D, p, a.n);
  Output o;
  std::vector<std::string> roots;
  for (const Int& r : state.roots()) roots.push_back(to_string(r));
  o.json = {{"schema", "rnlab.hensel/1"}, {"D", a.D}, {"p", a.p}, {"n", a.n}, {"roots", roots}};
  o.tsv = "root\n" + join(roots, "\n") + "\n";
  o.human = "roots of x^2+" + a.D + " mod " + a.p + "^" + std::to_string(a.n) + ": " + join(roots, ", ") + "\n";
  return o;
}

// ---------------------------------------------------------------- certify

struct CertifyArgs {
  std::string D, p, x0, sigma, variant = "5j";
  unsigned long n0 = 1;
};

Json certificate_json(const HugeSolutionCertificate& c) {
  Json failures = Json::array();
  for (FailureReason f : c.failures) failures.push_back(to_string(f));
  return {{"schema", "rnlab.certificate/1"},
          {"D", to_string(c.D)},
          {"p", to_string(c.p)},
          {"x0", to_string(c.x0)},
          {"n0", c.n0},
          {"sigma", to_string(c.sigma)},
          {"variant", to_string(c.variant)},
          {"status", c.certified ? "Certified" : "Failed"},
          {"failures", failures},
          {"eta", to_string(c.eta)},
          {"exponent", to_string(c.exponent)},
          {"b", to_string(c.b)},
          {"beta_abs", {{"lo", c.beta_abs_lo}, {"hi", c.beta_abs_hi}}},
          {"C_const", {{"lo", c.c_const_lo}, {"hi", c.c_const_hi}}},
          {"threshold", {{"lo", c.threshold_lo}, {"hi", c.threshold_hi}}},
          {"log_margin", c.log_margin},
          {"M", c.M},
          {"X_star_digits", decimal_digits(c.X_star)},
          {"X_star", to_string(c.X_star)},
          {"x_min_inference", to_string(c.x_min_inference)},
          {"meaning", c.meaning}};
}

int certificate_code(const HugeSolutionCertificate& c) {
  for (FailureReason f : c.failures) {
    if (f == FailureReason::Undecidable) return kUndecidable;
  }
  if (const auto f = c.primary_failure()) {
    if (*f == FailureReason::NotExactPower || *f == FailureReason::SharedFactor || *f == FailureReason::SquareD) {
      return kInvalidInput;
    }
  }
  return kOk;
}

Output run_certify(const CertifyArgs& a) {
  const HugeSolutionCertificate c = certify(parse_int(a.D), parse_int(a.p), parse_int(a.x0), a.n0,
                                            parse_sigma(a.sigma), parse_variant(a.variant));
  Output o;
  o.json = certificate_json(c);
  o.code = certificate_code(c);
  std::vector<std::string> failures;
  for (FailureReason f : c.failures) failures.push_back(to_string(f));
  o.human = "status: " + std::string(c.certified ? "Certified" : "Failed") +
            (failures.empty() ? "" : " (" + join(failures, ", ") + ")") + "\n" + "eta = " + to_string(c.eta) +
            ", threshold in [" + c.threshold_lo + ", " + c.threshold_hi + "]\n" + "|beta| in [" + c.beta_abs_lo +
            ", " + c.beta_abs_hi + "]\n" + "M = " + std::to_string(c.M) + ", X_star has " +
            std::to_string(decimal_digits(c.X_star)) + " digits\n" + c.meaning + "\n";
  o.tsv = "status\tfailures\teta\tthreshold_lo\tthreshold_hi\tbeta_lo\tbeta_hi\tM\n" +
          std::string(c.certified ? "Certified" : "Failed") + "\t" + join(failures, ",") + "\t" + to_string(c.eta) +
          "\t" + c.threshold_lo + "\t" + c.threshold_hi + "\t" + c.beta_abs_lo + "\t" + c.beta_abs_hi + "\t" +
          std::to_string(c.M) + "\n";
  return o;
}

// ---------------------------------------------------------------- max-sigma

struct MaxSigmaArgs {
  std::string D, p, x0, variant = "5j", reference;
  unsigned long n0 = 1;
};

Output run_max_sigma(const MaxSigmaArgs& a) {
  std::optional<Rational> reference;
  if (!a.reference.empty()) reference = parse_sigma(a.reference);
  const SigmaInterval s =
      max_sigma(parse_int(a.D), parse_int(a.p), parse_int(a.x0), a.n0, parse_variant(a.variant), reference);
  Output o;
  o.json = {{"schema", "rnlab.max_sigma/1"}, {"D", a.D}, {"p", a.p}, {"x0", a.x0}, {"n0", a.n0},
            {"variant", a.variant},         {"empty", s.empty}};
  std::string reference_note;
  if (!s.empty) {
    const Rational width = s.hi - s.lo;
    o.json["lo"] = to_string(s.lo);
    o.json["hi"] = to_string(s.hi);
    o.json["lo_decimal"] = to_decimal(s.lo, 9);
    o.json["hi_decimal"] = to_decimal(s.hi, 9);
    o.json["width"] = to_decimal(width, 12);
  }
  o.json["reason"] = s.reason;
  o.json["beta_floor_ok"] = s.beta_floor_ok;
  o.json["monotone_grid_points"] = s.grid_points;
  if (s.reference_sigma) {
    o.json["reference_sigma"] = to_string(*s.reference_sigma);
    o.json["reference_holds"] = *s.reference_holds;
    if (!*s.reference_holds) {
      reference_note = "size condition fails at the reference sigma " + to_string(*s.reference_sigma) +
                       "; the certified maximum lies below it";
    } else if (!s.beta_floor_ok) {
      reference_note = "size condition holds at the reference sigma but the variant's beta floor fails";
    } else {
      reference_note = "size condition holds at the reference sigma";
    }
    o.json["reference_note"] = reference_note;
  }
  if (s.empty) {
    o.human = "empty: " + s.reason + "\n";
  } else {
    o.human = "max sigma in [" + to_decimal(s.lo, 9) + ", " + to_decimal(s.hi, 9) + "]" +
              (s.beta_floor_ok ? "" : " (beta floor not met)") + "\n";
  }
  if (!reference_note.empty()) o.human += reference_note + "\n";
  o.tsv = "lo\thi\tbeta_floor_ok\n" + (s.empty ? std::string("\t") : to_string(s.lo) + "\t" + to_string(s.hi)) +
          "\t" + (s.beta_floor_ok ? "true" : "false") + "\n";
  return o;
}

// ---------------------------------------------------------------- survey

struct SurveyArgs {
  std::string D, p, sigma, resume;
  unsigned long n_max = 1;
  unsigned long checkpoint_every = 100;
  unsigned threads = 1;
  bool timing = false;
};

Json record_json(const SurveyRecord& r) {
  return {{"n", r.n}, {"x", to_string(r.x)}, {"m", to_string(r.m)}, {"digits_x", r.digits_x}};
}

void write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    f << content;
  }
  std::filesystem::rename(tmp, path);
}

Output run_survey_cmd(const SurveyArgs& a, Format format, std::ostream& err) {
  const Int D = parse_int(a.D);
  const Int p = parse_int(a.p);
  const Rational sigma = parse_sigma(a.sigma);

  std::optional<SurveyState> resume;
  if (!a.resume.empty() && std::filesystem::exists(a.resume)) {
    std::ifstream f(a.resume, std::ios::binary);
    std::stringstream buffer;
    buffer << f.rdbuf();
    if (!buffer.str().empty()) resume = restore(buffer.str());
  }

  Output o;
  SurveyOptions options;
  options.threads = a.threads;
  if (format == Format::Tsv) {
    o.tsv = "n\tx\tm\tdigits_x\tpassed\n";
    options.on_record = [&o](const SurveyRecord& r) {
      o.tsv += std::to_string(r.n) + "\t" + to_string(r.x) + "\t" + to_string(r.m) + "\t" +
               std::to_string(r.digits_x) + "\t" + (r.passed ? "true" : "false") + "\n";
    };
  }
  if (!a.resume.empty()) {
    options.checkpoint_every = a.checkpoint_every;
    options.on_checkpoint = [&a](const SurveyState& s) { write_file(a.resume, checkpoint(s)); };
  }

  const auto start = std::chrono::steady_clock::now();
  SurveyState state = start_survey(D, p, sigma);
  if (resume) {
    if (resume->D != D || resume->p != p || resume->sigma != sigma) {
      throw Error(ErrorCode::CorruptBlob, "resume file was recorded for different D, p or sigma");
    }
    state = *resume;
  }
  advance_survey(state, a.n_max, options);
  if (!a.resume.empty()) write_file(a.resume, checkpoint(state));
  const SurveyReport report = make_report(state, a.n_max);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (a.timing) err << "wall_time_seconds " << fixed(seconds, 3) << "\n";

  Json exceptions = Json::array();
  std::vector<std::string> xs;
  for (const SurveyRecord& r : report.exceptions) {
    exceptions.push_back(record_json(r));
    const std::string x = to_string(r.x);
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  }
  o.json = {{"schema", "rnlab.survey/1"},
            {"D", a.D},
            {"p", a.p},
            {"sigma", to_string(sigma)},
            {"n_max", a.n_max},
            {"split", report.split},
            {"records_checked", report.records_checked},
            {"exceptions", exceptions},
            {"exception_x", xs}};
  if (report.min_margin) {
    o.json["min_margin"] = {{"log10_margin", report.min_margin->log10_margin},
                            {"n", report.min_margin->n},
                            {"x", to_string(report.min_margin->x)}};
  } else {
    o.json["min_margin"] = nullptr;
  }
  o.json["method"] = kSurveyMethodNote;
  o.json["note"] = report.note;

  std::ostringstream h;
  h << "x^2+" << a.D << " = " << a.p << "^n*m, n <= " << a.n_max << ", sigma = " << to_string(sigma) << "\n";
  h << "records checked: " << report.records_checked << "\n";
  h << "exceptions (m <= x^sigma): " << report.exceptions.size() << "\n";
  for (const SurveyRecord& r : report.exceptions) h << "  n=" << r.n << " x=" << to_string(r.x) << " m=" << to_string(r.m) << "\n";
  if (report.min_margin) {
    h << "smallest log10(m / x^sigma): " << fixed(report.min_margin->log10_margin, 9) << " at n=" << report.min_margin->n
      << "\n";
  }
  if (!report.note.empty()) h << report.note << "\n";
  o.human = h.str();
  return o;
}

// ---------------------------------------------------------------- pade

struct PadeArgs {
  unsigned j_max = 8;
  unsigned abc_max = 6;
  unsigned j = 1;
  unsigned g = 0;
  unsigned j_min = 1;
  bool normalized = false;
  std::string D = "76", p = "101", x0 = "1015";
  std::string b = "953/1000";
  unsigned fa = 1, fb = 1, fc = 0;
  unsigned diagonal = 0;
};

Output run_pade_verify(const PadeArgs& a) {
  Output o;
  bool all_ok = true;
  Json diagonal = Json::array();
  std::ostringstream h;
  for (unsigned j = 1; j <= a.j_max; ++j) {
    for (unsigned g = 0; g <= 1; ++g) {
      const PadeSystem s = build_diagonal(j, g);
      const bool ok = verify_identity(s);
      const bool degrees = s.p.degree() == s.r() && s.q.degree() == s.r() &&
                           s.e.degree() == static_cast<long>(s.k() - s.r() - 1);
      all_ok = all_ok && ok && degrees;
      diagonal.push_back({{"j", j}, {"g", g}, {"identity", ok}, {"degrees", degrees}});
      h << "diagonal j=" << j << " g=" << g << ": " << (ok && degrees ? "ok" : "FAIL") << "\n";
    }
  }
  Json cross = Json::array();
  for (unsigned j = 1; j <= a.j_max; ++j) {
    const Int c = cross_constant(build_diagonal(j, 1), build_diagonal(j, 0));
    const Int cn = cross_constant(normalize(build_diagonal(j, 1)), normalize(build_diagonal(j, 0)));
    cross.push_back({{"j", j}, {"degree", 8 * j - 1}, {"c", to_string(c)}, {"c_normalized", to_string(cn)}});
    h << "cross j=" << j << ": c = " << to_string(c) << " z^" << 8 * j - 1 << "\n";
  }
  unsigned long general = 0;
  for (unsigned A = 1; A <= a.abc_max; ++A) {
    for (unsigned B = 1; B <= a.abc_max; ++B) {
      for (unsigned C = 1; C <= a.abc_max; ++C) {
        build_general(A, B, C);  // throws on failure
        ++general;
      }
    }
  }
  h << "general identity: " << general << " triples ok\n";
  o.json = {{"schema", "rnlab.pade.verify/1"}, {"j_max", a.j_max}, {"abc_max", a.abc_max}, {"diagonal", diagonal},
            {"cross", cross}, {"general_checked", general}, {"all_ok", all_ok}};
  o.human = h.str();
  o.tsv = "j\tdegree\tc\n";
  for (const auto& c : cross) {
    o.tsv += std::to_string(c["j"].get<unsigned>()) + "\t" + std::to_string(c["degree"].get<unsigned>()) + "\t" +
             c["c"].get<std::string>() + "\n";
  }
  o.code = all_ok ? kOk : kInternal;
  return o;
}

Output run_pade_show(const PadeArgs& a) {
  PadeSystem s = build_diagonal(a.j, a.g);
  if (a.normalized) s = normalize(s);
  Output o;
  o.json = {{"schema", "rnlab.pade.system/1"}, {"j", a.j}, {"g", a.g}, {"k", s.k()}, {"r", s.r()},
            {"normalized", a.normalized}, {"content", to_string(content(a.j, a.g))},
            {"P", poly_json(s.p)}, {"Q", poly_json(s.q)}, {"E", poly_json(s.e)}};
  o.human = "k=" + std::to_string(s.k()) + " r=" + std::to_string(s.r()) + "\nP " + poly_text(s.p) + "\nQ " +
            poly_text(s.q) + "\nE " + poly_text(s.e) + "\n";
  o.tsv = "poly\tcoefficients\nP\t" + poly_text(s.p) + "\nQ\t" + poly_text(s.q) + "\nE\t" + poly_text(s.e) + "\n";
  return o;
}

Output run_pade_content(const PadeArgs& a) {
  Output o;
  Json rows = Json::array();
  o.tsv = "j\tg\tcontent\texceeds_2.943^j\tdivides_P_E\n";
  const Rational base = bound_constants().content_base;
  for (unsigned j = a.j_min; j <= a.j_max; ++j) {
    for (unsigned g = 0; g <= 1; ++g) {
      const PadeSystem s = build_diagonal(j, g);
      const Int c = content(j, g);
      const bool exceeds = Rational(c) > rpow(base, j);
      const bool divides = s.p.content() % c == 0 && s.e.content() % c == 0;
      rows.push_back({{"j", j}, {"g", g}, {"content", to_string(c)}, {"exceeds_bound", exceeds}, {"divides_P_E", divides}});
      o.tsv += std::to_string(j) + "\t" + std::to_string(g) + "\t" + to_string(c) + "\t" + (exceeds ? "true" : "false") +
               "\t" + (divides ? "true" : "false") + "\n";
    }
  }
  o.json = {{"schema", "rnlab.pade.content/1"}, {"rows", rows}};
  o.human = o.tsv;
  return o;
}

Output run_pade_bounds(const PadeArgs& a) {
  const Int D = parse_int(a.D);
  const Int p = parse_int(a.p);
  const QuadInt beta = beta_for(parse_int(a.x0), D, p);
  Output o;
  Json q = Json::array();
  std::ostringstream h;
  for (unsigned g = 0; g <= 1; ++g) {
    const QBoundReport r = check_q_bound(a.j, beta, g);
    q.push_back({{"g", g}, {"claimed", r.claimed}, {"passed", r.passed}, {"b", to_string(r.b)},
                 {"content", to_string(r.content)}, {"abs_Q", r.abs_q}, {"bound", r.bound},
                 {"log10_margin", r.log10_margin}});
    h << "Q bound j=" << a.j << " g=" << g << ": |Q*(z0)| = " << r.abs_q << " vs " << r.bound << " -> "
      << (r.claimed ? (r.passed ? "pass" : "FAIL") : (r.passed ? "below (not claimed)" : "above (not claimed)")) << "\n";
  }
  Json e = Json::array();
  for (unsigned g = 0; g <= 1; ++g) {
    const EBoundReport r = check_e_bound(a.j, g);
    e.push_back({{"g", g}, {"ratio", to_string(r.ratio)}, {"content", to_string(r.content)},
                 {"raw_claimed", r.raw_claimed}, {"raw_passed", r.raw_passed},
                 {"raw_log10_margin", r.raw_log10_margin}, {"normalized_passed", r.normalized_passed},
                 {"normalized_log10_margin", r.normalized_log10_margin}});
    h << "E bound j=" << a.j << " g=" << g << ": raw " << (r.raw_passed ? "pass" : "FAIL") << ", normalized "
      << (r.normalized_passed ? "pass" : "FAIL") << "\n";
  }
  o.json = {{"schema", "rnlab.pade.bounds/1"}, {"j", a.j}, {"beta", beta.to_string()}, {"q_bound", q}, {"e_bound", e}};
  o.human = h.str();
  o.tsv = o.human;
  return o;
}

Output run_pade_kernel(const PadeArgs& a) {
  const KernelReport k = kernel_extrema(parse_rational(a.b));
  Output o;
  o.json = {{"schema", "rnlab.pade.kernel/1"},
            {"b", to_string(k.b)},
            {"integral", to_string(k.integral)},
            {"integral_decimal", to_decimal(k.integral, 12)},
            {"integral_below_constant", k.integral_below},
            {"max_lower", to_decimal(k.max_lower, 15)},
            {"max_upper", to_decimal(k.max_upper + Rational(1, Int(10) * ipow(Int(10), 15)), 15)},
            {"argmax_lo", to_decimal(k.argmax_lo, 15)},
            {"argmax_hi", to_decimal(k.argmax_hi + Rational(1, ipow(Int(10), 15)), 15)},
            {"max_below_constant", k.max_below},
            {"max_above_constant", k.max_above}};
  o.human = "integral = " + to_string(k.integral) + " = " + to_decimal(k.integral, 12) + " (< 0.114552: " +
            (k.integral_below ? "yes" : "no") + ")\nmax in [" + to_decimal(k.max_lower, 15) + ", " +
            o.json["max_upper"].get<std::string>() + "] (<= 0.044479: " + (k.max_below ? "yes" : "no") + ")\n";
  o.tsv = "integral\tmax_lower\tmax_upper\n" + to_string(k.integral) + "\t" + to_decimal(k.max_lower, 15) + "\t" +
          o.json["max_upper"].get<std::string>() + "\n";
  return o;
}

Output run_pade_factorial(const PadeArgs& a) {
  const FactorialBoundReport r =
      a.diagonal ? diagonal_ratio_bound(a.diagonal)
                 : factorial_ratio_bounds(a.fa, a.fb, a.fc ? std::optional<unsigned>(a.fc) : std::nullopt);
  Output o;
  o.json = {{"schema", "rnlab.pade.factorial/1"}, {"form", r.form}, {"passed", r.passed}, {"decided", r.decided},
            {"log10_margin", r.log10_margin}};
  o.human = r.form + ": " + (r.decided ? (r.passed ? "holds" : "FAILS") : "undecidable") + "\n";
  o.tsv = "form\tpassed\n" + r.form + "\t" + (r.passed ? "true" : "false") + "\n";
  if (!r.decided) o.code = kUndecidable;
  return o;
}

// ---------------------------------------------------------------- decompose / audit

struct DecomposeArgs {
  std::string D, p, x0, x, sigma = "1/10", variant = "5j";
  unsigned long n0 = 1;
  unsigned long n = 1;
};

std::vector<Int> targets(const DecomposeArgs& a, const Int& D, const Int& p) {
  if (!a.x.empty()) return {parse_int(a.x)};
  return roots_mod_pn(D, p, a.n).roots();
}

Json decomposition_json(const Decomposition& d) {
  return {{"x", to_string(d.x)},           {"n", d.n},
          {"j", d.j},                      {"k", d.k},
          {"l", d.l},                      {"branch", to_string(d.branch)},
          {"sign", d.sign},                {"mu", d.mu.to_string()},
          {"norm_mu", to_string(d.mu.norm().value)}, {"m", to_string(d.m)},
          {"lambda", d.lambda.to_string()}};
}

Output run_decompose(const DecomposeArgs& a) {
  const Int D = parse_int(a.D);
  const Int p = parse_int(a.p);
  const Int x0 = parse_int(a.x0);
  Output o;
  Json rows = Json::array();
  o.tsv = "x\tj\tk\tl\tbranch\tsign\tm\n";
  for (const Int& x : targets(a, D, p)) {
    const Decomposition d = decompose(D, p, x0, a.n0, x, a.n);
    rows.push_back(decomposition_json(d));
    o.tsv += to_string(x) + "\t" + std::to_string(d.j) + "\t" + std::to_string(d.k) + "\t" + std::to_string(d.l) + "\t" +
             to_string(d.branch) + "\t" + std::to_string(d.sign) + "\t" + to_string(d.m) + "\n";
  }
  o.json = {{"schema", "rnlab.decompose/1"}, {"D", a.D}, {"p", a.p}, {"x0", a.x0}, {"n0", a.n0}, {"n", a.n},
            {"decompositions", rows}};
  o.human = o.tsv;
  return o;
}

Json audit_json(const ChainAudit& c) {
  return {{"g", c.g},
          {"r", c.r},
          {"pade_identity", c.pade_identity},
          {"combined_identity", c.combined_identity},
          {"nonzero", c.nonzero},
          {"difference_norm_digits", decimal_digits(c.difference_norm)},
          {"chain_holds", c.chain_holds},
          {"chain_log10_margin", std::round(c.chain_log10_margin * 1e9) / 1e9},
          {"final_bound", c.final_bound},
          {"p_pow_gap", c.p_pow_gap},
          {"nine_tenths_remark", c.nine_tenths},
          {"point_seven_remark", c.point_seven}};
}

Output run_audit(const DecomposeArgs& a) {
  const Int D = parse_int(a.D);
  const Int p = parse_int(a.p);
  const Int x0 = parse_int(a.x0);
  const HugeSolutionCertificate cert = certify(D, p, x0, a.n0, parse_sigma(a.sigma), parse_variant(a.variant));
  Output o;
  Json rows = Json::array();
  std::ostringstream h;
  o.tsv = "x\tbranch\tg0_nonzero\tg1_nonzero\tchain_g0\tchain_g1\tfinal_bound\n";
  for (const Int& x : targets(a, D, p)) {
    const Decomposition d = decompose(D, p, x0, a.n0, x, a.n);
    const ChainAuditPair pair = audit_both(cert, d);
    Json row = decomposition_json(d);
    row["audit"] = {audit_json(pair.g0), audit_json(pair.g1)};
    rows.push_back(row);
    h << "x=" << to_string(x) << " branch=" << to_string(d.branch) << " nonzero(g0,g1)=(" << pair.g0.nonzero << ","
      << pair.g1.nonzero << ") chain=(" << pair.g0.chain_holds << "," << pair.g1.chain_holds
      << ") final_bound=" << pair.g0.final_bound << "\n";
    o.tsv += to_string(x) + "\t" + to_string(d.branch) + "\t" + (pair.g0.nonzero ? "true" : "false") + "\t" +
             (pair.g1.nonzero ? "true" : "false") + "\t" + (pair.g0.chain_holds ? "true" : "false") + "\t" +
             (pair.g1.chain_holds ? "true" : "false") + "\t" + (pair.g0.final_bound ? "true" : "false") + "\n";
  }
  o.json = {{"schema", "rnlab.audit/1"}, {"certificate_status", cert.certified ? "Certified" : "Failed"},
            {"D", a.D}, {"p", a.p}, {"x0", a.x0}, {"n0", a.n0}, {"n", a.n}, {"audits", rows}};
  o.human = h.str();
  return o;
}

// ---------------------------------------------------------------- scan-huge

struct ScanArgs {
  std::string D, p;
  unsigned long n0_max = 20;
};

Output run_scan(const ScanArgs& a) {
  const Int D = parse_int(a.D);
  const Int p = parse_int(a.p);
  if (D <= 0) throw Error(ErrorCode::InvalidArgument, "D must be positive");
  if (p < 2 || !is_probable_prime(p)) throw Error(ErrorCode::CompositeModulus, a.p + " is not prime");
  Output o;
  Json rows = Json::array();
  o.tsv = "n0\tx0\n";
  Int power = 1;
  for (unsigned long n0 = 1; n0 <= a.n0_max; ++n0) {
    power *= p;
    const Int v = power - D;
    if (v > 0 && is_perfect_square(v)) {
      const Int x0 = isqrt(v);
      rows.push_back({{"n0", n0}, {"x0", to_string(x0)}});
      o.tsv += std::to_string(n0) + "\t" + to_string(x0) + "\n";
    }
  }
  o.json = {{"schema", "rnlab.scan_huge/1"}, {"D", a.D}, {"p", a.p}, {"n0_max", a.n0_max}, {"solutions", rows}};
  o.human = o.tsv;
  return o;
}

// ---------------------------------------------------------------- plumbing

std::string render(const Output& o, Format format) {
  switch (format) {
    case Format::Json: return o.json.dump(2) + "\n";
    case Format::Tsv: return o.tsv;
    case Format::Human: return o.human;
  }
  return {};
}

int exit_code_for(ErrorCode code) {
  switch (classify(code)) {
    case ErrorClass::InvalidInput: return kInvalidInput;
    case ErrorClass::Undecidable: return kUndecidable;
    case ErrorClass::InternalInvariant: return kInternal;
  }
  return kInternal;
}

void report_error(std::ostream& err, Format format, const std::string& code, const std::string& message, int exit) {
  if (format == Format::Json) {
    Json j = {{"schema", "rnlab.error/1"}, {"error", code}, {"message", message}, {"exit_code", exit}};
    err << j.dump() << "\n";
  } else {
    err << "error: " << code << ": " << message << "\n";
  }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact tools for x^2 + D = p^n m: Pade systems, Hensel roots, certificates and surveys", "rnlab"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "json, tsv or human")->check(CLI::IsMember({"json", "tsv", "human"}));
  app.add_option("--out", common.out_path, "write the report to this file");

  std::function<Output(std::ostream&, Format)> action;

  HenselArgs hensel;
  auto* h = app.add_subcommand("hensel", "roots of x^2 + D mod p^n");
  h->add_option("--D", hensel.D)->required();
  h->add_option("--p", hensel.p)->required();
  h->add_option("--n", hensel.n)->required()->check(CLI::PositiveNumber);
  h->callback([&] { action = [&](std::ostream&, Format) { return run_hensel(hensel); }; });

  CertifyArgs cert;
  auto* c = app.add_subcommand("certify", "check the size condition on a base solution");
  c->add_option("--D", cert.D)->required();
  c->add_option("--p", cert.p)->required();
  c->add_option("--x0", cert.x0)->required();
  c->add_option("--n0", cert.n0)->required()->check(CLI::PositiveNumber);
  c->add_option("--sigma", cert.sigma, "rational a/b")->required();
  c->add_option("--variant", cert.variant)->check(CLI::IsMember({"5j", "7j"}));
  c->callback([&] { action = [&](std::ostream&, Format) { return run_certify(cert); }; });

  MaxSigmaArgs ms;
  auto* m = app.add_subcommand("max-sigma", "largest sigma satisfying the size condition");
  m->add_option("--D", ms.D)->required();
  m->add_option("--p", ms.p)->required();
  m->add_option("--x0", ms.x0)->required();
  m->add_option("--n0", ms.n0)->required()->check(CLI::PositiveNumber);
  m->add_option("--variant", ms.variant)->check(CLI::IsMember({"5j", "7j"}));
  m->add_option("--reference", ms.reference, "sigma (a/b) to test against the computed maximum");
  m->callback([&] { action = [&](std::ostream&, Format) { return run_max_sigma(ms); }; });

  SurveyArgs sv;
  auto* s = app.add_subcommand("survey", "check m > x^sigma for all n <= n-max");
  s->add_option("--D", sv.D)->required();
  s->add_option("--p", sv.p)->required();
  s->add_option("--sigma", sv.sigma, "rational a/b")->required();
  s->add_option("--n-max", sv.n_max)->required()->check(CLI::PositiveNumber);
  s->add_option("--resume", sv.resume, "checkpoint file: resumed from when present, rewritten while running");
  s->add_option("--checkpoint-every", sv.checkpoint_every, "levels between checkpoints")->check(CLI::PositiveNumber);
  s->add_option("--threads", sv.threads)->check(CLI::Range(1u, 256u));
  s->add_flag("--timing", sv.timing, "print wall time on stderr");
  s->callback([&] { action = [&](std::ostream& e, Format f) { return run_survey_cmd(sv, f, e); }; });

  PadeArgs pa;
  auto* pade = app.add_subcommand("pade", "Pade systems and their bounds");
  pade->require_subcommand(1);
  auto* pv = pade->add_subcommand("verify", "identity sweep");
  pv->add_option("--j-max", pa.j_max)->check(CLI::Range(1u, 200u));
  pv->add_option("--abc-max", pa.abc_max)->check(CLI::Range(1u, 40u));
  pv->callback([&] { action = [&](std::ostream&, Format) { return run_pade_verify(pa); }; });
  auto* ps = pade->add_subcommand("show", "coefficients of one diagonal system");
  ps->add_option("--j", pa.j)->required()->check(CLI::Range(1u, 2000u));
  ps->add_option("--g", pa.g)->check(CLI::Range(0u, 1u));
  ps->add_flag("--normalized", pa.normalized);
  ps->callback([&] { action = [&](std::ostream&, Format) { return run_pade_show(pa); }; });
  auto* pc = pade->add_subcommand("content", "contents c_g(j)");
  pc->add_option("--j-min", pa.j_min)->check(CLI::Range(1u, 2000u));
  pc->add_option("--j-max", pa.j_max)->check(CLI::Range(1u, 2000u));
  pc->callback([&] { action = [&](std::ostream&, Format) { return run_pade_content(pa); }; });
  auto* pb = pade->add_subcommand("bounds", "Q and E bounds at z0 = lambda/beta");
  pb->add_option("--j", pa.j)->required()->check(CLI::Range(1u, 2000u));
  pb->add_option("--D", pa.D);
  pb->add_option("--p", pa.p);
  pb->add_option("--x0", pa.x0);
  pb->callback([&] { action = [&](std::ostream&, Format) { return run_pade_bounds(pa); }; });
  auto* pk = pade->add_subcommand("kernel", "kernel maximum and integral at b");
  pk->add_option("--b", pa.b, "rational in [0.953, 1]");
  pk->callback([&] { action = [&](std::ostream&, Format) { return run_pade_kernel(pa); }; });
  auto* pf = pade->add_subcommand("factorial", "factorial ratio bounds");
  pf->add_option("--a", pa.fa)->check(CLI::PositiveNumber);
  pf->add_option("--b", pa.fb)->check(CLI::PositiveNumber);
  pf->add_option("--c", pa.fc)->check(CLI::PositiveNumber);
  pf->add_option("--diagonal", pa.diagonal, "j for the (9j)!/((j-1)!(4j)!^2) bound")->check(CLI::PositiveNumber);
  pf->callback([&] { action = [&](std::ostream&, Format) { return run_pade_factorial(pa); }; });

  DecomposeArgs dc;
  auto* d = app.add_subcommand("decompose", "write x + sqrt(-D) as beta^k mu");
  auto* au = app.add_subcommand("audit", "decompose and audit the inequality chain");
  for (auto* sub : {d, au}) {
    sub->add_option("--D", dc.D)->required();
    sub->add_option("--p", dc.p)->required();
    sub->add_option("--x0", dc.x0)->required();
    sub->add_option("--n0", dc.n0)->required()->check(CLI::PositiveNumber);
    sub->add_option("--n", dc.n)->required()->check(CLI::PositiveNumber);
    sub->add_option("--x", dc.x, "a single solution; default: every root mod p^n");
  }
  au->add_option("--sigma", dc.sigma, "rational a/b");
  au->add_option("--variant", dc.variant)->check(CLI::IsMember({"5j", "7j"}));
  d->callback([&] { action = [&](std::ostream&, Format) { return run_decompose(dc); }; });
  au->callback([&] { action = [&](std::ostream&, Format) { return run_audit(dc); }; });

  ScanArgs sc;
  auto* sh = app.add_subcommand("scan-huge", "find base solutions x0^2 + D = p^n0");
  sh->add_option("--D", sc.D)->required();
  sh->add_option("--p", sc.p)->required();
  sh->add_option("--n0-max", sc.n0_max)->check(CLI::Range(1ul, 100000ul));
  sh->callback([&] { action = [&](std::ostream&, Format) { return run_scan(sc); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, common.format == "json" ? Format::Json : Format::Human, "InvalidArgument", e.what(),
                 kInvalidInput);
    return kInvalidInput;
  }

  const Format format = parse_format(common.format);
  try {
    if (!action) throw Error(ErrorCode::InvalidArgument, "no subcommand given");
    const Output o = action(err, format);
    const std::string text = render(o, format);
    if (common.out_path.empty()) {
      out << text;
    } else {
      write_file(common.out_path, text);
    }
    return o.code;
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    report_error(err, format, std::string(to_string(e.code())), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    report_error(err, format, "Internal", e.what(), kInternal);
    return kInternal;
  }
}

}  // namespace rnlab::cli
