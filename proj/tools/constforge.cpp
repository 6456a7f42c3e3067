// Command line front end: certified evaluation of the sequence constants,
// identity verification, floor-recurrence decoding, truncation/rational
// probes, and the series-vs-closed-form scan. Output in text, JSON, or CSV.
//
// Exit codes: 0 success (including in-band decode failures), 1 at least one
// verification or scan cell failed, 2 usage/domain/parse errors, 3 a
// computation did not converge within its budget.
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "constforge/batch.hpp"
#include "constforge/cfrac.hpp"
#include "constforge/identities.hpp"
#include "constforge/numkern.hpp"
#include "constforge/seqconst.hpp"
#include "constforge/specfun.hpp"

using ordered_json = nlohmann::ordered_json;

namespace cf = constforge;
namespace ids = constforge::identities;

namespace {

enum class Format { text, json, csv };

struct GlobalOpts {
  int digits = 50;
  Format format = Format::text;
  std::string output;
  bool deterministic = false;
  cf::batch::ExecPolicy exec = cf::batch::ExecPolicy::serial;
};

constexpr std::int64_t kWindowScanLimit = 400;

void emit(const GlobalOpts& g, const std::string& body) {
  if (g.output.empty()) {
    std::fputs(body.c_str(), stdout);
    return;
  }
  std::ofstream out(g.output);
  if (!out)
    throw cf::InvalidArgument("cannot open output file '" + g.output + "'");
  out << body;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += sep;
    out += parts[k];
  }
  return out;
}

// Evaluates a command line numeric argument ("2", "1/2", "0.75", "pi/4")
// down to a real value.
cf::Real parse_real_arg(const std::string& src, const cf::PrecCtx& ctx) {
  auto expr = ids::parse_expr(src);
  auto out = ids::eval_expr(expr, ctx);
  if (std::holds_alternative<cf::Cx>(out.value))
    throw cf::InvalidArgument("'" + src + "' must evaluate to a real value");
  return std::get<cf::Real>(out.value);
}

// Count of significant decimal digits in a literal, which bounds how much
// information a --value string actually carries.
int significant_digits(const std::string& s) {
  int total = 0;
  bool seen_nonzero = false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) continue;
    if (c != '0') seen_nonzero = true;
    if (seen_nonzero) ++total;
  }
  return total;
}

std::string q_to_decimal(const mpq_class& q, int digits) {
  cf::WorkingPrecision scope(digits + 10);
  return cf::Real(q).to_decimal(digits);
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalOpts {
  std::vector<long> ramp;    // --A alpha beta
  bool primes = false;
  std::string cf_arg, series_arg, expr_arg;
  std::vector<long> closed;  // --closed alpha beta
};

int run_eval(const GlobalOpts& g, const EvalOpts& o) {
  int selected = (!o.ramp.empty()) + o.primes + (!o.cf_arg.empty()) +
                 (!o.series_arg.empty()) + (!o.expr_arg.empty()) +
                 (!o.closed.empty());
  if (selected != 1)
    throw cf::InvalidArgument(
        "eval needs exactly one of --A, --primes, --cf, --series, --expr, "
        "--closed");

  cf::PrecCtx ctx = cf::make_context(g.digits);
  std::string target;
  std::string value;
  int certified = 0;
  std::vector<std::string> methods;
  ordered_json extra = ordered_json::object();

  if (!o.ramp.empty() || o.primes) {
    auto seq = o.primes
                   ? cf::seqconst::SequenceSource::primes()
                   : cf::seqconst::SequenceSource::linear(o.ramp[0], o.ramp[1]);
    target = o.primes ? "A(primes)"
                      : "A(" + std::to_string(o.ramp[0]) + "," +
                            std::to_string(o.ramp[1]) + ")";
    auto enc = cf::seqconst::encode(seq, ctx);
    value = enc.value.to_decimal(g.digits);
    certified = enc.certified_digits;
    methods = {"direct_series"};
    extra["terms_used"] = enc.terms_used;
    extra["tail_bound"] = enc.tail_bound.to_decimal(3);
  } else if (!o.cf_arg.empty()) {
    cf::Real x = parse_real_arg(o.cf_arg, ctx);
    target = "ramanujan_cf(" + o.cf_arg + ")";
    auto ev = cf::cfrac::cf_eval_backward(cf::cfrac::ramanujan_cf(x), ctx);
    value = ev.value.to_decimal(g.digits);
    certified = ev.certified_digits;
    methods = {cf::cfrac::cf_method_name(ev.method)};
    extra["depth"] = ev.depth;
  } else if (!o.series_arg.empty()) {
    cf::Real x = parse_real_arg(o.series_arg, ctx);
    target = "dblfact_series(" + o.series_arg + ")";
    auto sv = cf::specfun::series_double_factorial(x, ctx);
    value = sv.value.to_decimal(g.digits);
    certified = sv.certified_digits;
    methods = {cf::specfun::method_name(sv.method)};
  } else if (!o.expr_arg.empty()) {
    target = o.expr_arg;
    auto out = ids::eval_expr(ids::parse_expr(o.expr_arg), ctx);
    value = ids::render_value(out.value, g.digits);
    certified = out.certified_digits;
    methods = out.methods;
  } else {
    target = "closed_A(" + std::to_string(o.closed[0]) + "," +
             std::to_string(o.closed[1]) + ")";
    auto out = ids::closed_form_A(o.closed[0], o.closed[1], ctx);
    value = out.value.to_decimal(g.digits);
    certified = out.certified_digits;
    methods = {"direct_series"};
  }

  std::string body;
  if (g.format == Format::json) {
    ordered_json j;
    j["command"] = "eval";
    j["target"] = target;
    j["requested_digits"] = g.digits;
    j["value"] = value;
    j["certified_digits"] = certified;
    j["methods"] = methods;
    for (auto& [k, v] : extra.items()) j[k] = v;
    body = j.dump(2) + "\n";
  } else if (g.format == Format::csv) {
    body = "target,requested_digits,value,certified_digits,methods\n";
    body += target + "," + std::to_string(g.digits) + "," + value + "," +
            std::to_string(certified) + "," + join(methods, "+") + "\n";
  } else {
    body = target + " = " + value + "\n";
    body += "certified_digits: " + std::to_string(certified) + "\n";
    body += "methods: " + join(methods, "+") + "\n";
    for (auto& [k, v] : extra.items())
      body += k + ": " +
              (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  }
  emit(g, body);
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOpts {
  bool builtin = false;
  std::string manifest;
};

int run_verify(const GlobalOpts& g, const VerifyOpts& o) {
  if (o.builtin == !o.manifest.empty())
    throw cf::InvalidArgument(
        "verify needs exactly one of --builtin or a manifest path");
  auto idents =
      o.builtin ? ids::builtin_registry() : ids::load_manifest(o.manifest);
  if (idents.empty()) throw cf::InvalidArgument("no identities to verify");

  auto reports =
      cf::batch::verify_batch(std::move(idents), g.digits, g.exec);
  if (g.deterministic)
    for (auto& r : reports) r.elapsed_ms = 0.0;

  int passed = 0, failed = 0;
  for (auto& r : reports) (r.pass ? passed : failed)++;

  std::string body;
  if (g.format == Format::json) {
    ordered_json j;
    j["command"] = "verify";
    j["digits"] = g.digits;
    j["exec"] = cf::batch::policy_name(g.exec);
    j["reports"] = ordered_json::array();
    for (auto& r : reports) {
      ordered_json e;
      e["name"] = r.name;
      e["requested_digits"] = r.requested_digits;
      e["lhs"] = r.lhs_value;
      e["rhs"] = r.rhs_value;
      e["matched_digits"] = r.matched_digits;
      e["pass"] = r.pass;
      e["elapsed_ms"] = r.elapsed_ms;
      e["methods"] = r.methods;
      if (!r.error.empty()) e["error"] = r.error;
      j["reports"].push_back(std::move(e));
    }
    j["passed"] = passed;
    j["failed"] = failed;
    body = j.dump(2) + "\n";
  } else if (g.format == Format::csv) {
    body =
        "name,requested_digits,matched_digits,pass,elapsed_ms,methods,error\n";
    for (auto& r : reports) {
      char ms[32];
      std::snprintf(ms, sizeof ms, "%.3f", r.elapsed_ms);
      body += r.name + "," + std::to_string(r.requested_digits) + "," +
              std::to_string(r.matched_digits) + "," +
              (r.pass ? "true" : "false") + "," + ms + "," +
              join(r.methods, "+") + "," + r.error + "\n";
    }
  } else {
    for (auto& r : reports) {
      char line[128];
      std::snprintf(line, sizeof line, "%-4s %-12s matched %d/%d",
                    r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.matched_digits, r.requested_digits);
      body += line;
      if (!g.deterministic) {
        std::snprintf(line, sizeof line, "  (%.1f ms)", r.elapsed_ms);
        body += line;
      }
      body += "\n";
      if (!r.error.empty()) body += "     error: " + r.error + "\n";
      if (r.pass || !r.error.empty()) continue;
      body += "     lhs = " + r.lhs_value + "\n";
      body += "     rhs = " + r.rhs_value + "\n";
    }
    body += "summary: " + std::to_string(passed) + " passed, " +
            std::to_string(failed) + " failed\n";
  }
  emit(g, body);
  return failed == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// decode
// ---------------------------------------------------------------------------

struct DecodeOpts {
  std::vector<long> ramp;
  bool primes = false;
  std::string value;
  std::int64_t steps = 10;
};

int run_decode(const GlobalOpts& g, const DecodeOpts& o) {
  int selected = (!o.ramp.empty()) + o.primes + (!o.value.empty());
  if (selected != 1)
    throw cf::InvalidArgument(
        "decode needs exactly one of --A, --primes, --value");

  cf::PrecCtx ctx = cf::make_context(g.digits);
  std::string source;
  cf::Real start(0);
  std::int64_t window_start = 1;

  if (!o.value.empty()) {
    source = "value";
    int sig = significant_digits(o.value);
    if (sig < 4)
      throw cf::InvalidArgument(
          "--value needs at least 4 significant digits");
    cf::WorkingPrecision scope(sig);
    start = cf::Real::from_decimal(o.value);
  } else {
    auto seq = o.primes
                   ? cf::seqconst::SequenceSource::primes()
                   : cf::seqconst::SequenceSource::linear(o.ramp[0], o.ramp[1]);
    source = o.primes ? "A(primes)"
                      : "A(" + std::to_string(o.ramp[0]) + "," +
                            std::to_string(o.ramp[1]) + ")";
    auto n0 = cf::seqconst::bertrand_window(seq, kWindowScanLimit);
    if (!n0)
      throw cf::InvalidArgument("no growth window found for " + source);
    window_start = *n0;
    std::int64_t needed =
        cf::seqconst::decode_digits_needed(seq, window_start, o.steps);
    if (needed > g.digits)
      throw cf::ConvergenceError(
          "decoding " + std::to_string(o.steps) + " steps of " + source +
          " needs >= " + std::to_string(needed) + " digits; rerun with " +
          "--digits " + std::to_string(needed));
    auto enc = cf::seqconst::encode(seq, ctx);
    start = cf::seqconst::advance_to_window(enc.value, seq, window_start);
  }

  auto trace = cf::seqconst::decode(start, o.steps, ctx);

  std::string body;
  if (g.format == Format::json) {
    ordered_json j;
    j["command"] = "decode";
    j["source"] = source;
    j["digits"] = g.digits;
    j["window_start"] = window_start;
    j["steps"] = ordered_json::array();
    for (auto& st : trace.steps) {
      ordered_json e;
      e["step"] = st.n;
      e["index"] = window_start + st.n - 1;
      e["s"] = st.s;
      e["r"] = st.r.to_decimal(12);
      e["step_times_r"] = (cf::Real(st.n) * st.r).to_decimal(12);
      j["steps"].push_back(std::move(e));
    }
    if (trace.failure)
      j["failure"] = ordered_json{
          {"step", trace.failure->first},
          {"reason", cf::seqconst::decode_failure_name(trace.failure->second)}};
    else
      j["failure"] = nullptr;
    body = j.dump(2) + "\n";
  } else if (g.format == Format::csv) {
    body = "step,index,s,r,step_times_r\n";
    for (auto& st : trace.steps)
      body += std::to_string(st.n) + "," +
              std::to_string(window_start + st.n - 1) + "," +
              std::to_string(st.s) + "," + st.r.to_decimal(12) + "," +
              (cf::Real(st.n) * st.r).to_decimal(12) + "\n";
  } else {
    body = "source: " + source + "\n";
    body += "window_start: " + std::to_string(window_start) + "\n";
    body += "step   index  s        r               step*r\n";
    for (auto& st : trace.steps) {
      char line[160];
      std::snprintf(line, sizeof line, "%-6lld %-6lld %-8ld %-15s %s\n",
                    static_cast<long long>(st.n),
                    static_cast<long long>(window_start + st.n - 1), st.s,
                    st.r.to_decimal(12).c_str(),
                    (cf::Real(st.n) * st.r).to_decimal(12).c_str());
      body += line;
    }
    if (trace.failure)
      body += "stopped: " +
              std::string(
                  cf::seqconst::decode_failure_name(trace.failure->second)) +
              " at step " + std::to_string(trace.failure->first) + "\n";
  }
  emit(g, body);
  return 0;
}

// ---------------------------------------------------------------------------
// probe
// ---------------------------------------------------------------------------

struct ProbeOpts {
  std::vector<long> ramp;
  bool primes = false;
  std::int64_t truncate = 0;          // --truncate D
  std::vector<std::string> rational;  // --rational P Q
  std::int64_t steps = 64;
};

int run_probe(const GlobalOpts& g, const ProbeOpts& o) {
  if ((!o.ramp.empty()) + o.primes != 1)
    throw cf::InvalidArgument("probe needs exactly one of --A, --primes");
  if ((o.truncate > 0) + (!o.rational.empty()) != 1)
    throw cf::InvalidArgument(
        "probe needs exactly one of --truncate, --rational");

  auto seq = o.primes
                 ? cf::seqconst::SequenceSource::primes()
                 : cf::seqconst::SequenceSource::linear(o.ramp[0], o.ramp[1]);
  std::string source = o.primes ? "A(primes)"
                                : "A(" + std::to_string(o.ramp[0]) + "," +
                                      std::to_string(o.ramp[1]) + ")";
  cf::PrecCtx ctx = cf::make_context(g.digits);

  std::string body;
  if (o.truncate > 0) {
    auto probe = cf::seqconst::truncation_probe(seq, o.truncate, ctx);
    if (g.format == Format::json) {
      ordered_json j;
      j["command"] = "probe";
      j["kind"] = "truncate";
      j["source"] = source;
      j["digits_given"] = o.truncate;
      j["predicted_depth"] = probe.predicted_depth;
      j["failure_depth"] = probe.failure_depth;
      body = j.dump(2) + "\n";
    } else if (g.format == Format::csv) {
      body = "source,digits_given,predicted_depth,failure_depth\n";
      body += source + "," + std::to_string(o.truncate) + "," +
              std::to_string(probe.predicted_depth) + "," +
              std::to_string(probe.failure_depth) + "\n";
    } else {
      body = "source: " + source + "\n";
      body += "digits_given: " + std::to_string(o.truncate) + "\n";
      body += "predicted_depth: " + std::to_string(probe.predicted_depth) +
              "\n";
      body += "failure_depth: " + std::to_string(probe.failure_depth) + "\n";
    }
  } else {
    mpz_class num, den;
    try {
      num = mpz_class(o.rational[0]);
      den = mpz_class(o.rational[1]);
    } catch (const std::invalid_argument&) {
      throw cf::InvalidArgument("--rational needs integer arguments");
    }
    if (den == 0) throw cf::InvalidArgument("--rational denominator is zero");
    mpq_class q(num, den);
    q.canonicalize();
    auto probe = cf::seqconst::rational_probe(q, seq, o.steps);
    if (g.format == Format::json) {
      ordered_json j;
      j["command"] = "probe";
      j["kind"] = "rational";
      j["source"] = source;
      j["value"] = q.get_str();
      j["integrality_ok"] = probe.integrality_ok;
      j["steps"] = ordered_json::array();
      for (auto& st : probe.steps)
        j["steps"].push_back(ordered_json{{"step", st.n},
                                          {"s", st.s.get_str()},
                                          {"r", q_to_decimal(st.r, 12)}});
      if (probe.failure)
        j["failure"] = ordered_json{
            {"step", probe.failure->first},
            {"reason",
             cf::seqconst::decode_failure_name(probe.failure->second)}};
      else
        j["failure"] = nullptr;
      j["min_r"] = q_to_decimal(probe.min_r, 12);
      j["min_r_step"] = probe.min_r_step;
      if (probe.first_below_inv_q)
        j["first_below_inv_q"] = *probe.first_below_inv_q;
      else
        j["first_below_inv_q"] = nullptr;
      body = j.dump(2) + "\n";
    } else if (g.format == Format::csv) {
      body = "step,s,r\n";
      for (auto& st : probe.steps)
        body += std::to_string(st.n) + "," + st.s.get_str() + "," +
                q_to_decimal(st.r, 12) + "\n";
    } else {
      body = "source: " + source + "\n";
      body += "value: " + q.get_str() + "\n";
      body += "integrality: " +
              std::string(probe.integrality_ok ? "ok" : "violated") + "\n";
      body += "step   s        r\n";
      for (auto& st : probe.steps) {
        char line[160];
        std::snprintf(line, sizeof line, "%-6lld %-8s %s\n",
                      static_cast<long long>(st.n), st.s.get_str().c_str(),
                      q_to_decimal(st.r, 12).c_str());
        body += line;
      }
      if (probe.failure)
        body += "stopped: " +
                std::string(cf::seqconst::decode_failure_name(
                    probe.failure->second)) +
                " at step " + std::to_string(probe.failure->first) + "\n";
      body += "min_r: " + q_to_decimal(probe.min_r, 12) + " at step " +
              std::to_string(probe.min_r_step) + "\n";
      if (probe.first_below_inv_q)
        body += "first r < 1/q at step " +
                std::to_string(*probe.first_below_inv_q) + "\n";
    }
  }
  emit(g, body);
  return 0;
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

struct ScanOpts {
  long alpha_lo = 2;
  long alpha_hi = 7;
};

int run_scan(const GlobalOpts& g, const ScanOpts& o) {
  auto cells =
      cf::batch::scan_closed_form(o.alpha_lo, o.alpha_hi, g.digits, g.exec);
  bool all_pass = true;
  for (auto& c : cells) all_pass = all_pass && c.pass;

  std::string body;
  if (g.format == Format::json) {
    ordered_json j;
    j["command"] = "scan";
    j["digits"] = g.digits;
    j["exec"] = cf::batch::policy_name(g.exec);
    j["cells"] = ordered_json::array();
    for (auto& c : cells) {
      ordered_json e;
      e["alpha"] = c.alpha;
      e["beta"] = c.beta;
      e["series"] = c.series_value;
      e["closed"] = c.closed_value;
      e["matched_digits"] = c.matched_digits;
      e["pass"] = c.pass;
      if (!c.error.empty()) e["error"] = c.error;
      j["cells"].push_back(std::move(e));
    }
    j["all_pass"] = all_pass;
    body = j.dump(2) + "\n";
  } else if (g.format == Format::csv) {
    body = "alpha,beta,matched_digits,pass,error\n";
    for (auto& c : cells)
      body += std::to_string(c.alpha) + "," + std::to_string(c.beta) + "," +
              std::to_string(c.matched_digits) + "," +
              (c.pass ? "true" : "false") + "," + c.error + "\n";
  } else {
    for (auto& c : cells) {
      char line[128];
      std::snprintf(line, sizeof line, "%-4s A(%ld,%ld) matched %d/%d\n",
                    c.pass ? "PASS" : "FAIL", c.alpha, c.beta,
                    c.matched_digits, g.digits);
      body += line;
      if (!c.error.empty()) body += "     error: " + c.error + "\n";
    }
    body += std::string("summary: ") + (all_pass ? "all cells agree" :
            "disagreement found") + "\n";
  }
  emit(g, body);
  return all_pass ? 0 : 1;
}

int default_digits() {
  const char* env = std::getenv("CONSTFORGE_DIGITS");
  if (!env || !*env) return 50;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 8 || v > 1000000) return 50;
  return static_cast<int>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified evaluation of sequence-encoded constants"};
  app.require_subcommand(1);
  // Global options may appear before or after the subcommand name.
  app.fallthrough();

  GlobalOpts g;
  g.digits = default_digits();
  std::string format = "text", exec = "serial";
  app.add_option("--digits", g.digits,
                 "decimal digits to certify (default: CONSTFORGE_DIGITS or "
                 "50)");
  app.add_option("--format", format, "output format: text, json, csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--output", g.output, "write output to a file");
  app.add_flag("--deterministic", g.deterministic,
               "zero out timing fields for reproducible output");
  app.add_option("--exec", exec, "execution policy: serial, parallel")
      ->check(CLI::IsMember({"serial", "parallel"}));

  EvalOpts eo;
  auto* eval = app.add_subcommand("eval", "evaluate one constant");
  eval->add_option("--A", eo.ramp, "ramp parameters alpha beta")->expected(2);
  eval->add_flag("--primes", eo.primes, "the prime-sequence constant");
  eval->add_option("--cf", eo.cf_arg, "continued fraction at x");
  eval->add_option("--series", eo.series_arg,
                   "odd-double-factorial series at x");
  eval->add_option("--expr", eo.expr_arg, "expression to evaluate");
  eval->add_option("--closed", eo.closed,
                   "closed form of the ramp constant: alpha beta")
      ->expected(2);

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "check identities");
  verify->add_flag("--builtin", vo.builtin, "use the built-in registry");
  verify->add_option("manifest", vo.manifest, "identity manifest file");

  DecodeOpts dopt;
  auto* decode =
      app.add_subcommand("decode", "recover sequence terms by floor steps");
  decode->add_option("--A", dopt.ramp, "ramp parameters alpha beta")
      ->expected(2);
  decode->add_flag("--primes", dopt.primes, "the prime-sequence constant");
  decode->add_option("--value", dopt.value, "decimal value to decode");
  decode->add_option("--steps", dopt.steps, "steps to recover (default 10)");

  ProbeOpts po;
  auto* probe =
      app.add_subcommand("probe", "stress the decoder on damaged inputs");
  probe->add_option("--A", po.ramp, "ramp parameters alpha beta")->expected(2);
  probe->add_flag("--primes", po.primes, "the prime-sequence constant");
  probe->add_option("--truncate", po.truncate,
                    "decode from a D-digit truncation");
  probe->add_option("--rational", po.rational,
                    "follow the exact orbit of P/Q")
      ->expected(2);
  probe->add_option("--steps", po.steps, "orbit length cap (default 64)");

  ScanOpts so;
  auto* scan =
      app.add_subcommand("scan", "series vs closed form over a grid");
  scan->add_option("--alpha-lo", so.alpha_lo, "first alpha (default 2)");
  scan->add_option("--alpha-hi", so.alpha_hi, "last alpha (default 7)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (format == "json") g.format = Format::json;
  else if (format == "csv") g.format = Format::csv;
  if (exec == "parallel") g.exec = cf::batch::ExecPolicy::parallel;

  try {
    if (eval->parsed()) return run_eval(g, eo);
    if (verify->parsed()) return run_verify(g, vo);
    if (decode->parsed()) return run_decode(g, dopt);
    if (probe->parsed()) return run_probe(g, po);
    return run_scan(g, so);
  } catch (const cf::ConvergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const cf::NumericError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
