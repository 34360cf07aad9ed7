// logmono: generate sequences, check log-behaviour, certify, forge bounds,
// reproduce the built-in claim suite.
//
// Exit codes: 0 ok, 2 refuted/failed, 3 input error, 4 exponent guard exceeded.

#include <logmono/logmono.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace logmono;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 2;
constexpr int kExitInput = 3;
constexpr int kExitGuard = 4;

int emit(const json& j, bool ok) {
  std::cout << j.dump(2) << "\n";
  return ok ? kExitOk : kExitRefuted;
}

Strictness parse_strictness(const std::string& s) {
  if (s == "strict") return Strictness::strict;
  if (s == "weak") return Strictness::weak;
  throw InputError("strictness must be strict or weak, got '" + s + "'");
}

struct GenOpts {
  std::string seq;
  long count = 10;
  unsigned m = 1;
  std::string format = "text";
};

// "harmonic --m 2" is shorthand for "harmonic:2".
std::string with_order(const std::string& seq, unsigned m) {
  if (m == 1) return seq;
  if (seq != "harmonic") throw InputError("--m only applies to harmonic");
  return "harmonic:" + std::to_string(m);
}

int cmd_gen(const GenOpts& o) {
  if (o.count < 1) throw InputError("--count must be positive");
  TermCache c(resolve_sequence(with_order(o.seq, o.m)));
  long first = c.first_index();
  auto terms = c.terms(first, first + o.count - 1);
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& t : terms) arr.push_back(t.str());
    std::cout << json{{"sequence", c.spec().name}, {"first_index", first}, {"terms", arr}}.dump(2) << "\n";
    return kExitOk;
  }
  for (std::size_t i = 0; i < terms.size(); ++i) std::cout << (i ? " " : "") << terms[i].str();
  std::cout << "\n";
  return kExitOk;
}

struct CheckOpts {
  std::string predicate;
  std::string seq;
  long from = 2;
  long to = 40;
  int k = 2;
  unsigned m = 1;
  std::string strictness;
  std::string direction = "concave";
};

int cmd_check(const CheckOpts& o) {
  TermCache c(resolve_sequence(with_order(o.seq, o.m)));
  auto strict_or = [&](Strictness dflt) { return o.strictness.empty() ? dflt : parse_strictness(o.strictness); };
  if (o.from > o.to) throw InputError("--from exceeds --to");
  const std::string& p = o.predicate;
  RangeVerdict v;
  if (p == "logconcave" || p == "logconvex") {
    v = check_log(c, o.from, o.to, p == "logconcave" ? Direction::concave : Direction::convex,
                  strict_or(Strictness::weak));
  } else if (p == "ratio-logconcave") {
    v = check_ratio_logconcave(c, o.from, o.to, strict_or(Strictness::strict));
  } else if (p == "ratio-logconvex") {
    v = check_ratio_logconvex(c, o.from, o.to, strict_or(Strictness::strict));
  } else if (p == "root-logconcave") {
    v = check_root_logconcave(c, o.from, o.to, strict_or(Strictness::strict));
  } else if (p == "root-logconvex") {
    v = check_root_logconvex(c, o.from, o.to, strict_or(Strictness::strict));
  } else if (p == "order-k") {
    auto vs = check_order_k(c, o.k, o.from, o.to, strict_or(Strictness::weak));
    bool all = std::all_of(vs.begin(), vs.end(), [](const RangeVerdict& x) { return x.holds; });
    return emit(json{{"predicate", "order-k"}, {"sequence", c.spec().name}, {"k", o.k}, {"holds", all}, {"verdicts", vs}},
                all);
  } else if (p == "initial") {
    if (o.direction != "concave" && o.direction != "convex") throw InputError("--direction must be concave or convex");
    Direction d = o.direction == "concave" ? Direction::concave : Direction::convex;
    bool ok = check_initial_condition(c, o.k, d);
    return emit(json{{"predicate", "initial"}, {"sequence", c.spec().name}, {"k", o.k}, {"direction", o.direction},
                     {"holds", ok}},
                ok);
  } else {
    throw InputError("unknown predicate '" + p + "'");
  }
  return emit(json(v), v.holds);
}

struct CertifyOpts {
  std::string theorem;
  std::string seq;
  std::string bound;
  long from = -1;
  long stitch = -1;
  long k = -1;
  long horizon = 1000;
  unsigned m = 1;
};

int cmd_certify(const CertifyOpts& o) {
  TermCache c(resolve_sequence(with_order(o.seq, o.m)));
  Certificate cert;
  if (o.theorem == "thm-pos" || o.theorem == "thm-neg") {
    if (o.bound.empty()) throw InputError(o.theorem + " needs --bound");
    if (o.from < 2) throw InputError(o.theorem + " needs --from T with T >= 2 (hypotheses certified from T)");
    QRatFun b = parse_ratfun(o.bound);
    long N = o.from - 2;
    cert = o.theorem == "thm-pos" ? certify_ratio_logconcave_pos(c, b, N) : certify_ratio_logconcave_neg(c, b, N);
    if (o.stitch >= 0 && cert.holds) cert = stitch_prefix(c, std::move(cert), o.stitch);
  } else if (o.theorem == "root-concave" || o.theorem == "root-convex") {
    if (o.k < 1) throw InputError(o.theorem + " needs --k >= 1");
    Direction d = o.theorem == "root-concave" ? Direction::concave : Direction::convex;
    Certificate ev;
    if (!o.bound.empty()) {
      // symbolic ratio evidence from a bound, stitched down to k
      if (d != Direction::concave) throw InputError("--bound evidence is only available for root-concave");
      if (o.from < 2) throw InputError("--bound needs --from T");
      const auto& v = c.spec().v;
      if (!c.spec().is_three_term() || !v) throw InputError(c.spec().name + " has no three-term recurrence");
      QRatFun b = parse_ratfun(o.bound);
      long N = o.from - 2;
      bool pos = v->eval(o.from).sign() > 0;
      ev = pos ? certify_ratio_logconcave_pos(c, b, N) : certify_ratio_logconcave_neg(c, b, N);
      if (ev.holds && o.k < N) ev = stitch_prefix(c, std::move(ev), o.k);
    } else {
      ev = certify_ratio_finite(c, o.k, o.k + o.horizon, d);
    }
    cert = certify_root(c, o.k, d, ev);
  } else {
    throw InputError("unknown theorem '" + o.theorem + "'");
  }
  json doc = certificate_document(cert);
  return emit(doc, cert.holds);
}

struct ForgeOpts {
  std::string seq;
  std::string kind;
  int max_depth = kDefaultForgeDepth;
};

int cmd_forge(const ForgeOpts& o) {
  TermCache c(resolve_sequence(o.seq));
  if (o.kind != "lower" && o.kind != "upper") throw InputError("--kind must be lower or upper");
  ForgeResult r = forge(c, o.kind == "lower" ? BoundKind::lower : BoundKind::upper, o.max_depth);
  json j{{"bound", r.bound ? json(to_string(*r.bound)) : json(nullptr)},
         {"certificate", r.certificate ? certificate_document(*r.certificate) : json(nullptr)},
         {"trace", forge_trace_document(r.trace)}};
  return emit(j, r.bound.has_value());
}

struct ReproduceOpts {
  std::string only;
  std::string format = "markdown";
  std::string output;
  unsigned jobs = 1;
};

int cmd_reproduce(const ReproduceOpts& o) {
  if (o.format != "json" && o.format != "markdown") throw InputError("--format must be json or markdown");
  Report r = reproduce(o.only, o.jobs);
  std::string text = o.format == "json" ? json(r).dump(2) + "\n" : to_markdown(r);
  if (o.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.output);
    if (!out) throw InputError("cannot write '" + o.output + "'");
    out << text;
  }
  return r.all_passed() ? kExitOk : kExitRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact log-concavity / log-convexity checks and certificates for combinatorial sequences"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  std::uint64_t guard = 0;
  app.add_option("--exp-guard", guard, "bit cap for exact power comparisons (overrides LOGMONO_EXP_GUARD)");

  GenOpts gen;
  auto* g = app.add_subcommand("gen", "print the first terms of a sequence");
  g->add_option("seq", gen.seq, "builtin name or DSL file")->required();
  g->add_option("--count", gen.count, "number of terms");
  g->add_option("--m", gen.m, "order of the harmonic numbers");
  g->add_option("--format", gen.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  CheckOpts chk;
  auto* ch = app.add_subcommand("check", "exact check of a predicate on a range of middle indices");
  ch->add_option("predicate", chk.predicate,
                 "logconcave, logconvex, order-k, ratio-logconcave, ratio-logconvex, root-logconcave, "
                 "root-logconvex, initial")
      ->required();
  ch->add_option("seq", chk.seq, "builtin name or DSL file")->required();
  ch->add_option("--from", chk.from, "first middle index");
  ch->add_option("--to", chk.to, "last middle index");
  ch->add_option("--k", chk.k, "order for order-k, index for initial");
  ch->add_option("--m", chk.m, "order of the harmonic numbers");
  ch->add_option("--strictness", chk.strictness, "strict or weak (default depends on the predicate)");
  ch->add_option("--direction", chk.direction, "concave or convex, for initial");

  CertifyOpts cer;
  auto* ce = app.add_subcommand("certify", "symbolic certificate for a ratio or root claim");
  ce->add_option("theorem", cer.theorem, "thm-pos, thm-neg, root-concave, root-convex")->required();
  ce->add_option("seq", cer.seq, "builtin name or DSL file")->required();
  ce->add_option("--bound", cer.bound, "ratio bound, e.g. \"(6*n^2+3*n-9/8)/(2*n*(n+2))\"");
  ce->add_option("--from", cer.from, "threshold T from which hypotheses are certified");
  ce->add_option("--stitch", cer.stitch, "extend the conclusion down to this index with an exact prefix check");
  ce->add_option("--k", cer.k, "start index for root claims");
  ce->add_option("--horizon", cer.horizon, "span of the finite ratio evidence for root claims without --bound");
  ce->add_option("--m", cer.m, "order of the harmonic numbers");

  ForgeOpts fo;
  auto* f = app.add_subcommand("forge", "construct and validate a ratio bound");
  f->add_option("seq", fo.seq, "builtin name or DSL file")->required();
  f->add_option("--kind", fo.kind, "lower or upper")->required();
  f->add_option("--max-depth", fo.max_depth, "correction steps");

  ReproduceOpts ro;
  auto* rp = app.add_subcommand("reproduce", "run the built-in claim suite");
  rp->add_option("--only", ro.only, "claim id or id prefix, e.g. domb");
  rp->add_option("--format", ro.format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));
  rp->add_option("--output", ro.output, "write the report to a file");
  rp->add_option("--jobs", ro.jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (guard > 0) set_exp_guard_bits(guard);
    if (*g) return cmd_gen(gen);
    if (*ch) return cmd_check(chk);
    if (*ce) return cmd_certify(cer);
    if (*f) return cmd_forge(fo);
    if (*rp) return cmd_reproduce(ro);
  } catch (const GuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
