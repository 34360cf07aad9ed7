#pragma once

// The built-in reproduction suite: every log-behaviour claim this tool knows
// how to establish, run claim by claim into a Report.

#include <logmono/serialize.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <thread>

namespace logmono {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "logmono.report.v1";

struct Claim {
  std::string id;
  std::string locator;
  std::string status;  // certified, finite-verified, empirical, failed
  std::string details;
  double seconds = 0;
  std::vector<Certificate> certificates;
  std::vector<RangeVerdict> checks;
  friend bool operator==(const Claim&, const Claim&) = default;
};

struct Report {
  std::vector<Claim> claims;
  std::string tool_version = kToolVersion;
  std::string timestamp;
  std::uint64_t seed = 0;  // reserved; the suite is deterministic
  friend bool operator==(const Report&, const Report&) = default;

  bool all_passed() const {
    for (const auto& c : claims)
      if (c.status == "failed") return false;
    return true;
  }
};

inline const std::vector<std::string>& claim_statuses() {
  static const std::vector<std::string> s = {"certified", "finite-verified", "empirical", "failed"};
  return s;
}

// Reference ratio bounds used by the suite.
namespace reference_bounds {
inline constexpr const char* motzkin_g = "(6*n^2+3*n-9/8)/(2*n*(n+2))";
inline constexpr const char* fine_g = "(4*n^2-2*n+2/3)/(n^2+n)";
inline constexpr const char* delannoy_h = "((3+2*sqrt(2))*n^2-(3/2+sqrt(2))*n-sqrt(2)/32)/n^2";
inline constexpr const char* polyhex_h = "(10*n^3-5*n^2+15/8*n+6)/(2*n^2+2*n^3)";
inline constexpr const char* domb_h = "(16*n^3-24*n^2+12*n-2)/n^3";
}  // namespace reference_bounds

// Suite ranges. Verdict ranges are middle indices.
inline constexpr long kRootCheckEnd = 60;
inline constexpr long kDerangementEnd = 10000;
inline constexpr long kHarmonicEnd = 1000;
inline constexpr long kOrderKEnd = 80;
inline constexpr int kOrderK = 5;
inline constexpr int kScanOrders = 4;
inline constexpr long kScanHorizon = 200;

namespace detail {

inline std::string verdict_text(const RangeVerdict& v) {
  std::string s = v.predicate + " on [" + std::to_string(v.start) + "," + std::to_string(v.end) + "]: ";
  return s + (v.holds ? "holds" : "fails at n=" + std::to_string(*v.first_failure));
}

inline void settle(Claim& c) {
  bool failed = false, finite = c.certificates.empty();
  for (const auto& cert : c.certificates) {
    if (!cert.holds) failed = true;
    if (status_of(cert) == "finite-verified") finite = true;
  }
  for (const auto& v : c.checks)
    if (!v.holds) failed = true;
  if (failed) c.status = "failed";
  else if (c.status != "empirical") c.status = finite ? "finite-verified" : "certified";
}

inline void note(Claim& c, const std::string& line) {
  if (!c.details.empty()) c.details += "; ";
  c.details += line;
}

inline void note_cert(Claim& c, const Certificate& cert) {
  std::string s = cert.property + " from n=" + std::to_string(cert.conclusion_from) + " (" + status_of(cert);
  if (cert.premise == Premise::symbolic) s += ", hypotheses from " + std::to_string(cert.hypotheses_from);
  if (cert.bound) s += ", bound " + to_string(*cert.bound);
  s += ")";
  if (!cert.holds) s += " FAILED: " + cert.failure;
  note(c, s);
}

inline Claim ratio_claim(const std::string& name, long N, long merged_from, const char* bound, bool positive_v) {
  TermCache cache(builtin_sequence(name));
  Claim c;
  QRatFun b = parse_ratfun(bound);
  Certificate sym = positive_v ? certify_ratio_logconcave_pos(cache, b, N) : certify_ratio_logconcave_neg(cache, b, N);
  Certificate cert = merged_from < N ? stitch_prefix(cache, std::move(sym), merged_from) : std::move(sym);
  note_cert(c, cert);
  for (const auto& v : cert.finite_checks) note(c, "prefix " + verdict_text(v));
  c.certificates.push_back(std::move(cert));
  return c;
}

// Root claim from symbolic ratio evidence at k plus an exact check of the
// whole stated range [lo, hi] (middle indices).
inline Claim root_claim(const std::string& name, long k, long N, long merged_from, const char* bound,
                        bool positive_v, long lo) {
  TermCache cache(builtin_sequence(name));
  Claim c;
  QRatFun b = parse_ratfun(bound);
  Certificate sym = positive_v ? certify_ratio_logconcave_pos(cache, b, N) : certify_ratio_logconcave_neg(cache, b, N);
  Certificate ev = merged_from < N ? stitch_prefix(cache, std::move(sym), merged_from) : std::move(sym);
  Certificate root = certify_root(cache, k, Direction::concave, ev);
  note_cert(c, root);
  c.certificates.push_back(std::move(root));
  RangeVerdict rv = check_root_logconcave(cache, lo, kRootCheckEnd);
  note(c, verdict_text(rv));
  c.checks.push_back(std::move(rv));
  return c;
}

struct ClaimSpec {
  std::string id;
  std::string locator;
  std::function<Claim()> run;
};

inline std::vector<ClaimSpec> suite_table() {
  using namespace reference_bounds;
  std::vector<ClaimSpec> t;
  auto add = [&](std::string id, std::string locator, std::function<Claim()> run) {
    t.push_back({std::move(id), std::move(locator), std::move(run)});
  };

  add("motzkin.ratio-logconcave", "Motzkin numbers: {M_n/M_(n-1)} log-concave for n >= 4; lower bound g from 13",
      [] { return ratio_claim("motzkin", 11, 4, motzkin_g, true); });
  add("motzkin.root-logconcave", "Motzkin numbers: {M_n^(1/n)} strictly log-concave, checked on [2,60]", [] {
    Claim c = root_claim("motzkin", 4, 11, 4, motzkin_g, true, 2);
    return c;
  });
  add("fine.ratio-logconcave", "Fine numbers: {f_n/f_(n-1)} log-concave for n >= 5; lower bound g from 7",
      [] { return ratio_claim("fine", 5, 5, fine_g, true); });
  add("fine.root-logconcave", "Fine numbers: {f_n^(1/n)} strictly log-concave, checked on [3,60]",
      [] { return root_claim("fine", 5, 5, 5, fine_g, true, 3); });
  add("delannoy.ratio-logconcave",
      "central Delannoy numbers: ratio log-concave for n >= 0; upper bound h over Q(sqrt(2)), floor 3u/4",
      [] { return ratio_claim("delannoy", 0, 0, delannoy_h, false); });
  add("delannoy.root-logconcave", "central Delannoy numbers: {D(n)^(1/n)} strictly log-concave, checked on [2,60]",
      [] { return root_claim("delannoy", 1, 0, 0, delannoy_h, false, 2); });
  add("polyhex.ratio-logconcave",
      "tree-like polyhexes: ratio log-concave for n >= 0; upper bound h from 7, prefix [2,6] checked exactly",
      [] { return ratio_claim("polyhex", 5, 0, polyhex_h, false); });
  add("polyhex.root-logconcave", "tree-like polyhexes: {t_n^(1/n)} strictly log-concave, checked on [2,60]",
      [] { return root_claim("polyhex", 1, 5, 0, polyhex_h, false, 2); });
  add("domb.ratio-logconcave",
      "Domb numbers: ratio log-concave for n >= 0; floor 3u/4 and upper bound h from 24, prefix [2,23] checked exactly",
      [] { return ratio_claim("domb", 22, 0, domb_h, false); });
  add("domb.root-logconcave",
      "Domb numbers: {D_n^(1/n)} strictly log-concave for n >= 1, initial condition at k=1, checked on [2,60]",
      [] { return root_claim("domb", 1, 22, 0, domb_h, false, 2); });

  add("derangement.growth", "derangements: D_n > 5(n+3) for 5 <= n <= 10^4", [] {
    TermCache cache(builtin_sequence("derangement"));
    Claim c;
    RangeVerdict v;
    v.predicate = "derangement D_n > 5(n+3)";
    v.start = 5;
    v.end = kDerangementEnd;
    v.strictness = Strictness::strict;
    for (long n = 5; n <= kDerangementEnd; ++n) detail::record(v, n, cache.term(n) > Rational(5 * (n + 3)));
    note(c, verdict_text(v));
    c.checks.push_back(std::move(v));
    return c;
  });
  add("derangement.logconvex", "derangements: {D_n}_{n>=2} log-convex on [2,10^4]", [] {
    TermCache cache(builtin_sequence("derangement"));
    Claim c;
    RangeVerdict v = check_log(cache, 3, kDerangementEnd, Direction::convex, Strictness::strict);
    note(c, verdict_text(v));
    c.checks.push_back(std::move(v));
    return c;
  });
  add("derangement.ratio-logconcave", "derangements: {D_n}_{n>=2} ratio log-concave on [2,10^4]", [] {
    TermCache cache(builtin_sequence("derangement"));
    Claim c;
    RangeVerdict v = check_ratio_logconcave(cache, 4, kDerangementEnd);
    note(c, verdict_text(v));
    if (!v.holds && *v.first_failure == 5) {
      note(c, "D_5^3 D_3 = " + (cache.term(5) * cache.term(5) * cache.term(5) * cache.term(3)).str() + " < D_6 D_4^3 = " +
                  (cache.term(6) * cache.term(4) * cache.term(4) * cache.term(4)).str());
    }
    c.checks.push_back(std::move(v));
    return c;
  });
  add("derangement.ratio-logconcave-from-4", "derangements: {D_n}_{n>=4} ratio log-concave on [4,10^4]", [] {
    TermCache cache(builtin_sequence("derangement"));
    Claim c;
    Certificate ev = certify_ratio_finite(cache, 4, kDerangementEnd);
    note_cert(c, ev);
    for (const auto& v : ev.finite_checks) note(c, verdict_text(v));
    c.certificates.push_back(std::move(ev));
    return c;
  });
  add("derangement.root-logconcave",
      "derangements: {D_n^(1/n)}_{n>=3} strictly log-concave; initial condition at k=3, checked on [4,60]", [] {
        TermCache cache(builtin_sequence("derangement"));
        Claim c;
        RangeVerdict init;
        init.predicate = "derangement initial condition (concave) at k";
        init.start = init.end = 3;
        init.strictness = Strictness::strict;
        detail::record(init, 3, check_initial_condition(cache, 3, Direction::concave));
        note(c, verdict_text(init));
        c.checks.push_back(std::move(init));
        // ratio evidence only holds from 4, so the criterion is applied at k=4
        Certificate ev = certify_ratio_finite(cache, 4, kDerangementEnd);
        Certificate root = certify_root(cache, 4, Direction::concave, ev);
        note_cert(c, root);
        c.certificates.push_back(std::move(root));
        RangeVerdict rv = check_root_logconcave(cache, 4, kRootCheckEnd);
        note(c, verdict_text(rv));
        c.checks.push_back(std::move(rv));
        return c;
      });

  for (int m = 1; m <= 4; ++m) {
    const std::string name = m == 1 ? "harmonic" : "harmonic:" + std::to_string(m);
    const std::string tag = "harmonic.m" + std::to_string(m);
    const std::string label = "H_(n," + std::to_string(m) + ")";
    add(tag + ".ratio-logconvex", "harmonic numbers " + label + ": H_(n+2)H_n/H_(n+1)^2 strictly increasing on [1,1000]",
        [name] {
          TermCache cache(builtin_sequence(name));
          Claim c;
          RangeVerdict v = check_ratio_quotient_increasing(cache, 1, kHarmonicEnd);
          note(c, verdict_text(v));
          c.checks.push_back(std::move(v));
          return c;
        });
    add(tag + ".root-logconvex",
        "harmonic numbers " + label + ": {H_n^(1/n)}_{n>=3} strictly log-convex; initial condition at k=3, checked on [4,60]",
        [name] {
          TermCache cache(builtin_sequence(name));
          Claim c;
          Certificate ev = certify_ratio_finite(cache, 1, kHarmonicEnd, Direction::convex);
          Certificate root = certify_root(cache, 3, Direction::convex, ev);
          note_cert(c, root);
          c.certificates.push_back(std::move(root));
          RangeVerdict rv = check_root_logconvex(cache, 4, kRootCheckEnd);
          note(c, verdict_text(rv));
          c.checks.push_back(std::move(rv));
          return c;
        });
  }

  for (const char* name : {"catalan", "central_binomial", "bernoulli_abs_even"}) {
    add(std::string("order-k.") + name,
        std::string(name) + ": R^r alternately log-convex/log-concave for r < 5 on [1,80] (finite slice of infinite order)",
        [name] {
          TermCache cache(builtin_sequence(name));
          Claim c;
          long start = std::max(1L, cache.first_index() + 1);
          for (auto& v : check_order_k(cache, kOrderK, start, kOrderKEnd)) {
            if (!v.holds) note(c, verdict_text(v));
            c.checks.push_back(std::move(v));
          }
          note(c, "order " + std::to_string(kOrderK) + " on [" + std::to_string(start) + "," +
                      std::to_string(kOrderKEnd) + "]");
          return c;
        });
  }

  for (const char* name : {"motzkin", "fine", "delannoy", "polyhex", "domb", "bell"}) {
    add(std::string("scan.") + name,
        std::string(name) + ": empirical scan of where R^r log-behaviour starts, r < 4, up to n=200", [name] {
          TermCache cache(builtin_sequence(name));
          Claim c;
          c.status = "empirical";
          for (const auto& row : scan_almost_order(cache, kScanOrders, kScanHorizon)) {
            note(c, "R^" + std::to_string(row.r) + ": " +
                        (row.holds_from ? "holds from " + std::to_string(*row.holds_from) : std::string("no tail")) +
                        ", " + std::to_string(row.failures) + " failures");
          }
          return c;
        });
  }

  struct ForgeCase {
    const char* id;
    const char* name;
    BoundKind kind;
    const char* x1;
  };
  for (ForgeCase fc : {ForgeCase{"forge.motzkin-lower", "motzkin", BoundKind::lower, "-9/16"},
                       ForgeCase{"forge.delannoy-upper", "delannoy", BoundKind::upper, "-sqrt(2)/32"}}) {
    add(fc.id, std::string(fc.name) + ": " + to_string(fc.kind) + " bound forged, first correction x_1 = " + fc.x1, [fc] {
      TermCache cache(builtin_sequence(fc.name));
      Claim c;
      ForgeResult r = forge(cache, fc.kind);
      if (!r.bound) {
        c.status = "failed";
        note(c, "forge failed: " + r.trace.failure);
        return c;
      }
      const auto& steps = r.trace.corrections;
      std::optional<QuadNum> x1 = steps.empty() ? std::nullopt : steps.front().chosen;
      RangeVerdict v;
      v.predicate = std::string(fc.name) + " forged x_1 equals " + fc.x1;
      v.start = v.end = 1;
      detail::record(v, 1, x1 && *x1 == parse_quad(fc.x1));
      note(c, "x_1 = " + (x1 ? x1->str() : std::string("none")));
      note(c, "bound " + to_string(*r.bound));
      c.checks.push_back(std::move(v));
      if (r.certificate) {
        note_cert(c, *r.certificate);
        c.certificates.push_back(*r.certificate);
      }
      return c;
    });
  }
  return t;
}

inline bool id_selected(const std::string& id, const std::string& only) {
  return only.empty() || id == only || id.rfind(only + ".", 0) == 0;
}

inline std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline Claim run_claim(const ClaimSpec& spec) {
  auto t0 = std::chrono::steady_clock::now();
  Claim c;
  try {
    c = spec.run();
    settle(c);
  } catch (const GuardExceeded& e) {
    c = Claim{};
    c.status = "failed";
    c.details = std::string("guard exceeded: ") + e.what();
  } catch (const Error& e) {
    c = Claim{};
    c.status = "failed";
    c.details = std::string("error: ") + e.what();
  }
  c.id = spec.id;
  c.locator = spec.locator;
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

}  // namespace detail

inline std::vector<std::string> suite_claim_ids() {
  std::vector<std::string> ids;
  for (const auto& s : detail::suite_table()) ids.push_back(s.id);
  return ids;
}

// Runs the selected claims ("" selects all; "domb" selects "domb.*") on up to
// `jobs` threads. Claims keep the table order regardless of scheduling.
inline Report reproduce(const std::string& only = "", unsigned jobs = 1) {
  std::vector<detail::ClaimSpec> selected;
  for (auto& s : detail::suite_table())
    if (detail::id_selected(s.id, only)) selected.push_back(std::move(s));
  if (selected.empty()) throw InputError("no claim matches '" + only + "'");

  Report r;
  r.timestamp = detail::utc_now();
  r.claims.resize(selected.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < selected.size(); i = next++) r.claims[i] = detail::run_claim(selected[i]);
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(selected.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return r;
}

// ---- soundness audit ------------------------------------------------------------

inline constexpr long kAuditSpan = 500;
inline constexpr long kAuditRootSpan = 100;

// Direct exact re-checks at `samples` random indices past each symbolic
// certificate's threshold; returns the indices that fail, as "property@n".
inline std::vector<std::string> audit_certificate(const Certificate& c, TermCache& cache, std::mt19937_64& rng,
                                                  int samples = 50) {
  std::vector<std::string> bad;
  for (const auto& sub : c.components) {
    auto more = audit_certificate(sub, cache, rng, samples);
    bad.insert(bad.end(), more.begin(), more.end());
  }
  if (!c.holds || c.premise != Premise::symbolic) return bad;
  const bool ratio = c.property.rfind("ratio-log", 0) == 0;
  const bool root = c.property.rfind("root-log", 0) == 0;
  long lo = ratio ? c.conclusion_from + 2 : root ? std::max(c.conclusion_from + 1, 2L) : c.hypotheses_from;
  std::uniform_int_distribution<long> pick(lo, lo + (root ? kAuditRootSpan : kAuditSpan));
  for (int i = 0; i < samples; ++i) {
    long n = pick(rng);
    bool ok = true;
    if (c.property == "ratio-logconcave") {
      ok = check_ratio_logconcave(cache, n, n).holds;
    } else if (c.property == "ratio-logconvex") {
      ok = check_ratio_logconvex(cache, n, n).holds;
    } else if (c.property == "root-logconcave") {
      ok = check_root_logconcave(cache, n, n).holds;
    } else if (c.property == "root-logconvex") {
      ok = check_root_logconvex(cache, n, n).holds;
    } else if (c.property == "lower-bound") {
      ok = quad_sign(QuadNum(cache.ratio(n)) - c.bound->eval(n)) > 0;
    } else if (c.property == "upper-bound") {
      ok = quad_sign(c.bound->eval(n) - QuadNum(cache.ratio(n))) > 0;
    } else if (c.property == "floor-bound") {
      ok = quad_sign(QuadNum(cache.ratio(n)) - c.bound->eval(n)) >= 0;
    } else {
      throw InputError("no audit rule for property " + c.property);
    }
    if (!ok) bad.push_back(c.property + "@" + std::to_string(n));
  }
  return bad;
}

// ---- JSON and markdown --------------------------------------------------------------

inline void to_json(json& j, const Claim& c) {
  j = json{{"id", c.id},         {"locator", c.locator},           {"status", c.status},
           {"details", c.details}, {"seconds", c.seconds}, {"certificates", c.certificates},
           {"checks", c.checks}};
}
inline void from_json(const json& j, Claim& c) {
  c.id = j.at("id").get<std::string>();
  c.locator = j.at("locator").get<std::string>();
  c.status = j.at("status").get<std::string>();
  const auto& ok = claim_statuses();
  if (std::find(ok.begin(), ok.end(), c.status) == ok.end()) throw InputError("unknown claim status " + c.status);
  c.details = j.at("details").get<std::string>();
  c.seconds = j.at("seconds").get<double>();
  c.certificates = j.at("certificates").get<std::vector<Certificate>>();
  c.checks = j.at("checks").get<std::vector<RangeVerdict>>();
}

inline void to_json(json& j, const Report& r) {
  j = json{{"schema", kReportSchema},
           {"tool_version", r.tool_version},
           {"timestamp", r.timestamp},
           {"seed", r.seed},
           {"claims", r.claims}};
}
inline void from_json(const json& j, Report& r) {
  r.tool_version = j.at("tool_version").get<std::string>();
  r.timestamp = j.at("timestamp").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.claims = j.at("claims").get<std::vector<Claim>>();
}

inline std::string to_markdown(const Report& r) {
  std::ostringstream out;
  out << "# logmono reproduction report\n\n";
  out << "tool " << r.tool_version << ", " << r.timestamp << "\n\n";
  std::map<std::string, int> tally;
  for (const auto& c : r.claims) ++tally[c.status];
  for (const auto& s : claim_statuses())
    if (tally.count(s)) out << "- " << s << ": " << tally[s] << "\n";
  out << "\n| claim | statement | status | seconds | details |\n|---|---|---|---|---|\n";
  auto cell = [](std::string s) {
    for (std::size_t p = 0; (p = s.find('|', p)) != std::string::npos; p += 2) s.replace(p, 1, "\\|");
    return s;
  };
  for (const auto& c : r.claims) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f", c.seconds);
    out << "| " << c.id << " | " << cell(c.locator) << " | " << c.status << " | " << secs << " | " << cell(c.details)
        << " |\n";
  }
  return out.str();
}

}  // namespace logmono
