#pragma once

// Certificates for "for all n" claims about three-term recurrences
// a_n = u(n) a_{n-1} + v(n) a_{n-2}, built from exact base cases, positivity
// certificates and finite range checks.
//
// Index bookkeeping: a bound certified from T (= hypotheses_from) yields
// ratio log-concavity of {a_n}_{n >= T-2}, i.e. a_n^3 a_{n-2} > a_{n+1} a_{n-1}^3
// for every middle index n >= T. conclusion_from is always a sequence index.

#include <logmono/logcheck.hpp>
#include <logmono/positivity.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace logmono {

using QRatFun = RatFun<QuadNum>;

struct NamedPositivity {
  std::string condition;
  PositivityCertificate<QuadNum> cert;
  friend bool operator==(const NamedPositivity&, const NamedPositivity&) = default;
};

// An exact scalar comparison, values rendered exactly.
struct BaseCase {
  std::string label;
  std::string lhs;
  std::string relation;  // "<", "<=", ">", ">="
  std::string rhs;
  bool holds = false;
  friend bool operator==(const BaseCase&, const BaseCase&) = default;
};

enum class Premise { symbolic, finite };

inline std::string to_string(Premise p) { return p == Premise::symbolic ? "symbolic" : "finite"; }

struct Certificate {
  std::string sequence;
  std::string property;  // ratio-logconcave, lower-bound, upper-bound, floor-bound, root-logconcave, ...
  std::string method;
  long hypotheses_from = 0;  // index from which bounds / positivity conditions are certified
  long conclusion_from = 0;  // sequence index the claim starts at
  Premise premise = Premise::symbolic;
  bool holds = false;
  std::string failure;
  std::optional<long> failure_index;
  std::optional<QRatFun> bound;
  std::vector<RangeVerdict> finite_checks;
  std::vector<NamedPositivity> positivity;
  std::vector<BaseCase> base_cases;
  std::vector<Certificate> components;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

// "certified" for a symbolic claim, "finite-verified" for a finite one.
inline std::string status_of(const Certificate& c) {
  if (!c.holds) return "failed";
  return c.premise == Premise::symbolic ? "certified" : "finite-verified";
}

namespace detail {

inline void fail(Certificate& c, const std::string& why, std::optional<long> at = std::nullopt) {
  if (!c.holds && !c.failure.empty()) return;  // keep the first failure
  c.holds = false;
  c.failure = why;
  c.failure_index = at;
}

// Adds a positivity certificate f(n) > 0 for n >= from; returns whether it holds.
inline bool require_positive(Certificate& c, const std::string& condition, const QRatFun& f, long from) {
  NamedPositivity np{condition, certify_positive(f, from)};
  bool ok = np.cert.holds;
  std::optional<long> at = np.cert.violation;
  c.positivity.push_back(std::move(np));
  if (!ok) {
    fail(c, condition + " refuted at n=" + std::to_string(at.value_or(from)), at);
  }
  return ok;
}

inline std::optional<QuadNum> try_eval(const QRatFun& f, long n) {
  try {
    return f.eval(n);
  } catch (const PoleError&) {
    return std::nullopt;
  }
}

// lhs rel rhs for QuadNum values; rel in {"<", "<=", ">", ">="}.
inline bool relate(const QuadNum& lhs, const std::string& rel, const QuadNum& rhs) {
  int s = quad_sign(lhs - rhs);
  if (rel == "<") return s < 0;
  if (rel == "<=") return s <= 0;
  if (rel == ">") return s > 0;
  return s >= 0;
}

inline bool base_case(Certificate& c, const std::string& label, const std::optional<QuadNum>& lhs,
                      const std::string& rel, const std::optional<QuadNum>& rhs, long at) {
  BaseCase b;
  b.label = label;
  b.relation = rel;
  b.lhs = lhs ? lhs->str() : "pole";
  b.rhs = rhs ? rhs->str() : "pole";
  b.holds = lhs && rhs && relate(*lhs, rel, *rhs);
  c.base_cases.push_back(b);
  if (!b.holds) fail(c, "base case " + label + " fails at n=" + std::to_string(at) + ": " + b.lhs + " " + rel + " " + b.rhs + " is false", at);
  return b.holds;
}

inline const RatFun<Rational>& require_u(const SequenceSpec& s) {
  if (!s.is_three_term()) throw InputError(s.name + " has no three-term recurrence form");
  return *s.u;
}

inline Certificate start(const TermCache& cache, std::string property, std::string method, long from) {
  Certificate c;
  c.sequence = cache.spec().name;
  c.property = std::move(property);
  c.method = std::move(method);
  c.hypotheses_from = from;
  c.conclusion_from = from;
  c.holds = true;
  return c;
}

inline void absorb(Certificate& parent, Certificate child) {
  if (!child.holds) {
    fail(parent, child.property + ": " + child.failure, child.failure_index);
  }
  if (child.premise == Premise::finite) parent.premise = Premise::finite;
  parent.components.push_back(std::move(child));
}

inline void check_threshold(const TermCache& cache, long from) {
  if (from - 1 < cache.valid_from() || from < 2) {
    throw InputError("threshold " + std::to_string(from) + " must be at least 2 and at least " +
                     std::to_string(cache.valid_from() + 1) + " for " + cache.spec().name);
  }
}

}  // namespace detail

// The quartic x^4 - u(n) x^3 - u(n+1) v(n) x - v(n) v(n+1) at x = b(n).
inline QRatFun ratio_quartic(const RatFun<Rational>& u, const RatFun<Rational>& v, const QRatFun& b) {
  QRatFun U = to_quad(u), V = to_quad(v);
  QRatFun U1 = U.shift(1), V1 = V.shift(1);
  QRatFun b3 = b * b * b;
  return b3 * b - U * b3 - U1 * V * b - V * V1;
}

// g(n) < a_n/a_{n-1} < v(n+1)/(g(n+1)-u(n+1)) for all n >= T, by induction
// from an exact base case at T (needs v > 0 and g > 0 from T).
inline Certificate certify_lower_bound(TermCache& cache, const QRatFun& g, long T) {
  const auto& u = detail::require_u(cache.spec());
  const auto& v = *cache.spec().v;
  detail::check_threshold(cache, T);
  Certificate c = detail::start(cache, "lower-bound", "lower-bound-induction", T);
  c.bound = g;
  QRatFun U = to_quad(u), V = to_quad(v);
  QRatFun gap = g.shift(1) - U.shift(1);  // g(n+1) - u(n+1)
  QRatFun upper = gap.is_zero() ? QRatFun(0) : V.shift(1) / gap;

  Rational r = cache.ratio(T);
  detail::base_case(c, "g(T) < a_T/a_{T-1}", detail::try_eval(g, T), "<", QuadNum(r), T);
  detail::base_case(c, "a_T/a_{T-1} < v(T+1)/(g(T+1)-u(T+1))", QuadNum(r), "<",
                    gap.is_zero() ? std::nullopt : detail::try_eval(upper, T), T);

  detail::require_positive(c, "v(n) > 0", V, T);
  detail::require_positive(c, "g(n) > 0", g, T);
  detail::require_positive(c, "g(n+1) - u(n+1) > 0", gap, T);
  if (!gap.is_zero()) {
    // v(n+1)/(g(n+1)-u(n+1)) - u(n) - v(n)/g(n-1) > 0
    QRatFun gm1 = g.shift(-1);
    QRatFun step = gm1.is_zero() ? QRatFun(0) : upper - U - V / gm1;
    detail::require_positive(c, "v(n+1)/(g(n+1)-u(n+1)) - u(n) - v(n)/g(n-1) > 0", step, T);
  }
  return c;
}

// a_n/a_{n-1} < h(n) for all n >= T (needs v < 0 and h > 0 from T).
inline Certificate certify_upper_bound(TermCache& cache, const QRatFun& h, long T) {
  const auto& u = detail::require_u(cache.spec());
  const auto& v = *cache.spec().v;
  detail::check_threshold(cache, T);
  Certificate c = detail::start(cache, "upper-bound", "upper-bound-induction", T);
  c.bound = h;
  QRatFun U = to_quad(u), V = to_quad(v);
  detail::base_case(c, "a_T/a_{T-1} < h(T)", QuadNum(cache.ratio(T)), "<", detail::try_eval(h, T), T);
  detail::require_positive(c, "-v(n) > 0", -V, T);
  detail::require_positive(c, "h(n) > 0", h, T);
  QRatFun step = h.is_zero() ? QRatFun(0) : h.shift(1) - U.shift(1) - V.shift(1) / h;
  detail::require_positive(c, "h(n+1) - u(n+1) - v(n+1)/h(n) > 0", step, T);
  return c;
}

inline constexpr long kFloorFallbackSpan = 500;

// a_n/a_{n-1} >= L(n) for n >= T. With v < 0 the next ratio u + v/r grows
// with r, so a base case plus positivity of u(n+1) + v(n+1)/L(n) - L(n+1)
// carries the bound. When that step is refuted and finite_fallback is set,
// the bound is checked directly on [T, T + kFloorFallbackSpan] instead and
// the certificate is marked finite.
inline Certificate certify_floor_bound(TermCache& cache, const QRatFun& L, long T, bool finite_fallback = true) {
  const auto& u = detail::require_u(cache.spec());
  const auto& v = *cache.spec().v;
  detail::check_threshold(cache, T);
  Certificate c = detail::start(cache, "floor-bound", "floor-bound-induction", T);
  c.bound = L;
  QRatFun U = to_quad(u), V = to_quad(v);
  detail::base_case(c, "a_T/a_{T-1} >= L(T)", QuadNum(cache.ratio(T)), ">=", detail::try_eval(L, T), T);
  detail::require_positive(c, "-v(n) > 0", -V, T);
  detail::require_positive(c, "L(n) > 0", L, T);
  QRatFun step = L.is_zero() ? QRatFun(0) : U.shift(1) + V.shift(1) / L - L.shift(1);
  NamedPositivity np{"u(n+1) + v(n+1)/L(n) - L(n+1) > 0", certify_positive(step, T)};
  bool step_ok = np.cert.holds;
  auto violation = np.cert.violation;
  c.positivity.push_back(std::move(np));
  if (step_ok || !finite_fallback || !c.holds) {
    if (!step_ok) detail::fail(c, "u(n+1) + v(n+1)/L(n) - L(n+1) > 0 refuted at n=" + std::to_string(*violation), violation);
    return c;
  }
  // finite-only mode
  c.method = "floor-bound-finite";
  c.premise = Premise::finite;
  RangeVerdict rv;
  rv.predicate = cache.spec().name + " a_n/a_{n-1} >= L(n)";
  rv.start = T;
  rv.end = T + kFloorFallbackSpan;
  rv.strictness = Strictness::weak;
  for (long n = rv.start; n <= rv.end; ++n) {
    auto Ln = detail::try_eval(L, n);
    bool ok = Ln && quad_sign(QuadNum(cache.ratio(n)) - *Ln) >= 0;
    detail::record(rv, n, ok);
  }
  if (!rv.holds) detail::fail(c, "a_n/a_{n-1} >= L(n) fails at n=" + std::to_string(*rv.first_failure), rv.first_failure);
  c.finite_checks.push_back(std::move(rv));
  return c;
}

// Positive v: ratio log-concavity of {a_n}_{n >= N} from a lower bound g with
// hypotheses certified for n >= N+2.
inline Certificate certify_ratio_logconcave_pos(TermCache& cache, const QRatFun& g, long N) {
  const auto& u = detail::require_u(cache.spec());
  const auto& v = *cache.spec().v;
  const long T = N + 2;
  detail::check_threshold(cache, T);
  Certificate c = detail::start(cache, "ratio-logconcave", "three-term-positive-v", T);
  c.conclusion_from = N;
  c.bound = g;
  QRatFun U = to_quad(u), V = to_quad(v);
  detail::require_positive(c, "u(n) > 0", U, T);
  detail::require_positive(c, "v(n) > 0", V, T);
  detail::require_positive(c, "u(n)^3 - u(n+1) v(n) > 0", U * U * U - U.shift(1) * V, T);
  QRatFun gu = g - U;
  if (gu.is_zero()) {
    c.base_cases.push_back({"g(n) - u(n)", "0", ">=", "0", true});
  } else {
    detail::require_positive(c, "g(n) - u(n) >= 0", gu, T);
  }
  detail::require_positive(c, "g^4 - u g^3 - u(n+1) v g - v v(n+1) > 0", ratio_quartic(u, v, g), T);
  detail::absorb(c, certify_lower_bound(cache, g, T));
  return c;
}

// Negative v: ratio log-concavity of {a_n}_{n >= N} from an upper bound h and
// a floor L (default 3u/4), hypotheses certified for n >= N+2.
inline Certificate certify_ratio_logconcave_neg(TermCache& cache, const QRatFun& h, long N,
                                                std::optional<QRatFun> floor = std::nullopt) {
  const auto& u = detail::require_u(cache.spec());
  const auto& v = *cache.spec().v;
  const long T = N + 2;
  detail::check_threshold(cache, T);
  Certificate c = detail::start(cache, "ratio-logconcave", "three-term-negative-v", T);
  c.conclusion_from = N;
  c.bound = h;
  QRatFun U = to_quad(u), V = to_quad(v);
  QRatFun L = floor ? *floor : U * QRatFun(QuadNum(Rational(3, 4)));
  detail::require_positive(c, "u(n) > 0", U, T);
  detail::require_positive(c, "-v(n) > 0", -V, T);
  detail::require_positive(c, "-(h^4 - u h^3 - u(n+1) v h - v v(n+1)) > 0", -ratio_quartic(u, v, h), T);
  detail::absorb(c, certify_floor_bound(cache, L, T));
  detail::absorb(c, certify_upper_bound(cache, h, T));
  return c;
}

// Smallest N in [lo, hi] for which make(N) holds; the last attempt otherwise.
template <class Make>
Certificate first_holding(long lo, long hi, Make make) {
  Certificate last;
  for (long N = lo; N <= hi; ++N) {
    last = make(N);
    if (last.holds) return last;
  }
  return last;
}

// Finite evidence: a_n^3 a_{n-2} vs a_{n+1} a_{n-1}^3 for middle n in [from+2, to].
inline Certificate certify_ratio_finite(TermCache& cache, long from, long to, Direction d = Direction::concave) {
  Certificate c = detail::start(cache, std::string("ratio-log") + to_string(d), "finite-check", from + 2);
  c.conclusion_from = from;
  c.premise = Premise::finite;
  RangeVerdict rv = check_ratio_log(cache, from + 2, to, d);
  if (!rv.holds) detail::fail(c, rv.predicate + " fails at n=" + std::to_string(*rv.first_failure), rv.first_failure);
  c.finite_checks.push_back(std::move(rv));
  return c;
}

// Extends a symbolic ratio certificate (conclusion from N) down to sequence
// index m with an exact finite check at middle indices [m+2, N+1]. When that
// range is empty the first middle index m+2 is still checked directly.
inline Certificate stitch_prefix(TermCache& cache, Certificate symbolic, long m) {
  Certificate c = detail::start(cache, symbolic.property, "stitched", symbolic.hypotheses_from);
  c.conclusion_from = m;
  c.bound = symbolic.bound;
  const long N = symbolic.conclusion_from;
  if (m > N) throw InputError("prefix start exceeds the certified start");
  detail::absorb(c, std::move(symbolic));
  RangeVerdict rv = check_ratio_logconcave(cache, m + 2, std::max(N + 1, m + 2));
  if (!rv.holds) detail::fail(c, rv.predicate + " fails at n=" + std::to_string(*rv.first_failure), rv.first_failure);
  c.finite_checks.push_back(std::move(rv));
  return c;
}

inline constexpr long kRootCrossCheckSpan = 40;

// Root log-concavity (or log-convexity) of {a_n^{1/n}}_{n >= k} from ratio
// log-concavity (convexity) of {a_n}_{n >= k} plus the initial condition at k.
// The ratio evidence must have been established for the same direction.
inline Certificate certify_root(TermCache& cache, long k, Direction d, const Certificate& ratio_evidence) {
  Certificate c = detail::start(cache, std::string("root-log") + to_string(d), "root-criterion", k);
  c.conclusion_from = k;
  const std::string wanted = std::string("ratio-log") + to_string(d);
  if (ratio_evidence.property != wanted || ratio_evidence.sequence != cache.spec().name) {
    throw InputError("root criterion needs " + wanted + " evidence for " + cache.spec().name + ", got " +
                     ratio_evidence.property + " for " + ratio_evidence.sequence);
  }
  if (ratio_evidence.conclusion_from > k) {
    detail::fail(c, wanted + " only established from " + std::to_string(ratio_evidence.conclusion_from), k);
  }
  detail::absorb(c, ratio_evidence);

  const auto uk = static_cast<std::uint64_t>(k);
  bool init = check_initial_condition(cache, k, d);
  auto pw = [](const Rational& a, std::uint64_t e) { return "(" + a.str() + ")^" + std::to_string(e); };
  BaseCase b;
  b.label = "initial condition at k=" + std::to_string(k);
  b.lhs = pw(cache.term(k + 1), 2 * uk * (uk + 2));
  b.relation = d == Direction::concave ? ">" : "<";
  b.rhs = pw(cache.term(k), (uk + 1) * (uk + 2)) + "*" + pw(cache.term(k + 2), uk * (uk + 1));
  b.holds = init;
  c.base_cases.push_back(b);
  if (!init) detail::fail(c, "initial condition fails at k=" + std::to_string(k), k);

  // desk-scale cross-check of the conclusion
  RangeVerdict rv = check_root_log(cache, std::max(k + 1, 2L), k + kRootCrossCheckSpan, d);
  if (!rv.holds) detail::fail(c, rv.predicate + " fails at n=" + std::to_string(*rv.first_failure), rv.first_failure);
  c.finite_checks.push_back(std::move(rv));
  return c;
}

}  // namespace logmono
