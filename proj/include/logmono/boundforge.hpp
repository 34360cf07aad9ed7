#pragma once

// Heuristic search for ratio bounds of a_n = u(n) a_{n-1} + v(n) a_{n-2}.
//
// The ratio a_n/a_{n-1} approaches the larger root lambda(n) of
// x^2 - u(n) x - v(n). Writing u^2 + 4v = P/Q with Q a perfect square and
// P = S^2 -/+ c gives a rational base bound (u sqrt(Q) + S)/(2 sqrt(Q)) on the
// correct side of lambda; corrections x_k/(d(n) n^k) are then solved one at a
// time from the leading coefficient of the induction step. Success is not
// guaranteed, so every candidate is checked by the certify module.

#include <logmono/certify.hpp>
#include <logmono/sqrt_decompose.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace logmono {

enum class BoundKind { lower, upper };

inline std::string to_string(BoundKind k) { return k == BoundKind::lower ? "lower" : "upper"; }

// Polynomials in n whose coefficients are polynomials in the unknown x.
using BivarPoly = Poly<Poly<QuadNum>>;

// Numerator and denominator of C(x,n) or D(x,n), kept unreduced.
struct BivarRat {
  BivarPoly numer;
  BivarPoly denom;
  int x_degree() const {
    int d = 0;
    for (const auto& c : numer.coeffs()) d = std::max(d, c.degree());
    return d;
  }
};

// lambda(n) = (u(n) + sqrt(P(n)/Q(n)))/2, with u^2 + 4v = P/Q in lowest terms.
struct RadicalRatio {
  RatFun<Rational> u;
  Poly<Rational> P;
  Poly<Rational> Q;
  std::optional<Poly<QuadNum>> sqrt_Q;  // set when Q is a perfect square

  // Sign of x - lambda(n), exactly.
  int compare(const QuadNum& x, long n) const {
    Rational w = P.eval(Rational(n)) / Q.eval(Rational(n));
    if (w.sign() < 0) throw DomainError("lambda is not real at n=" + std::to_string(n));
    QuadNum y = x * QuadNum(2) - QuadNum(u.eval(n));
    int ys = quad_sign(y);
    if (ys < 0) return -1;
    if (ys == 0) return w.is_zero() ? 0 : -1;
    return quad_sign(y * y - QuadNum(w));
  }

  // lambda as a rational function when P is a perfect square too.
  std::optional<QRatFun> exact() const {
    if (!sqrt_Q) return std::nullopt;
    if (P.is_zero()) return to_quad(u) * QRatFun(QuadNum(Rational(1, 2)));
    auto sp = poly_exact_sqrt(to_quad(P));
    if (!sp) return std::nullopt;
    return (to_quad(u) + QRatFun(*sp, *sqrt_Q)) * QRatFun(QuadNum(Rational(1, 2)));
  }

  // u sqrt(Q) as a rational function (a polynomial in every builtin case).
  std::optional<QRatFun> u_times_sqrt_Q() const {
    if (!sqrt_Q) return std::nullopt;
    return to_quad(u) * QRatFun(*sqrt_Q);
  }

  std::string str() const {
    if (auto us = u_times_sqrt_Q()) {
      return "(" + to_string(*us) + "+sqrt(" + to_string(P) + "))/(2*(" + to_string(*sqrt_Q) + "))";
    }
    return "(" + to_string(u) + "+sqrt((" + to_string(P) + ")/(" + to_string(Q) + ")))/2";
  }

  friend bool operator==(const RadicalRatio&, const RadicalRatio&) = default;
};

inline RadicalRatio make_lambda(const RatFun<Rational>& u, const RatFun<Rational>& v) {
  RatFun<Rational> w = u * u + RatFun<Rational>(4) * v;
  RadicalRatio r;
  r.u = u;
  r.P = w.numer();
  r.Q = w.denom();
  r.sqrt_Q = poly_exact_sqrt(to_quad(r.Q));
  return r;
}

// How P was split; mode is "minus" (P = S^2 - c), "plus" (P = S^2 + c) or
// "exact" (P = S^2, so the base bound is lambda itself).
struct DecompositionRecord {
  bool ok = false;
  std::string mode;
  Poly<QuadNum> root;
  QuadNum c;
  Poly<QuadNum> remainder;
  std::string failure;
  friend bool operator==(const DecompositionRecord&, const DecompositionRecord&) = default;
};

struct BaseBoundResult {
  RadicalRatio lambda;
  DecompositionRecord decomposition;
  std::optional<QRatFun> bound;
};

inline BaseBoundResult base_bound(const RatFun<Rational>& u, const RatFun<Rational>& v, BoundKind kind) {
  BaseBoundResult out;
  out.lambda = make_lambda(u, v);
  auto& rec = out.decomposition;
  rec.mode = kind == BoundKind::lower ? "minus" : "plus";
  if (!out.lambda.sqrt_Q) {
    rec.failure = "Q = " + to_string(out.lambda.Q) + " is not a perfect square";
    return out;
  }
  const Poly<QuadNum>& sq = *out.lambda.sqrt_Q;
  if (auto ex = out.lambda.exact()) {
    rec.ok = true;
    rec.mode = "exact";
    rec.root = out.lambda.P.is_zero() ? Poly<QuadNum>() : *poly_exact_sqrt(to_quad(out.lambda.P));
    out.bound = *ex;
    return out;
  }
  SqrtDecomposition d = poly_sqrt_decompose(out.lambda.P, kind == BoundKind::lower ? SqrtMode::minus : SqrtMode::plus);
  rec.remainder = d.remainder;
  if (!d.ok) {
    rec.root = d.root;
    rec.failure = d.failure;
    return out;
  }
  rec.ok = true;
  rec.root = d.root;
  rec.c = d.c;
  out.bound = (to_quad(u) * QRatFun(sq) + QRatFun(d.root)) / QRatFun(sq * Poly<QuadNum>(QuadNum(2)));
  return out;
}

// ---- the correction step ------------------------------------------------------

namespace detail {

inline BivarPoly lift(const Poly<QuadNum>& p) {
  return p.map([](const QuadNum& c) { return Poly<QuadNum>(c); });
}

inline BivarPoly unknown_x() { return BivarPoly(Poly<QuadNum>::var()); }

}  // namespace detail

// For a candidate (A(n) + x)/E(n): C(x,n) = v(n+1)/(g(n+1) - u(n+1)) - g(n)
// for lower bounds, D(x,n) = h(n+1) - u(n+1) - v(n+1)/h(n) for upper bounds.
inline BivarRat step_function(const RatFun<Rational>& u, const RatFun<Rational>& v, const Poly<QuadNum>& A,
                              const Poly<QuadNum>& E, BoundKind kind) {
  using detail::lift;
  QRatFun U1 = to_quad(u).shift(1), V1 = to_quad(v).shift(1);
  BivarPoly a = lift(A) + detail::unknown_x();
  BivarPoly a1 = lift(A.shift(QuadNum(1))) + detail::unknown_x();
  BivarPoly e = lift(E), e1 = lift(E.shift(QuadNum(1)));
  BivarPoly un = lift(U1.numer()), ud = lift(U1.denom());
  BivarPoly vn = lift(V1.numer()), vd = lift(V1.denom());
  BivarRat out;
  if (kind == BoundKind::lower) {
    BivarPoly gap = a1 * ud - un * e1;  // (g(n+1) - u(n+1)) E' U_d
    out.numer = vn * e1 * ud * e - a * vd * gap;
    out.denom = vd * gap * e;
  } else {
    out.numer = a1 * ud * vd * a - un * e1 * vd * a - vn * e * e1 * ud;
    out.denom = e1 * ud * vd * a;
  }
  return out;
}

struct ForgeStep {
  int k = 0;
  Poly<QuadNum> H;  // leading coefficient in n of the step numerator, as a polynomial in x
  std::vector<QuadNum> roots;
  std::optional<QuadNum> chosen;
  std::optional<QRatFun> candidate;
  bool validated = false;
  int nudges_tried = 0;
  std::string note;
  friend bool operator==(const ForgeStep&, const ForgeStep&) = default;
};

struct FallbackRecord {
  QRatFun prefix_candidate;  // (u + S/sqrt(Q))/2 with the remainder dropped
  Rational step;
  int radius = 0;
  long tried = 0;
  std::optional<std::pair<int, int>> accepted;  // grid offsets (coefficient of n, constant), in steps
  friend bool operator==(const FallbackRecord&, const FallbackRecord&) = default;
};

struct ForgeTrace {
  std::string sequence;
  BoundKind kind = BoundKind::lower;
  RadicalRatio lambda;
  DecompositionRecord decomposition;
  std::optional<QRatFun> base;
  std::optional<FallbackRecord> fallback;
  std::vector<ForgeStep> corrections;
  std::optional<QRatFun> final_bound;
  std::optional<Certificate> validation;
  bool ok = false;
  std::string failure;
  friend bool operator==(const ForgeTrace&, const ForgeTrace&) = default;
};

inline constexpr long kForgeMinThreshold = 2;
inline constexpr int kNudgeSteps = 64;
inline const Rational kNudgeStep{1, 8};
inline constexpr long kForgeMaxThreshold = 64;

namespace detail {

// Roots of H(x), smaller first. Empty with a note when there are none to try.
inline std::vector<QuadNum> solve_leading(const Poly<QuadNum>& H, std::string& note) {
  if (H.is_zero()) throw DomainError("H(x) vanishes identically");
  if (H.degree() > 2) throw DomainError("H(x) = " + to_string(H, "x") + " has degree " + std::to_string(H.degree()));
  if (H.degree() == 0) {
    note = "H(x) = " + to_string(H, "x") + " has no root";
    return {};
  }
  if (H.degree() == 1) return {-H.coeff(0) / H.coeff(1)};
  QuadNum a = H.coeff(2), b = H.coeff(1), c = H.coeff(0);
  QuadNum disc = b * b - QuadNum(4) * a * c;
  if (!disc.is_rational()) {
    note = "discriminant " + disc.str() + " is not rational";
    return {};
  }
  if (disc.rat().sign() < 0) {
    note = "discriminant " + disc.str() + " is negative";
    return {};
  }
  QuadNum sq;
  try {
    sq = QuadNum::sqrt_of(disc.rat());
    QuadNum r1 = (-b - sq) / (QuadNum(2) * a), r2 = (-b + sq) / (QuadNum(2) * a);
    if (quad_sign(r1 - r2) > 0) std::swap(r1, r2);
    if (r1 == r2) return {r1};
    return {r1, r2};
  } catch (const DomainError&) {
    // sqrt(disc) lives in a different quadratic field than the coefficients
    note = "roots of " + to_string(H, "x") + " leave the coefficient field";
    return {};
  }
}

inline Certificate certify_bound(TermCache& cache, BoundKind kind, const QRatFun& b, long T) {
  return kind == BoundKind::lower ? certify_ratio_logconcave_pos(cache, b, T - 2)
                                  : certify_ratio_logconcave_neg(cache, b, T - 2);
}

// Candidate-dependent conditions; their eventual sign is a cheap filter and
// their minimal thresholds give a lower end for the threshold search.
inline std::vector<QRatFun> bound_conditions(const RatFun<Rational>& u, const RatFun<Rational>& v, BoundKind kind,
                                             const QRatFun& b) {
  QRatFun U = to_quad(u), V = to_quad(v);
  if (kind == BoundKind::lower) {
    QRatFun gap = b.shift(1) - U.shift(1);
    if (gap.is_zero() || b.shift(-1).is_zero()) return {};
    return {b, gap, ratio_quartic(u, v, b), V.shift(1) / gap - U - V / b.shift(-1)};
  }
  if (b.is_zero()) return {};
  return {b, -ratio_quartic(u, v, b), b.shift(1) - U.shift(1) - V.shift(1) / b};
}

// Necessary conditions at a few sample points, by scalar arithmetic. A bound
// certified from some T <= kForgeMaxThreshold must already be on the right
// side of the actual ratio at kForgeMaxThreshold.
inline bool passes_samples(TermCache& cache, BoundKind kind, const QRatFun& b) {
  const auto& u = *cache.spec().u;
  const auto& v = *cache.spec().v;
  auto at = [](const auto& f, long n) -> std::optional<QuadNum> {
    try {
      return QuadNum(f.eval(n));
    } catch (const PoleError&) {
      return std::nullopt;
    }
  };
  for (long n : {kForgeMaxThreshold, 2 * kForgeMaxThreshold, 1000L, 1000000L}) {
    auto b0 = at(b, n), b1 = at(b, n + 1), bm = at(b, n - 1);
    if (!b0 || !b1 || !bm || b0->sign() <= 0) return false;
    QuadNum u0 = at(u, n).value(), u1 = at(u, n + 1).value(), v0 = at(v, n).value(), v1 = at(v, n + 1).value();
    QuadNum b3 = *b0 * *b0 * *b0;
    QuadNum quartic = b3 * *b0 - u0 * b3 - u1 * v0 * *b0 - v0 * v1;
    if (kind == BoundKind::lower) {
      QuadNum gap = *b1 - u1;
      if (gap.sign() <= 0 || quartic.sign() <= 0) return false;
      if ((v1 / gap - u0 - v0 / *bm).sign() <= 0) return false;
    } else {
      if (quartic.sign() >= 0) return false;
      if ((*b1 - u1 - v1 / *b0).sign() <= 0) return false;
    }
  }
  const long n = kForgeMaxThreshold;
  int side = quad_sign(QuadNum(cache.ratio(n)) - b.eval(n));
  return kind == BoundKind::lower ? side > 0 : side < 0;
}

}  // namespace detail

// First threshold T in [kForgeMinThreshold, kForgeMaxThreshold] at which the
// ratio log-concavity certificate for bound b holds. nullopt when the
// candidate is rejected before any certificate is built.
inline std::optional<Certificate> validate_bound(TermCache& cache, BoundKind kind, const QRatFun& b) {
  const auto& spec = cache.spec();
  if (!detail::passes_samples(cache, kind, b)) return std::nullopt;
  auto conds = detail::bound_conditions(*spec.u, *spec.v, kind, b);
  if (conds.empty()) return std::nullopt;
  long lo = std::max(kForgeMinThreshold, cache.valid_from() + 1);
  for (const auto& f : conds) {
    if (f.is_zero() || sign_of(f.numer().leading()) * sign_of(f.denom().leading()) <= 0) return std::nullopt;
  }
  for (const auto& f : conds) {
    auto t = minimal_positive_threshold(f, lo, kForgeMaxThreshold);
    if (!t) return std::nullopt;
    lo = std::max(lo, *t);
  }
  std::optional<Certificate> last;
  for (long T = lo; T <= kForgeMaxThreshold; ++T) {
    last = detail::certify_bound(cache, kind, b, T);
    if (last->holds) return last;
  }
  return last;
}

// Iterative corrections from a base bound. The trace's corrections list is
// appended to; validation and final_bound are set on success.
inline void refine(TermCache& cache, const QRatFun& base, BoundKind kind, int max_depth, ForgeTrace& trace) {
  const auto& spec = cache.spec();
  const auto& u = detail::require_u(spec);
  const auto& v = *spec.v;
  // base + (1/d)(x_1/n + ... + x_k/n^k) = (A + x_k)/E with E = d n^k
  Poly<QuadNum> A = base.numer() * Poly<QuadNum>::var();
  Poly<QuadNum> E = base.denom() * Poly<QuadNum>::var();
  for (int k = 1; k <= max_depth; ++k) {
    ForgeStep step;
    step.k = k;
    BivarRat Y = step_function(u, v, A, E, kind);
    if (Y.numer.is_zero()) {
      trace.failure = "step numerator vanishes identically at k=" + std::to_string(k);
      trace.corrections.push_back(std::move(step));
      return;
    }
    step.H = Y.numer.leading();
    try {
      step.roots = detail::solve_leading(step.H, step.note);
    } catch (const DomainError& e) {
      trace.failure = std::string(e.what()) + " at k=" + std::to_string(k);
      trace.corrections.push_back(std::move(step));
      return;
    }
    if (step.roots.empty()) {
      trace.failure = step.note + " at k=" + std::to_string(k);
      trace.corrections.push_back(std::move(step));
      return;
    }
    for (const auto& x : step.roots) {
      QRatFun cand(A + Poly<QuadNum>(x), E);
      auto cert = validate_bound(cache, kind, cand);
      if (cert && cert->holds) {
        step.chosen = x;
        step.candidate = cand;
        step.validated = true;
        trace.corrections.push_back(std::move(step));
        trace.final_bound = cand;
        trace.validation = std::move(cert);
        trace.ok = true;
        return;
      }
    }
    // The root only cancels the leading term; when the next order has the
    // wrong sign, move off the root along the grid in the direction that makes
    // the leading term of the step function positive.
    for (const auto& r : step.roots) {
      int dir = sign_of(step.H.derivative().eval(r)) * sign_of(Y.denom.leading().eval(r));
      if (dir == 0) continue;
      for (int j = 1; j <= kNudgeSteps; ++j) {
        QuadNum x = r + QuadNum(kNudgeStep * Rational(dir * j));
        ++step.nudges_tried;
        QRatFun cand(A + Poly<QuadNum>(x), E);
        auto cert = validate_bound(cache, kind, cand);
        if (cert && cert->holds) {
          step.chosen = x;
          step.candidate = cand;
          step.validated = true;
          step.note = "root " + r.str() + " moved by " + std::to_string(dir * j) + "/8";
          trace.corrections.push_back(std::move(step));
          trace.final_bound = cand;
          trace.validation = std::move(cert);
          trace.ok = true;
          return;
        }
      }
    }
    // nothing validated: carry the first root into the next order
    step.chosen = step.roots.front();
    step.candidate = QRatFun(A + Poly<QuadNum>(*step.chosen), E);
    step.note = "no root validated";
    trace.corrections.push_back(step);
    A = (A + Poly<QuadNum>(*step.chosen)) * Poly<QuadNum>::var();
    E = E * Poly<QuadNum>::var();
  }
  trace.failure = "no validated bound within depth " + std::to_string(max_depth);
}

inline constexpr int kFallbackRadius = 64;
inline const Rational kFallbackStep{1, 8};

// Drop-remainder fallback: (u + S/sqrt(Q))/2, then the two lowest numerator
// coefficients are moved over a grid, nearest rings first.
inline void fallback_search(TermCache& cache, BoundKind kind, ForgeTrace& trace) {
  const auto& u = *cache.spec().u;
  const auto& sq = *trace.lambda.sqrt_Q;
  FallbackRecord fb;
  fb.prefix_candidate = (to_quad(u) + QRatFun(trace.decomposition.root, sq)) * QRatFun(QuadNum(Rational(1, 2)));
  fb.step = kFallbackStep;
  fb.radius = kFallbackRadius;
  const Poly<QuadNum>& num = fb.prefix_candidate.numer();
  const Poly<QuadNum>& den = fb.prefix_candidate.denom();
  auto try_offset = [&](int i, int j) {
    ++fb.tried;
    Poly<QuadNum> adj(std::vector<QuadNum>{QuadNum(kFallbackStep * Rational(j)), QuadNum(kFallbackStep * Rational(i))});
    QRatFun cand(num + adj, den);
    auto cert = validate_bound(cache, kind, cand);
    if (!cert || !cert->holds) return false;
    fb.accepted = {i, j};
    trace.final_bound = cand;
    trace.validation = std::move(cert);
    trace.ok = true;
    return true;
  };
  for (int r = 0; r <= kFallbackRadius && !trace.ok; ++r) {
    for (int i = -r; i <= r && !trace.ok; ++i) {
      for (int j = -r; j <= r; ++j) {
        if (std::max(std::abs(i), std::abs(j)) != r) continue;
        if (try_offset(i, j)) break;
      }
    }
  }
  if (!trace.ok) trace.failure = "fallback grid exhausted after " + std::to_string(fb.tried) + " candidates";
  trace.fallback = std::move(fb);
}

struct ForgeResult {
  std::optional<QRatFun> bound;
  std::optional<Certificate> certificate;
  ForgeTrace trace;
};

inline constexpr int kDefaultForgeDepth = 4;

inline ForgeResult forge(TermCache& cache, BoundKind kind, int max_depth = kDefaultForgeDepth) {
  const auto& spec = cache.spec();
  const auto& u = detail::require_u(spec);
  const auto& v = *spec.v;
  if (max_depth < 1) throw InputError("max depth must be at least 1");
  // lower bounds go with v > 0, upper bounds with v < 0
  QRatFun signed_v = kind == BoundKind::lower ? to_quad(v) : -to_quad(v);
  if (!minimal_positive_threshold(signed_v, 2, kForgeMaxThreshold)) {
    throw InputError(to_string(kind) + " bounds need " + (kind == BoundKind::lower ? "v(n) > 0" : "v(n) < 0") +
                     " eventually; " + spec.name + " has v(n) = " + to_string(v));
  }
  ForgeTrace trace;
  trace.sequence = spec.name;
  trace.kind = kind;
  BaseBoundResult bb = base_bound(u, v, kind);
  trace.lambda = bb.lambda;
  trace.decomposition = bb.decomposition;
  if (bb.bound) {
    trace.base = bb.bound;
    refine(cache, *bb.bound, kind, max_depth, trace);
  } else if (trace.lambda.sqrt_Q && trace.decomposition.remainder.degree() > 0) {
    fallback_search(cache, kind, trace);
  } else {
    trace.failure = "base bound: " + trace.decomposition.failure;
  }
  ForgeResult out;
  out.bound = trace.final_bound;
  out.certificate = trace.validation;
  out.trace = std::move(trace);
  return out;
}

}  // namespace logmono
