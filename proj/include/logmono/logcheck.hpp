#pragma once

// Exact finite-range checks of log-concavity and its relatives.
//
// Index conventions: a verdict's [start, end] lists the middle indices n that
// were tested. For a_n^2 vs a_{n-1} a_{n+1} that needs a_{start-1}..a_{end+1}.

#include <logmono/sequences.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace logmono {

enum class Strictness { weak, strict };

inline std::string to_string(Strictness s) { return s == Strictness::strict ? "strict" : "weak"; }

struct RangeVerdict {
  std::string predicate;
  long start = 0;
  long end = 0;
  bool holds = true;
  std::optional<long> first_failure;
  Strictness strictness = Strictness::weak;

  friend bool operator==(const RangeVerdict&, const RangeVerdict&) = default;
};

enum class Direction { concave, convex };

inline std::string to_string(Direction d) { return d == Direction::concave ? "concave" : "convex"; }

namespace detail {

inline void require_positive(TermCache& c, long lo, long hi) {
  if (lo < c.first_index()) {
    throw DomainError(c.spec().name + ": index " + std::to_string(lo) + " below definition range");
  }
  for (long i = lo; i <= hi; ++i) {
    if (c.term(i).sign() <= 0) {
      throw DomainError(c.spec().name + ": nonpositive term at index " + std::to_string(i));
    }
  }
}

// Does lhs (rel) rhs hold, where rel is >= / > for concave and <= / < for convex?
inline bool compare_ok(std::strong_ordering c, Direction d, Strictness s) {
  if (d == Direction::convex) c = 0 <=> c;
  return s == Strictness::strict ? c > 0 : c >= 0;
}

inline void record(RangeVerdict& v, long n, bool ok) {
  if (!ok && v.holds) {
    v.holds = false;
    v.first_failure = n;
  }
}

}  // namespace detail

// b_n = a_{n+1} / a_n for n in [start, end].
inline std::vector<Rational> apply_R(TermCache& c, long start, long end) {
  detail::require_positive(c, start, end + 1);
  std::vector<Rational> out;
  for (long n = start; n <= end; ++n) out.push_back(c.term(n + 1) / c.term(n));
  return out;
}

// One step of the R operator on a value list.
inline std::vector<Rational> apply_R(const std::vector<Rational>& values) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i].sign() <= 0) throw DomainError("nonpositive value at position " + std::to_string(i));
    out.push_back(values[i + 1] / values[i]);
  }
  return out;
}

// values[i] is taken as the term of index offset + i; middle indices are reported.
inline RangeVerdict check_log(const std::vector<Rational>& values, Direction d, Strictness s, long offset = 0) {
  RangeVerdict v;
  v.predicate = std::string("log-") + to_string(d);
  v.strictness = s;
  v.start = offset + 1;
  v.end = offset + static_cast<long>(values.size()) - 2;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].sign() <= 0) throw DomainError("nonpositive value at index " + std::to_string(offset + static_cast<long>(i)));
  }
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    auto cmp = cmp_power_products({{values[i], 2}}, {{values[i - 1], 1}, {values[i + 1], 1}});
    detail::record(v, offset + static_cast<long>(i), detail::compare_ok(cmp, d, s));
  }
  return v;
}

inline RangeVerdict check_logconcave(const std::vector<Rational>& values, Strictness s = Strictness::weak, long offset = 0) {
  return check_log(values, Direction::concave, s, offset);
}
inline RangeVerdict check_logconvex(const std::vector<Rational>& values, Strictness s = Strictness::weak, long offset = 0) {
  return check_log(values, Direction::convex, s, offset);
}

// Middle indices [start, end] of the sequence itself.
inline RangeVerdict check_log(TermCache& c, long start, long end, Direction d, Strictness s) {
  detail::require_positive(c, start - 1, end + 1);
  RangeVerdict v = check_log(c.terms(start - 1, end + 1), d, s, start - 1);
  v.predicate = c.spec().name + " " + v.predicate;
  return v;
}

// For r = 0..k-1, R^r of the sequence is checked log-convex (r even) or
// log-concave (r odd) at middle indices [start, end]. R^r at index end+1
// consumes a_{end+1+r}, so terms up to a_{end+k} are used.
inline std::vector<RangeVerdict> check_order_k(TermCache& c, int k, long start, long end,
                                               Strictness s = Strictness::weak) {
  if (k < 1) throw InputError("order k must be at least 1");
  detail::require_positive(c, start - 1, end + k);
  std::vector<Rational> values = c.terms(start - 1, end + k);
  std::vector<RangeVerdict> out;
  for (int r = 0; r < k; ++r) {
    if (r > 0) values = apply_R(values);
    std::vector<Rational> window(values.begin(), values.begin() + (end - start + 3));
    Direction d = r % 2 == 0 ? Direction::convex : Direction::concave;
    RangeVerdict v = check_log(window, d, s, start - 1);
    v.predicate = c.spec().name + " R^" + std::to_string(r) + " log-" + to_string(d);
    out.push_back(std::move(v));
  }
  return out;
}

// a_n^3 a_{n-2} vs a_{n+1} a_{n-1}^3 at each n in [start, end].
inline RangeVerdict check_ratio_log(TermCache& c, long start, long end, Direction d,
                                    Strictness s = Strictness::strict) {
  detail::require_positive(c, start - 2, end + 1);
  RangeVerdict v;
  v.predicate = c.spec().name + " ratio log-" + to_string(d);
  v.start = start;
  v.end = end;
  v.strictness = s;
  Rational am2 = c.term(start - 2), am1 = c.term(start - 1), a0 = c.term(start);
  for (long n = start; n <= end; ++n) {
    Rational a1 = c.term(n + 1);
    auto cmp = cmp_power_products({{a0, 3}, {am2, 1}}, {{a1, 1}, {am1, 3}});
    detail::record(v, n, detail::compare_ok(cmp, d, s));
    am2 = std::move(am1);
    am1 = std::move(a0);
    a0 = std::move(a1);
  }
  return v;
}

inline RangeVerdict check_ratio_logconcave(TermCache& c, long start, long end, Strictness s = Strictness::strict) {
  return check_ratio_log(c, start, end, Direction::concave, s);
}
inline RangeVerdict check_ratio_logconvex(TermCache& c, long start, long end, Strictness s = Strictness::strict) {
  return check_ratio_log(c, start, end, Direction::convex, s);
}

// q_n = a_{n+2} a_n / a_{n+1}^2 strictly increasing on [start, end]; the
// failure index is the first n with q_{n+1} <= q_n.
inline RangeVerdict check_ratio_quotient_increasing(TermCache& c, long start, long end) {
  detail::require_positive(c, start, end + 2);
  RangeVerdict v;
  v.predicate = c.spec().name + " a_{n+2}a_n/a_{n+1}^2 increasing";
  v.start = start;
  v.end = end;
  v.strictness = Strictness::strict;
  auto q = [&](long n) {
    Rational mid = c.term(n + 1);
    return c.term(n + 2) * c.term(n) / (mid * mid);
  };
  Rational prev = q(start);
  for (long n = start; n < end; ++n) {
    Rational next = q(n + 1);
    detail::record(v, n, next > prev);
    prev = std::move(next);
  }
  return v;
}

// (a_n^{1/n})^2 vs a_{n+1}^{1/(n+1)} a_{n-1}^{1/(n-1)} at each n in [start, end],
// compared as a_n^{2(n^2-1)} vs a_{n+1}^{n(n-1)} a_{n-1}^{n(n+1)}.
inline RangeVerdict check_root_log(TermCache& c, long start, long end, Direction d,
                                   Strictness s = Strictness::strict) {
  if (start < 2) throw DomainError("root checks need middle index n >= 2");
  detail::require_positive(c, start - 1, end + 1);
  RangeVerdict v;
  v.predicate = c.spec().name + " root log-" + to_string(d);
  v.start = start;
  v.end = end;
  v.strictness = s;
  for (long n = start; n <= end; ++n) {
    const auto un = static_cast<std::uint64_t>(n);
    std::strong_ordering cmp = std::strong_ordering::equal;
    try {
      cmp = cmp_power_products({{c.term(n), 2 * (un * un - 1)}},
                               {{c.term(n + 1), un * (un - 1)}, {c.term(n - 1), un * (un + 1)}});
    } catch (const GuardExceeded& e) {
      throw GuardExceeded(std::string(e.what()) + "; largest feasible end for " + c.spec().name + " is " +
                          std::to_string(n - 1));
    }
    detail::record(v, n, detail::compare_ok(cmp, d, s));
  }
  return v;
}

inline RangeVerdict check_root_logconcave(TermCache& c, long start, long end, Strictness s = Strictness::strict) {
  return check_root_log(c, start, end, Direction::concave, s);
}
inline RangeVerdict check_root_logconvex(TermCache& c, long start, long end, Strictness s = Strictness::strict) {
  return check_root_log(c, start, end, Direction::convex, s);
}

// a_{k+1}^{2k(k+2)} vs a_k^{(k+1)(k+2)} a_{k+2}^{k(k+1)}: ">" for the concave
// direction, "<" for convex.
inline bool check_initial_condition(TermCache& c, long k, Direction d) {
  if (k < 1) throw DomainError("initial condition needs k >= 1");
  detail::require_positive(c, k, k + 2);
  const auto uk = static_cast<std::uint64_t>(k);
  auto cmp = cmp_power_products({{c.term(k + 1), 2 * uk * (uk + 2)}},
                                {{c.term(k), (uk + 1) * (uk + 2)}, {c.term(k + 2), uk * (uk + 1)}});
  return detail::compare_ok(cmp, d, Strictness::strict);
}

struct ScanRow {
  int r = 0;
  std::optional<long> holds_from;  // least middle index m with the verdict holding on [m, horizon]
  long failures = 0;               // failing middle indices in the scanned window
  friend bool operator==(const ScanRow&, const ScanRow&) = default;
};

// Empirical only: for each r < k_max, where the weak alternating verdict on
// R^r starts holding through the horizon. The scan starts at valid_from.
inline std::vector<ScanRow> scan_almost_order(TermCache& c, int k_max, long horizon) {
  if (k_max < 1) throw InputError("k_max must be at least 1");
  const long base = c.valid_from();
  if (horizon <= base) throw InputError("horizon must exceed the validity start " + std::to_string(base));
  if (horizon + k_max - c.first_index() >= static_cast<long>(c.ceiling())) {
    throw GuardExceeded("horizon " + std::to_string(horizon) + " exceeds the term cache ceiling");
  }
  detail::require_positive(c, base, horizon + k_max);
  std::vector<Rational> values = c.terms(base, horizon + k_max);
  std::vector<ScanRow> out;
  for (int r = 0; r < k_max; ++r) {
    if (r > 0) values = apply_R(values);
    Direction d = r % 2 == 0 ? Direction::convex : Direction::concave;
    ScanRow row;
    row.r = r;
    long last_fail = base;  // middle indices start at base + 1
    for (long m = base + 1; m <= horizon; ++m) {
      auto i = static_cast<std::size_t>(m - base);
      Rational lhs = values[i] * values[i];
      Rational rhs = values[i - 1] * values[i + 1];
      if (!detail::compare_ok(lhs <=> rhs, d, Strictness::weak)) {
        ++row.failures;
        last_fail = m;
      }
    }
    if (last_fail < horizon) row.holds_from = last_fail + 1;
    out.push_back(row);
  }
  return out;
}

}  // namespace logmono
