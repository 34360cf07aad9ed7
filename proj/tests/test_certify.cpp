#include <logmono/certify.hpp>
#include <logmono/expr.hpp>

#include <gtest/gtest.h>

#include <functional>
#include <random>

using namespace logmono;

namespace {

TermCache seq(const std::string& name) { return TermCache(builtin_sequence(name)); }

const char* kMotzkinG = "(6*n^2+3*n-9/8)/(2*n*(n+2))";
const char* kFineG = "(4*n^2-2*n+2/3)/(n^2+n)";
const char* kDelannoyH = "((3+2*sqrt(2))*n^2-(3/2+sqrt(2))*n-sqrt(2)/32)/n^2";
const char* kDombH = "(16*n^3-24*n^2+12*n-2)/n^3";
const char* kPolyhexH = "(10*n^3-5*n^2+15/8*n+6)/(2*n^2+2*n^3)";

QRatFun three_quarters_u(const TermCache& c) { return to_quad(*c.spec().u) * QRatFun(QuadNum(Rational(3, 4))); }

// Direct exact re-check of what a certificate claims, at 50 sampled indices
// past its threshold. Returns the number of violations.
int audit(const Certificate& c, TermCache& cache, std::mt19937_64& rng) {
  int bad = 0;
  for (const auto& sub : c.components) bad += audit(sub, cache, rng);
  if (!c.holds || c.premise != Premise::symbolic) return bad;
  const long lo = c.property == "ratio-logconcave" ? c.conclusion_from + 2 : c.hypotheses_from;
  std::uniform_int_distribution<long> pick(lo, lo + 500);
  for (int i = 0; i < 50; ++i) {
    long n = pick(rng);
    Rational r = cache.ratio(n);
    if (c.property == "ratio-logconcave") {
      Rational a0 = cache.term(n), am1 = cache.term(n - 1);
      if (!(a0 * a0 * a0 * cache.term(n - 2) > cache.term(n + 1) * am1 * am1 * am1)) ++bad;
    } else if (c.property == "lower-bound") {
      if (quad_sign(QuadNum(r) - c.bound->eval(n)) <= 0) ++bad;
    } else if (c.property == "upper-bound") {
      if (quad_sign(c.bound->eval(n) - QuadNum(r)) <= 0) ++bad;
    } else if (c.property == "floor-bound") {
      if (quad_sign(QuadNum(r) - c.bound->eval(n)) < 0) ++bad;
    }
  }
  return bad;
}

}  // namespace

TEST(LowerBound, ReferenceBounds) {
  auto m = seq("motzkin");
  auto c = certify_lower_bound(m, parse_ratfun(kMotzkinG), 13);
  EXPECT_TRUE(c.holds) << c.failure;
  EXPECT_EQ(c.base_cases.size(), 2u);
  auto f = seq("fine");
  EXPECT_TRUE(certify_lower_bound(f, parse_ratfun(kFineG), 7).holds);
  auto bad = certify_lower_bound(m, parse_ratfun("3"), 5);
  EXPECT_FALSE(bad.holds);
  EXPECT_EQ(bad.failure_index, std::optional<long>(5));
  EXPECT_EQ(bad.base_cases[0].rhs, "7/3");  // M_5/M_4 = 21/9
}

TEST(PositiveV, ReferenceClaims) {
  auto m = seq("motzkin");
  auto c = certify_ratio_logconcave_pos(m, parse_ratfun(kMotzkinG), 11);
  EXPECT_TRUE(c.holds) << c.failure;
  EXPECT_EQ(c.hypotheses_from, 13);
  EXPECT_EQ(c.conclusion_from, 11);
  for (const auto& p : c.positivity) EXPECT_EQ(p.cert.threshold, 13) << p.condition;
  auto f = seq("fine");
  auto cf = certify_ratio_logconcave_pos(f, parse_ratfun(kFineG), 5);
  EXPECT_TRUE(cf.holds) << cf.failure;
  EXPECT_EQ(cf.conclusion_from, 5);
}

TEST(PositiveV, RatioBoundAtUFailsTheQuartic) {
  auto m = seq("motzkin");
  for (long N : {2, 11, 30}) {
    auto c = certify_ratio_logconcave_pos(m, to_quad(*m.spec().u), N);
    EXPECT_FALSE(c.holds);
    EXPECT_EQ(c.failure.rfind("g^4 - u g^3", 0), 0u) << c.failure;
  }
}

TEST(UpperBound, ReferenceBounds) {
  auto d = seq("delannoy");
  EXPECT_TRUE(certify_upper_bound(d, parse_ratfun(kDelannoyH), 2).holds);
  auto dm = seq("domb");
  EXPECT_TRUE(certify_upper_bound(dm, parse_ratfun(kDombH), 24).holds);
  auto p = seq("polyhex");
  EXPECT_TRUE(certify_upper_bound(p, parse_ratfun(kPolyhexH), 7).holds);
  // v > 0 sequences are rejected by the sign condition
  auto m = seq("motzkin");
  auto c = certify_upper_bound(m, parse_ratfun("3"), 5);
  EXPECT_FALSE(c.holds);
  EXPECT_NE(c.failure.find("-v(n) > 0"), std::string::npos) << c.failure;
}

TEST(FloorBound, ThreeQuartersOfU) {
  auto dm = seq("domb");
  auto c = certify_floor_bound(dm, three_quarters_u(dm), 24);
  EXPECT_TRUE(c.holds) << c.failure;
  EXPECT_EQ(c.premise, Premise::symbolic);
  auto d = seq("delannoy");
  EXPECT_TRUE(certify_floor_bound(d, three_quarters_u(d), 2).holds);
  auto at_u = certify_floor_bound(d, to_quad(*d.spec().u), 2);
  EXPECT_FALSE(at_u.holds);  // 13/3 < u(2) = 9/2
  EXPECT_EQ(at_u.failure_index, std::optional<long>(2));
}

TEST(FloorBound, FiniteFallbackWhenInductionFails) {
  // u(n+1) + v(n+1)/L - L with L = 4 - 1/n stays below zero for delannoy
  // (the ratio tends to 3+2*sqrt(2) > 4), so only the finite mode can succeed.
  auto d = seq("delannoy");
  auto L = parse_ratfun("4-1/n");
  auto c = certify_floor_bound(d, L, 3);
  auto strict = certify_floor_bound(d, L, 3, false);
  if (!strict.holds) {
    EXPECT_EQ(c.premise, Premise::finite);
    EXPECT_EQ(c.method, "floor-bound-finite");
    EXPECT_TRUE(c.holds) << c.failure;
    EXPECT_EQ(status_of(c), "finite-verified");
  } else {
    EXPECT_EQ(c, strict);
  }
}

TEST(NegativeV, ReferenceClaims) {
  auto dm = seq("domb");
  auto c = certify_ratio_logconcave_neg(dm, parse_ratfun(kDombH), 22);
  EXPECT_TRUE(c.holds) << c.failure;
  EXPECT_EQ(c.hypotheses_from, 24);
  EXPECT_EQ(status_of(c), "certified");
  auto p = seq("polyhex");
  EXPECT_TRUE(certify_ratio_logconcave_neg(p, parse_ratfun(kPolyhexH), 5).holds);
  auto d = seq("delannoy");
  auto h = parse_ratfun(kDelannoyH);
  auto best = first_holding(0, 20, [&](long N) { return certify_ratio_logconcave_neg(d, h, N); });
  EXPECT_TRUE(best.holds);
  EXPECT_EQ(best.conclusion_from, 0);
}

TEST(Stitching, PrefixChecksAndRevalidation) {
  auto m = seq("motzkin");
  auto sym = certify_ratio_logconcave_pos(m, parse_ratfun(kMotzkinG), 11);
  auto merged = stitch_prefix(m, sym, 4);
  EXPECT_TRUE(merged.holds);
  EXPECT_EQ(merged.conclusion_from, 4);
  ASSERT_EQ(merged.finite_checks.size(), 1u);
  EXPECT_EQ(merged.finite_checks[0].start, 6);
  EXPECT_EQ(merged.finite_checks[0].end, 12);
  EXPECT_TRUE(check_ratio_logconcave(m, 6, 11 + 10).holds);
  // motzkin is not ratio log-concave from 0
  auto too_far = stitch_prefix(m, sym, 0);
  EXPECT_FALSE(too_far.holds);

  struct Case {
    const char* name;
    const char* h;
    long N, m;
  };
  for (Case k : {Case{"domb", kDombH, 22, 0}, Case{"polyhex", kPolyhexH, 5, 0}}) {
    auto c = seq(k.name);
    auto s = stitch_prefix(c, certify_ratio_logconcave_neg(c, parse_ratfun(k.h), k.N), k.m);
    EXPECT_TRUE(s.holds) << k.name << " " << s.failure;
    EXPECT_TRUE(check_ratio_logconcave(c, k.m + 2, k.N + 10).holds) << k.name;
  }
}

TEST(Soundness, SampledIndicesPassDirectChecks) {
  std::mt19937_64 rng(77);
  struct Job {
    const char* name;
    std::function<Certificate(TermCache&)> make;
  };
  std::vector<Job> jobs = {
      {"motzkin", [](TermCache& c) { return certify_ratio_logconcave_pos(c, parse_ratfun(kMotzkinG), 11); }},
      {"fine", [](TermCache& c) { return certify_ratio_logconcave_pos(c, parse_ratfun(kFineG), 5); }},
      {"delannoy", [](TermCache& c) { return certify_ratio_logconcave_neg(c, parse_ratfun(kDelannoyH), 0); }},
      {"domb", [](TermCache& c) { return certify_ratio_logconcave_neg(c, parse_ratfun(kDombH), 22); }},
      {"polyhex", [](TermCache& c) { return certify_ratio_logconcave_neg(c, parse_ratfun(kPolyhexH), 5); }},
  };
  for (const auto& job : jobs) {
    auto c = seq(job.name);
    auto cert = job.make(c);
    ASSERT_TRUE(cert.holds) << job.name << " " << cert.failure;
    EXPECT_EQ(audit(cert, c, rng), 0) << job.name;
  }
}

TEST(RootCriterion, ReferenceClaims) {
  // D_5^3 D_3 = 170368 < D_6 D_4^3 = 193185, so the ratio evidence for
  // derangements only starts at index 4 and the k = 3 route is refused.
  auto der = seq("derangement");
  auto ev2 = certify_ratio_finite(der, 2, 400);
  EXPECT_FALSE(ev2.holds);
  EXPECT_EQ(ev2.failure_index, std::optional<long>(5));
  EXPECT_FALSE(certify_root(der, 3, Direction::concave, ev2).holds);
  auto ev = certify_ratio_finite(der, 4, 400);
  ASSERT_TRUE(ev.holds) << ev.failure;
  EXPECT_FALSE(certify_root(der, 3, Direction::concave, ev).holds);
  auto rc = certify_root(der, 4, Direction::concave, ev);
  EXPECT_TRUE(rc.holds) << rc.failure;
  EXPECT_EQ(status_of(rc), "finite-verified");
  // the conclusion itself holds from 3, checked directly
  EXPECT_TRUE(check_initial_condition(der, 3, Direction::concave));
  EXPECT_TRUE(check_root_logconcave(der, 4, 60).holds);

  auto dm = seq("domb");
  auto merged = stitch_prefix(dm, certify_ratio_logconcave_neg(dm, parse_ratfun(kDombH), 22), 0);
  auto rd = certify_root(dm, 1, Direction::concave, merged);
  EXPECT_TRUE(rd.holds) << rd.failure;
  EXPECT_EQ(status_of(rd), "certified");

  auto h = seq("harmonic");
  auto hv = certify_ratio_finite(h, 1, 300, Direction::convex);
  ASSERT_TRUE(hv.holds) << hv.failure;
  auto rh = certify_root(h, 3, Direction::convex, hv);
  EXPECT_TRUE(rh.holds) << rh.failure;

  // evidence of the wrong kind or range is refused
  EXPECT_THROW(certify_root(h, 3, Direction::concave, hv), InputError);
  auto late = certify_root(dm, 1, Direction::concave, certify_ratio_logconcave_neg(dm, parse_ratfun(kDombH), 22));
  EXPECT_FALSE(late.holds);
}

// The two intermediate claims of the root criterion in product form:
//   (a_{n+1}/a_n)^{2n}   > q^{n(n+1)} a_n^2
//   (a_n/a_{n-1})^{2n}   > q^{n(n-1)} a_n^2,   q = a_{n+1} a_{n-1} / a_n^2
TEST(RootCriterion, IntermediateInequalitiesInProductForm) {
  struct Case {
    const char* name;
    long k;
  };
  for (Case cs : {Case{"domb", 1}, Case{"delannoy", 1}, Case{"polyhex", 1}, Case{"derangement", 3}}) {
    auto c = seq(cs.name);
    ASSERT_TRUE(check_initial_condition(c, cs.k, Direction::concave)) << cs.name;
    for (long n = cs.k + 1; n <= 40; ++n) {
      const auto un = static_cast<std::uint64_t>(n);
      Rational an = c.term(n);
      Rational qn = c.term(n + 1) * c.term(n - 1) / (an * an);
      auto first = cmp_power_products({{c.ratio(n + 1), 2 * un}}, {{qn, un * (un + 1)}, {an, 2}});
      auto second = cmp_power_products({{c.ratio(n), 2 * un}}, {{qn, un * (un - 1)}, {an, 2}});
      EXPECT_EQ(first, std::strong_ordering::greater) << cs.name << " n=" << n;
      EXPECT_EQ(second, std::strong_ordering::greater) << cs.name << " n=" << n;
    }
  }
}

TEST(Certify, RejectsSequencesWithoutThreeTermForm) {
  auto c = seq("catalan");
  EXPECT_THROW(certify_lower_bound(c, parse_ratfun("1"), 3), InputError);
  auto f = seq("fine");
  EXPECT_THROW(certify_lower_bound(f, parse_ratfun(kFineG), 2), InputError);  // f_1 = 0
}
