#include <logmono/logcheck.hpp>

#include <gtest/gtest.h>

#include "oracle.hpp"

using namespace logmono;

namespace {

std::vector<Rational> ints(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

TermCache seq(const std::string& name) { return TermCache(builtin_sequence(name)); }

}  // namespace

TEST(ApplyR, Examples) {
  auto c = seq("catalan");
  EXPECT_EQ(apply_R(c, 1, 4), (std::vector<Rational>{Rational(2), Rational(5, 2), Rational(14, 5), Rational(3)}));
  EXPECT_EQ(apply_R(ints({1, 1, 1, 1})), ints({1, 1, 1}));
  auto f = seq("fine");
  EXPECT_THROW(apply_R(f, 1, 3), DomainError);
}

TEST(CheckLog, Examples) {
  auto lin = check_logconcave(ints({1, 2, 3, 4}), Strictness::strict);
  EXPECT_TRUE(lin.holds);
  EXPECT_EQ(lin.start, 1);
  EXPECT_EQ(lin.end, 2);
  EXPECT_TRUE(check_logconvex(ints({1, 1, 2, 5, 14})).holds);
  auto bad = check_logconcave(ints({1, 3, 4, 13}));
  EXPECT_FALSE(bad.holds);
  EXPECT_EQ(bad.first_failure, std::optional<long>(2));
  // constant sequences are weakly but not strictly log-concave
  EXPECT_TRUE(check_logconcave(ints({2, 2, 2})).holds);
  EXPECT_FALSE(check_logconcave(ints({2, 2, 2}), Strictness::strict).holds);
  EXPECT_THROW(check_logconcave(ints({1, 0, 1})), DomainError);
}

TEST(CheckOrderK, DeskScaleSlices) {
  auto cat = seq("catalan");
  for (const auto& v : check_order_k(cat, 3, 1, 60)) EXPECT_TRUE(v.holds) << v.predicate;
  auto ber = seq("bernoulli_abs_even");
  for (const auto& v : check_order_k(ber, 3, 2, 40)) EXPECT_TRUE(v.holds) << v.predicate;
  auto mot = seq("motzkin");
  auto vs = check_order_k(mot, 2, 1, 10);
  ASSERT_EQ(vs.size(), 2u);
  EXPECT_TRUE(vs[0].holds);  // motzkin is log-convex
  EXPECT_FALSE(vs[1].holds);
  // ratios 1, 2, 2, 9/4: 2^2 < 2 * 9/4 at the second middle index
  EXPECT_EQ(vs[1].first_failure, std::optional<long>(2));
}

TEST(CheckRatio, ReferenceRanges) {
  auto m = seq("motzkin");
  EXPECT_TRUE(check_ratio_logconcave(m, 6, 12).holds);
  auto d = seq("domb");
  EXPECT_TRUE(check_ratio_logconcave(d, 2, 23).holds);
  auto h = seq("harmonic");
  EXPECT_TRUE(check_ratio_logconvex(h, 3, 300).holds);
  EXPECT_TRUE(check_ratio_quotient_increasing(h, 1, 300).holds);
}

TEST(CheckRatio, TwoRoutesAgree) {
  for (const char* name : {"motzkin", "delannoy", "polyhex", "domb", "catalan", "bell", "derangement", "fine"}) {
    auto c = seq(name);
    long s = c.valid_from() + 2;
    long e = s + 40;
    for (auto strict : {Strictness::weak, Strictness::strict}) {
      auto direct = check_ratio_logconcave(c, s, e, strict);
      auto via_r = check_logconcave(apply_R(c, s - 2, e), strict, s - 1);
      EXPECT_EQ(direct.holds, via_r.holds) << name;
      // offset s-1 labels a_{m+1}/a_m with m+1, so failure indices line up directly
      EXPECT_EQ(direct.first_failure, via_r.first_failure) << name;
    }
  }
}

TEST(CheckRoot, ReferenceRanges) {
  auto m = seq("motzkin");
  EXPECT_TRUE(check_root_logconcave(m, 2, 5).holds);
  auto d = seq("domb");
  EXPECT_TRUE(check_root_logconcave(d, 2, 40).holds);
  auto h = seq("harmonic");
  // {H_n^{1/n}}_{n >= 3}: middle indices from 4 on; n = 3 itself would need H_2
  auto hv = check_root_logconvex(h, 3, 40);
  EXPECT_EQ(hv.first_failure, std::optional<long>(3));
  EXPECT_TRUE(check_root_logconvex(h, 4, 40).holds);
  EXPECT_THROW(check_root_logconcave(m, 1, 3), DomainError);
}

TEST(CheckRoot, GuardReportsFeasibleEnd) {
  set_exp_guard_bits(4000);
  auto d = seq("domb");
  try {
    (void)check_root_logconcave(d, 2, 40);
    FAIL();
  } catch (const GuardExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("largest feasible end"), std::string::npos);
  }
  set_exp_guard_bits(0);
}

TEST(CheckRoot, AgreesWithLogarithmOracle) {
  using F = oracle::Float200;
  for (const auto& name : builtins::names()) {
    auto c = seq(name);
    long s = std::max(2L, c.valid_from() + 1);
    for (long n = s; n <= 40; ++n) {
      auto l = [&](long i) { return boost::multiprecision::log(oracle::to_real<F>(c.term(i))); };
      F diff = F(2) * l(n) / F(n) - l(n + 1) / F(n + 1) - l(n - 1) / F(n - 1);
      auto got = check_root_logconcave(c, n, n);
      auto weak = check_root_logconcave(c, n, n, Strictness::weak);
      if (boost::multiprecision::abs(diff) > F("1e-150")) {
        EXPECT_EQ(got.holds, diff > 0) << name << " n=" << n;
        EXPECT_EQ(check_root_logconvex(c, n, n).holds, diff < 0) << name << " n=" << n;
      } else {
        EXPECT_FALSE(got.holds) << name << " n=" << n;
        EXPECT_TRUE(weak.holds) << name << " n=" << n;
      }
    }
  }
}

TEST(InitialCondition, Examples) {
  auto d = seq("derangement");
  EXPECT_TRUE(check_initial_condition(d, 3, Direction::concave));
  EXPECT_FALSE(check_initial_condition(d, 3, Direction::convex));
  auto h = seq("harmonic:2");
  EXPECT_TRUE(check_initial_condition(h, 3, Direction::convex));
  auto del = seq("delannoy");
  EXPECT_TRUE(check_initial_condition(del, 1, Direction::concave));  // 13^6 > 3^6 63^2
}

TEST(ProductForm, HoldsOnCertifiedWindows) {
  std::mt19937_64 rng(31);
  struct Window {
    const char* name;
    long k, n;
  };
  for (Window w : {Window{"motzkin", 6, 60}, Window{"domb", 2, 60}, Window{"delannoy", 2, 60},
                   Window{"polyhex", 3, 60}, Window{"fine", 6, 60}}) {
    auto c = seq(w.name);
    ASSERT_TRUE(check_ratio_logconcave(c, w.k, w.n).holds) << w.name;
    std::uniform_int_distribution<long> pick(w.k, w.n - 1);
    for (int t = 0; t < 60; ++t) {
      long i = pick(rng), j = pick(rng);
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      // i+1 >= k+1 and j+1 <= n keep every middle index used inside the window
      Rational q = c.term(w.n + 1) * c.term(w.n - 1) / (c.term(w.n) * c.term(w.n));
      auto cmp = cmp_power_products({{c.ratio(j + 1), 1}},
                                    {{q, static_cast<std::uint64_t>(j - i)}, {c.ratio(i + 1), 1}});
      EXPECT_NE(cmp, std::strong_ordering::less) << w.name << " i=" << i << " j=" << j;
    }
  }
}

TEST(Verdicts, StrictImpliesWeak) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> small(1, 6);
  for (int t = 0; t < 300; ++t) {
    std::vector<Rational> v;
    for (int i = 0; i < 8; ++i) v.emplace_back(small(rng));
    for (auto d : {Direction::concave, Direction::convex}) {
      auto s = check_log(v, d, Strictness::strict);
      auto w = check_log(v, d, Strictness::weak);
      if (s.holds) { EXPECT_TRUE(w.holds); }
      EXPECT_EQ(s.holds, !s.first_failure.has_value());
      if (!w.holds) { EXPECT_LE(*s.first_failure, *w.first_failure); }
    }
  }
}

TEST(ScanAlmostOrder, Examples) {
  auto cat = seq("catalan");
  for (const auto& row : scan_almost_order(cat, 4, 200)) {
    EXPECT_EQ(row.holds_from, std::optional<long>(1)) << "r=" << row.r;
  }
  auto mot = seq("motzkin");
  auto rows = scan_almost_order(mot, 3, 200);
  ASSERT_EQ(rows.size(), 3u);
  ASSERT_TRUE(rows[1].holds_from);
  EXPECT_GT(*rows[1].holds_from, 1);
  EXPECT_LT(*rows[1].holds_from, 20);
  auto bell = seq("bell");
  EXPECT_EQ(scan_almost_order(bell, 3, 200).size(), 3u);
  EXPECT_THROW(scan_almost_order(cat, 2, 0), InputError);
}
