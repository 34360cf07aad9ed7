#include <logmono/sequences.hpp>

#include <gtest/gtest.h>

using namespace logmono;

namespace {

BigInt binom(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::vector<Rational> first_terms(const std::string& name, long count) {
  TermCache c(builtin_sequence(name));
  return c.terms(c.first_index(), c.first_index() + count - 1);
}

std::vector<Rational> ints(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Closed-form sums, independent of the recurrences used by the library.
BigInt motzkin_sum(unsigned long n) {
  BigInt s = 0;
  for (unsigned long k = 0; 2 * k <= n; ++k) s += binom(n, 2 * k) * binom(2 * k, k) / (k + 1);
  return s;
}
BigInt delannoy_sum(unsigned long n) {
  BigInt s = 0;
  for (unsigned long k = 0; k <= n; ++k) s += binom(n, k) * binom(n + k, k);
  return s;
}
BigInt domb_sum(unsigned long n) {
  BigInt s = 0;
  for (unsigned long k = 0; k <= n; ++k) s += binom(n, k) * binom(n, k) * binom(2 * k, k) * binom(2 * (n - k), n - k);
  return s;
}
// weighted Motzkin paths with 3 kinds of level step, shifted by one
BigInt polyhex_sum(unsigned long n) {
  if (n == 0) return 1;
  BigInt s = 0;
  for (unsigned long k = 0; 2 * k <= n - 1; ++k) {
    BigInt p3;
    mpz_ui_pow_ui(p3.get_mpz_t(), 3, n - 1 - 2 * k);
    s += binom(n - 1, 2 * k) * binom(2 * k, k) / (k + 1) * p3;
  }
  return s;
}
BigInt derangement_sum(unsigned long n) {
  // n! sum (-1)^k / k!
  Rational s(0);
  BigInt fact = 1;
  for (unsigned long k = 1; k <= n; ++k) fact *= k;
  BigInt kf = 1;
  for (unsigned long k = 0; k <= n; ++k) {
    if (k > 0) kf *= k;
    Rational t(fact, kf);
    s += k % 2 == 0 ? t : -t;
  }
  return s.num();
}

// Akiyama-Tanigawa algorithm for B_n (B_1 = +1/2 convention; even indices unaffected).
std::vector<Rational> akiyama_tanigawa(unsigned long nmax) {
  std::vector<Rational> out, a(nmax + 1);
  for (unsigned long m = 0; m <= nmax; ++m) {
    a[m] = Rational(BigInt(1), BigInt(m + 1));
    for (unsigned long j = m; j >= 1; --j) a[j - 1] = Rational(BigInt(j)) * (a[j - 1] - a[j]);
    out.push_back(a[0]);
  }
  return out;
}

}  // namespace

TEST(Sequences, KnownPrefixes) {
  EXPECT_EQ(first_terms("motzkin", 6), ints({1, 1, 2, 4, 9, 21}));
  EXPECT_EQ(first_terms("domb", 5), ints({1, 4, 28, 256, 2716}));
  EXPECT_EQ(first_terms("fine", 6), ints({1, 0, 1, 2, 6, 18}));
  EXPECT_EQ(first_terms("polyhex", 6), ints({1, 1, 3, 10, 36, 137}));
  EXPECT_EQ(first_terms("delannoy", 4), ints({1, 3, 13, 63}));
  EXPECT_EQ(first_terms("catalan", 5), ints({1, 1, 2, 5, 14}));
  EXPECT_EQ(first_terms("central_binomial", 4), ints({1, 2, 6, 20}));
  EXPECT_EQ(first_terms("derangement", 6), ints({1, 0, 1, 2, 9, 44}));
  EXPECT_EQ(first_terms("bell", 6), ints({1, 1, 2, 5, 15, 52}));
  TermCache h(builtin_sequence("harmonic"));
  EXPECT_EQ(h.term(3), Rational(11, 6));
  TermCache h2(builtin_sequence("harmonic:2"));
  EXPECT_EQ(h2.term(2), Rational(5, 4));
  TermCache b(builtin_sequence("bernoulli_abs_even"));
  EXPECT_EQ(b.term(1), Rational(1, 6));
  EXPECT_EQ(b.term(2), Rational(1, 30));
  EXPECT_EQ(b.term(3), Rational(1, 42));
}

TEST(Sequences, AgreeWithIndependentFormulas) {
  TermCache m(builtin_sequence("motzkin")), d(builtin_sequence("delannoy")), dm(builtin_sequence("domb")),
      p(builtin_sequence("polyhex")), dr(builtin_sequence("derangement")), f(builtin_sequence("fine")),
      c(builtin_sequence("catalan")), bl(builtin_sequence("bell"));
  for (unsigned long n = 0; n <= 60; ++n) {
    long i = static_cast<long>(n);
    EXPECT_EQ(m.term(i), Rational(motzkin_sum(n))) << n;
    EXPECT_EQ(d.term(i), Rational(delannoy_sum(n))) << n;
    EXPECT_EQ(dm.term(i), Rational(domb_sum(n))) << n;
    EXPECT_EQ(p.term(i), Rational(polyhex_sum(n))) << n;
    EXPECT_EQ(dr.term(i), Rational(derangement_sum(n))) << n;
    // C_n = 2 f_n + f_{n-1}
    if (n >= 1) { EXPECT_EQ(c.term(i), Rational(2) * f.term(i) + f.term(i - 1)) << n; }
  }
  // B_{n+1} = sum_k C(n,k) B_k
  for (unsigned long n = 0; n < 40; ++n) {
    Rational s(0);
    for (unsigned long k = 0; k <= n; ++k) s += Rational(binom(n, k)) * bl.term(static_cast<long>(k));
    EXPECT_EQ(bl.term(static_cast<long>(n + 1)), s);
  }
  auto at = akiyama_tanigawa(80);
  TermCache b(builtin_sequence("bernoulli_abs_even"));
  for (long n = 1; n <= 40; ++n) EXPECT_EQ(b.term(n), at[static_cast<std::size_t>(2 * n)].abs()) << n;
}

TEST(Sequences, IntegerSequencesStayIntegral) {
  for (const char* name : {"motzkin", "fine", "delannoy", "polyhex", "domb", "derangement", "catalan",
                           "central_binomial", "bell"}) {
    TermCache c(builtin_sequence(name));
    for (long n = c.first_index(); n < c.first_index() + 50; ++n) {
      EXPECT_EQ(c.term(n).den(), 1) << name << " at " << n;
    }
  }
}

TEST(Sequences, CacheIsReferentiallyTransparent) {
  for (const auto& name : builtins::names()) {
    TermCache c(builtin_sequence(name));
    auto before = c.terms(c.first_index(), c.first_index() + 40);
    c.reset();
    EXPECT_EQ(c.size(), 0u);
    // out-of-order access after a reset
    const Rational last = c.term(c.first_index() + 40);
    EXPECT_EQ(last, before.back()) << name;
    EXPECT_EQ(c.terms(c.first_index(), c.first_index() + 40), before) << name;
  }
}

TEST(Sequences, DerangementRecurrencesAgree) {
  TermCache d(builtin_sequence("derangement"));
  for (long n = 3; n <= 100; ++n) {
    EXPECT_EQ(d.term(n), Rational(n - 1) * (d.term(n - 1) + d.term(n - 2)));
    EXPECT_EQ(d.term(n), Rational(n) * d.term(n - 1) + Rational(n % 2 == 0 ? 1 : -1));
  }
  for (long n = 5; n <= 2000; ++n) EXPECT_GT(d.term(n), Rational(5 * (n + 3))) << n;
}

TEST(Sequences, RatioExamplesAndErrors) {
  TermCache m(builtin_sequence("motzkin"));
  EXPECT_EQ(m.ratio(4), Rational(9, 4));
  TermCache d(builtin_sequence("delannoy"));
  EXPECT_EQ(d.ratio(2), Rational(13, 3));
  TermCache f(builtin_sequence("fine"));
  EXPECT_THROW(f.ratio(2), DomainError);
  EXPECT_THROW(m.term(-1), DomainError);
  TermCache h(builtin_sequence("harmonic:3"));
  EXPECT_THROW(h.term(0), DomainError);
  EXPECT_THROW(builtin_sequence("nope"), InputError);
  EXPECT_THROW(builtin_sequence("harmonic:x"), InputError);
  TermCache small(builtin_sequence("catalan"), 10);
  EXPECT_NO_THROW(small.term(9));
  EXPECT_THROW(small.term(10), GuardExceeded);
}

TEST(Sequences, ValidityStarts) {
  EXPECT_EQ(builtin_sequence("fine").valid_from, 2);
  EXPECT_EQ(builtin_sequence("derangement").valid_from, 2);
  EXPECT_EQ(builtin_sequence("motzkin").valid_from, 0);
  EXPECT_EQ(builtin_sequence("harmonic:4").first_index, 1);
  for (const auto& name : builtins::names()) {
    TermCache c(builtin_sequence(name));
    for (long n = c.valid_from(); n < c.valid_from() + 60; ++n) EXPECT_GT(c.term(n).sign(), 0) << name << n;
  }
}
