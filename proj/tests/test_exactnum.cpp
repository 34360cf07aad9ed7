#include <logmono/exactnum.hpp>

#include <gtest/gtest.h>

#include "oracle.hpp"

using namespace logmono;

namespace {

QuadNum q(long a, long b, long d) { return QuadNum(Rational(a), Rational(b), BigInt(d)); }

}  // namespace

TEST(QuadSign, Examples) {
  EXPECT_EQ(quad_sign(q(3, 2, 2)), 1);
  EXPECT_EQ(quad_sign(q(1, -1, 2)), -1);
  EXPECT_EQ(quad_sign(q(0, 0, 2)), 0);
  EXPECT_EQ(quad_sign(q(-2, 1, 5)), 1);  // sqrt5 > 2
  EXPECT_EQ(quad_sign(q(3, -1, 5)), 1);  // 3 > sqrt5
}

TEST(QuadNum, RadicandIsReducedToSquareFree) {
  QuadNum x = q(0, 1, 8);  // sqrt8 = 2 sqrt2
  EXPECT_EQ(x.radicand(), 2);
  EXPECT_EQ(x.irr(), Rational(2));
  QuadNum y = q(1, 3, 9);  // 1 + 3*3
  EXPECT_TRUE(y.is_rational());
  EXPECT_EQ(y.rat(), Rational(10));
  EXPECT_EQ(QuadNum::sqrt_of(Rational(BigInt(1), BigInt(2))).str(), "1/2*sqrt(2)");
}

TEST(QuadNum, MixedRadicandsRejected) {
  EXPECT_THROW(q(0, 1, 2) + q(0, 1, 3), DomainError);
  // plain rationals combine with anything
  EXPECT_EQ(q(0, 1, 2) + QuadNum(Rational(1)), q(1, 1, 2));
}

TEST(QuadNum, DivisionAndFormatting) {
  QuadNum a = q(3, 2, 2);
  QuadNum inv = QuadNum(1) / a;  // 1/(3+2sqrt2) = 3-2sqrt2
  EXPECT_EQ(inv, q(3, -2, 2));
  EXPECT_EQ(a.str(), "3+2*sqrt(2)");
  EXPECT_EQ(q(0, -1, 2).str(), "-sqrt(2)");
  EXPECT_EQ((QuadNum(Rational(-3, 2)) + QuadNum(Rational(0), Rational(BigInt(-1), BigInt(32)), 2)).str(),
            "-3/2-1/32*sqrt(2)");
}

TEST(PowRational, Examples) {
  EXPECT_EQ(pow_rational(Rational(3, 2), 3), Rational(27, 8));
  EXPECT_EQ(pow_rational(Rational(1, 6), 2), Rational(1, 36));
  Rational r(1);
  for (int i = 0; i < 10; ++i) r *= Rational(4);
  EXPECT_EQ(pow_rational(Rational(4), 10), r);
  EXPECT_EQ(pow_rational(Rational(4), 10), Rational(1048576));
  EXPECT_THROW(pow_rational(Rational(0), 0), DomainError);
  EXPECT_EQ(pow_rational(Rational(0), 3), Rational(0));
}

TEST(Rational, CanonicalForm) {
  Rational r(BigInt(6), BigInt(-4));
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rational(BigInt(0), BigInt(5)).den(), 1);
  EXPECT_EQ(Rational::parse("-10/4").str(), "-5/2");
  EXPECT_THROW(Rational::parse("1/0"), DomainError);
  EXPECT_THROW(Rational::parse("x"), InputError);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    Rational a = oracle::random_rational(rng, 1000, 50);
    Rational b = oracle::random_rational(rng, 1000, 50);
    for (const Rational& c : {a + b, a * b, a - b}) {
      EXPECT_GT(c.den(), 0);
      BigInt g;
      mpz_gcd(g.get_mpz_t(), c.num().get_mpz_t(), c.den().get_mpz_t());
      EXPECT_EQ(g, 1);
    }
  }
}

TEST(CmpPowerProducts, Examples) {
  EXPECT_EQ(cmp_power_products({{Rational(2), 2}}, {{Rational(4), 1}}), std::strong_ordering::equal);
  // fourth root of M_4 = 9 squared against fifth root of 21 times cube root of 4
  EXPECT_EQ(cmp_power_products({{Rational(9), 2 * (16 - 1)}}, {{Rational(21), 4 * 3}, {Rational(4), 4 * 5}}),
            std::strong_ordering::greater);
  EXPECT_EQ(cmp_power_products({{Rational(1, 6), 1}}, {{Rational(1, 30), 1}}), std::strong_ordering::greater);
  EXPECT_THROW(cmp_power_products({{Rational(0), 1}}, {{Rational(1), 1}}), DomainError);
  EXPECT_THROW(cmp_power_products({{Rational(-2), 1}}, {{Rational(1), 1}}), DomainError);
}

TEST(CmpPowerProducts, GuardRejectsOversizedOperands) {
  set_exp_guard_bits(1000);
  EXPECT_THROW(cmp_power_products({{Rational(3), 1000}}, {{Rational(2), 1}}), GuardExceeded);
  EXPECT_NO_THROW(cmp_power_products({{Rational(3), 100}}, {{Rational(2), 1}}));
  set_exp_guard_bits(0);
  EXPECT_EQ(exp_guard_bits(), kDefaultExpGuardBits);
}

TEST(QuadSignProperty, AgreesWithHighPrecisionEvaluation) {
  std::mt19937_64 rng(20240101);
  std::uniform_int_distribution<int> pick(0, 2);
  const long ds[] = {2, 3, 5};
  for (int i = 0; i < 1000; ++i) {
    Rational a = oracle::random_rational(rng, 1000000, i % 3 == 0 ? 1000 : 1);
    Rational b = oracle::random_rational(rng, 1000000, i % 5 == 0 ? 1000 : 1);
    if (i % 7 == 0) b = -a;  // near-cancellation
    QuadNum x(a, b, BigInt(ds[pick(rng)]));
    auto v = oracle::to_real<oracle::Float100>(x);
    int expect = v > 0 ? 1 : (v < 0 ? -1 : 0);
    ASSERT_EQ(quad_sign(x), expect) << x.str();
  }
}

TEST(CmpPowerProductsProperty, AgreesWithExtendedPrecisionLogs) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> base(1, 1000000);
  std::uniform_int_distribution<std::uint64_t> expo(1, 10000);
  std::uniform_int_distribution<int> count(1, 3);
  using F = oracle::Float200;
  for (int i = 0; i < 1000; ++i) {
    std::vector<PowerFactor> lhs, rhs;
    for (int k = count(rng); k > 0; --k) lhs.emplace_back(Rational(BigInt(base(rng)), BigInt(i % 4 == 0 ? base(rng) : 1)), expo(rng));
    for (int k = count(rng); k > 0; --k) rhs.emplace_back(Rational(BigInt(base(rng)), BigInt(1)), expo(rng));
    if (i % 10 == 0) {
      // constructed tie: (b^2)^e against b^(2e)
      Rational b(BigInt(base(rng)));
      std::uint64_t e = expo(rng);
      lhs = {{b * b, e}};
      rhs = {{b, 2 * e}};
    }
    F l = 0, r = 0;
    for (const auto& [b, e] : lhs) l += F(e) * boost::multiprecision::log(oracle::to_real<F>(b));
    for (const auto& [b, e] : rhs) r += F(e) * boost::multiprecision::log(oracle::to_real<F>(b));
    F diff = l - r;
    auto got = cmp_power_products(lhs, rhs);
    if (boost::multiprecision::abs(diff) < F("1e-150")) {
      EXPECT_EQ(got, std::strong_ordering::equal);
    } else {
      EXPECT_EQ(got, diff > 0 ? std::strong_ordering::greater : std::strong_ordering::less);
    }
  }
}

TEST(CmpPowerProductsProperty, NearTiesFallBackToExactProducts) {
  // operands agree far beyond the bracketing precision
  std::mt19937_64 rng(123);
  for (int i = 0; i < 200; ++i) {
    BigInt x = 1;
    for (int k = 0; k < 40; ++k) x = x * BigInt(static_cast<unsigned long>(rng() >> 2)) + 1;
    BigInt y = x + (i % 3 == 0 ? 0 : (i % 3 == 1 ? 1 : -1));
    BigInt z = BigInt(static_cast<unsigned long>(rng() >> 8)) + 2;
    // x^3 z against y z^0 x^2 * x : equal exactly when y == x
    auto got = cmp_power_products({{Rational(x), 3}, {Rational(z), 1}}, {{Rational(y), 1}, {Rational(x), 2}, {Rational(z), 1}});
    int want = cmp(x, y);
    EXPECT_EQ(got, want < 0 ? std::strong_ordering::less : want > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    // the same with the tie hidden in a denominator
    auto frac = cmp_power_products({{Rational(x, z), 2}}, {{Rational(y, z * z), 1}, {Rational(x), 1}});
    EXPECT_EQ(frac, want < 0 ? std::strong_ordering::less : want > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
}

TEST(QuadNumProperty, FieldLawsHoldExactly) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    auto make = [&] { return QuadNum(oracle::random_rational(rng, 50, 7), oracle::random_rational(rng, 50, 7), BigInt(3)); };
    QuadNum x = make(), y = make(), z = make();
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    if (!y.is_zero()) { EXPECT_EQ((x / y) * y, x); }
  }
}
