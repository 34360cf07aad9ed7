#pragma once

// Exact scalars: GMP-backed integers and rationals, and elements of a real
// quadratic field Q(sqrt(d)) with exact sign and order.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace logmono {

using BigInt = mpz_class;

// Error hierarchy. The CLI maps InputError to exit code 3 and GuardExceeded
// to exit code 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class GuardExceeded : public Error {
 public:
  using Error::Error;
};

class Rational {
 public:
  Rational() = default;
  template <std::integral I>
  Rational(I v) : v_(static_cast<long>(v)) {}  // NOLINT(implicit)
  Rational(const BigInt& v) : v_(v) {}         // NOLINT(implicit)
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  // Accepts "p", "-p", "p/q".
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(BigInt(s));
      return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw InputError("malformed rational literal '" + s + "'");
    }
  }

  BigInt num() const { return v_.get_num(); }
  BigInt den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  Rational abs() const { return Rational(mpq_class(::abs(v_))); }
  Rational inverse() const {
    if (is_zero()) throw DomainError("division by zero");
    return Rational(mpq_class(1 / v_));
  }

  // Smallest integer >= value, and largest integer <= value.
  BigInt ceil() const {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }
  BigInt floor() const {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }

  std::string str() const { return v_.get_str(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

inline std::size_t bit_length(const BigInt& v) {
  return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

namespace detail {

// Splits d = s^2 * f with f square-free; returns (s, f). Trial division up to
// 10^6, then a perfect-square test on the cofactor.
inline std::pair<BigInt, BigInt> square_free_split(BigInt d) {
  BigInt s = 1;
  BigInt f = 1;
  for (unsigned long p = 2; p <= 1000000UL; p += (p == 2 ? 1 : 2)) {
    BigInt pp = BigInt(p) * p;
    if (pp > d) break;
    while (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
      d /= p;
      if (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
        d /= p;
        s *= p;
      } else {
        f *= p;
      }
    }
  }
  if (d > 1) {
    if (mpz_perfect_square_p(d.get_mpz_t())) {
      BigInt r;
      mpz_sqrt(r.get_mpz_t(), d.get_mpz_t());
      s *= r;
    } else {
      f *= d;
    }
  }
  return {s, f};
}

}  // namespace detail

// a + b*sqrt(d) with d square-free. A value with b = 0 is a plain rational and
// combines with any radicand.
class QuadNum {
 public:
  QuadNum() = default;
  template <std::integral I>
  QuadNum(I v) : a_(v) {}                // NOLINT(implicit)
  QuadNum(Rational a) : a_(std::move(a)) {}  // NOLINT(implicit)
  QuadNum(Rational a, Rational b, const BigInt& d) : a_(std::move(a)), b_(std::move(b)) {
    if (d < 1) throw DomainError("radicand must be a positive integer");
    auto [s, f] = detail::square_free_split(d);
    b_ *= Rational(s);
    d_ = f;
    normalize();
  }

  // sqrt(r) for r >= 0, exact in Q(sqrt(squarefree part)).
  static QuadNum sqrt_of(const Rational& r) {
    if (r.sign() < 0) throw DomainError("square root of a negative rational");
    if (r.is_zero()) return QuadNum();
    // sqrt(p/q) = sqrt(p*q)/q
    BigInt pq = r.num() * r.den();
    return QuadNum(Rational(0), Rational(BigInt(1), r.den()), pq);
  }

  const Rational& rat() const { return a_; }
  const Rational& irr() const { return b_; }
  const BigInt& radicand() const { return d_; }
  bool is_rational() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  QuadNum conjugate() const { return make(a_, -b_, d_); }
  Rational norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }

  int sign() const;

  std::string str() const {
    if (is_rational()) return a_.str();
    std::string root = "sqrt(" + d_.get_str() + ")";
    std::string irr;
    if (b_ == Rational(1)) irr = root;
    else if (b_ == Rational(-1)) irr = "-" + root;
    else irr = b_.str() + "*" + root;
    if (a_.is_zero()) return irr;
    return a_.str() + (b_.sign() > 0 ? "+" : "") + irr;
  }

  friend QuadNum operator+(const QuadNum& x, const QuadNum& y) {
    return make(x.a_ + y.a_, x.b_ + y.b_, common_radicand(x, y));
  }
  friend QuadNum operator-(const QuadNum& x, const QuadNum& y) {
    return make(x.a_ - y.a_, x.b_ - y.b_, common_radicand(x, y));
  }
  friend QuadNum operator-(const QuadNum& x) { return make(-x.a_, -x.b_, x.d_); }
  friend QuadNum operator*(const QuadNum& x, const QuadNum& y) {
    BigInt d = common_radicand(x, y);
    return make(x.a_ * y.a_ + x.b_ * y.b_ * Rational(d), x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  friend QuadNum operator/(const QuadNum& x, const QuadNum& y) {
    if (y.is_zero()) throw DomainError("division by zero");
    if (y.is_rational()) return make(x.a_ / y.a_, x.b_ / y.a_, x.d_);
    Rational n = y.norm();
    QuadNum t = x * y.conjugate();
    return make(t.a_ / n, t.b_ / n, t.d_);
  }
  QuadNum& operator+=(const QuadNum& o) { return *this = *this + o; }
  QuadNum& operator-=(const QuadNum& o) { return *this = *this - o; }
  QuadNum& operator*=(const QuadNum& o) { return *this = *this * o; }
  QuadNum& operator/=(const QuadNum& o) { return *this = *this / o; }

  friend bool operator==(const QuadNum& x, const QuadNum& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_.is_zero() || x.d_ == y.d_);
  }
  friend std::strong_ordering operator<=>(const QuadNum& x, const QuadNum& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  static QuadNum make(Rational a, Rational b, const BigInt& d) {
    QuadNum q;
    q.a_ = std::move(a);
    q.b_ = std::move(b);
    q.d_ = d;
    q.normalize();
    return q;
  }
  static BigInt common_radicand(const QuadNum& x, const QuadNum& y) {
    if (x.b_.is_zero()) return y.d_;
    if (y.b_.is_zero()) return x.d_;
    if (x.d_ != y.d_) {
      throw DomainError("mixed radicands sqrt(" + x.d_.get_str() + ") and sqrt(" +
                        y.d_.get_str() + ")");
    }
    return x.d_;
  }
  void normalize() {
    if (d_ == 1) {
      a_ += b_;
      b_ = Rational(0);
    }
    if (b_.is_zero()) d_ = 1;
  }

  Rational a_;
  Rational b_;
  BigInt d_ = 1;
};

// Sign of a + b*sqrt(d), decided without approximation.
inline int quad_sign(const QuadNum& q) {
  int sa = q.rat().sign();
  int sb = q.irr().sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  Rational lhs = q.rat() * q.rat();
  Rational rhs = q.irr() * q.irr() * Rational(q.radicand());
  // Equality would make d a perfect square.
  return lhs > rhs ? sa : sb;
}

inline int QuadNum::sign() const { return quad_sign(*this); }

// A rational number >= |q|.
inline Rational abs_upper_bound(const Rational& r) { return r.abs(); }
inline Rational abs_upper_bound(const QuadNum& q) {
  if (q.is_rational()) return q.rat().abs();
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), q.radicand().get_mpz_t());
  return q.rat().abs() + q.irr().abs() * Rational(BigInt(root + 1));
}

inline Rational pow_rational(const Rational& base, std::uint64_t exponent) {
  if (base.is_zero() && exponent == 0) throw DomainError("0^0 is undefined");
  BigInt n;
  BigInt d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), exponent);
  return Rational(n, d);
}

// ---- exponent guard ---------------------------------------------------------

inline constexpr std::uint64_t kDefaultExpGuardBits = std::uint64_t{1} << 26;

namespace detail {
inline std::uint64_t& guard_override() {
  static std::uint64_t v = 0;
  return v;
}
}  // namespace detail

// Bit cap per operand for cmp_power_products. LOGMONO_EXP_GUARD overrides the
// default; set_exp_guard_bits overrides both.
inline std::uint64_t exp_guard_bits() {
  if (detail::guard_override() != 0) return detail::guard_override();
  if (const char* env = std::getenv("LOGMONO_EXP_GUARD")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return kDefaultExpGuardBits;
}

inline void set_exp_guard_bits(std::uint64_t bits) { detail::guard_override() = bits; }

using PowerFactor = std::pair<Rational, std::uint64_t>;

namespace detail {

inline std::uint64_t exponent_gcd(const std::vector<PowerFactor>& lhs,
                                  const std::vector<PowerFactor>& rhs) {
  std::uint64_t g = 0;
  for (const auto& f : lhs) g = std::gcd(g, f.second);
  for (const auto& f : rhs) g = std::gcd(g, f.second);
  return g == 0 ? 1 : g;
}

// Bits of prod num(lhs)^e * prod den(rhs)^f, estimated from operand sizes.
inline std::uint64_t side_bits(const std::vector<PowerFactor>& nums,
                               const std::vector<PowerFactor>& dens, std::uint64_t g) {
  std::uint64_t bits = 0;
  for (const auto& [b, e] : nums) bits += (e / g) * bit_length(b.num());
  for (const auto& [b, e] : dens) bits += (e / g) * bit_length(b.den());
  return bits;
}

inline BigInt side_product(const std::vector<PowerFactor>& nums,
                           const std::vector<PowerFactor>& dens, std::uint64_t g) {
  BigInt acc = 1;
  BigInt t;
  for (const auto& [b, e] : nums) {
    mpz_pow_ui(t.get_mpz_t(), b.num().get_mpz_t(), e / g);
    acc *= t;
  }
  for (const auto& [b, e] : dens) {
    mpz_pow_ui(t.get_mpz_t(), b.den().get_mpz_t(), e / g);
    acc *= t;
  }
  return acc;
}

// m * 2^e with m kept to kBracketBits bits, rounded down or up. Products of
// positive integers are bracketed this way before any exact product is built.
inline constexpr std::size_t kBracketBits = 160;

struct Bracketed {
  BigInt m;
  long e = 0;
};

inline void round_to_bracket(Bracketed& x, bool up) {
  std::size_t bits = mpz_sizeinbase(x.m.get_mpz_t(), 2);
  if (bits <= kBracketBits) return;
  auto shift = static_cast<mp_bitcnt_t>(bits - kBracketBits);
  bool inexact = mpz_scan1(x.m.get_mpz_t(), 0) < shift;
  mpz_fdiv_q_2exp(x.m.get_mpz_t(), x.m.get_mpz_t(), shift);
  if (up && inexact) x.m += 1;
  x.e += static_cast<long>(shift);
}

inline Bracketed bracket_mul(const Bracketed& a, const Bracketed& b, bool up) {
  Bracketed r{a.m * b.m, a.e + b.e};
  round_to_bracket(r, up);
  return r;
}

inline Bracketed bracket_pow(const BigInt& base, std::uint64_t exp, bool up) {
  Bracketed b{base, 0}, acc{BigInt(1), 0};
  round_to_bracket(b, up);
  while (exp > 0) {
    if (exp & 1) acc = bracket_mul(acc, b, up);
    exp >>= 1;
    if (exp > 0) b = bracket_mul(b, b, up);
  }
  return acc;
}

inline Bracketed bracket_side(const std::vector<PowerFactor>& nums, const std::vector<PowerFactor>& dens,
                              std::uint64_t g, bool up) {
  Bracketed acc{BigInt(1), 0};
  for (const auto& [b, e] : nums) acc = bracket_mul(acc, bracket_pow(b.num(), e / g, up), up);
  for (const auto& [b, e] : dens) acc = bracket_mul(acc, bracket_pow(b.den(), e / g, up), up);
  return acc;
}

inline int cmp_bracketed(const Bracketed& a, const Bracketed& b) {
  long la = static_cast<long>(mpz_sizeinbase(a.m.get_mpz_t(), 2)) + a.e;
  long lb = static_cast<long>(mpz_sizeinbase(b.m.get_mpz_t(), 2)) + b.e;
  if (la != lb) return la < lb ? -1 : 1;
  BigInt x = a.m, y = b.m;
  if (a.e > b.e) mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(a.e - b.e));
  if (b.e > a.e) mpz_mul_2exp(y.get_mpz_t(), y.get_mpz_t(), static_cast<mp_bitcnt_t>(b.e - a.e));
  return cmp(x, y);
}

}  // namespace detail

// Upper estimate of the operand size cmp_power_products would build.
inline std::uint64_t power_products_bits(const std::vector<PowerFactor>& lhs,
                                         const std::vector<PowerFactor>& rhs) {
  std::uint64_t g = detail::exponent_gcd(lhs, rhs);
  return std::max(detail::side_bits(lhs, rhs, g), detail::side_bits(rhs, lhs, g));
}

// Exact ordering of prod lhs_i^e_i against prod rhs_j^f_j for positive bases.
inline std::strong_ordering cmp_power_products(const std::vector<PowerFactor>& lhs,
                                               const std::vector<PowerFactor>& rhs) {
  for (const auto* side : {&lhs, &rhs}) {
    for (const auto& f : *side) {
      if (f.first.sign() <= 0) {
        throw DomainError("cmp_power_products: non-positive base " + f.first.str());
      }
    }
  }
  // x -> x^(1/g) is monotone on positive reals.
  std::uint64_t g = detail::exponent_gcd(lhs, rhs);
  std::uint64_t cap = exp_guard_bits();
  std::uint64_t bits = std::max(detail::side_bits(lhs, rhs, g), detail::side_bits(rhs, lhs, g));
  if (bits > cap) {
    throw GuardExceeded("power product needs ~" + std::to_string(bits) +
                        " bits, above the exponent guard of " + std::to_string(cap));
  }
  if (detail::cmp_bracketed(detail::bracket_side(lhs, rhs, g, false), detail::bracket_side(rhs, lhs, g, true)) > 0) {
    return std::strong_ordering::greater;
  }
  if (detail::cmp_bracketed(detail::bracket_side(lhs, rhs, g, true), detail::bracket_side(rhs, lhs, g, false)) < 0) {
    return std::strong_ordering::less;
  }
  int c = cmp(detail::side_product(lhs, rhs, g), detail::side_product(rhs, lhs, g));
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

// ---- scalar traits shared by the polynomial templates -----------------------

inline int sign_of(const Rational& r) { return r.sign(); }
inline int sign_of(const QuadNum& q) { return q.sign(); }
inline std::string to_string(const Rational& r) { return r.str(); }
inline std::string to_string(const QuadNum& q) { return q.str(); }

}  // namespace logmono
