#pragma once

// Dense univariate polynomials, lowest degree first. T must be a commutative
// ring with value semantics and an is_zero() member; division helpers require
// a field.

#include <logmono/exactnum.hpp>

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace logmono {

template <class T>
class Poly {
 public:
  using value_type = T;

  Poly() = default;
  Poly(T c) {  // NOLINT(implicit)
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  template <std::integral I>
  Poly(I c) : Poly(T(c)) {}  // NOLINT(implicit)
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly monomial(T c, std::size_t k) {
    if (c.is_zero()) return {};
    std::vector<T> v(k + 1);
    v[k] = std::move(c);
    return Poly(std::move(v));
  }
  static Poly var() { return monomial(T(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  std::span<const T> coeffs() const { return c_; }
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T{}; }
  const T& leading() const { return c_.back(); }
  T constant_term() const { return coeff(0); }

  template <class S>
  S eval(const S& x) const {
    S acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + S(*it);
    return acc;
  }

  // q(n) = p(n + t), by Horner's scheme on (n + t).
  Poly shift(const T& t) const {
    Poly lin(std::vector<T>{t, T(1)});
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + Poly(*it);
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> v;
    v.reserve(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) v.push_back(c_[k] * T(static_cast<long>(k)));
    return Poly(std::move(v));
  }

  template <class Fn>
  auto map(Fn&& fn) const {
    using U = std::decay_t<decltype(fn(std::declval<const T&>()))>;
    std::vector<U> v;
    v.reserve(c_.size());
    for (const auto& c : c_) v.push_back(fn(c));
    return Poly<U>(std::move(v));
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] + o.c_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] - o.c_[k];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const T& s) const {
    Poly r = *this;
    for (auto& c : r.c_) c = c * s;
    r.trim();
    return r;
  }

  Poly pow(unsigned e) const {
    Poly result(T(1));
    Poly base = *this;
    while (e > 0) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e > 0) base *= base;
    }
    return result;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<T> c_;
};

namespace detail {

inline bool needs_parens(const Rational&) { return false; }
inline bool needs_parens(const QuadNum& q) { return !q.is_rational() && !q.rat().is_zero(); }
template <class T>
bool needs_parens(const Poly<T>& p) {
  return p.degree() > 0 || (p.degree() == 0 && needs_parens(p.leading()));
}

inline bool is_negative_literal(const Rational& r) { return r.sign() < 0; }
inline bool is_negative_literal(const QuadNum& q) {
  return q.rat().is_zero() ? q.irr().sign() < 0 : (q.is_rational() && q.rat().sign() < 0);
}
template <class T>
bool is_negative_literal(const Poly<T>&) {
  return false;
}

inline std::string scalar_str(const Rational& r) { return r.str(); }
inline std::string scalar_str(const QuadNum& q) { return q.str(); }

}  // namespace detail

// Human-readable and re-parseable: "16*n^2+16*n-23".
template <class T>
std::string to_string(const Poly<T>& p, std::string_view var = "n") {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const T& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    std::string cs;
    if constexpr (std::is_same_v<T, Rational> || std::is_same_v<T, QuadNum>) {
      cs = detail::scalar_str(c);
    } else {
      cs = to_string(c, "x");
    }
    bool paren = detail::needs_parens(c);
    bool neg = !paren && detail::is_negative_literal(c);
    std::string body;
    if (k == 0) {
      body = paren ? "(" + cs + ")" : cs;
    } else {
      std::string mono(var);
      if (k > 1) mono += "^" + std::to_string(k);
      if (cs == "1") body = mono;
      else if (cs == "-1") body = "-" + mono;
      else body = (paren ? "(" + cs + ")" : cs) + "*" + mono;
    }
    if (!out.empty() && !(neg || body.front() == '-')) out += "+";
    out += body;
  }
  return out;
}

// Quotient and remainder over a field.
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<F> r(a.coeffs().begin(), a.coeffs().end());
  int db = b.degree();
  int dr = a.degree();
  if (dr < db) return {Poly<F>(), a};
  std::vector<F> q(static_cast<std::size_t>(dr - db + 1));
  const F& lb = b.leading();
  for (int k = dr; k >= db; --k) {
    const F& top = r[static_cast<std::size_t>(k)];
    if (top.is_zero()) continue;
    F factor = top / lb;
    q[static_cast<std::size_t>(k - db)] = factor;
    for (int j = 0; j <= db; ++j) {
      auto idx = static_cast<std::size_t>(k - db + j);
      r[idx] = r[idx] - factor * b.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return {Poly<F>(std::move(q)), Poly<F>(std::move(r))};
}

template <class F>
Poly<F> make_monic(const Poly<F>& p) {
  if (p.is_zero()) return p;
  return p.scaled(F(1) / p.leading());
}

// Primitive integer polynomial with positive leading coefficient, a positive
// rational multiple of p's sign-normalized form.
inline Poly<Rational> primitive_part(const Poly<Rational>& p) {
  if (p.is_zero()) return p;
  BigInt lcm_den = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.den().get_mpz_t());
  BigInt g = 0;
  for (const auto& c : p.coeffs()) {
    BigInt v = c.num() * (lcm_den / c.den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  Rational scale(lcm_den, g);
  if (p.leading().sign() < 0) scale = -scale;
  return p.scaled(scale);
}

// Monic gcd. Over Q: fraction-free pseudo-remainders with content stripping.
// Over Q(sqrt d): Euclid with monic remainders.
template <class F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
  if constexpr (std::is_same_v<F, Rational>) {
    a = primitive_part(a);
    b = primitive_part(b);
    while (!b.is_zero()) {
      Poly<Rational> r = a;
      const Rational& lb = b.leading();
      while (!r.is_zero() && r.degree() >= b.degree()) {
        Poly<Rational> t = Poly<Rational>::monomial(r.leading(), static_cast<std::size_t>(r.degree() - b.degree()));
        r = r.scaled(lb) - t * b;
      }
      a = std::move(b);
      b = primitive_part(r);
    }
    return make_monic(a);
  } else {
    while (!b.is_zero()) {
      Poly<F> r = divmod(a, b).second;
      a = std::move(b);
      b = make_monic(r);
    }
    return make_monic(a);
  }
}

}  // namespace logmono
