#pragma once

// Rational functions in n over Q or Q(sqrt d), kept in lowest terms with a
// monic denominator.

#include <logmono/poly.hpp>

#include <optional>
#include <string>

namespace logmono {

class PoleError : public DomainError {
 public:
  PoleError(long index, const std::string& what)
      : DomainError("pole at n=" + std::to_string(index) + (what.empty() ? "" : " in " + what)),
        index_(index) {}
  long index() const { return index_; }

 private:
  long index_;
};

template <class F>
class RatFun {
 public:
  using field_type = F;

  RatFun() : den_(F(1)) {}
  RatFun(F c) : num_(std::move(c)), den_(F(1)) {}  // NOLINT(implicit)
  template <std::integral I>
  RatFun(I c) : RatFun(F(c)) {}  // NOLINT(implicit)
  RatFun(Poly<F> p) : num_(std::move(p)), den_(F(1)) {}  // NOLINT(implicit)
  RatFun(Poly<F> num, Poly<F> den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    normalize();
  }

  static RatFun var() { return RatFun(Poly<F>::var()); }

  const Poly<F>& numer() const { return num_; }
  const Poly<F>& denom() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  F eval(long n) const {
    F x(n);
    F d = den_.eval(x);
    if (d.is_zero()) throw PoleError(n, to_string(*this));
    return num_.eval(x) / d;
  }
  F eval(const F& x) const {
    F d = den_.eval(x);
    if (d.is_zero()) throw DomainError("pole at n=" + to_string(x));
    return num_.eval(x) / d;
  }

  RatFun shift(long t) const { return RatFun(num_.shift(F(t)), den_.shift(F(t))); }

  RatFun pow(unsigned e) const { return RatFun(num_.pow(e), den_.pow(e)); }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) {
    if (a.den_ == b.den_) return RatFun(a.num_ - b.num_, a.den_);
    return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a) {
    RatFun r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw DomainError("rational function division by zero");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  template <class Fn>
  auto map(Fn&& fn) const {
    using U = std::decay_t<decltype(fn(std::declval<const F&>()))>;
    return RatFun<U>(num_.map(fn), den_.map(fn));
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Poly<F>(F(1));
      return;
    }
    if (den_.degree() > 0 && num_.degree() > 0) {
      Poly<F> g = poly_gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = divmod(num_, g).first;
        den_ = divmod(den_, g).first;
      }
    }
    F lead = den_.leading();
    if (!(lead == F(1))) {
      F inv = F(1) / lead;
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  Poly<F> num_;
  Poly<F> den_;
};

template <class F>
std::string to_string(const RatFun<F>& f) {
  if (f.is_polynomial()) return to_string(f.numer());
  auto wrap = [](const Poly<F>& p) {
    std::string s = to_string(p);
    bool simple = p.degree() == 0 || (p.degree() == 1 && p.coeffs()[0].is_zero() &&
                                      to_string(p.leading()) == "1");
    return simple && s.find_first_of("+-*") == std::string::npos ? s : "(" + s + ")";
  };
  return wrap(f.numer()) + "/" + wrap(f.denom());
}

inline RatFun<QuadNum> to_quad(const RatFun<Rational>& f) {
  return f.map([](const Rational& r) { return QuadNum(r); });
}
inline Poly<QuadNum> to_quad(const Poly<Rational>& p) {
  return p.map([](const Rational& r) { return QuadNum(r); });
}

inline std::optional<Poly<Rational>> to_rational(const Poly<QuadNum>& p) {
  for (const auto& c : p.coeffs()) {
    if (!c.is_rational()) return std::nullopt;
  }
  return p.map([](const QuadNum& q) { return q.rat(); });
}

inline std::optional<RatFun<Rational>> to_rational(const RatFun<QuadNum>& f) {
  auto n = to_rational(f.numer());
  auto d = to_rational(f.denom());
  if (!n || !d) return std::nullopt;
  return RatFun<Rational>(*n, *d);
}

template <class F>
Poly<F> poly_shift(const Poly<F>& p, long t) {
  return p.shift(F(t));
}

template <class F>
F ratfun_eval(const RatFun<F>& f, long n) {
  return f.eval(n);
}

}  // namespace logmono
