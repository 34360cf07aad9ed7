#pragma once

// Certificates that a rational function is positive at every integer n >= N.
//
// Two witnesses are produced. The shifted-coefficient witness substitutes
// n -> n + N into numerator and denominator; if both come out with all
// coefficients of one sign and a nonzero constant term, the sign is fixed on
// n >= N. Otherwise a Sturm chain bounds the largest real root rho of
// numer * denom from above, the leading coefficients fix the sign beyond rho,
// and the integers N..ceil(rho) are evaluated exactly.

#include <logmono/ratfun.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace logmono {

enum class PositivityMethod { shifted_coefficients, sturm_with_prefix };

inline std::string to_string(PositivityMethod m) {
  return m == PositivityMethod::shifted_coefficients ? "shifted-coefficients" : "sturm-with-prefix";
}

template <class F>
struct PositivityCertificate {
  RatFun<F> target;
  long threshold = 0;
  PositivityMethod method = PositivityMethod::shifted_coefficients;
  bool holds = false;
  std::optional<long> violation;  // smallest n >= threshold with f(n) <= 0 or a pole
  // shifted-coefficients witness
  std::vector<F> shifted_numer;
  std::vector<F> shifted_denom;
  // sturm-with-prefix witness: sign of f at threshold..ceil(rho); 0 marks a pole or root
  Rational root_bound;
  std::vector<std::pair<long, int>> sign_table;

  friend bool operator==(const PositivityCertificate&, const PositivityCertificate&) = default;
};

// ---- Sturm chains -----------------------------------------------------------

namespace detail {

// Positive rescaling keeps sign-variation counts intact.
template <class F>
Poly<F> positive_normalize(const Poly<F>& p) {
  if (p.is_zero()) return p;
  if constexpr (std::is_same_v<F, Rational>) {
    Poly<Rational> q = primitive_part(p);
    return p.leading().sign() < 0 ? -q : q;
  } else {
    F lc = p.leading();
    F abs_lc = lc.sign() < 0 ? -lc : lc;
    return p.scaled(F(1) / abs_lc);
  }
}

inline int variations(const std::vector<int>& signs) {
  int count = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace detail

template <class F>
class SturmChain {
 public:
  explicit SturmChain(const Poly<F>& p) {
    if (p.is_zero()) throw DomainError("Sturm chain of the zero polynomial");
    chain_.push_back(detail::positive_normalize(p));
    Poly<F> d = p.derivative();
    if (d.is_zero()) return;
    chain_.push_back(detail::positive_normalize(d));
    while (true) {
      Poly<F> r = -divmod(chain_[chain_.size() - 2], chain_.back()).second;
      if (r.is_zero()) break;
      chain_.push_back(detail::positive_normalize(r));
    }
  }

  int variations_at(const Rational& x) const {
    std::vector<int> s;
    F fx(x);
    for (const auto& q : chain_) s.push_back(sign_of(q.eval(fx)));
    return detail::variations(s);
  }
  int variations_at_pos_inf() const {
    std::vector<int> s;
    for (const auto& q : chain_) s.push_back(sign_of(q.leading()));
    return detail::variations(s);
  }
  int variations_at_neg_inf() const {
    std::vector<int> s;
    for (const auto& q : chain_) s.push_back(sign_of(q.leading()) * (q.degree() % 2 == 0 ? 1 : -1));
    return detail::variations(s);
  }
  // Distinct real roots.
  int real_root_count() const { return variations_at_neg_inf() - variations_at_pos_inf(); }
  // Distinct real roots strictly greater than x (x not itself a root).
  int roots_above(const Rational& x) const { return variations_at(x) - variations_at_pos_inf(); }

  const Poly<F>& base() const { return chain_.front(); }
  std::size_t length() const { return chain_.size(); }

 private:
  std::vector<Poly<F>> chain_;
};

// Cauchy-style bound: every complex root z satisfies |z| < 1 + max |a_i / a_d|.
template <class F>
Rational cauchy_bound(const Poly<F>& p) {
  Rational m(0);
  for (int k = 0; k < p.degree(); ++k) {
    Rational b = abs_upper_bound(F(p.coeffs()[static_cast<std::size_t>(k)] / p.leading()));
    if (b > m) m = b;
  }
  return m + Rational(1);
}

// Rational rho strictly above every real root of p (rho is the Cauchy bound
// when p has no real roots). Bisection narrows the bracket to width 1/4.
template <class F>
Rational sturm_largest_root_bound(const Poly<F>& p) {
  if (p.is_zero()) throw DomainError("root bound of the zero polynomial");
  Rational hi = cauchy_bound(p);
  if (p.degree() <= 0) return hi;
  SturmChain<F> chain(p);
  if (chain.real_root_count() == 0) return hi;
  Rational lo = -hi;
  const Rational width(BigInt(1), BigInt(4));
  while (hi - lo > width) {
    Rational mid = (lo + hi) / Rational(2);
    bool root_at_or_above = p.eval(F(mid)).is_zero() || chain.roots_above(mid) > 0;
    if (root_at_or_above) lo = mid;
    else hi = mid;
  }
  return hi;
}

namespace detail {

template <class F>
bool one_signed(const Poly<F>& p, int& sign_out) {
  if (p.is_zero() || p.constant_term().is_zero()) return false;
  int s = sign_of(p.constant_term());
  for (const auto& c : p.coeffs()) {
    int cs = sign_of(c);
    if (cs != 0 && cs != s) return false;
  }
  sign_out = s;
  return true;
}

// Sign of f(n) with poles reported as 0.
template <class F>
int sign_at(const RatFun<F>& f, long n) {
  F x(n);
  F d = f.denom().eval(x);
  if (d.is_zero()) return 0;
  return sign_of(f.numer().eval(x)) * sign_of(d);
}

inline long to_long_checked(const BigInt& v) {
  if (!v.fits_slong_p()) throw GuardExceeded("root bound " + v.get_str() + " out of range");
  return v.get_si();
}

}  // namespace detail

template <class F>
PositivityCertificate<F> certify_positive(const RatFun<F>& f, long threshold) {
  PositivityCertificate<F> cert;
  cert.target = f;
  cert.threshold = threshold;
  if (f.is_zero()) {
    cert.method = PositivityMethod::shifted_coefficients;
    cert.holds = false;
    cert.violation = threshold;
    return cert;
  }

  Poly<F> sn = f.numer().shift(F(threshold));
  Poly<F> sd = f.denom().shift(F(threshold));
  int s_num = 0;
  int s_den = 0;
  if (detail::one_signed(sn, s_num) && detail::one_signed(sd, s_den)) {
    cert.method = PositivityMethod::shifted_coefficients;
    cert.shifted_numer.assign(sn.coeffs().begin(), sn.coeffs().end());
    cert.shifted_denom.assign(sd.coeffs().begin(), sd.coeffs().end());
    cert.holds = s_num * s_den > 0;
    if (!cert.holds) cert.violation = threshold;
    return cert;
  }

  cert.method = PositivityMethod::sturm_with_prefix;
  Poly<F> product = f.numer() * f.denom();
  cert.root_bound = sturm_largest_root_bound(product);
  long top = detail::to_long_checked(cert.root_bound.ceil());
  for (long n = threshold; n <= top; ++n) {
    int s = detail::sign_at(f, n);
    cert.sign_table.emplace_back(n, s);
    if (s <= 0) {
      cert.holds = false;
      cert.violation = n;
      return cert;
    }
  }
  int tail = sign_of(f.numer().leading()) * sign_of(f.denom().leading());
  cert.holds = tail > 0;
  if (!cert.holds) cert.violation = std::max(threshold, top + 1);
  return cert;
}

template <class F>
PositivityCertificate<F> certify_positive(const Poly<F>& p, long threshold) {
  return certify_positive(RatFun<F>(p), threshold);
}

// Recomputes the verdict from target and threshold and checks that the
// recorded witness is reproduced exactly.
template <class F>
bool recheck(const PositivityCertificate<F>& cert) {
  return certify_positive(cert.target, cert.threshold) == cert;
}

// Smallest T in [lo, hi] with f(n) > 0 for every integer n >= T.
template <class F>
std::optional<long> minimal_positive_threshold(const RatFun<F>& f, long lo, long hi) {
  if (f.is_zero()) return std::nullopt;
  if (sign_of(f.numer().leading()) * sign_of(f.denom().leading()) <= 0) return std::nullopt;
  Poly<F> product = f.numer() * f.denom();
  long top = detail::to_long_checked(sturm_largest_root_bound(product).ceil());
  if (top < lo) return lo;
  long start = top + 1;
  for (long n = top; n >= lo; --n) {
    if (detail::sign_at(f, n) <= 0) break;
    start = n;
  }
  if (start > hi) return std::nullopt;
  return start;
}

}  // namespace logmono
