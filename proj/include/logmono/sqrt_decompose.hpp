#pragma once

// Writing a polynomial as S(n)^2 - c or S(n)^2 + c with c a positive constant.

#include <logmono/ratfun.hpp>

#include <optional>
#include <string>

namespace logmono {

enum class SqrtMode { minus, plus };

struct SqrtDecomposition {
  bool ok = false;
  Poly<QuadNum> root;       // S, leading coefficient positive
  QuadNum c;                // p = S^2 - c (minus) or S^2 + c (plus)
  Poly<QuadNum> remainder;  // p - S^2
  std::string failure;      // empty when ok
};

// Square-root prefix of an even-degree polynomial with positive leading
// coefficient, by top-down coefficient matching. The leading coefficient's
// square-free part fixes the field Q(sqrt d) of the result.
inline Poly<QuadNum> poly_sqrt_prefix(const Poly<QuadNum>& p) {
  if (p.is_zero()) throw DomainError("square root of the zero polynomial");
  if (p.degree() % 2 != 0) throw DomainError("square root of an odd-degree polynomial");
  if (p.leading().sign() <= 0) throw DomainError("square root with non-positive leading coefficient");
  if (!p.leading().is_rational()) throw DomainError("square root needs a rational leading coefficient");
  const std::size_t m = static_cast<std::size_t>(p.degree() / 2);
  std::vector<QuadNum> s(m + 1);
  s[m] = QuadNum::sqrt_of(p.leading().rat());
  QuadNum two_top = s[m] * QuadNum(2);
  for (std::size_t k = 1; k <= m; ++k) {
    // coefficient of n^(2m-k) in S^2 is 2 s_m s_{m-k} + sum_{i=1}^{k-1} s_{m-i} s_{m-k+i}
    QuadNum acc = p.coeff(2 * m - k);
    for (std::size_t i = 1; i < k; ++i) acc -= s[m - i] * s[m - k + i];
    s[m - k] = acc / two_top;
  }
  return Poly<QuadNum>(std::move(s));
}

inline SqrtDecomposition poly_sqrt_decompose(const Poly<QuadNum>& p, SqrtMode mode) {
  SqrtDecomposition out;
  if (p.is_zero()) {
    out.failure = "zero polynomial";
    return out;
  }
  if (p.degree() % 2 != 0) {
    out.failure = "odd degree " + std::to_string(p.degree());
    return out;
  }
  if (p.leading().sign() <= 0) {
    out.failure = "non-positive leading coefficient";
    return out;
  }
  out.root = poly_sqrt_prefix(p);
  out.remainder = p - out.root * out.root;
  if (out.remainder.degree() > 0) {
    out.failure = "non-constant remainder " + to_string(out.remainder);
    return out;
  }
  QuadNum rem = out.remainder.constant_term();
  int want = mode == SqrtMode::minus ? -1 : 1;
  if (rem.sign() != want) {
    out.failure = "remainder " + rem.str() + " has the wrong sign";
    return out;
  }
  out.c = mode == SqrtMode::minus ? -rem : rem;
  out.ok = true;
  return out;
}

inline SqrtDecomposition poly_sqrt_decompose(const Poly<Rational>& p, SqrtMode mode) {
  return poly_sqrt_decompose(to_quad(p), mode);
}

// Exact square root when p is a perfect square.
inline std::optional<Poly<QuadNum>> poly_exact_sqrt(const Poly<QuadNum>& p) {
  if (p.is_zero() || p.degree() % 2 != 0 || p.leading().sign() <= 0 || !p.leading().is_rational()) {
    return std::nullopt;
  }
  Poly<QuadNum> s = poly_sqrt_prefix(p);
  if (!(s * s == p)) return std::nullopt;
  return s;
}

}  // namespace logmono
