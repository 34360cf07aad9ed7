#pragma once

// Text format for user recurrences:
//
//   sequence motzkin2 {
//     u(n) = (2*n+1)/(n+2);
//     v(n) = (3*n-3)/(n+2);
//     init a(0)=1, a(1)=1;
//   }
//
// plus an optional "extra(n) = (-1)^n * 1;" inhomogeneous term.

#include <logmono/expr.hpp>
#include <logmono/positivity.hpp>
#include <logmono/sequences.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace logmono {

class SemanticError : public InputError {
 public:
  using InputError::InputError;
};

inline constexpr long kDslProbeTerms = 60;

namespace detail {

inline Rational parse_rational_literal(TokenStream& ts) {
  bool neg = false;
  if (ts.at_symbol("-")) {
    ts.next();
    neg = true;
  }
  BigInt p = ts.expect_integer();
  BigInt q = 1;
  if (ts.at_symbol("/")) {
    const Token slash = ts.next();
    q = ts.expect_integer();
    if (q == 0) throw ParseError(slash.line, slash.column, "zero denominator");
  }
  Rational r(p, q);
  return neg ? -r : r;
}

inline ExtraTerm parse_signed_term(TokenStream& ts) {
  ExtraTerm e;
  // "(-1)^n *" prefix
  if (ts.at_symbol("(") && ts.peek(1).kind == Tok::symbol && ts.peek(1).text == "-") {
    ts.expect_symbol("(");
    ts.expect_symbol("-");
    BigInt one = ts.expect_integer();
    if (one != 1) ts.fail("expected (-1)^n");
    ts.expect_symbol(")");
    ts.expect_symbol("^");
    ts.expect_ident("n");
    ts.expect_symbol("*");
    e.alternating = true;
  }
  e.coeff = parse_rational_literal(ts);
  return e;
}

inline void expect_of_n(TokenStream& ts) {
  ts.expect_symbol("(");
  ts.expect_ident("n");
  ts.expect_symbol(")");
}

// Smallest integer n >= from at which the denominator of f vanishes.
inline std::optional<long> first_pole(const RatFun<Rational>& f, long from) {
  const auto& d = f.denom();
  if (d.degree() <= 0) return std::nullopt;
  long top = to_long_checked(sturm_largest_root_bound(d).ceil());
  for (long n = from; n <= top; ++n) {
    if (d.eval(Rational(n)).is_zero()) return n;
  }
  return std::nullopt;
}

}  // namespace detail

inline SequenceSpec parse_spec(std::string_view text) {
  TokenStream ts(tokenize(text));
  ts.expect_ident("sequence");
  SequenceSpec s;
  s.kind = SequenceKind::dsl;
  s.order = 2;
  s.name = ts.expect_ident();
  ts.expect_symbol("{");
  while (!ts.at_symbol("}")) {
    if (ts.at_end()) ts.fail("expected '}'");
    const Token head = ts.peek();
    if (ts.at_ident("u") || ts.at_ident("v")) {
      bool is_u = ts.next().text == "u";
      if ((is_u && s.u) || (!is_u && s.v)) throw ParseError(head.line, head.column, "duplicate " + head.text + "(n)");
      detail::expect_of_n(ts);
      ts.expect_symbol("=");
      const Token at = ts.peek();
      ExprParser ep(ts);
      auto f = to_rational(ep.parse_expr());
      if (!f) throw ParseError(at.line, at.column, "coefficients must be rational");
      (is_u ? s.u : s.v) = *f;
    } else if (ts.at_ident("init")) {
      ts.next();
      if (!s.initial_terms.empty()) throw ParseError(head.line, head.column, "duplicate init");
      while (true) {
        ts.expect_ident("a");
        ts.expect_symbol("(");
        const Token idx = ts.peek();
        BigInt i = ts.expect_integer();
        if (!i.fits_slong_p()) throw ParseError(idx.line, idx.column, "index out of range");
        ts.expect_symbol(")");
        ts.expect_symbol("=");
        s.initial_terms.push_back({i.get_si(), detail::parse_rational_literal(ts)});
        if (!ts.at_symbol(",")) break;
        ts.next();
      }
    } else if (ts.at_ident("extra")) {
      ts.next();
      if (s.extra) throw ParseError(head.line, head.column, "duplicate extra(n)");
      detail::expect_of_n(ts);
      ts.expect_symbol("=");
      s.extra = detail::parse_signed_term(ts);
    } else {
      ts.fail("expected 'u', 'v', 'init' or 'extra'");
    }
    ts.expect_symbol(";");
  }
  ts.expect_symbol("}");
  if (!ts.at_end()) ts.fail("unexpected trailing input");

  // semantic checks
  if (!s.u) throw SemanticError(s.name + ": missing u(n)");
  if (!s.v) s.v = RatFun<Rational>(0);
  if (s.initial_terms.size() < 2) throw SemanticError(s.name + ": need at least two initial terms");
  std::sort(s.initial_terms.begin(), s.initial_terms.end(),
            [](const InitialTerm& a, const InitialTerm& b) { return a.index < b.index; });
  for (std::size_t i = 1; i < s.initial_terms.size(); ++i) {
    if (s.initial_terms[i].index != s.initial_terms[i - 1].index + 1) {
      throw SemanticError(s.name + ": initial terms must have consecutive indices");
    }
  }
  if (s.initial_terms.front().index < 0) throw SemanticError(s.name + ": negative initial index");
  s.first_index = s.initial_terms.front().index;
  long from = s.initial_terms.back().index + 1;
  for (const auto& [label, f] : {std::pair{"u", *s.u}, std::pair{"v", *s.v}}) {
    if (auto p = detail::first_pole(f, from)) {
      throw SemanticError(s.name + ": pole of " + label + " at n=" + std::to_string(*p));
    }
  }
  s = finish_recurrence(std::move(s));

  TermGenerator gen = s.make_generator();
  std::vector<Rational> probe;
  for (long k = 0; k < kDslProbeTerms; ++k) probe.push_back(gen());
  if (probe.back().sign() <= 0) {
    throw SemanticError(s.name + ": terms are not positive at index " +
                        std::to_string(s.first_index + kDslProbeTerms - 1));
  }
  long start = kDslProbeTerms - 1;
  while (start > 0 && probe[static_cast<std::size_t>(start - 1)].sign() > 0) --start;
  s.valid_from = s.first_index + start;
  s.integral = false;  // integrality of user recurrences is not asserted
  return s;
}

inline SequenceSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

// A builtin name, or a path to a DSL file (anything containing '/' or ending in ".seq").
inline SequenceSpec resolve_sequence(const std::string& ref) {
  bool looks_like_path = ref.find('/') != std::string::npos ||
                         (ref.size() > 4 && ref.compare(ref.size() - 4, 4, ".seq") == 0);
  return looks_like_path ? load_spec_file(ref) : builtin_sequence(ref);
}

}  // namespace logmono
