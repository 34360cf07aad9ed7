#pragma once

// Tokenizer and recursive-descent parser for rational expressions in n with
// integer literals, + - * / ^, parentheses and sqrt(INT).

#include <logmono/ratfun.hpp>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace logmono {

class ParseError : public InputError {
 public:
  ParseError(int line, int column, const std::string& msg)
      : InputError("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

enum class Tok { ident, integer, symbol, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  int line = 1;
  int column = 1;
};

// '#' starts a comment running to end of line.
inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    std::size_t j = i;
    if (std::isdigit(c)) {
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::integer;
    } else if (std::isalpha(c) || c == '_') {
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::ident;
    } else if (std::string_view("+-*/^(){};=,").find(static_cast<char>(c)) != std::string_view::npos) {
      j = i + 1;
      t.kind = Tok::symbol;
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
    t.text = std::string(src.substr(i, j - i));
    advance(j - i);
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_symbol(std::string_view s) const { return peek().kind == Tok::symbol && peek().text == s; }
  bool at_ident(std::string_view s) const { return peek().kind == Tok::ident && peek().text == s; }
  bool at_end() const { return peek().kind == Tok::end; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, msg + ", got " + got);
  }
  void expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail("expected '" + std::string(s) + "'");
    next();
  }
  void expect_ident(std::string_view s) {
    if (!at_ident(s)) fail("expected '" + std::string(s) + "'");
    next();
  }
  std::string expect_ident() {
    if (peek().kind != Tok::ident) fail("expected identifier");
    return next().text;
  }
  BigInt expect_integer() {
    if (peek().kind != Tok::integer) fail("expected integer");
    return BigInt(next().text);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// expr  := term (('+'|'-') term)*
// term  := unary (('*'|'/') unary)*
// unary := ('-'|'+') unary | power
// power := primary ('^' ['-'] INT)?
// primary := INT | n | sqrt '(' INT ')' | '(' expr ')'
class ExprParser {
 public:
  explicit ExprParser(TokenStream& ts) : ts_(ts) {}

  RatFun<QuadNum> parse_expr() {
    RatFun<QuadNum> acc = parse_term();
    while (ts_.at_symbol("+") || ts_.at_symbol("-")) {
      bool plus = ts_.next().text == "+";
      RatFun<QuadNum> rhs = parse_term();
      acc = plus ? acc + rhs : acc - rhs;
    }
    return acc;
  }

 private:
  RatFun<QuadNum> parse_term() {
    RatFun<QuadNum> acc = parse_unary();
    while (ts_.at_symbol("*") || ts_.at_symbol("/")) {
      const Token op = ts_.next();
      RatFun<QuadNum> rhs = parse_unary();
      if (op.text == "*") {
        acc = acc * rhs;
      } else {
        if (rhs.is_zero()) throw ParseError(op.line, op.column, "division by zero");
        acc = acc / rhs;
      }
    }
    return acc;
  }

  RatFun<QuadNum> parse_unary() {
    if (ts_.at_symbol("-")) {
      ts_.next();
      return -parse_unary();
    }
    if (ts_.at_symbol("+")) {
      ts_.next();
      return parse_unary();
    }
    return parse_power();
  }

  RatFun<QuadNum> parse_power() {
    RatFun<QuadNum> base = parse_primary();
    if (!ts_.at_symbol("^")) return base;
    const Token caret = ts_.next();
    bool negative = false;
    if (ts_.at_symbol("-")) {
      ts_.next();
      negative = true;
    }
    BigInt e = ts_.expect_integer();
    if (!e.fits_uint_p() || e > 64) throw ParseError(caret.line, caret.column, "exponent too large");
    RatFun<QuadNum> r = base.pow(static_cast<unsigned>(e.get_ui()));
    if (negative) {
      if (r.is_zero()) throw ParseError(caret.line, caret.column, "negative power of zero");
      r = RatFun<QuadNum>(1) / r;
    }
    return r;
  }

  RatFun<QuadNum> parse_primary() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::integer) {
      return RatFun<QuadNum>(QuadNum(Rational(ts_.expect_integer())));
    }
    if (t.kind == Tok::ident && t.text == "n") {
      ts_.next();
      return RatFun<QuadNum>::var();
    }
    if (t.kind == Tok::ident && t.text == "sqrt") {
      ts_.next();
      ts_.expect_symbol("(");
      BigInt d = ts_.expect_integer();
      ts_.expect_symbol(")");
      return RatFun<QuadNum>(QuadNum::sqrt_of(Rational(d)));
    }
    if (t.kind == Tok::symbol && t.text == "(") {
      ts_.next();
      RatFun<QuadNum> inner = parse_expr();
      ts_.expect_symbol(")");
      return inner;
    }
    ts_.fail("expected number, 'n', 'sqrt' or '('");
  }

  TokenStream& ts_;
};

// Parses a complete expression such as "(6*n^2+3*n-9/8)/(2*n*(n+2))" or
// "((3+2*sqrt(2))*n-3/2-sqrt(2))/n".
inline RatFun<QuadNum> parse_ratfun(std::string_view text) {
  TokenStream ts(tokenize(text));
  ExprParser p(ts);
  RatFun<QuadNum> f = p.parse_expr();
  if (!ts.at_end()) ts.fail("unexpected trailing input");
  return f;
}

inline RatFun<Rational> parse_rational_ratfun(std::string_view text) {
  auto f = to_rational(parse_ratfun(text));
  if (!f) throw InputError("expected rational coefficients in '" + std::string(text) + "'");
  return *f;
}

// A constant such as "3/2-1/32*sqrt(2)".
inline QuadNum parse_quad(std::string_view text) {
  RatFun<QuadNum> f = parse_ratfun(text);
  if (!f.is_polynomial() || f.numer().degree() > 0) {
    throw InputError("expected a constant, got '" + std::string(text) + "'");
  }
  return f.numer().constant_term();
}

}  // namespace logmono
