#pragma once

// Exact term generation for builtin sequences and user recurrences
// a_n = u(n) a_{n-1} + v(n) a_{n-2} + extra(n).

#include <logmono/ratfun.hpp>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace logmono {

enum class SequenceKind { builtin, dsl };

// extra(n) = coeff, or (-1)^n * coeff when alternating.
struct ExtraTerm {
  bool alternating = false;
  Rational coeff;

  Rational at(long n) const { return alternating && (n % 2 != 0) ? -coeff : coeff; }
  friend bool operator==(const ExtraTerm&, const ExtraTerm&) = default;
};

struct InitialTerm {
  long index = 0;
  Rational value;
  friend bool operator==(const InitialTerm&, const InitialTerm&) = default;
};

// Produces a_first, a_{first+1}, ... on successive calls.
using TermGenerator = std::function<Rational()>;

struct SequenceSpec {
  std::string name;
  SequenceKind kind = SequenceKind::builtin;
  int order = 2;  // 0 for closed forms and non-recurrence constructions
  std::optional<RatFun<Rational>> u;
  std::optional<RatFun<Rational>> v;
  std::optional<ExtraTerm> extra;
  std::vector<InitialTerm> initial_terms;
  long first_index = 0;
  long valid_from = 0;
  bool integral = false;
  std::function<TermGenerator()> make_generator;

  bool is_three_term() const { return order == 2 && u.has_value() && v.has_value(); }
};

namespace detail {

inline TermGenerator recurrence_generator(const SequenceSpec& s) {
  struct State {
    RatFun<Rational> u, v;
    std::optional<ExtraTerm> extra;
    std::map<long, Rational> init;
    long n;
    Rational prev2, prev1;
  };
  auto st = std::make_shared<State>();
  st->u = *s.u;
  st->v = s.v ? *s.v : RatFun<Rational>(0);
  st->extra = s.extra;
  for (const auto& t : s.initial_terms) st->init[t.index] = t.value;
  st->n = s.first_index;
  return [st]() {
    long n = st->n++;
    Rational a;
    if (auto it = st->init.find(n); it != st->init.end()) {
      a = it->second;
    } else {
      a = ratfun_eval(st->u, n) * st->prev1 + ratfun_eval(st->v, n) * st->prev2;
      if (st->extra) a += st->extra->at(n);
    }
    st->prev2 = st->prev1;
    st->prev1 = a;
    return a;
  };
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace detail

// Fills in make_generator for recurrence specs.
inline SequenceSpec finish_recurrence(SequenceSpec s) {
  s.make_generator = [copy = s]() { return detail::recurrence_generator(copy); };
  return s;
}

namespace builtins {

namespace detail_b {

inline RatFun<Rational> rf(std::initializer_list<long> num, std::initializer_list<long> den) {
  std::vector<Rational> a, b;
  for (long c : num) a.emplace_back(c);
  for (long c : den) b.emplace_back(c);
  return RatFun<Rational>(Poly<Rational>(a), Poly<Rational>(b));
}

inline SequenceSpec three_term(std::string name, RatFun<Rational> u, RatFun<Rational> v,
                               std::vector<InitialTerm> init, long valid_from) {
  SequenceSpec s;
  s.name = std::move(name);
  s.order = 2;
  s.u = std::move(u);
  s.v = std::move(v);
  s.initial_terms = std::move(init);
  s.first_index = s.initial_terms.front().index;
  s.valid_from = valid_from;
  s.integral = true;
  return finish_recurrence(std::move(s));
}

}  // namespace detail_b

inline SequenceSpec catalan() {
  SequenceSpec s;
  s.name = "catalan";
  s.order = 0;
  s.integral = true;
  s.make_generator = [] {
    auto n = std::make_shared<unsigned long>(0);
    return TermGenerator([n]() {
      unsigned long k = (*n)++;
      return Rational(detail::binomial(2 * k, k), BigInt(k + 1));
    });
  };
  return s;
}

inline SequenceSpec central_binomial() {
  SequenceSpec s;
  s.name = "central_binomial";
  s.order = 0;
  s.integral = true;
  s.make_generator = [] {
    auto n = std::make_shared<unsigned long>(0);
    return TermGenerator([n]() {
      unsigned long k = (*n)++;
      return Rational(detail::binomial(2 * k, k));
    });
  };
  return s;
}

// (n+2) M_n = (2n+1) M_{n-1} + 3(n-1) M_{n-2}
inline SequenceSpec motzkin() {
  using detail_b::rf;
  return detail_b::three_term("motzkin", rf({1, 2}, {2, 1}), rf({-3, 3}, {2, 1}),
                              {{0, Rational(1)}, {1, Rational(1)}}, 0);
}

// 2(n+1) f_n = (7n-5) f_{n-1} + 2(2n-1) f_{n-2}
inline SequenceSpec fine() {
  using detail_b::rf;
  return detail_b::three_term("fine", rf({-5, 7}, {2, 2}), rf({-1, 2}, {1, 1}),
                              {{0, Rational(1)}, {1, Rational(0)}}, 2);
}

// n D(n) = 3(2n-1) D(n-1) - (n-1) D(n-2)
inline SequenceSpec delannoy() {
  using detail_b::rf;
  return detail_b::three_term("delannoy", rf({-3, 6}, {0, 1}), rf({1, -1}, {0, 1}),
                              {{0, Rational(1)}, {1, Rational(3)}}, 0);
}

// (n+1) t_n = 3(2n-1) t_{n-1} - 5(n-2) t_{n-2}
inline SequenceSpec polyhex() {
  using detail_b::rf;
  return detail_b::three_term("polyhex", rf({-3, 6}, {1, 1}), rf({10, -5}, {1, 1}),
                              {{0, Rational(1)}, {1, Rational(1)}}, 0);
}

// n^3 D_n = 2(2n-1)(5n^2-5n+2) D_{n-1} - 64(n-1)^3 D_{n-2}
inline SequenceSpec domb() {
  using detail_b::rf;
  // 2(2n-1)(5n^2-5n+2) = 20n^3 - 30n^2 + 18n - 4; -64(n-1)^3 = -64n^3 + 192n^2 - 192n + 64
  return detail_b::three_term("domb", rf({-4, 18, -30, 20}, {0, 0, 0, 1}),
                              rf({64, -192, 192, -64}, {0, 0, 0, 1}),
                              {{0, Rational(1)}, {1, Rational(4)}}, 0);
}

// D_n = n D_{n-1} + (-1)^n
inline SequenceSpec derangement() {
  using detail_b::rf;
  SequenceSpec s = detail_b::three_term("derangement", rf({0, 1}, {1}), RatFun<Rational>(0),
                                        {{0, Rational(1)}, {1, Rational(0)}}, 2);
  s.extra = ExtraTerm{true, Rational(1)};
  return finish_recurrence(std::move(s));
}

// H_{n,m} = sum_{k=1}^n k^{-m}
inline SequenceSpec harmonic(unsigned m) {
  if (m == 0) throw InputError("harmonic order m must be positive");
  SequenceSpec s;
  s.name = m == 1 ? "harmonic" : "harmonic:" + std::to_string(m);
  s.order = 0;
  s.first_index = 1;
  s.valid_from = 1;
  s.make_generator = [m] {
    auto st = std::make_shared<std::pair<long, Rational>>(0, Rational(0));
    return TermGenerator([st, m]() {
      long k = ++st->first;
      st->second += pow_rational(Rational(BigInt(1), BigInt(k)), m);
      return st->second;
    });
  };
  return s;
}

// |B_{2n}| for n >= 1 from sum_{j=0}^{m} C(m+1, j) B_j = 0, B_0 = 1.
inline SequenceSpec bernoulli_abs_even() {
  SequenceSpec s;
  s.name = "bernoulli_abs_even";
  s.order = 0;
  s.first_index = 1;
  s.valid_from = 1;
  s.make_generator = [] {
    auto b = std::make_shared<std::vector<Rational>>(1, Rational(1));
    return TermGenerator([b]() {
      auto& B = *b;
      unsigned long target = B.size() + 1;  // next even index
      if (target % 2 != 0) ++target;
      while (B.size() <= target) {
        unsigned long m = B.size();  // solve for B_m
        Rational acc(0);
        for (unsigned long j = 0; j < m; ++j) acc += Rational(detail::binomial(m + 1, j)) * B[j];
        B.push_back(-acc / Rational(BigInt(m + 1)));
      }
      return B[target].abs();
    });
  };
  return s;
}

// Bell numbers from the Bell triangle.
inline SequenceSpec bell() {
  SequenceSpec s;
  s.name = "bell";
  s.order = 0;
  s.integral = true;
  s.make_generator = [] {
    auto row = std::make_shared<std::vector<BigInt>>();
    return TermGenerator([row]() {
      auto& r = *row;
      if (r.empty()) {
        r.push_back(1);
        return Rational(1);
      }
      std::vector<BigInt> next{r.back()};
      for (const auto& x : r) next.push_back(next.back() + x);
      r = std::move(next);
      return Rational(r.front());
    });
  };
  return s;
}

inline std::vector<std::string> names() {
  return {"catalan", "central_binomial", "motzkin", "fine", "delannoy", "polyhex", "domb",
          "derangement", "harmonic", "harmonic:2", "harmonic:3", "harmonic:4", "bernoulli_abs_even", "bell"};
}

}  // namespace builtins

// "harmonic" is m = 1; "harmonic:m" selects another order.
inline SequenceSpec builtin_sequence(const std::string& name) {
  using namespace builtins;
  if (name == "catalan") return catalan();
  if (name == "central_binomial") return central_binomial();
  if (name == "motzkin") return motzkin();
  if (name == "fine") return fine();
  if (name == "delannoy") return delannoy();
  if (name == "polyhex") return polyhex();
  if (name == "domb") return domb();
  if (name == "derangement") return derangement();
  if (name == "bernoulli_abs_even") return bernoulli_abs_even();
  if (name == "bell") return bell();
  if (name == "harmonic") return harmonic(1);
  if (name.rfind("harmonic:", 0) == 0) {
    std::string m = name.substr(9);
    if (m.empty() || m.size() > 3 || m.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("bad harmonic order in '" + name + "'");
    }
    return harmonic(static_cast<unsigned>(std::stoul(m)));
  }
  throw InputError("unknown sequence '" + name + "'");
}

inline constexpr std::size_t kDefaultTermCeiling = 100000;

class TermCache {
 public:
  explicit TermCache(SequenceSpec spec, std::size_t ceiling = kDefaultTermCeiling)
      : spec_(std::move(spec)), ceiling_(ceiling) {
    reset();
  }

  const SequenceSpec& spec() const { return spec_; }
  long first_index() const { return spec_.first_index; }
  long valid_from() const { return spec_.valid_from; }
  std::size_t size() const { return terms_.size(); }
  std::size_t ceiling() const { return ceiling_; }

  Rational term(long n) {
    if (n < spec_.first_index) {
      throw DomainError(spec_.name + ": index " + std::to_string(n) + " below definition range (starts at " +
                        std::to_string(spec_.first_index) + ")");
    }
    std::size_t idx = static_cast<std::size_t>(n - spec_.first_index);
    if (idx >= ceiling_) {
      throw GuardExceeded(spec_.name + ": index " + std::to_string(n) + " exceeds term cache ceiling " +
                          std::to_string(ceiling_));
    }
    while (terms_.size() <= idx) {
      Rational next = gen_();
      if (spec_.integral && !next.is_integer()) {
        throw Error(spec_.name + ": non-integral term at index " +
                    std::to_string(spec_.first_index + static_cast<long>(terms_.size())));
      }
      terms_.push_back(std::move(next));
    }
    return terms_[idx];
  }

  // a_n / a_{n-1}
  Rational ratio(long n) {
    Rational prev = term(n - 1);
    if (prev.is_zero()) {
      throw DomainError(spec_.name + ": zero predecessor at index " + std::to_string(n - 1));
    }
    return term(n) / prev;
  }

  std::vector<Rational> terms(long start, long end) {
    std::vector<Rational> out;
    if (end >= start) term(end);
    for (long n = start; n <= end; ++n) out.push_back(term(n));
    return out;
  }

  void reset() {
    terms_.clear();
    gen_ = spec_.make_generator();
  }

 private:
  SequenceSpec spec_;
  std::size_t ceiling_;
  std::vector<Rational> terms_;
  TermGenerator gen_;
};

}  // namespace logmono
