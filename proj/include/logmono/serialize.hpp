#pragma once

// JSON forms of verdicts, certificates and forge traces. Exact values are
// strings: rationals as "p/q", quadratic numbers as "a+b*sqrt(d)", rational
// functions in the expression grammar, so parse(emit(x)) == x.

#include <logmono/boundforge.hpp>
#include <logmono/expr.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace logmono {

using json = nlohmann::json;

inline constexpr const char* kCertificateSchema = "logmono.certificate.v1";
inline constexpr const char* kForgeTraceSchema = "logmono.forge_trace.v1";

namespace ser {

inline json opt_long(const std::optional<long>& v) { return v ? json(*v) : json(nullptr); }
inline std::optional<long> get_opt_long(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<long>();
}

inline std::string quad(const QuadNum& q) { return q.str(); }
inline QuadNum quad(const json& j) { return parse_quad(j.get<std::string>()); }

inline std::string rf(const QRatFun& f) { return to_string(f); }
inline QRatFun rf(const json& j) { return parse_ratfun(j.get<std::string>()); }

inline std::string poly(const Poly<QuadNum>& p) { return to_string(p); }
inline Poly<QuadNum> qpoly(const json& j) {
  QRatFun f = parse_ratfun(j.get<std::string>());
  if (!f.is_polynomial()) throw InputError("expected a polynomial, got " + j.get<std::string>());
  return f.numer();
}
inline std::string poly(const Poly<Rational>& p) { return to_string(p); }
inline Poly<Rational> rpoly(const json& j) { return parse_rational_ratfun(j.get<std::string>()).numer(); }

// Coefficients, lowest degree first; used for polynomials in the unknown x.
inline json coeffs(const Poly<QuadNum>& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.str());
  return a;
}
inline Poly<QuadNum> coeffs(const json& j) {
  std::vector<QuadNum> v;
  for (const auto& c : j) v.push_back(quad(c));
  return Poly<QuadNum>(std::move(v));
}

inline json quads(const std::vector<QuadNum>& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(c.str());
  return a;
}
inline std::vector<QuadNum> quads(const json& j) {
  std::vector<QuadNum> v;
  for (const auto& c : j) v.push_back(quad(c));
  return v;
}

}  // namespace ser

// ---- verdicts and positivity ----------------------------------------------------

inline void to_json(json& j, const RangeVerdict& v) {
  j = json{{"predicate", v.predicate},
           {"start", v.start},
           {"end", v.end},
           {"holds", v.holds},
           {"first_failure", ser::opt_long(v.first_failure)},
           {"strictness", to_string(v.strictness)}};
}

inline void from_json(const json& j, RangeVerdict& v) {
  v.predicate = j.at("predicate").get<std::string>();
  v.start = j.at("start").get<long>();
  v.end = j.at("end").get<long>();
  v.holds = j.at("holds").get<bool>();
  v.first_failure = ser::get_opt_long(j, "first_failure");
  std::string s = j.at("strictness").get<std::string>();
  if (s != "weak" && s != "strict") throw InputError("unknown strictness " + s);
  v.strictness = s == "strict" ? Strictness::strict : Strictness::weak;
}

inline void to_json(json& j, const PositivityCertificate<QuadNum>& c) {
  json table = json::array();
  for (const auto& [n, s] : c.sign_table) table.push_back({n, s});
  j = json{{"target", ser::rf(c.target)},
           {"threshold", c.threshold},
           {"method", to_string(c.method)},
           {"holds", c.holds},
           {"violation", ser::opt_long(c.violation)}};
  if (c.method == PositivityMethod::shifted_coefficients) {
    j["shifted_numer"] = ser::quads(c.shifted_numer);
    j["shifted_denom"] = ser::quads(c.shifted_denom);
  } else {
    j["root_bound"] = c.root_bound.str();
    j["sign_table"] = table;
  }
}

inline void from_json(const json& j, PositivityCertificate<QuadNum>& c) {
  c.target = ser::rf(j.at("target"));
  c.threshold = j.at("threshold").get<long>();
  std::string m = j.at("method").get<std::string>();
  if (m == "shifted-coefficients") c.method = PositivityMethod::shifted_coefficients;
  else if (m == "sturm-with-prefix") c.method = PositivityMethod::sturm_with_prefix;
  else throw InputError("unknown positivity method " + m);
  c.holds = j.at("holds").get<bool>();
  c.violation = ser::get_opt_long(j, "violation");
  c.shifted_numer.clear();
  c.shifted_denom.clear();
  c.sign_table.clear();
  c.root_bound = Rational();
  if (c.method == PositivityMethod::shifted_coefficients) {
    c.shifted_numer = ser::quads(j.at("shifted_numer"));
    c.shifted_denom = ser::quads(j.at("shifted_denom"));
  } else {
    c.root_bound = Rational::parse(j.at("root_bound").get<std::string>());
    for (const auto& row : j.at("sign_table")) c.sign_table.emplace_back(row.at(0).get<long>(), row.at(1).get<int>());
  }
}

// ---- certificates ---------------------------------------------------------------

inline void to_json(json& j, const NamedPositivity& p) { j = json{{"condition", p.condition}, {"certificate", p.cert}}; }
inline void from_json(const json& j, NamedPositivity& p) {
  p.condition = j.at("condition").get<std::string>();
  p.cert = j.at("certificate").get<PositivityCertificate<QuadNum>>();
}

inline void to_json(json& j, const BaseCase& b) {
  j = json{{"label", b.label}, {"lhs", b.lhs}, {"relation", b.relation}, {"rhs", b.rhs}, {"holds", b.holds}};
}
inline void from_json(const json& j, BaseCase& b) {
  b.label = j.at("label").get<std::string>();
  b.lhs = j.at("lhs").get<std::string>();
  b.relation = j.at("relation").get<std::string>();
  b.rhs = j.at("rhs").get<std::string>();
  b.holds = j.at("holds").get<bool>();
}

inline void to_json(json& j, const Certificate& c) {
  j = json{{"sequence", c.sequence},
           {"property", c.property},
           {"method", c.method},
           {"status", status_of(c)},
           {"hypotheses_from", c.hypotheses_from},
           {"conclusion_from", c.conclusion_from},
           {"premise", to_string(c.premise)},
           {"holds", c.holds},
           {"failure", c.failure},
           {"failure_index", ser::opt_long(c.failure_index)},
           {"bound", c.bound ? json(ser::rf(*c.bound)) : json(nullptr)},
           {"finite_checks", c.finite_checks},
           {"positivity", c.positivity},
           {"base_cases", c.base_cases},
           {"components", json::array()}};
  for (const auto& sub : c.components) {
    json s;
    to_json(s, sub);
    j["components"].push_back(std::move(s));
  }
}

inline void from_json(const json& j, Certificate& c) {
  c.sequence = j.at("sequence").get<std::string>();
  c.property = j.at("property").get<std::string>();
  c.method = j.at("method").get<std::string>();
  c.hypotheses_from = j.at("hypotheses_from").get<long>();
  c.conclusion_from = j.at("conclusion_from").get<long>();
  std::string p = j.at("premise").get<std::string>();
  if (p != "symbolic" && p != "finite") throw InputError("unknown premise " + p);
  c.premise = p == "finite" ? Premise::finite : Premise::symbolic;
  c.holds = j.at("holds").get<bool>();
  c.failure = j.at("failure").get<std::string>();
  c.failure_index = ser::get_opt_long(j, "failure_index");
  c.bound = j.at("bound").is_null() ? std::nullopt : std::optional<QRatFun>(ser::rf(j.at("bound")));
  c.finite_checks = j.at("finite_checks").get<std::vector<RangeVerdict>>();
  c.positivity = j.at("positivity").get<std::vector<NamedPositivity>>();
  c.base_cases = j.at("base_cases").get<std::vector<BaseCase>>();
  c.components.clear();
  for (const auto& s : j.at("components")) {
    Certificate sub;
    from_json(s, sub);
    c.components.push_back(std::move(sub));
  }
}

inline json certificate_document(const Certificate& c) {
  json j = c;
  j["schema"] = kCertificateSchema;
  return j;
}

// ---- forge traces ---------------------------------------------------------------

inline void to_json(json& j, const RadicalRatio& r) {
  j = json{{"display", r.str()},
           {"u", to_string(r.u)},
           {"P", ser::poly(r.P)},
           {"Q", ser::poly(r.Q)},
           {"sqrt_Q", r.sqrt_Q ? json(ser::poly(*r.sqrt_Q)) : json(nullptr)}};
}
inline void from_json(const json& j, RadicalRatio& r) {
  r.u = parse_rational_ratfun(j.at("u").get<std::string>());
  r.P = ser::rpoly(j.at("P"));
  r.Q = ser::rpoly(j.at("Q"));
  r.sqrt_Q = j.at("sqrt_Q").is_null() ? std::nullopt : std::optional<Poly<QuadNum>>(ser::qpoly(j.at("sqrt_Q")));
}

inline void to_json(json& j, const DecompositionRecord& d) {
  j = json{{"ok", d.ok},
           {"mode", d.mode},
           {"root", ser::poly(d.root)},
           {"c", ser::quad(d.c)},
           {"remainder", ser::poly(d.remainder)},
           {"failure", d.failure}};
}
inline void from_json(const json& j, DecompositionRecord& d) {
  d.ok = j.at("ok").get<bool>();
  d.mode = j.at("mode").get<std::string>();
  d.root = ser::qpoly(j.at("root"));
  d.c = ser::quad(j.at("c"));
  d.remainder = ser::qpoly(j.at("remainder"));
  d.failure = j.at("failure").get<std::string>();
}

inline void to_json(json& j, const ForgeStep& s) {
  j = json{{"k", s.k},
           {"H", ser::coeffs(s.H)},
           {"H_display", to_string(s.H, "x")},
           {"roots", ser::quads(s.roots)},
           {"chosen", s.chosen ? json(ser::quad(*s.chosen)) : json(nullptr)},
           {"candidate", s.candidate ? json(ser::rf(*s.candidate)) : json(nullptr)},
           {"validated", s.validated},
           {"nudges_tried", s.nudges_tried},
           {"note", s.note}};
}
inline void from_json(const json& j, ForgeStep& s) {
  s.k = j.at("k").get<int>();
  s.H = ser::coeffs(j.at("H"));
  s.roots = ser::quads(j.at("roots"));
  s.chosen = j.at("chosen").is_null() ? std::nullopt : std::optional<QuadNum>(ser::quad(j.at("chosen")));
  s.candidate = j.at("candidate").is_null() ? std::nullopt : std::optional<QRatFun>(ser::rf(j.at("candidate")));
  s.validated = j.at("validated").get<bool>();
  s.nudges_tried = j.at("nudges_tried").get<int>();
  s.note = j.at("note").get<std::string>();
}

inline void to_json(json& j, const FallbackRecord& f) {
  j = json{{"prefix_candidate", ser::rf(f.prefix_candidate)},
           {"step", f.step.str()},
           {"radius", f.radius},
           {"tried", f.tried},
           {"accepted", f.accepted ? json{f.accepted->first, f.accepted->second} : json(nullptr)}};
}
inline void from_json(const json& j, FallbackRecord& f) {
  f.prefix_candidate = ser::rf(j.at("prefix_candidate"));
  f.step = Rational::parse(j.at("step").get<std::string>());
  f.radius = j.at("radius").get<int>();
  f.tried = j.at("tried").get<long>();
  if (j.at("accepted").is_null()) f.accepted.reset();
  else f.accepted = std::pair<int, int>{j.at("accepted").at(0).get<int>(), j.at("accepted").at(1).get<int>()};
}

inline void to_json(json& j, const ForgeTrace& t) {
  j = json{{"sequence", t.sequence},
           {"kind", to_string(t.kind)},
           {"lambda", t.lambda},
           {"decomposition", t.decomposition},
           {"base", t.base ? json(ser::rf(*t.base)) : json(nullptr)},
           {"fallback", t.fallback ? json(*t.fallback) : json(nullptr)},
           {"corrections", t.corrections},
           {"final", t.final_bound ? json(ser::rf(*t.final_bound)) : json(nullptr)},
           {"validation", t.validation ? json(*t.validation) : json(nullptr)},
           {"ok", t.ok},
           {"failure", t.failure}};
}
inline void from_json(const json& j, ForgeTrace& t) {
  t.sequence = j.at("sequence").get<std::string>();
  std::string k = j.at("kind").get<std::string>();
  if (k != "lower" && k != "upper") throw InputError("unknown bound kind " + k);
  t.kind = k == "lower" ? BoundKind::lower : BoundKind::upper;
  t.lambda = j.at("lambda").get<RadicalRatio>();
  t.decomposition = j.at("decomposition").get<DecompositionRecord>();
  t.base = j.at("base").is_null() ? std::nullopt : std::optional<QRatFun>(ser::rf(j.at("base")));
  t.fallback = j.at("fallback").is_null() ? std::nullopt : std::optional<FallbackRecord>(j.at("fallback").get<FallbackRecord>());
  t.corrections = j.at("corrections").get<std::vector<ForgeStep>>();
  t.final_bound = j.at("final").is_null() ? std::nullopt : std::optional<QRatFun>(ser::rf(j.at("final")));
  t.validation = j.at("validation").is_null() ? std::nullopt : std::optional<Certificate>(j.at("validation").get<Certificate>());
  t.ok = j.at("ok").get<bool>();
  t.failure = j.at("failure").get<std::string>();
}

inline json forge_trace_document(const ForgeTrace& t) {
  json j = t;
  j["schema"] = kForgeTraceSchema;
  return j;
}

}  // namespace logmono
