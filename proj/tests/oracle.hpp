#pragma once

// Test-only oracles: high-precision floating evaluation (MPFR) and brute
// force. Nothing here is reachable from the library.

#include <logmono/exactnum.hpp>

#include <boost/multiprecision/mpfr.hpp>

#include <random>

namespace oracle {

using Float200 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<200>>;
using Float100 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<100>>;

template <class Real>
Real to_real(const logmono::Rational& r) {
  return Real(r.num().get_str()) / Real(r.den().get_str());
}

template <class Real>
Real to_real(const logmono::QuadNum& q) {
  return to_real<Real>(q.rat()) + to_real<Real>(q.irr()) * boost::multiprecision::sqrt(Real(q.radicand().get_str()));
}

inline logmono::Rational random_rational(std::mt19937_64& rng, long mag, long max_den = 1) {
  std::uniform_int_distribution<long> num(-mag, mag);
  std::uniform_int_distribution<long> den(1, max_den);
  return logmono::Rational(logmono::BigInt(num(rng)), logmono::BigInt(den(rng)));
}

}  // namespace oracle
