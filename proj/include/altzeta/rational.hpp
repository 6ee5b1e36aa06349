#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace altzeta {

// Expression templates off: values are always materialized, so `auto` and ?:
// behave like ordinary arithmetic types.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

inline Rational make_rational(long num, long den = 1) { return Rational(Integer(num), Integer(den)); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline long double to_long_double(const Rational& q) { return q.convert_to<long double>(); }

inline Rational rpow(const Rational& base, unsigned exponent) {
  Rational r = 1;
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

inline Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

inline Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.backend().data(), n, k);
  return r;
}

inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace altzeta
