#pragma once

#include "altzeta/error.hpp"
#include "altzeta/rational.hpp"

#include <doctest.h>

#include <complex>

namespace altzeta::test {

inline Rational q(long num, long den = 1) { return make_rational(num, den); }

inline double rel(std::complex<double> a, std::complex<double> b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

template <class F>
Errc error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an altzeta::Error");
  return Errc::DomainError;
}

}  // namespace altzeta::test
