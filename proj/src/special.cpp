#include "altzeta/special.hpp"

#include "altzeta/error.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace altzeta {

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

namespace {

// Stirling series, valid once Re z >= 15.
cplx log_gamma_stirling(cplx z) {
  // B_{2k} / (2k (2k-1)), k = 1..8
  static constexpr std::array<double, 8> c = {
      1.0 / 12.0,          -1.0 / 360.0,         1.0 / 1260.0,        -1.0 / 1680.0,
      1.0 / 1188.0,        -691.0 / 360360.0,    1.0 / 156.0,         -3617.0 / 122400.0};
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx p = inv;
  for (double ck : c) {
    series += ck * p;
    p *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

}  // namespace

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z)) throw Error(Errc::PoleError, "Gamma has a pole at z = " + std::to_string(z.real()));
  if (z.real() < 0.5) {
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(std::numbers::pi) - std::log(std::sin(std::numbers::pi * z)) - log_gamma(1.0 - z);
  }
  cplx shift = 0.0;
  while (z.real() < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  return log_gamma_stirling(z) - shift;
}

}  // namespace altzeta
