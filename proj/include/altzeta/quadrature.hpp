#pragma once

// Globally adaptive Gauss-Legendre quadrature (20-point rule, error from the
// embedded comparison with the 10-point rule), for real or complex
// integrands, plus an endpoint power map for integrable singularities.

#include "altzeta/error.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

namespace altzeta::quad {

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-15;
  int max_intervals = 4000;
};

/// Nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};
const Rule& gauss_legendre(int n);

namespace detail {

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <class F>
auto apply_rule(const Rule& r, F& f, double a, double b) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  decltype(f(mid)) sum{};
  for (std::size_t i = 0; i < r.x.size(); ++i) sum += r.w[i] * f(mid + half * r.x[i]);
  return sum * half;
}

}  // namespace detail

/// Integral of f over [a, b]. Throws Errc::QuadratureError when the interval
/// budget is exhausted before the tolerance is met.
template <class F>
auto integrate(F f, double a, double b, const Options& opt = {}) {
  using T = decltype(f(a));
  if (a == b) return T{};
  const Rule& lo = gauss_legendre(10);
  const Rule& hi = gauss_legendre(20);

  struct Piece {
    double a, b;
    T value;
    double err;
    bool operator<(const Piece& o) const { return err < o.err; }
  };
  auto make = [&](double x0, double x1) {
    const T v20 = detail::apply_rule(hi, f, x0, x1);
    const T v10 = detail::apply_rule(lo, f, x0, x1);
    return Piece{x0, x1, v20, detail::magnitude(v20 - v10)};
  };

  std::priority_queue<Piece> pieces;
  pieces.push(make(a, b));
  T total = pieces.top().value;
  double err = pieces.top().err;
  int count = 1;
  while (err > std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total))) {
    if (count >= opt.max_intervals)
      throw Error(Errc::QuadratureError, "no convergence after " + std::to_string(count) +
                                             " subintervals (error estimate " + std::to_string(err) + ")");
    const Piece worst = pieces.top();
    pieces.pop();
    const double m = 0.5 * (worst.a + worst.b);
    Piece left = make(worst.a, m), right = make(m, worst.b);
    total += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    pieces.push(left);
    pieces.push(right);
    ++count;
  }
  // re-sum to shed the drift of the running updates
  T resummed{};
  while (!pieces.empty()) {
    resummed += pieces.top().value;
    pieces.pop();
  }
  return resummed;
}

/// As `integrate`, for an integrand that behaves like (u-a)^{ca-1} near a and
/// (b-u)^{cb-1} near b. Exponents below 1 are removed by splitting at the
/// midpoint and substituting u = a + (m-a) t^{1/ca} (mirrored at b).
template <class F>
auto integrate_endpoint(F f, double a, double b, double ca, double cb, const Options& opt = {}) {
  const double m = 0.5 * (a + b);
  auto left = [&](double t) {
    if (ca >= 1.0) return f(a + (m - a) * t) * (m - a);
    const double p = 1.0 / ca;
    const double tp = std::pow(t, p - 1.0);
    return f(a + (m - a) * tp * t) * ((m - a) * p * tp);
  };
  auto right = [&](double t) {
    if (cb >= 1.0) return f(b - (b - m) * t) * (b - m);
    const double p = 1.0 / cb;
    const double tp = std::pow(t, p - 1.0);
    return f(b - (b - m) * tp * t) * ((b - m) * p * tp);
  };
  return integrate(left, 0.0, 1.0, opt) + integrate(right, 0.0, 1.0, opt);
}

}  // namespace altzeta::quad
