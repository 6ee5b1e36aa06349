#include "altzeta/determinants.hpp"

#include "altzeta/error.hpp"
#include "altzeta/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace altzeta {

namespace {

using lcplx = std::complex<long double>;
using LMatrix = Eigen::Matrix<lcplx, Eigen::Dynamic, Eigen::Dynamic>;

lcplx widen(cplx z) { return {z.real(), z.imag()}; }
cplx narrow(lcplx z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

// x^{-e} for real x > 0, principal branch
lcplx pow_neg(long double x, lcplx e) { return std::exp(-e * std::log(x)); }

struct LuDet {
  lcplx det;
  double rcond;
  double growth;
};

LuDet lu_det(const LMatrix& m) {
  Eigen::PartialPivLU<LMatrix> lu(m);
  long double max_a = m.cwiseAbs().maxCoeff();
  long double max_u = 0.0L;
  const auto& packed = lu.matrixLU();
  for (Eigen::Index j = 0; j < packed.cols(); ++j)
    for (Eigen::Index i = 0; i <= j; ++i) max_u = std::max(max_u, std::abs(packed(i, j)));
  return {lu.determinant(), static_cast<double>(lu.rcond()), static_cast<double>(max_u / max_a)};
}

}  // namespace

OrderedGrid::OrderedGrid(std::vector<double> u, double min_gap) : u_(std::move(u)) {
  if (u_.empty()) throw Error(Errc::GridError, "grid is empty");
  for (std::size_t i = 0; i < u_.size(); ++i) {
    if (!std::isfinite(u_[i]) || !(u_[i] > 0.0))
      throw Error(Errc::GridError, "u_" + std::to_string(i + 1) + " must be finite and positive");
    if (i > 0 && !(u_[i] - u_[i - 1] > min_gap))
      throw Error(Errc::GridError, "grid not strictly increasing at u_" + std::to_string(i + 1));
  }
}

OrderedGrid OrderedGrid::squares(int N) {
  std::vector<double> u(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) u[n - 1] = static_cast<double>(n) * n;
  return OrderedGrid(std::move(u));
}

EvalResult eta_det(SParam s, int N, const DetOptions& opt) {
  if (N < 2) throw Error(Errc::DomainError, "eta_det requires N >= 2");
  if (N > opt.cap) throw Error(Errc::CapExceeded, "N = " + std::to_string(N) + " exceeds cap " + std::to_string(opt.cap));
  const lcplx one_minus_s = 1.0L - widen(s.value());
  LMatrix m(N, N);
  for (int n = 1; n <= N; ++n) {
    const long double x = n;
    m(n - 1, 0) = std::exp(one_minus_s * std::log(x));
    // n^{2k-1}/(2k-1)!, built incrementally
    long double entry = x;
    for (int k = 2; k <= N; ++k) {
      entry *= x * x / ((2.0L * k - 2.0L) * (2.0L * k - 1.0L));
      m(n - 1, k - 1) = entry;
    }
  }
  const LuDet d = lu_det(m);
  EvalResult r{narrow(0.5L * d.det), Method::determinant, N, {{"growth_factor", d.growth}, {"rcond", d.rcond}}, {}};
  if (d.rcond < opt.rcond_threshold) r.flags.push_back("ill_conditioned");
  return r;
}

cplx gen_vandermonde_ratio(SParam s, const OrderedGrid& u) {
  const int N = static_cast<int>(u.size());
  if (N < 2) throw Error(Errc::GridError, "generalized Vandermonde ratio needs N >= 2 nodes");
  const lcplx half = widen(s.value()) / 2.0L;
  LMatrix m(N, N);
  long double log_den = 0.0L;
  for (int i = 0; i < N; ++i) {
    const long double x = u[i];
    // row scaled by 1/u_i: (u^{-s/2-1}, 1, u, ..., u^{N-2})
    m(i, 0) = pow_neg(x, half + 1.0L);
    long double p = 1.0L;
    for (int k = 1; k < N; ++k) {
      m(i, k) = p;
      p *= x;
    }
    log_den -= std::log(x);
    for (int j = i + 1; j < N; ++j) log_den += std::log(static_cast<long double>(u[j]) - x);
  }
  const lcplx num = lu_det(m).det;
  return narrow(num * std::exp(-log_den));
}

cplx alternating_sum(SParam s, const OrderedGrid& u) {
  const lcplx half = widen(s.value()) / 2.0L;
  lcplx sum = 0.0L;
  for (std::size_t n = 0; n < u.size(); ++n) {
    const long double un = u[n];
    long double prod = 1.0L;
    for (std::size_t j = 0; j < u.size(); ++j)
      if (j != n) prod *= u[j] / std::abs(static_cast<long double>(u[j]) - un);
    const lcplx term = pow_neg(un, half) * prod;
    sum += (n % 2 == 0) ? term : -term;
  }
  return narrow(sum);
}

cplx detVs_direct(SParam s, int N) {
  if (N < 1) throw Error(Errc::DomainError, "detVs_direct requires N >= 1");
  const lcplx sl = widen(s.value());
  LMatrix m(N, N);
  for (int n = 1; n <= N; ++n) {
    const long double x = n;
    m(n - 1, 0) = pow_neg(x, sl);
    long double p = 1.0L;
    for (int k = 1; k < N; ++k) {
      p *= x * x;
      m(n - 1, k) = p;
    }
  }
  return narrow(lu_det(m).det);
}

cplx detVs_integral_quadrature(SParam s, int N, double rel_tol) {
  if (N != 2 && N != 3) throw Error(Errc::DomainError, "box quadrature is implemented for N = 2, 3 only");
  if (!(s.re() > -2.0)) throw Error(Errc::DomainError, "box quadrature requires Re s > -2");
  const cplx half = s.value() / 2.0;
  const quad::Options opt{rel_tol, 1e-300, 4000};
  auto factor = [&](double x, int n) { return pos_pow(x / (n * (n + 1.0)), half); };

  cplx integral;
  if (N == 2) {
    integral = quad::integrate([&](double x1) { return factor(x1, 1); }, 1.0, 4.0, opt);
  } else {
    integral = quad::integrate(
        [&](double x1) {
          const cplx f1 = factor(x1, 1);
          return f1 * quad::integrate([&](double x2) { return (x2 - x1) * factor(x2, 2); }, 4.0, 9.0, opt);
        },
        1.0, 4.0, opt);
  }
  const double fact = (N == 2) ? 1.0 : 2.0;  // (N-1)!
  return h_factor(s, N) * fact * integral;
}

TridiagCoeffs tridiag_coeffs(SParam s, int N, double guard) {
  if (N < 2) throw Error(Errc::DomainError, "tridiagonal form requires N >= 2");
  if (std::abs(s.value()) <= guard) throw Error(Errc::DomainError, "tridiagonal form undefined at s=0");
  const auto w = float_weights(N);
  const lcplx sl = widen(s.value());
  TridiagCoeffs c{N, s.value(), {}, {}};
  std::vector<lcplx> inv;
  for (int n = 2; n <= N; ++n) {
    const lcplx pw = pow_neg(static_cast<long double>(n), sl);
    if (n <= N - 1 && std::abs(pw - 1.0L) <= guard)
      throw Error(Errc::DomainError, "tridiagonal form undefined: " + std::to_string(n) + "^{-s} = 1");
    inv.push_back(2.0L * (*w)[n - 1] * (pw - 1.0L));
  }
  for (int n = 2; n <= N; ++n) {
    const lcplx b = (n == 2) ? inv[0] : inv[n - 2] / inv[n - 3];
    c.lambda_inv.push_back(narrow(inv[n - 2]));
    c.beta.push_back(narrow(b));
  }
  return c;
}

std::vector<cplx> delta_sequence(const TridiagCoeffs& c, cplx d0, cplx d1) {
  std::vector<cplx> d{d0, d1};
  for (int n = 2; n <= c.N; ++n) {
    const cplx b = c.beta_at(n);
    d.push_back((1.0 + b) * d[n - 1] - b * d[n - 2]);
  }
  return d;
}

EvalResult eta_tridiag(SParam s, int N, double guard) {
  const TridiagCoeffs c = tridiag_coeffs(s, N, guard);
  const auto d = delta_sequence(c, 0.0, 1.0);
  return {d.back() / 2.0, Method::tridiag, N, {}, {}};
}

cplx contfrac_value(const TridiagCoeffs& c, double breakdown) {
  const int N = c.N;
  cplx t = 1.0 + c.beta_at(N);
  for (int k = N - 1; k >= 2; --k) {
    if (std::abs(t) < breakdown)
      throw Error(Errc::ContFracBreakdown, "partial denominator vanishes at level " + std::to_string(k + 1));
    t = 1.0 + c.beta_at(k) - c.beta_at(k + 1) / t;
  }
  if (std::abs(t) < breakdown) throw Error(Errc::ContFracBreakdown, "partial denominator vanishes at level 2");
  return 1.0 - c.beta_at(2) / t;
}

EvalResult eta_contfrac(SParam s, int N, double guard, double breakdown) {
  const TridiagCoeffs c = tridiag_coeffs(s, N, guard);
  const cplx v = contfrac_value(c, breakdown);
  if (std::abs(v) < breakdown) throw Error(Errc::ContFracBreakdown, "continued fraction vanishes at level 1");
  return {1.0 / (2.0 * v), Method::contfrac, N, {{"inverse_re", v.real()}, {"inverse_im", v.imag()}}, {}};
}

}  // namespace altzeta
