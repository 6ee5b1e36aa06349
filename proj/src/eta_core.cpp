#include "altzeta/eta_core.hpp"

#include "altzeta/error.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <mutex>
#include <numbers>

namespace altzeta {

SParam::SParam(double re, double im) : re_(re), im_(im) {
  if (!std::isfinite(re) || !std::isfinite(im)) throw Error(Errc::DomainError, "s must be finite");
}

double SParam::pole_distance(int N) const {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= N - 1; ++k) best = std::min(best, std::abs(value() - cplx(-2.0 * k, 0.0)));
  return best;
}

void SParam::require_off_poles(int N, double guard) const {
  if (pole_distance(N) <= guard)
    throw Error(Errc::DomainError, "s is within " + std::to_string(guard) +
                                       " of an excluded point -2k, k <= N-1 = " + std::to_string(N - 1));
}

std::string to_string(Method m) {
  switch (m) {
    case Method::series: return "series";
    case Method::determinant: return "det";
    case Method::tridiag: return "tridiag";
    case Method::contfrac: return "contfrac";
    case Method::mc: return "mc";
    case Method::ensemble: return "ensemble";
  }
  return "unknown";
}

Rational weight_product_form(int n, int N) {
  Integer num = 1, den = 1;
  const long n2 = static_cast<long>(n) * n;
  for (long j = 1; j <= N; ++j) {
    if (j == n) continue;
    num *= j * j;
    den *= j * j - n2;
  }
  return Rational(num, 2 * den);
}

Rational weight_binomial_form(int n, int N) {
  Rational r(binomial(2 * N, N - n), binomial(2 * N, N));
  return (n % 2 == 1) ? r : Rational(-r);
}

WeightTable weights(int N, int cap) {
  if (N < 1) throw Error(Errc::DomainError, "weights require N >= 1");
  if (N > cap) throw Error(Errc::CapExceeded, "N = " + std::to_string(N) + " exceeds cap " + std::to_string(cap));
  std::vector<Rational> w(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    Rational product = weight_product_form(n, N);
    if (product != weight_binomial_form(n, N))
      throw std::logic_error("weight closed forms disagree at n=" + std::to_string(n));
    w[static_cast<std::size_t>(n - 1)] = std::move(product);
  }
  return WeightTable(N, std::move(w));
}

namespace {

std::vector<long double> compute_float_weights(int N) {
  std::vector<long double> w(static_cast<std::size_t>(N));
  if (N <= 170) {
    for (int n = 1; n <= N; ++n) w[n - 1] = to_double(weight_binomial_form(n, N));
    return w;
  }
  // log |a_{n,N}| = sum_{k=1}^n log((N-k+1)/(N+k)) = sum log1p(-(2k-1)/(N+k))
  long double log_abs = 0.0L;
  for (int n = 1; n <= N; ++n) {
    log_abs += std::log1p(-static_cast<long double>(2 * n - 1) / static_cast<long double>(N + n));
    const long double mag = std::exp(log_abs);
    w[n - 1] = (n % 2 == 1) ? mag : -mag;
  }
  return w;
}

}  // namespace

std::shared_ptr<const std::vector<long double>> float_weights(int N) {
  if (N < 1) throw Error(Errc::DomainError, "weights require N >= 1");
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const std::vector<long double>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[N];
  if (!slot) slot = std::make_shared<const std::vector<long double>>(compute_float_weights(N));
  return slot;
}

EvalResult eta_series(SParam s, int N) {
  if (N < 1) throw Error(Errc::DomainError, "eta_series requires N >= 1");
  const auto w = float_weights(N);
  const std::complex<long double> sl(s.re(), s.im());
  std::complex<long double> sum = 0.0L;
  for (int n = 1; n <= N; ++n) sum += (*w)[n - 1] * std::exp(-sl * std::log(static_cast<long double>(n)));
  return {cplx(static_cast<double>(sum.real()), static_cast<double>(sum.imag())), Method::series, N, {}, {}};
}

Rational eta_series_exact(int s, int N) {
  if (s > 0 || s % 2 != 0)
    throw Error(Errc::DomainError, "exact evaluation needs s in {0, -2, -4, ...}, got " + std::to_string(s));
  const WeightTable w = weights(N);
  const unsigned power = static_cast<unsigned>(-s);
  Rational sum = 0;
  for (int n = 1; n <= N; ++n) sum += w(n) * rpow(Rational(n), power);
  return sum;
}

cplx h_factor(SParam s, int N) {
  if (N < 1) throw Error(Errc::DomainError, "h_factor requires N >= 1");
  const std::complex<long double> half(s.re() / 2.0L, s.im() / 2.0L);
  std::complex<long double> prod = 1.0L;
  for (int n = 1; n <= N - 1; ++n) {
    const long double nn = n;
    prod *= (1.0L + half / nn) * std::exp(-half * std::log1p(1.0L / nn));
  }
  return {static_cast<double>(prod.real()), static_cast<double>(prod.imag())};
}

cplx gamma_product_partial(cplx z, long M) {
  if (is_nonpositive_integer(z)) throw Error(Errc::PoleError, "partial Gamma product has a pole at z");
  if (M < 1) throw Error(Errc::DomainError, "gamma_product_partial requires M >= 1");
  const std::complex<long double> zl(z.real(), z.imag());
  std::complex<long double> log_sum = -std::log(zl);
  for (long n = 1; n <= M; ++n) {
    const long double nn = static_cast<long double>(n);
    log_sum += zl * std::log1p(1.0L / nn) - std::log(1.0L + zl / nn);
  }
  const auto r = std::exp(log_sum);
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

namespace {

using Big = boost::multiprecision::cpp_bin_float_100;

struct BigComplex {
  Big re = 0, im = 0;
};

struct PowerTerm {
  BigComplex value;
  Big abs;
};

}  // namespace

cplx eta_reference(SParam s, const EtaReferenceOptions& opts) {
  constexpr int kMaxTerms = 1500;
  const Big sigma = s.re(), t = s.im();
  std::vector<PowerTerm> f;  // f_k = (k+1)^{-s}
  auto term_value = [&](std::size_t k) -> const PowerTerm& {
    while (f.size() <= k) {
      const Big L = boost::multiprecision::log(Big(f.size() + 1));
      const Big mag = boost::multiprecision::exp(-sigma * L);
      f.push_back({{mag * boost::multiprecision::cos(t * L), -mag * boost::multiprecision::sin(t * L)}, mag});
    }
    return f[k];
  };

  BigComplex sum;
  std::vector<Big> row{Big(1)};  // C(n, k)
  Big scale = 0.5;               // 2^{-n-1}
  int small_run = 0, converged_at = -1;
  BigComplex at_convergence;
  const Big tiny("1e-30");
  for (int n = 0; n < kMaxTerms; ++n) {
    BigComplex inner;
    Big magnitude = 0;
    for (int k = 0; k <= n; ++k) {
      const PowerTerm& fk = term_value(static_cast<std::size_t>(k));
      if (k % 2 == 0) {
        inner.re += row[k] * fk.value.re;
        inner.im += row[k] * fk.value.im;
      } else {
        inner.re -= row[k] * fk.value.re;
        inner.im -= row[k] * fk.value.im;
      }
      magnitude += row[k] * fk.abs;
    }
    const BigComplex term{inner.re * scale, inner.im * scale};
    sum.re += term.re;
    sum.im += term.im;
    const Big abs_sum = boost::multiprecision::sqrt(sum.re * sum.re + sum.im * sum.im);
    const Big abs_term = boost::multiprecision::sqrt(term.re * term.re + term.im * term.im);
    // cancellation in the inner sum must stay well inside the working precision
    if (magnitude * scale * Big("1e-95") > Big("1e-25") * (abs_sum + tiny))
      throw Error(Errc::OracleUnstable, "Euler-transform inner sums exceed working precision");
    if (converged_at < 0) {
      small_run = (abs_term <= tiny * (abs_sum + tiny)) ? small_run + 1 : 0;
      if (small_run >= 3) {
        converged_at = n;
        at_convergence = sum;
      }
    } else if (n >= 2 * converged_at + 1) {
      break;
    }
    std::vector<Big> next(row.size() + 1);
    next.front() = next.back() = 1;
    for (std::size_t k = 1; k < row.size(); ++k) next[k] = row[k - 1] + row[k];
    row = std::move(next);
    scale /= 2;
    if (n == kMaxTerms - 1) throw Error(Errc::OracleUnstable, "Euler transform did not converge");
  }

  const cplx value(sum.re.convert_to<double>(), sum.im.convert_to<double>());
  const cplx first(at_convergence.re.convert_to<double>(), at_convergence.im.convert_to<double>());
  if (std::abs(value - first) > opts.consistency_tol * std::max(1.0, std::abs(value)))
    throw Error(Errc::OracleUnstable, "doubling the number of terms moved the value");

  if (s.im() == 0.0 && s.re() > 0.0 && std::abs(s.re() - 1.0) > 1e-4) {
    const double x = s.re();
    const double via_zeta = (1.0 - std::pow(2.0, 1.0 - x)) * std::riemann_zeta(x);
    if (std::abs(via_zeta - value.real()) > opts.zeta_tol * std::abs(value.real()))
      throw Error(Errc::OracleUnstable, "disagrees with (1 - 2^{1-s}) zeta(s)");
  }
  return value;
}

}  // namespace altzeta
