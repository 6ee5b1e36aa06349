#include "altzeta/ensembles.hpp"

#include "altzeta/error.hpp"
#include "altzeta/quadrature.hpp"
#include "altzeta/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

#include <cmath>
#include <functional>
#include <numeric>

namespace altzeta {

EnsembleSpec::EnsembleSpec(std::variant<Jacobi, Laguerre> kind, int N) : kind_(kind), N_(N) {
  if (N < 1) throw Error(Errc::DomainError, "ensemble size N must be >= 1");
  if (const auto* j = std::get_if<Jacobi>(&kind_)) {
    if (!(j->a > 0.0) || !(j->b > 0.0)) throw Error(Errc::DomainError, "Jacobi parameters need a, b > 0");
  } else {
    const auto& l = std::get<Laguerre>(kind_);
    if (!(l.a > 0.0) || !(l.theta > 0.0)) throw Error(Errc::DomainError, "Laguerre parameters need a, theta > 0");
  }
}

double EnsembleSpec::a() const {
  return std::visit([](const auto& k) { return k.a; }, kind_);
}

double EnsembleSpec::log_weight(double u) const {
  constexpr double ninf = -std::numeric_limits<double>::infinity();
  if (const auto* j = std::get_if<Jacobi>(&kind_)) {
    if (!(u > 0.0 && u < 1.0)) return ninf;
    return (j->a - 1.0) * std::log(u) + (j->b - 1.0) * std::log1p(-u);
  }
  const auto& l = std::get<Laguerre>(kind_);
  if (!(u > 0.0) || !std::isfinite(u)) return ninf;
  return (l.a - 1.0) * std::log(u) - u / l.theta;
}

std::string EnsembleSpec::describe() const {
  if (const auto* j = std::get_if<Jacobi>(&kind_)) return fmt::format("jacobi(N={}, a={}, b={})", N_, j->a, j->b);
  const auto& l = std::get<Laguerre>(kind_);
  return fmt::format("laguerre(N={}, a={}, theta={})", N_, l.a, l.theta);
}

double selberg_log(int N, double a, double b) {
  if (N < 1 || !(a > 0.0) || !(b > 0.0)) throw Error(Errc::DomainError, "Selberg integral needs N >= 1, a, b > 0");
  double s = 0.0;
  for (int n = 0; n < N; ++n)
    s += std::lgamma(a + n) + std::lgamma(b + n) + std::lgamma(2.0 + n) - std::lgamma(a + b - 1.0 + N + n);
  return s;
}

double selberg_value(int N, double a, double b) { return std::exp(selberg_log(N, a, b)); }

double laguerre_norm_log(int N, double a, double theta, LaguerreExponent e) {
  if (N < 1 || !(a > 0.0) || !(theta > 0.0)) throw Error(Errc::DomainError, "Laguerre norm needs N >= 1, a, theta > 0");
  const double exponent = (e == LaguerreExponent::homogeneous) ? (a + N - 1.0) * N : (a + N) * N;
  double s = exponent * std::log(theta);
  for (int n = 0; n < N; ++n) s += std::lgamma(a + n) + std::lgamma(2.0 + n);
  return s;
}

double laguerre_norm(int N, double a, double theta, LaguerreExponent e) {
  return std::exp(laguerre_norm_log(N, a, theta, e));
}

namespace {

double log_normalization(const EnsembleSpec& spec) {
  if (const auto* j = std::get_if<Jacobi>(&spec.kind())) return selberg_log(spec.N(), j->a, j->b);
  const auto& l = std::get<Laguerre>(spec.kind());
  return laguerre_norm_log(spec.N(), l.a, l.theta);
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

double normalization(const EnsembleSpec& spec) { return std::exp(log_normalization(spec)); }

DensityValue density_eval(const EnsembleSpec& spec, std::span<const double> u) {
  if (static_cast<int>(u.size()) != spec.N())
    throw Error(Errc::ArityError, fmt::format("density of N = {} evaluated at {} points", spec.N(), u.size()));
  double l = std::lgamma(spec.N() + 1.0) - log_normalization(spec);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double g = spec.log_weight(u[i]);
    if (g == kNegInf || (i > 0 && !(u[i] > u[i - 1]))) return {kNegInf, false};
    l += g;
    for (std::size_t j = 0; j < i; ++j) l += 2.0 * std::log(u[i] - u[j]);
  }
  return {l, true};
}

DensityValue joint_density_eval(const EnsembleSpec& spec, std::span<const double> x, std::span<const double> u) {
  if (static_cast<int>(u.size()) != spec.N() || x.size() + 1 != u.size())
    throw Error(Errc::ArityError, "joint density needs |u| = N and |x| = N - 1");
  double l = std::lgamma(spec.N() + 1.0) + std::lgamma(static_cast<double>(spec.N())) - log_normalization(spec);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double g = spec.log_weight(u[i]);
    if (g == kNegInf || (i > 0 && !(u[i] > u[i - 1]))) return {kNegInf, false};
    l += g;
    for (std::size_t j = 0; j < i; ++j) l += std::log(u[i] - u[j]);
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(u[k] < x[k] && x[k] < u[k + 1])) return {kNegInf, false};
    for (std::size_t j = 0; j < k; ++j) l += std::log(x[k] - x[j]);
  }
  return {l, true};
}

namespace {

// Symmetric random walk reflected into (lo, hi); hi may be +inf.
double reflect(double y, double lo, double hi) {
  if (std::isinf(hi)) return y < lo ? 2.0 * lo - y : y;
  const double w = hi - lo;
  double z = std::fmod(y - lo, 2.0 * w);
  if (z < 0.0) z += 2.0 * w;
  if (z > w) z = 2.0 * w - z;
  return lo + z;
}

// log g(y) + power * sum_{j != k} log |y - u_j|
double local_log_density(const EnsembleSpec& spec, const std::vector<double>& u, std::size_t k, double y,
                         double power) {
  double l = spec.log_weight(y);
  if (l == kNegInf) return l;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (j == k) continue;
    const double d = std::abs(y - u[j]);
    if (d == 0.0) return kNegInf;
    l += power * std::log(d);
  }
  return l;
}

std::vector<double> initial_grid(const EnsembleSpec& spec) {
  const int N = spec.N();
  std::vector<double> u(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) {
    if (const auto* l = std::get_if<Laguerre>(&spec.kind())) u[k] = l->theta * (l->a + 2.0 * k + 0.5);
    else u[k] = (k + 1.0) / (N + 1.0);
  }
  return u;
}

double initial_step(const EnsembleSpec& spec) {
  if (const auto* l = std::get_if<Laguerre>(&spec.kind())) return l->theta;
  return 0.5 / (spec.N() + 1.0);
}

void tune(std::vector<double>& step, std::vector<long>& tries, std::vector<long>& accepts) {
  for (std::size_t k = 0; k < step.size(); ++k) {
    if (tries[k] == 0) continue;
    const double rate = static_cast<double>(accepts[k]) / tries[k];
    if (rate > 0.5) step[k] *= 1.5;
    else if (rate < 0.3) step[k] /= 1.5;
    tries[k] = accepts[k] = 0;
  }
}

}  // namespace

EnsembleSampler::EnsembleSampler(const EnsembleSpec& spec, const SamplerConfig& cfg, CounterRng rng)
    : spec_(spec), thinning_(cfg.thinning), rng_(rng) {
  validate(cfg);
  if (spec.N() > kMaxN)
    throw Error(Errc::CapExceeded, fmt::format("ensemble sampling limited to N <= {}", kMaxN));
  u_ = initial_grid(spec);
  step_.assign(u_.size(), initial_step(spec));
  tries_.assign(u_.size(), 0);
  accepts_.assign(u_.size(), 0);
  for (int i = 1; i <= kTuneSweeps; ++i) {
    sweep();
    if (i % 20 == 0) tune(step_, tries_, accepts_);
  }
  for (int i = 0; i < cfg.burn_in; ++i) sweep();
  total_tries_ = total_accepts_ = 0;
}

bool EnsembleSampler::sweep() {
  bool moved = false;
  const std::size_t N = u_.size();
  for (std::size_t k = 0; k < N; ++k) {
    const double lo = k > 0 ? u_[k - 1] : 0.0;
    const double hi = k + 1 < N ? u_[k + 1] : spec_.upper();
    const double y = reflect(u_[k] + step_[k] * (2.0 * rng_.uniform() - 1.0), lo, hi);
    const double diff = local_log_density(spec_, u_, k, y, 2.0) - local_log_density(spec_, u_, k, u_[k], 2.0);
    ++tries_[k];
    ++total_tries_;
    if (y > lo && y < hi && std::log(rng_.uniform()) < diff) {
      u_[k] = y;
      ++accepts_[k];
      ++total_accepts_;
      moved = true;
    }
  }
  return moved;
}

const std::vector<double>& EnsembleSampler::next() {
  for (int i = 0; i < thinning_; ++i) sweep();
  return u_;
}

ChainDiagnostics EnsembleSampler::diagnostics() const {
  return {total_tries_ ? static_cast<double>(total_accepts_) / total_tries_ : 0.0, step_};
}

JointSampler::JointSampler(const EnsembleSpec& spec, const SamplerConfig& cfg, CounterRng rng)
    : spec_(spec), thinning_(cfg.thinning), rng_(rng) {
  validate(cfg);
  if (spec.N() > EnsembleSampler::kMaxN)
    throw Error(Errc::CapExceeded, fmt::format("ensemble sampling limited to N <= {}", EnsembleSampler::kMaxN));
  u_ = initial_grid(spec);
  x_.resize(u_.size() - 1);
  for (std::size_t k = 0; k < x_.size(); ++k) x_[k] = 0.5 * (u_[k] + u_[k + 1]);
  step_.assign(u_.size(), initial_step(spec));
  coord_tries_.assign(u_.size(), 0);
  coord_accepts_.assign(u_.size(), 0);
  for (int i = 1; i <= EnsembleSampler::kTuneSweeps; ++i) {
    sweep(true);
    if (i % 20 == 0) tune(step_, coord_tries_, coord_accepts_);
  }
  for (int i = 0; i < cfg.burn_in; ++i) sweep(false);
  tries_ = accepts_ = 0;
}

void JointSampler::sweep(bool tune_steps) {
  const std::size_t N = u_.size();
  for (std::size_t k = 0; k < x_.size(); ++k) gibbs_update_coordinate(x_, u_, k, rng_.uniform());
  for (std::size_t k = 0; k < N; ++k) {
    const double lo = k > 0 ? x_[k - 1] : 0.0;
    const double hi = k + 1 < N ? x_[k] : spec_.upper();
    const double y = reflect(u_[k] + step_[k] * (2.0 * rng_.uniform() - 1.0), lo, hi);
    const double diff = local_log_density(spec_, u_, k, y, 1.0) - local_log_density(spec_, u_, k, u_[k], 1.0);
    ++tries_;
    if (tune_steps) ++coord_tries_[k];
    if (y > lo && y < hi && std::log(rng_.uniform()) < diff) {
      u_[k] = y;
      ++accepts_;
      if (tune_steps) ++coord_accepts_[k];
    }
  }
}

void JointSampler::next() {
  for (int i = 0; i < thinning_; ++i) sweep(false);
}

std::vector<std::vector<double>> ensemble_samples(const EnsembleSpec& spec, const SamplerConfig& cfg, long n,
                                                  std::uint64_t stream, ChainDiagnostics* diag) {
  EnsembleSampler chain(spec, cfg, CounterRng(cfg.seed, stream));
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) out.push_back(chain.next());
  if (diag) *diag = chain.diagnostics();
  return out;
}

cplx avg_ratio_closed(const EnsembleSpec& spec, SParam s, GammaArgument g) {
  const cplx half = s.value() / 2.0;
  const double a = spec.a();
  if (!(a - half.real() > 0.0)) throw Error(Errc::DomainError, "averaged ratio requires Re(a - s/2) > 0");
  const int N = spec.N();
  const cplx pre = (g == GammaArgument::half_s) ? h_factor(s, N) : 2.0 * h_factor(2.0 * s.value(), N);
  if (const auto* j = std::get_if<Jacobi>(&spec.kind())) {
    const double c = j->a + j->b - 1.0 + N;
    return pre * std::exp(half * std::log(static_cast<double>(N)) + log_gamma(c) + log_gamma(a - half) -
                          log_gamma(a - half + (j->b - 1.0 + N)) - log_gamma(a));
  }
  const auto& l = std::get<Laguerre>(spec.kind());
  return pre * std::exp(half * std::log(N / l.theta) + log_gamma(a - half) - log_gamma(a));
}

AvgRatioEstimate avg_ratio_mc(const EnsembleSpec& spec, SParam s, const SamplerConfig& cfg, long n) {
  validate(cfg);
  const int N = spec.N();
  if (N > EnsembleSampler::kMaxN)
    throw Error(Errc::CapExceeded, fmt::format("ensemble sampling limited to N <= {}", EnsembleSampler::kMaxN));
  avg_ratio_closed(spec, s);  // domain check
  AvgRatioEstimate r;
  if (s.is_zero()) {
    r.alternating = exact_estimate(1.0, n, cfg.seed, "avg_ratio_alternating");
    r.joint = exact_estimate(1.0, n, cfg.seed, "avg_ratio_joint");
    return r;
  }
  r.alternating = run_chunks(
      n, cfg,
      [&](CounterRng& rng, long count, std::vector<cplx>& out) {
        EnsembleSampler chain(spec, cfg, rng);
        for (long i = 0; i < count; ++i) out.push_back(alternating_sum(s, OrderedGrid(chain.next(), 0.0)));
      },
      "avg_ratio_alternating");

  const cplx half = s.value() / 2.0;
  const cplx scale = h_factor(s, N) * std::exp(half * std::log(static_cast<double>(N)));
  r.joint = run_chunks(
      n, cfg,
      [&](CounterRng& rng, long count, std::vector<cplx>& out) {
        JointSampler chain(spec, cfg, rng);
        for (long i = 0; i < count; ++i) {
          chain.next();
          double l = 0.0;
          for (double v : chain.x()) l += std::log(v);
          for (double v : chain.u()) l -= std::log(v);
          out.push_back(scale * std::exp(half * l));
        }
      },
      "avg_ratio_joint");

  // diagnostics from dedicated short chains on streams no chunk uses
  constexpr std::uint64_t kDiagStream = 0xD1A6'0000'0000ULL;
  ChainDiagnostics diag;
  const auto trace = ensemble_samples(spec, cfg, 4000, kDiagStream, &diag);
  std::vector<double> sums;
  for (const auto& u : trace) sums.push_back(std::accumulate(u.begin(), u.end(), 0.0));
  r.ensemble_acceptance = diag.acceptance_rate;
  r.autocorr_time = stats::integrated_autocorr_time(sums);
  JointSampler joint(spec, cfg, CounterRng(cfg.seed, kDiagStream + 1));
  for (int i = 0; i < 4000; ++i) joint.next();
  r.joint_acceptance = joint.acceptance_rate();
  return r;
}

cplx corollary_closed(const EnsembleSpec& spec, SParam s, GammaArgument g) {
  return normalization(spec) * avg_ratio_closed(spec, s, g);
}

double laguerre_truncation(const EnsembleSpec& spec, double extra_power, double tail_tol) {
  const auto& l = std::get<Laguerre>(spec.kind());
  const double p = l.a + extra_power;
  double T = l.theta * (p + 10.0);
  while (boost::math::gamma_q(p, T / l.theta) > tail_tol) T *= 1.25;
  return T;
}

namespace {

using CubeFn = std::function<cplx(const std::vector<double>&)>;

struct Axis {
  double upper;
  double ca;  // behaviour (u - 0)^{ca-1} at the lower end
  double cb;  // behaviour (upper - u)^{cb-1} at the upper end
};

Axis axis_for(const EnsembleSpec& spec, double lower_shift, double extra_power, double tail_tol) {
  const double ca = std::max(spec.a() - lower_shift, 1e-3);
  if (const auto* j = std::get_if<Jacobi>(&spec.kind())) return {1.0, ca, j->b};
  return {laguerre_truncation(spec, extra_power, tail_tol), ca, 1.0};
}

cplx cube_integral(int N, const Axis& axis, const CubeFn& f, double rel_tol) {
  std::vector<double> u(static_cast<std::size_t>(N));
  const quad::Options opt{rel_tol, 1e-300, 8000};
  std::function<cplx(int)> level = [&](int d) -> cplx {
    if (d == N) return f(u);
    return quad::integrate_endpoint(
        [&](double v) {
          u[d] = v;
          return level(d + 1);
        },
        0.0, axis.upper, axis.ca, axis.cb, opt);
  };
  return level(0);
}

// det of the k x k matrix with rows (u_i^{-s/2}, u_i, ..., u_i^{k-1}); k <= 3
cplx generalized_vandermonde(const std::vector<double>& u, cplx half) {
  const std::size_t k = u.size();
  auto first = [&](std::size_t i) { return pos_pow(u[i], -half); };
  if (k == 1) return first(0);
  if (k == 2) return first(0) * u[1] - first(1) * u[0];
  // columns (f, u, u^2)
  cplx d = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = (i + 1) % 3, l = (i + 2) % 3;
    d += first(i) * (u[j] * u[l] * u[l] - u[l] * u[j] * u[j]);
  }
  return d;
}

double vandermonde(const std::vector<double>& u) {
  double v = 1.0;
  for (std::size_t j = 0; j < u.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) v *= u[j] - u[i];
  return v;
}

double log_weights(const EnsembleSpec& spec, const std::vector<double>& u) {
  double l = 0.0;
  for (double v : u) l += spec.log_weight(v);
  return l;
}

void require_small(const EnsembleSpec& spec, int max_n) {
  if (spec.N() > max_n)
    throw Error(Errc::DomainError, fmt::format("quadrature oracle implemented for N <= {}", max_n));
}

}  // namespace

cplx corollary_integral_quadrature(const EnsembleSpec& spec, SParam s, const CubeQuadOptions& opt) {
  require_small(spec, 3);
  const cplx half = s.value() / 2.0;
  if (!(spec.a() - half.real() > 0.0)) throw Error(Errc::DomainError, "integral requires Re(a - s/2) > 0");
  const Axis axis = axis_for(spec, std::max(0.0, half.real()), 2.0 * spec.N() + std::abs(s.value()), opt.tail_tol);
  return cube_integral(
      spec.N(), axis,
      [&](const std::vector<double>& u) {
        const double lw = log_weights(spec, u);
        if (lw == kNegInf) return cplx(0.0);
        return generalized_vandermonde(u, half) * vandermonde(u) * std::exp(lw);
      },
      opt.rel_tol);
}

double normalization_quadrature(const EnsembleSpec& spec, const CubeQuadOptions& opt) {
  require_small(spec, 3);
  const Axis axis = axis_for(spec, 0.0, 2.0 * spec.N(), opt.tail_tol);
  return cube_integral(
             spec.N(), axis,
             [&](const std::vector<double>& u) {
               const double lw = log_weights(spec, u);
               if (lw == kNegInf) return cplx(0.0);
               const double v = vandermonde(u);
               return cplx(v * v * std::exp(lw));
             },
             opt.rel_tol)
      .real();
}

namespace {

// integral over 0 < u_1 < ... < u_N < upper, N <= 2
cplx ordered_integral(const EnsembleSpec& spec, const Axis& axis, const std::function<cplx(const std::vector<double>&)>& f,
                      double rel_tol) {
  const quad::Options opt{rel_tol, 1e-300, 8000};
  if (spec.N() == 1) return cube_integral(1, axis, f, rel_tol);
  std::vector<double> u(2);
  return quad::integrate_endpoint(
      [&](double u2) {
        return quad::integrate_endpoint(
            [&](double u1) {
              u[0] = u1;
              u[1] = u2;
              return f(u);
            },
            0.0, u2, axis.ca, 1.0, opt);
      },
      0.0, axis.upper, 1.0, axis.cb, opt);
}

}  // namespace

cplx ordered_expectation_quadrature(const EnsembleSpec& spec, const std::function<cplx(const std::vector<double>&)>& f,
                                    double lower_shift, const CubeQuadOptions& opt) {
  require_small(spec, 2);
  const Axis axis = axis_for(spec, lower_shift, 2.0 * spec.N() + 2.0 * std::abs(lower_shift) + 2.0, opt.tail_tol);
  return ordered_integral(
      spec, axis,
      [&](const std::vector<double>& u) {
        const DensityValue d = density_eval(spec, u);
        if (!d.in_support) return cplx(0.0);
        return std::exp(d.log_density) * f(u);
      },
      opt.rel_tol);
}

cplx avg_ratio_quadrature(const EnsembleSpec& spec, SParam s, const CubeQuadOptions& opt) {
  const cplx half = s.value() / 2.0;
  if (!(spec.a() - half.real() > 0.0)) throw Error(Errc::DomainError, "averaged ratio requires Re(a - s/2) > 0");
  return ordered_expectation_quadrature(
      spec, [&](const std::vector<double>& u) { return alternating_sum(s, OrderedGrid(u, 0.0)); },
      std::max(0.0, half.real()), opt);
}

double density_mass_quadrature(const EnsembleSpec& spec, const CubeQuadOptions& opt) {
  return ordered_expectation_quadrature(spec, [](const std::vector<double>&) { return cplx(1.0); }, 0.0, opt).real();
}

double marginal_x_quadrature(const EnsembleSpec& spec, double x, const CubeQuadOptions& opt) {
  if (spec.N() != 2) throw Error(Errc::DomainError, "marginal oracle implemented for N = 2");
  const Axis axis = axis_for(spec, 0.0, 4.0, opt.tail_tol);
  if (!(x > 0.0 && x < axis.upper)) return 0.0;
  const quad::Options qo{opt.rel_tol, 1e-300, 8000};
  const double xs[1] = {x};
  return quad::integrate_endpoint(
      [&](double u1) {
        return quad::integrate_endpoint(
            [&](double u2) {
              const double us[2] = {u1, u2};
              const DensityValue d = joint_density_eval(spec, xs, us);
              return d.in_support ? std::exp(d.log_density) : 0.0;
            },
            x, axis.upper, 1.0, axis.cb, qo);
      },
      0.0, x, axis.ca, 1.0, qo);
}

}  // namespace altzeta
