#include "altzeta/sampling.hpp"

#include "altzeta/error.hpp"
#include "altzeta/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace altzeta {

bool InterlacedSample::interlaced() const {
  if (u.size() != x.size() + 1) return false;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (!(u[k] < x[k] && x[k] < u[k + 1])) return false;
  return true;
}

namespace {

const quad::Rule& rule_for(std::size_t points) {
  static const std::vector<quad::Rule> rules = [] {
    std::vector<quad::Rule> r;
    for (int q = 1; q <= 24; ++q) r.push_back(quad::gauss_legendre(q));
    return r;
  }();
  return points <= rules.size() ? rules[points - 1] : quad::gauss_legendre(static_cast<int>(points));
}

// p(t) = prod (t + c_j) prod (d_j - t), positive on (0, 1)
struct ConditionalPoly {
  std::vector<double> below;  // c_j >= 0
  std::vector<double> above;  // d_j >= 1

  double operator()(double t) const {
    double p = 1.0;
    for (double c : below) p *= t + c;
    for (double d : above) p *= d - t;
    return p;
  }
  std::size_t degree() const { return below.size() + above.size(); }
};

// F(t) = int_0^t p, exact for deg p <= 2q - 1
double cdf(const ConditionalPoly& p, const quad::Rule& r, double t) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * p(0.5 * t * (1.0 + r.x[i]));
  return 0.5 * t * s;
}

void check_grid(const OrderedGrid& u) {
  if (u.size() < 2) throw Error(Errc::GridError, "Dixon-Anderson sampling needs N >= 2 grid points");
}

}  // namespace

void gibbs_update_coordinate(std::vector<double>& x, const std::vector<double>& u, std::size_t k, double uniform) {
  const double lo = u[k], width = u[k + 1] - u[k];
  ConditionalPoly p;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j < k) p.below.push_back((lo - x[j]) / width);
    else if (j > k) p.above.push_back((x[j] - lo) / width);
  }
  double t;
  if (p.degree() == 0) {
    t = uniform;
  } else {
    const quad::Rule& r = rule_for(p.degree() / 2 + 1);
    const double target = uniform * cdf(p, r, 1.0);
    double a = 0.0, b = 1.0;
    t = uniform;
    for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
      const double f = cdf(p, r, t) - target;
      if (f > 0.0) b = t;
      else a = t;
      const double dens = p(t);
      double next = dens > 0.0 ? t - f / dens : 0.5 * (a + b);
      if (!(next > a && next < b)) next = 0.5 * (a + b);
      if (std::abs(next - t) < 1e-13) {
        t = next;
        break;
      }
      t = next;
    }
  }
  double xk = lo + width * t;
  if (!(xk > u[k])) xk = std::nextafter(u[k], u[k + 1]);
  if (!(xk < u[k + 1])) xk = std::nextafter(u[k + 1], u[k]);
  x[k] = xk;
}

DixonAndersonGibbs::DixonAndersonGibbs(const OrderedGrid& u, const SamplerConfig& cfg, CounterRng rng)
    : u_(u.values()), thinning_(cfg.thinning), rng_(rng) {
  check_grid(u);
  validate(cfg);
  x_.resize(u_.size() - 1);
  for (std::size_t k = 0; k < x_.size(); ++k) x_[k] = 0.5 * (u_[k] + u_[k + 1]);
  for (int i = 0; i < cfg.burn_in; ++i) sweep();
}

void DixonAndersonGibbs::sweep() {
  for (std::size_t k = 0; k < x_.size(); ++k) gibbs_update_coordinate(x_, u_, k, rng_.uniform());
}

const std::vector<double>& DixonAndersonGibbs::next() {
  for (int i = 0; i < thinning_; ++i) sweep();
  return x_;
}

void DixonAndersonGibbs::reset_grid(const std::vector<double>& u) { u_ = u; }

DixonAndersonRejection::DixonAndersonRejection(const OrderedGrid& u, CounterRng rng)
    : u_(u.values()), rng_(rng) {
  check_grid(u);
  if (u.size() > kMaxN)
    throw Error(Errc::CapExceeded, "rejection sampler limited to N <= 6, got N = " + std::to_string(u.size()));
  x_.resize(u_.size() - 1);
  bound_ = 1.0;
  for (std::size_t j = 0; j < x_.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) bound_ *= u_[j + 1] - u_[i];
}

const std::vector<double>& DixonAndersonRejection::next() {
  for (;;) {
    ++proposals_;
    for (std::size_t k = 0; k < x_.size(); ++k) x_[k] = u_[k] + (u_[k + 1] - u_[k]) * rng_.uniform();
    double v = 1.0;
    for (std::size_t j = 0; j < x_.size(); ++j)
      for (std::size_t i = 0; i < j; ++i) v *= x_[j] - x_[i];
    if (rng_.uniform() * bound_ < v) {
      ++accepted_;
      return x_;
    }
  }
}

std::vector<std::vector<double>> gibbs_samples(const OrderedGrid& u, const SamplerConfig& cfg, long n,
                                               std::uint64_t stream) {
  DixonAndersonGibbs chain(u, cfg, CounterRng(cfg.seed, stream));
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) out.push_back(chain.next());
  return out;
}

std::vector<std::vector<double>> rejection_samples(const OrderedGrid& u, std::uint64_t seed, long n,
                                                   double* acceptance_rate) {
  DixonAndersonRejection sampler(u, CounterRng(seed, 0));
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) out.push_back(sampler.next());
  if (acceptance_rate) *acceptance_rate = sampler.acceptance_rate();
  return out;
}

namespace {

// Runs a Gibbs chain per chunk and maps each x to scale * exp(half * g(x)).
MCEstimate chain_estimate(const OrderedGrid& u, cplx half, cplx scale, const SamplerConfig& cfg, long n,
                          const std::function<double(const std::vector<double>&)>& g, std::string method) {
  validate(cfg);
  return run_chunks(
      n, cfg,
      [&](CounterRng& rng, long count, std::vector<cplx>& out) {
        DixonAndersonGibbs chain(u, cfg, rng);
        for (long i = 0; i < count; ++i) out.push_back(scale * std::exp(half * g(chain.next())));
      },
      std::move(method));
}

}  // namespace

MCEstimate eta_mc(SParam s, int N, const SamplerConfig& cfg, long n) {
  if (N < 2) throw Error(Errc::DomainError, "eta_mc requires N >= 2");
  s.require_off_poles(N);
  validate(cfg);
  if (s.is_zero()) return exact_estimate(0.5, n, cfg.seed, "eta_mc");
  std::vector<double> log_norm(static_cast<std::size_t>(N - 1));
  for (int k = 1; k < N; ++k) log_norm[k - 1] = std::log(static_cast<double>(k) * (k + 1));
  auto g = [&](const std::vector<double>& x) {
    double l = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) l += std::log(x[k]) - log_norm[k];
    return l;
  };
  return chain_estimate(OrderedGrid::squares(N), s.value() / 2.0, h_factor(s, N) / 2.0, cfg, n, g, "eta_mc");
}

cplx psi_closed(int n, int N, SParam s) {
  if (N < 1 || n < 1 || n > N)
    throw Error(Errc::DomainError, "psi_closed needs 1 <= n <= N, got n = " + std::to_string(n));
  const double a = std::abs(static_cast<double>((*float_weights(N))[n - 1]));
  const cplx half = s.value() / 2.0;
  const double N_ = N;
  return std::exp(half * std::log(N_ / (a * n * n))) * gamma_ratio(N_, N_ + half);
}

cplx psi_zero_target(int N, SParam s) {
  s.require_off_poles(N);
  const cplx half = s.value() / 2.0;
  if (is_nonpositive_integer(1.0 + half)) return 0.0;
  return 2.0 * std::exp(half * std::numbers::ln2) * eta_series(s, N).value /
         (h_factor(s, N) * gamma(1.0 + half));
}

MCEstimate psi_mc(int x, int N, SParam s, const SamplerConfig& cfg, long n) {
  if (N < 2) throw Error(Errc::DomainError, "psi_mc requires N >= 2");
  if (x < 0 || x > N) throw Error(Errc::DomainError, "psi_mc needs x in {0, ..., N}");
  validate(cfg);
  const cplx half = s.value() / 2.0;
  if (s.is_zero()) return exact_estimate(1.0, n, cfg.seed, "psi_mc");
  if (is_nonpositive_integer(1.0 + half)) return exact_estimate(0.0, n, cfg.seed, "psi_mc");
  const double span = static_cast<double>(N) * N - 1.0;
  const double b = (static_cast<double>(x) * x - 1.0) / span;
  const double log_c = (N - 1) * std::log(span) - std::lgamma(N + 1.0) - std::lgamma(static_cast<double>(N));
  const cplx scale = std::exp(half * (std::numbers::ln2 + log_c) - log_gamma(1.0 + half));
  auto g = [&](const std::vector<double>& xs) {
    double l = 0.0;
    for (double xv : xs) l += std::log(std::abs((xv - 1.0) / span - b));
    return l;
  };
  return chain_estimate(OrderedGrid::squares(N), half, scale, cfg, n, g, "psi_mc");
}

cplx exp_moment_closed(const OrderedGrid& u, SParam s) {
  const cplx half = s.value() / 2.0;
  cplx sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double prod = 1.0;
    for (std::size_t j = 0; j < u.size(); ++j)
      if (j != i) prod *= u[j] / (u[j] - u[i]);
    sum += pos_pow(u[i], -half) * prod;
  }
  return gamma(1.0 + half) * sum;
}

MCEstimate exp_moment_mc(const OrderedGrid& u, SParam s, const SamplerConfig& cfg, long n, double margin) {
  const double N = static_cast<double>(u.size());
  if (!(s.re() > -2.0 * N + margin))
    throw Error(Errc::DomainError, "exponential moment needs Re s > -2N + " + std::to_string(margin));
  validate(cfg);
  if (s.is_zero()) return exact_estimate(1.0, n, cfg.seed, "exp_moment_mc");
  const cplx half = s.value() / 2.0;
  const std::vector<double>& nodes = u.values();
  return run_chunks(
      n, cfg,
      [&](CounterRng& rng, long count, std::vector<cplx>& out) {
        for (long i = 0; i < count; ++i) {
          double t = 0.0;
          for (double un : nodes) t += rng.exponential() / un;
          out.push_back(std::exp(half * std::log(t)));
        }
      },
      "exp_moment_mc");
}

MCEstimate ratio_mc(const OrderedGrid& u, SParam s, const SamplerConfig& cfg, long n) {
  check_grid(u);
  validate(cfg);
  if (s.is_zero()) return exact_estimate(1.0, n, cfg.seed, "ratio_mc");
  const int N = static_cast<int>(u.size());
  double log_u = 0.0;
  for (double v : u.values()) log_u += std::log(v);
  auto g = [&](const std::vector<double>& x) {
    double l = -log_u;
    for (double v : x) l += std::log(v);
    return l;
  };
  const cplx half = s.value() / 2.0;
  const cplx scale = h_factor(s, N) * std::exp(half * std::log(static_cast<double>(N)));
  return chain_estimate(u, half, scale, cfg, n, g, "ratio_mc");
}

}  // namespace altzeta
