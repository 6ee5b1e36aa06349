#pragma once

// Dixon-Anderson (alpha = 1) sampling on the interlacing region
//   u_1 < x_1 < u_2 < ... < x_{N-1} < u_N,  density prop. to prod_{i<j} (x_j - x_i),
// and the Monte Carlo estimators built on it.

#include "altzeta/determinants.hpp"
#include "altzeta/eta_core.hpp"
#include "altzeta/mc.hpp"

#include <vector>

namespace altzeta {

struct InterlacedSample {
  std::vector<double> x;
  std::vector<double> u;
  bool interlaced() const;
};

/// Draws x_k from its exact conditional on (u_k, u_{k+1}), the other x fixed.
/// The conditional density is the positive polynomial
/// prod_{j<k}(x - x_j) prod_{j>k}(x_j - x); its CDF is evaluated exactly by a
/// Gauss-Legendre rule of sufficient degree and inverted by bracketed Newton
/// iteration (bisection fallback) to 1e-12 in the unit variable.
void gibbs_update_coordinate(std::vector<double>& x, const std::vector<double>& u, std::size_t k, double uniform);

class DixonAndersonGibbs {
 public:
  /// Runs cfg.burn_in sweeps. Throws Errc::GridError when N < 2.
  DixonAndersonGibbs(const OrderedGrid& u, const SamplerConfig& cfg, CounterRng rng);

  /// Advances by cfg.thinning sweeps and returns the current x.
  const std::vector<double>& next();
  void sweep();
  /// Replaces the grid; x must still interlace with it.
  void reset_grid(const std::vector<double>& u);

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& u() const { return u_; }
  InterlacedSample sample() const { return {x_, u_}; }

 private:
  std::vector<double> u_;
  std::vector<double> x_;
  int thinning_;
  CounterRng rng_;
};

class DixonAndersonRejection {
 public:
  static constexpr std::size_t kMaxN = 6;
  /// Throws Errc::CapExceeded when N > 6, Errc::GridError when N < 2.
  DixonAndersonRejection(const OrderedGrid& u, CounterRng rng);

  const std::vector<double>& next();
  double acceptance_rate() const { return proposals_ ? static_cast<double>(accepted_) / proposals_ : 0.0; }
  long proposals() const { return proposals_; }

 private:
  std::vector<double> u_;
  std::vector<double> x_;
  double bound_;
  CounterRng rng_;
  long proposals_ = 0;
  long accepted_ = 0;
};

/// Collects n samples (x vectors) from one Gibbs chain seeded by (cfg.seed, stream).
std::vector<std::vector<double>> gibbs_samples(const OrderedGrid& u, const SamplerConfig& cfg, long n,
                                               std::uint64_t stream = 0);
std::vector<std::vector<double>> rejection_samples(const OrderedGrid& u, std::uint64_t seed, long n,
                                                   double* acceptance_rate = nullptr);

/// eta_N(s) = h_N(s)/2 E[prod_{n<N} (X_n / (n(n+1)))^{s/2}], X Dixon-Anderson on
/// (1, 4, ..., N^2). s = 0 returns exactly 1/2 without sampling.
/// Throws Errc::DomainError near -2k (k <= N-1) or when N < 2.
MCEstimate eta_mc(SParam s, int N, const SamplerConfig& cfg, long n);

/// psi_N(n; s) = (N / (|a_{n,N}| n^2))^{s/2} Gamma(N) / Gamma(N + s/2), 1 <= n <= N.
cplx psi_closed(int n, int N, SParam s);

/// Exact finite-N value of psi_N(0; s): 2^{1+s/2} eta_N(s) / (h_N(s) Gamma(1 + s/2)).
cplx psi_zero_target(int N, SParam s);

/// psi_N(x; s) = 2^{s/2} C_N^{s/2} / Gamma(1 + s/2) E[prod |Y_k - b|^{s/2}],
/// Y = (X - 1)/(N^2 - 1), b = (x^2 - 1)/(N^2 - 1),
/// C_N = (N^2 - 1)^{N-1} / (N! (N-1)!), X Dixon-Anderson on (1, ..., N^2).
MCEstimate psi_mc(int x, int N, SParam s, const SamplerConfig& cfg, long n);

/// Gamma(1 + s/2) sum_n u_n^{-s/2} prod_{j != n} u_j / (u_j - u_n).
cplx exp_moment_closed(const OrderedGrid& u, SParam s);

/// E[(sum eps_n / u_n)^{s/2}] with eps_n standard exponential.
/// Throws Errc::DomainError unless Re s > -2N + margin.
MCEstimate exp_moment_mc(const OrderedGrid& u, SParam s, const SamplerConfig& cfg, long n, double margin = 0.5);

/// V^{(s/2)}(u)/V^{(0)}(u) = h_N(s) N^{s/2} E[prod X_k^{s/2} / prod u_n^{s/2}].
MCEstimate ratio_mc(const OrderedGrid& u, SParam s, const SamplerConfig& cfg, long n);

}  // namespace altzeta
