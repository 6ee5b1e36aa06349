#pragma once

// Jacobi (Selberg, g(u) = u^{a-1}(1-u)^{b-1} on (0,1)) and Laguerre
// (g(u) = u^{a-1} e^{-u/theta} on (0,inf)) ensembles with the squared
// Vandermonde interaction, their normalizations, MCMC samplers and the
// ensemble-averaged generalized Vandermonde ratio.

#include "altzeta/determinants.hpp"
#include "altzeta/mc.hpp"
#include "altzeta/sampling.hpp"

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <variant>

namespace altzeta {

struct Jacobi {
  double a;
  double b;
};
struct Laguerre {
  double a;
  double theta;
};

class EnsembleSpec {
 public:
  /// Throws Errc::DomainError for nonpositive parameters or N < 1.
  EnsembleSpec(std::variant<Jacobi, Laguerre> kind, int N);

  const std::variant<Jacobi, Laguerre>& kind() const { return kind_; }
  int N() const { return N_; }
  bool is_jacobi() const { return std::holds_alternative<Jacobi>(kind_); }
  double a() const;
  double upper() const { return is_jacobi() ? 1.0 : std::numeric_limits<double>::infinity(); }
  /// log g(u), -inf outside the one-point support.
  double log_weight(double u) const;
  std::string describe() const;

 private:
  std::variant<Jacobi, Laguerre> kind_;
  int N_;
};

/// prod_{n<N} Gamma(a+n) Gamma(b+n) Gamma(2+n) / Gamma(a+b-1+N+n): the
/// integral of V(u)^2 prod g over the unordered cube [0,1]^N.
double selberg_value(int N, double a, double b);
double selberg_log(int N, double a, double b);

enum class LaguerreExponent {
  /// theta^{(a+N-1)N}: the homogeneity degree of the integral.
  homogeneous,
  /// theta^{(a+N)N}: kept only to show the mismatch with quadrature.
  shifted,
};

/// theta^{e} prod_{n<N} Gamma(a+n) Gamma(2+n), the integral of V(u)^2 prod g
/// over (0, inf)^N.
double laguerre_norm(int N, double a, double theta, LaguerreExponent e = LaguerreExponent::homogeneous);
double laguerre_norm_log(int N, double a, double theta, LaguerreExponent e = LaguerreExponent::homogeneous);

/// Z_N for the spec (Selberg or Laguerre).
double normalization(const EnsembleSpec& spec);

struct DensityValue {
  double log_density;
  bool in_support;
};

/// log of N!/Z_N V(u)^2 prod g(u_n) on the ordered support.
DensityValue density_eval(const EnsembleSpec& spec, std::span<const double> u);

/// Joint density of (x, u): N! (N-1)!/Z_N V(u) prod g(u_n) prod_{i<j}(x_j - x_i)
/// on the interlacing region; its u-marginal is density_eval.
DensityValue joint_density_eval(const EnsembleSpec& spec, std::span<const double> x, std::span<const double> u);

struct ChainDiagnostics {
  double acceptance_rate = 0.0;
  std::vector<double> step;
};

/// Random-walk Metropolis on the ordered support, one coordinate at a time,
/// with uniform proposals reflected into (u_{k-1}, u_{k+1}). Step sizes are
/// tuned per coordinate for kTuneSweeps sweeps (target 30-50% acceptance),
/// then frozen before cfg.burn_in further sweeps.
class EnsembleSampler {
 public:
  static constexpr int kTuneSweeps = 200;
  static constexpr int kMaxN = 16;
  /// Throws Errc::CapExceeded when N > 16.
  EnsembleSampler(const EnsembleSpec& spec, const SamplerConfig& cfg, CounterRng rng);

  const std::vector<double>& next();
  ChainDiagnostics diagnostics() const;

 private:
  bool sweep();
  EnsembleSpec spec_;
  std::vector<double> u_;
  std::vector<double> step_;
  std::vector<long> tries_, accepts_;
  int thinning_;
  CounterRng rng_;
  long total_tries_ = 0, total_accepts_ = 0;
};

/// Markov chain on the joint (x, u) law: exact Gibbs updates for x given u,
/// Metropolis updates for each u_k inside (x_{k-1}, x_k).
class JointSampler {
 public:
  JointSampler(const EnsembleSpec& spec, const SamplerConfig& cfg, CounterRng rng);
  void next();
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& u() const { return u_; }
  double acceptance_rate() const { return tries_ ? static_cast<double>(accepts_) / tries_ : 0.0; }

 private:
  void sweep(bool tune);
  EnsembleSpec spec_;
  std::vector<double> u_, x_, step_;
  std::vector<long> coord_tries_, coord_accepts_;
  int thinning_;
  CounterRng rng_;
  long tries_ = 0, accepts_ = 0;
};

/// n ensemble samples from one chain seeded by (cfg.seed, stream).
std::vector<std::vector<double>> ensemble_samples(const EnsembleSpec& spec, const SamplerConfig& cfg, long n,
                                                  std::uint64_t stream = 0, ChainDiagnostics* diag = nullptr);

enum class GammaArgument {
  /// 2/(s Gamma_{N-1}(s/2)) = h_N(s), as in the integral representation.
  half_s,
  /// 2/(s Gamma_{N-1}(s)), the alternative reading; used for adjudication.
  full_s,
};

/// E[V^{(s/2)}(U)/V^{(0)}(U)] in closed form. Jacobi:
///   h_N(s) N^{s/2} Gamma(a+b-1+N) Gamma(a-s/2) / (Gamma(a-s/2+b-1+N) Gamma(a));
/// Laguerre: h_N(s) (N/theta)^{s/2} Gamma(a-s/2)/Gamma(a).
/// Throws Errc::DomainError unless Re(a - s/2) > 0.
cplx avg_ratio_closed(const EnsembleSpec& spec, SParam s, GammaArgument g = GammaArgument::half_s);

struct AvgRatioEstimate {
  MCEstimate alternating;  // (i) U from the ensemble chain, alternating_sum(s, U)
  MCEstimate joint;        // (ii) (X, U) from the joint chain, ratio integrand
  double ensemble_acceptance = 0.0;
  double joint_acceptance = 0.0;
  double autocorr_time = 0.0;
};

AvgRatioEstimate avg_ratio_mc(const EnsembleSpec& spec, SParam s, const SamplerConfig& cfg, long n);

/// Z_N avg_ratio_closed: the closed form of the cube integral of
/// V^{(s/2)}(u) V^{(0)}(u) prod g(u_n).
cplx corollary_closed(const EnsembleSpec& spec, SParam s, GammaArgument g = GammaArgument::half_s);

struct CubeQuadOptions {
  double rel_tol = 1e-9;
  /// Laguerre truncation: T is grown until the one-coordinate Gamma tail
  /// bound drops below this.
  double tail_tol = 1e-10;
};

/// Cube integral of V^{(s/2)}(u) V^{(0)}(u) prod g(u_n); N in {1, 2, 3}.
cplx corollary_integral_quadrature(const EnsembleSpec& spec, SParam s, const CubeQuadOptions& opt = {});

/// Cube integral of V(u)^2 prod g(u_n) (the normalization); N in {1, 2, 3}.
double normalization_quadrature(const EnsembleSpec& spec, const CubeQuadOptions& opt = {});

/// E[alternating_sum(s, U)] by integrating density_eval over the ordered
/// support; N in {1, 2}.
cplx avg_ratio_quadrature(const EnsembleSpec& spec, SParam s, const CubeQuadOptions& opt = {});

/// E[f(U)] by integrating density_eval * f over the ordered support; N in
/// {1, 2}. `lower_shift` tells the endpoint map that f grows like
/// u^{-lower_shift} at 0.
cplx ordered_expectation_quadrature(const EnsembleSpec& spec, const std::function<cplx(const std::vector<double>&)>& f,
                                    double lower_shift = 0.0, const CubeQuadOptions& opt = {});

/// Integral of density_eval over the ordered support; N in {1, 2}.
double density_mass_quadrature(const EnsembleSpec& spec, const CubeQuadOptions& opt = {});

/// Marginal density of X at N = 2, integrating joint_density_eval over u.
double marginal_x_quadrature(const EnsembleSpec& spec, double x, const CubeQuadOptions& opt = {});

/// Truncation point used for Laguerre quadrature.
double laguerre_truncation(const EnsembleSpec& spec, double extra_power, double tail_tol);

}  // namespace altzeta
