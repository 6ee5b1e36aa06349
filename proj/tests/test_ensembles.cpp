#include "altzeta/ensembles.hpp"
#include "altzeta/stats.hpp"
#include "support.hpp"

#include <cmath>

using namespace altzeta;
using altzeta::test::error_code;
using altzeta::test::rel;

namespace {

SamplerConfig config(std::uint64_t seed = 42) {
  SamplerConfig c;
  c.seed = seed;
  return c;
}

MCEstimate chain_mean(const EnsembleSpec& spec, long n, const std::function<double(const std::vector<double>&)>& f) {
  const SamplerConfig cfg = config();
  return run_chunks(
      n, cfg,
      [&](CounterRng& rng, long count, std::vector<cplx>& out) {
        EnsembleSampler chain(spec, cfg, rng);
        for (long i = 0; i < count; ++i) out.push_back(f(chain.next()));
      },
      "test");
}

}  // namespace

TEST_CASE("EnsembleSpec validation") {
  CHECK(error_code([] { EnsembleSpec(Jacobi{0.0, 1.0}, 2); }) == Errc::DomainError);
  CHECK(error_code([] { EnsembleSpec(Laguerre{1.0, -1.0}, 2); }) == Errc::DomainError);
  CHECK(error_code([] { EnsembleSpec(Jacobi{1.0, 1.0}, 0); }) == Errc::DomainError);
}

TEST_CASE("Selberg values") {
  CHECK(std::abs(selberg_value(1, 2.0, 3.0) - std::tgamma(2.0) * std::tgamma(3.0) / std::tgamma(5.0)) < 1e-15);
  CHECK(std::abs(selberg_value(2, 1.0, 1.0) - 1.0 / 6.0) < 1e-15);
  CHECK(rel(selberg_value(2, 2.0, 3.0), normalization_quadrature(EnsembleSpec(Jacobi{2.0, 3.0}, 2))) < 1e-8);
  CHECK(rel(selberg_value(3, 1.5, 2.5), normalization_quadrature(EnsembleSpec(Jacobi{1.5, 2.5}, 3))) < 1e-6);
}

TEST_CASE("Laguerre normalization and its theta exponent") {
  CHECK(rel(laguerre_norm(1, 2.5, 1.3), std::pow(1.3, 2.5) * std::tgamma(2.5)) < 1e-14);
  CHECK(rel(laguerre_norm(2, 1.0, 1.0), normalization_quadrature(EnsembleSpec(Laguerre{1.0, 1.0}, 2))) < 1e-6);
  const EnsembleSpec spec(Laguerre{3.0, 2.0}, 2);
  const double q = normalization_quadrature(spec);
  CHECK(rel(laguerre_norm(2, 3.0, 2.0), q) < 1e-6);
  CHECK(rel(laguerre_norm(2, 3.0, 2.0, LaguerreExponent::shifted), q) > 0.5);
  // homogeneity: W(a, 2 theta) / W(a, theta) = 2^{(a+N-1)N}
  CHECK(rel(laguerre_norm(2, 3.0, 2.0) / laguerre_norm(2, 3.0, 1.0), std::pow(2.0, 8.0)) < 1e-13);
}

TEST_CASE("Jacobi to Laguerre limit") {
  double prev = 1.0;
  for (double L : {1e2, 1e4, 1e6}) {
    const double gap =
        std::abs(std::expm1(selberg_log(2, 2.0, L / 1.5 + 1.0) + 3.0 * 2.0 * std::log(L) - laguerre_norm_log(2, 2.0, 1.5)));
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("densities") {
  const EnsembleSpec uni(Jacobi{1.0, 1.0}, 1);
  for (double u : {0.1, 0.5, 0.9}) {
    const std::vector<double> v = {u};
    CHECK(std::abs(std::exp(density_eval(uni, v).log_density) - 1.0) < 1e-14);
  }
  const std::vector<double> out_of = {1.5};
  CHECK_FALSE(density_eval(uni, out_of).in_support);
  CHECK(std::abs(density_mass_quadrature(EnsembleSpec(Jacobi{1.0, 1.0}, 2)) - 1.0) < 1e-8);
  CHECK(std::abs(density_mass_quadrature(EnsembleSpec(Laguerre{1.0, 1.0}, 2)) - 1.0) < 1e-6);
}

TEST_CASE("marginal of X is a Beta(a+1, b+1) density") {
  const EnsembleSpec spec(Jacobi{2.0, 1.5}, 2);
  const double lb = std::lgamma(3.0) + std::lgamma(2.5) - std::lgamma(5.5);
  for (double x : {0.2, 0.6}) {
    const double beta = std::exp(2.0 * std::log(x) + 1.5 * std::log1p(-x) - lb);
    CHECK(rel(marginal_x_quadrature(spec, x), beta) < 1e-6);
  }
}

TEST_CASE("ensemble sampler") {
  SamplerConfig thin = config();
  thin.thinning = 5;
  std::vector<double> xs;
  for (const auto& u : ensemble_samples(EnsembleSpec(Jacobi{1.0, 1.0}, 1), thin, 10000)) xs.push_back(u[0]);
  CHECK(stats::ks_one_sample(xs, [](double u) { return u; }) < stats::ks_critical(xs.size(), 0));

  const EnsembleSpec j2(Jacobi{1.0, 1.0}, 2);
  const MCEstimate m = chain_mean(j2, 40000, [](const std::vector<double>& u) { return u[0] + u[1]; });
  CHECK(std::abs(m.mean - ordered_expectation_quadrature(j2, [](const std::vector<double>& u) { return cplx(u[0] + u[1]); })) <
        4.0 * m.std_error);

  const EnsembleSpec l2(Laguerre{1.0, 1.0}, 2);
  const MCEstimate m2 = chain_mean(l2, 40000, [](const std::vector<double>& u) { return u[1]; });
  CHECK(std::abs(m2.mean - ordered_expectation_quadrature(l2, [](const std::vector<double>& u) { return cplx(u[1]); })) <
        4.0 * m2.std_error);

  CHECK(error_code([] { EnsembleSampler(EnsembleSpec(Jacobi{1.0, 1.0}, 17), config(), CounterRng(1, 0)); }) ==
        Errc::CapExceeded);
}

TEST_CASE("averaged ratio closed form") {
  const EnsembleSpec j1(Jacobi{2.5, 1.5}, 1);
  CHECK(std::abs(avg_ratio_closed(j1, 0.0) - 1.0) < 1e-14);
  // N = 1: E[U^{-s/2}] under Beta(a, b)
  const double s = 1.2;
  const double expected = std::exp(std::lgamma(2.5 - s / 2) + std::lgamma(4.0) - std::lgamma(2.5) - std::lgamma(4.0 - s / 2));
  CHECK(rel(avg_ratio_closed(j1, s), expected) < 1e-13);
  const EnsembleSpec j2(Jacobi{3.0, 2.0}, 2);
  CHECK(rel(avg_ratio_closed(j2, 2.0), avg_ratio_quadrature(j2, 2.0)) < 1e-6);
  CHECK(rel(avg_ratio_closed(j2, 2.0, GammaArgument::full_s), avg_ratio_quadrature(j2, 2.0)) > 1e-3);
  CHECK(error_code([] { avg_ratio_closed(EnsembleSpec(Jacobi{1.0, 1.0}, 2), 2.5); }) == Errc::DomainError);
}

TEST_CASE("averaged ratio Monte Carlo") {
  const AvgRatioEstimate zero = avg_ratio_mc(EnsembleSpec(Jacobi{3.0, 2.0}, 2), 0.0, config(), 1000);
  CHECK(zero.alternating.mean == cplx(1.0));
  CHECK(zero.joint.std_error == 0.0);
  const EnsembleSpec spec(Jacobi{3.0, 2.0}, 2);
  const cplx closed = avg_ratio_closed(spec, 2.0);
  const AvgRatioEstimate e = avg_ratio_mc(spec, 2.0, config(), 40000);
  CHECK(std::abs(e.alternating.mean - closed) < 4.0 * e.alternating.std_error);
  CHECK(std::abs(e.joint.mean - closed) < 4.0 * e.joint.std_error);
  CHECK(e.ensemble_acceptance > 0.0);
  CHECK(e.autocorr_time >= 0.5);
}

TEST_CASE("corollary integrals") {
  const EnsembleSpec j1(Jacobi{3.0, 2.0}, 1);
  const double beta = std::exp(std::lgamma(2.5) + std::lgamma(2.0) - std::lgamma(4.5));
  CHECK(rel(corollary_integral_quadrature(j1, 1.0), beta) < 1e-8);
  CHECK(rel(corollary_closed(j1, 1.0), beta) < 1e-13);
  const EnsembleSpec j2(Jacobi{3.0, 2.0}, 2);
  CHECK(rel(corollary_integral_quadrature(j2, 1.0), corollary_closed(j2, 1.0)) < 1e-6);
  const EnsembleSpec l2(Laguerre{3.0, 1.0}, 2);
  CHECK(rel(corollary_integral_quadrature(l2, 1.0), corollary_closed(l2, 1.0)) < 1e-5);
  const EnsembleSpec j3(Jacobi{3.0, 2.0}, 3);
  CHECK(rel(corollary_integral_quadrature(j3, 1.0), corollary_closed(j3, 1.0)) < 1e-5);
}
