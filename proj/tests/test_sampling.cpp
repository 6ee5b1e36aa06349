#include "altzeta/eta_core.hpp"
#include "altzeta/mc.hpp"
#include "altzeta/sampling.hpp"
#include "altzeta/stats.hpp"
#include "support.hpp"

#include <omp.h>

#include <cmath>

using namespace altzeta;
using altzeta::test::error_code;

namespace {

bool within(const MCEstimate& e, cplx target, double k = 4.0) { return std::abs(e.mean - target) <= k * e.std_error; }

SamplerConfig config(std::uint64_t seed = 42) {
  SamplerConfig c;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("counter-based RNG is a pure function of (seed, stream)") {
  CounterRng a(1, 2), b(1, 2), c(1, 3);
  for (int i = 0; i < 10; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x != c.uniform());
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("Gibbs on two nodes is uniform") {
  const OrderedGrid u({1.0, 4.0});
  const auto xs = gibbs_samples(u, config(), 100000);
  std::vector<double> v;
  for (const auto& x : xs) v.push_back(x[0]);
  const double m = stats::mean(v);
  CHECK(std::abs(m - 2.5) < 3.0 * std::sqrt(0.75 / v.size()));
  CHECK(stats::ks_one_sample(v, [](double x) { return (x - 1.0) / 3.0; }) < stats::ks_critical(v.size(), 0));
}

TEST_CASE("samples interlace") {
  for (int N : {3, 5, 9}) {
    const OrderedGrid u = OrderedGrid::squares(N);
    for (const auto& x : gibbs_samples(u, config(), 3000)) CHECK(InterlacedSample{x, u.values()}.interlaced());
  }
  const OrderedGrid u = OrderedGrid::squares(4);
  for (const auto& x : rejection_samples(u, 1, 3000)) CHECK(InterlacedSample{x, u.values()}.interlaced());
  CHECK_FALSE(InterlacedSample{{5.0}, {1.0, 4.0}}.interlaced());
}

TEST_CASE("Gibbs agrees with rejection in distribution") {
  SamplerConfig thin = config(7);
  thin.thinning = 10;
  const OrderedGrid u = OrderedGrid::squares(3);
  const auto g = gibbs_samples(u, thin, 10000);
  const auto r = rejection_samples(u, 8, 10000);
  for (int k = 0; k < 2; ++k) {
    std::vector<double> a, b;
    for (std::size_t i = 0; i < g.size(); ++i) {
      a.push_back(g[i][k]);
      b.push_back(r[i][k]);
    }
    CHECK(stats::ks_two_sample(a, b) < stats::ks_critical(a.size(), b.size(), 0.01));
  }
}

TEST_CASE("rejection sampler acceptance") {
  double rate = 0.0;
  rejection_samples(OrderedGrid({1.0, 4.0}), 3, 1000, &rate);
  CHECK(rate == 1.0);
  DixonAndersonRejection r(OrderedGrid::squares(3), CounterRng(9, 0));
  for (int i = 0; i < 20000; ++i) r.next();
  CHECK(std::abs(r.acceptance_rate() - 0.5) < 3.0 * std::sqrt(0.25 / r.proposals()));
  CHECK(error_code([] { DixonAndersonRejection(OrderedGrid::squares(7), CounterRng(1, 0)); }) == Errc::CapExceeded);
  CHECK(error_code([] { DixonAndersonGibbs(OrderedGrid({2.0}), config(), CounterRng(1, 0)); }) == Errc::GridError);
}

TEST_CASE("eta_mc") {
  const MCEstimate zero = eta_mc(0.0, 5, config(), 1000);
  CHECK(zero.mean == cplx(0.5));
  CHECK(zero.std_error == 0.0);
  CHECK(within(eta_mc(2.0, 4, config(), 100000), eta_series(2.0, 4).value));
  CHECK(within(eta_mc(cplx(1.0, 3.0), 6, config(), 100000), eta_series(cplx(1.0, 3.0), 6).value));
  CHECK(error_code([] { eta_mc(-2.0, 3, config(), 10); }) == Errc::DomainError);
}

TEST_CASE("Monte Carlo is bit-identical across worker counts") {
  SamplerConfig serial = config(123), parallel = config(123);
  serial.parallel = false;
  serial.chunk = parallel.chunk = 1000;
  const MCEstimate ref = eta_mc(cplx(1.5, -0.5), 5, serial, 20000);
  for (int threads : {1, 2, 4}) {
    omp_set_num_threads(threads);
    const MCEstimate p = eta_mc(cplx(1.5, -0.5), 5, parallel, 20000);
    CHECK(p.mean == ref.mean);
    CHECK(p.std_error == ref.std_error);
  }
}

TEST_CASE("standard error scales like n^{-1/2}") {
  const double se1 = eta_mc(2.0, 4, config(), 20000).std_error;
  const double se4 = eta_mc(2.0, 4, config(), 80000).std_error;
  CHECK(se1 / se4 > 2.0 / 1.5);
  CHECK(se1 / se4 < 3.0);
}

TEST_CASE("psi closed form") {
  // (N / (|a_{1,2}| 1))^{1} Gamma(2)/Gamma(3) = (2 / (2/3)) / 2
  CHECK(std::abs(psi_closed(1, 2, 2.0) - 1.5) < 1e-14);
  CHECK(std::abs(psi_closed(1, 256, 2.0) - 1.0) < std::abs(psi_closed(1, 64, 2.0) - 1.0));
  double prev = 1e9;
  for (int N = 8; N <= 64; N *= 2) {
    const double err = std::abs(psi_closed(2, N, 2.0) - 0.25);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(error_code([] { psi_closed(3, 2, 1.0); }) == Errc::DomainError);
}

TEST_CASE("psi_mc") {
  const long n = 100000;
  CHECK(within(psi_mc(1, 4, 2.0, config(), n), psi_closed(1, 4, 2.0)));
  CHECK(within(psi_mc(2, 4, 2.0, config(), n), psi_closed(2, 4, 2.0)));
  CHECK(within(psi_mc(0, 4, 2.0, config(), n), psi_zero_target(4, 2.0)));
  CHECK(within(psi_mc(3, 5, 1.0, config(), n), psi_closed(3, 5, 1.0)));
  CHECK(psi_mc(2, 4, 0.0, config(), n).mean == cplx(1.0));
}

TEST_CASE("exponential moments") {
  const long n = 200000;
  const OrderedGrid u1({1.0}), u2({1.0, 2.0});
  CHECK(std::abs(exp_moment_closed(u1, 2.0) - 1.0) < 1e-15);
  CHECK(std::abs(exp_moment_closed(u2, 2.0) - 1.5) < 1e-15);
  CHECK(within(exp_moment_mc(u1, 2.0, config(), n), 1.0));
  CHECK(within(exp_moment_mc(u2, 2.0, config(), n), 1.5));
  const OrderedGrid sq = OrderedGrid::squares(3);
  const cplx closed = exp_moment_closed(sq, 1.0);
  CHECK(std::abs(closed - gamma(cplx(1.5)) * 2.0 * eta_series(1.0, 3).value) < 1e-14);
  CHECK(within(exp_moment_mc(sq, 1.0, config(), n), closed));
  CHECK(error_code([&] { exp_moment_mc(u1, -1.6, config(), 10); }) == Errc::DomainError);
}

TEST_CASE("ratio_mc") {
  const long n = 100000;
  const OrderedGrid sq = OrderedGrid::squares(4);
  const MCEstimate zero = ratio_mc(sq, 0.0, config(), n);
  CHECK(zero.mean == cplx(1.0));
  CHECK(zero.std_error == 0.0);
  CHECK(within(ratio_mc(sq, 2.0, config(), n), alternating_sum(2.0, sq)));
  const OrderedGrid u({1.0, 2.0, 3.0});
  CHECK(within(ratio_mc(u, -1.0, config(), n), alternating_sum(-1.0, u)));
}

TEST_CASE("sampler configuration is validated") {
  SamplerConfig bad = config();
  bad.thinning = 0;
  CHECK(error_code([&] { validate(bad); }) == Errc::DomainError);
  bad = config();
  bad.burn_in = -1;
  CHECK(error_code([&] { validate(bad); }) == Errc::DomainError);
}
