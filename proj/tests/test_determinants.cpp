#include "altzeta/determinants.hpp"
#include "altzeta/eta_core.hpp"
#include "altzeta/rng.hpp"
#include "altzeta/suite.hpp"
#include "support.hpp"

#include <algorithm>

using namespace altzeta;
using altzeta::test::error_code;
using altzeta::test::rel;

TEST_CASE("eta_det") {
  CHECK(std::abs(eta_det(0.0, 5).value - 0.5) < 1e-10);
  CHECK(std::abs(eta_det(-2.0, 5).value) < 1e-9);
  const cplx s(3.0, 2.0);
  CHECK(rel(eta_det(s, 10).value, eta_series(s, 10).value) < 1e-8);
  CHECK(error_code([] { eta_det(1.0, 41); }) == Errc::CapExceeded);
  const EvalResult big = eta_det(1.0, 40);
  CHECK(big.meta.count("rcond") == 1);
  CHECK(std::find(big.flags.begin(), big.flags.end(), "ill_conditioned") != big.flags.end());
}

TEST_CASE("gen_vandermonde_ratio and alternating_sum") {
  const OrderedGrid u({0.5, 1.7, 2.2, 6.0});
  CHECK(std::abs(gen_vandermonde_ratio(0.0, u) - 1.0) < 1e-12);
  CHECK(std::abs(alternating_sum(0.0, u) - 1.0) < 1e-12);

  for (int N = 2; N <= 8; ++N) {
    const cplx s(1.3, -0.4);
    CHECK(rel(gen_vandermonde_ratio(s, OrderedGrid::squares(N)), 2.0 * eta_series(s, N).value) < 1e-10);
  }
  const OrderedGrid u123({1.0, 2.0, 3.0});
  CHECK(rel(gen_vandermonde_ratio(2.0, u123), alternating_sum(2.0, u123)) < 1e-12);
  CHECK(std::abs(alternating_sum(2.0, OrderedGrid({5.0})) - 0.2) < 1e-15);
  CHECK(rel(alternating_sum(2.0, OrderedGrid::squares(3)), 2.0 * eta_series(2.0, 3).value) < 1e-13);

  CHECK(error_code([] { OrderedGrid({1.0, 1.0}); }) == Errc::GridError);
  CHECK(error_code([] { OrderedGrid({2.0, 1.0}); }) == Errc::GridError);
  CHECK(error_code([] { OrderedGrid({-1.0, 1.0}); }) == Errc::GridError);
  CHECK(error_code([] { gen_vandermonde_ratio(1.0, OrderedGrid({3.0})); }) == Errc::GridError);
}

TEST_CASE("generalized ratio identity on random grids") {
  CounterRng rng(3, 9);
  for (int t = 0; t < 30; ++t) {
    const int N = 2 + t % 7;
    std::vector<double> u;
    double x = 0.2 + rng.uniform();
    for (int k = 0; k < N; ++k, x += 0.3 + 2.0 * rng.uniform()) u.push_back(x);
    const cplx s(8.0 * rng.uniform() - 4.0, 8.0 * rng.uniform() - 4.0);
    CHECK(rel(gen_vandermonde_ratio(s, OrderedGrid(u)), alternating_sum(s, OrderedGrid(u))) < 1e-9);
  }
}

TEST_CASE("integral representation by quadrature") {
  CHECK(std::abs(detVs_integral_quadrature(0.0, 2) - 3.0) < 1e-10);
  CHECK(rel(detVs_integral_quadrature(2.0, 2), detVs_direct(2.0, 2)) < 1e-8);
  CHECK(std::abs(detVs_direct(2.0, 2) - 3.75) < 1e-14);
  CHECK(rel(detVs_integral_quadrature(1.0, 3), detVs_direct(1.0, 3)) < 1e-7);
  CHECK(rel(detVs_integral_quadrature(cplx(0.5, 3.0), 3), detVs_direct(cplx(0.5, 3.0), 3)) < 1e-7);
  CHECK(error_code([] { detVs_integral_quadrature(1.0, 4); }) == Errc::DomainError);
}

TEST_CASE("tridiagonal coefficients") {
  const TridiagCoeffs c = tridiag_coeffs(1.0, 2);
  CHECK(std::abs(c.lambda_inv_at(2) - 1.0 / 6.0) < 1e-15);
  CHECK(c.lambda_inv_at(1) == cplx(1.0));
  CHECK(std::abs(c.beta_at(2) - c.lambda_inv_at(2)) < 1e-15);
  const TridiagCoeffs c8 = tridiag_coeffs(cplx(0.7, 1.1), 8);
  for (int n = 3; n <= 8; ++n) CHECK(rel(c8.beta_at(n), c8.lambda_inv_at(n) / c8.lambda_inv_at(n - 1)) < 1e-14);
  CHECK(error_code([] { tridiag_coeffs(0.0, 5); }) == Errc::DomainError);
  // 2^{-s} = 1 at s = 2 pi i / ln 2 makes beta_3 undefined
  CHECK(error_code([] { tridiag_coeffs(cplx(0.0, 2.0 * std::numbers::pi / std::numbers::ln2), 5); }) ==
        Errc::DomainError);
}

TEST_CASE("eta_tridiag and the Delta recursion") {
  CHECK(rel(eta_tridiag(1.0, 8).value, eta_series(1.0, 8).value) < 1e-12);
  CHECK(std::abs(eta_tridiag(-2.0, 5).value) < 1e-12);
  for (int N = 2; N <= 12; ++N) {
    const TridiagCoeffs c = tridiag_coeffs(cplx(-1.3, 2.4), N);
    const auto d = delta_sequence(c, 0.0, 1.0);
    const auto dt = delta_sequence(c, 1.0, 0.0);
    cplx partial = 0.0;
    for (int n = 2; n <= N; ++n) {
      partial += c.lambda_inv_at(n);
      CHECK(std::abs(d[n] - (1.0 + partial)) < 1e-12 * std::max(1.0, std::abs(partial)));
      CHECK(std::abs(dt[n] + partial) < 1e-12 * std::max(1.0, std::abs(partial)));
    }
    CHECK(std::abs(d[N] + dt[N] - 1.0) < 1e-12);
  }
  try {
    eta_tridiag(0.0, 8);
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("tridiagonal form undefined at s=0") != std::string::npos);
  }
}

TEST_CASE("eta_contfrac") {
  CHECK(rel(eta_contfrac(1.0, 4).value, eta_series(1.0, 4).value) < 1e-10);
  CHECK(rel(eta_contfrac(2.0, 8).value, eta_series(2.0, 8).value) < 1e-10);
  const EvalResult r = eta_contfrac(1.0, 2);
  CHECK(std::abs(r.meta.at("inverse_re") - 6.0 / 7.0) < 1e-15);
  CHECK(std::abs(r.value - 7.0 / 12.0) < 1e-15);
}

TEST_CASE("four representations agree") {
  CounterRng rng(17, 0);
  for (int t = 0; t < 10; ++t) {
    const cplx s = random_s_outside_guards(rng, 6.0, 12, 0.25);
    for (int N = 2; N <= 12; ++N) {
      const cplx a = eta_series(s, N).value;
      CHECK(rel(a, eta_det(s, N).value) < 1e-7);
      CHECK(rel(a, eta_tridiag(s, N).value) < 1e-7);
      CHECK(rel(a, eta_contfrac(s, N).value) < 1e-7);
    }
  }
}
