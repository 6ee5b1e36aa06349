#include "altzeta/suite.hpp"

#include "altzeta/determinants.hpp"
#include "altzeta/ensembles.hpp"
#include "altzeta/error.hpp"
#include "altzeta/exact_linalg.hpp"
#include "altzeta/rational.hpp"
#include "altzeta/sampling.hpp"
#include "altzeta/stats.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace altzeta {

bool SuiteReport::all_passed() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

const std::vector<std::string>& suite_scopes() {
  static const std::vector<std::string> scopes = {"exact", "series", "determinants", "sampling", "ensembles", "all"};
  return scopes;
}

cplx random_s_outside_guards(CounterRng& rng, double r, int N, double radius) {
  for (;;) {
    const cplx s(r * (2.0 * rng.uniform() - 1.0), r * (2.0 * rng.uniform() - 1.0));
    if (std::abs(s) <= radius) continue;
    if (SParam(s).pole_distance(N) <= radius) continue;
    return s;
  }
}

namespace {

class Battery {
 public:
  Battery(std::string scope, std::vector<CheckResult>& out) : scope_(std::move(scope)), out_(out) {}

  // Runs `body`; an escaping Error turns into a failed check carrying its message.
  void run(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    try {
      auto [ok, detail] = body();
      out_.push_back({scope_, name, ok, std::move(detail)});
    } catch (const std::exception& e) {
      out_.push_back({scope_, name, false, std::string("exception: ") + e.what()});
    }
  }

 private:
  std::string scope_;
  std::vector<CheckResult>& out_;
};

using Outcome = std::pair<bool, std::string>;

double rel_diff(cplx a, cplx b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

std::string fmt_c(cplx z) { return fmt::format("{:.10g}{:+.10g}i", z.real(), z.imag()); }

// |est - target| in units of the estimator's standard error.
double z_score(const MCEstimate& est, cplx target) {
  const double d = std::abs(est.mean - target);
  if (est.std_error == 0.0) return d == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return d / est.std_error;
}

Outcome within_se(const MCEstimate& est, cplx target, double k = 4.0) {
  const double z = z_score(est, target);
  return {z <= k, fmt::format("estimate {} target {} se {:.3e} z {:.3f}", fmt_c(est.mean), fmt_c(target),
                              est.std_error, z)};
}

Rational random_rational(CounterRng& rng) {
  const long num = static_cast<long>(rng.uniform() * 41.0) - 20;
  const long den = 1 + static_cast<long>(rng.uniform() * 9.0);
  return make_rational(num, den);
}

std::vector<Rational> random_distinct(CounterRng& rng, std::size_t n) {
  std::vector<Rational> v;
  while (v.size() < n) {
    Rational q = random_rational(rng);
    if (std::find(v.begin(), v.end(), q) == v.end()) v.push_back(std::move(q));
  }
  return v;
}

std::vector<Rational> random_nonzero(CounterRng& rng, std::size_t n) {
  std::vector<Rational> v;
  while (v.size() < n) {
    Rational q = random_rational(rng);
    if (q != 0) v.push_back(std::move(q));
  }
  return v;
}

// ---------------------------------------------------------------- exact

void exact_scope(const SuiteOptions& opt, std::vector<CheckResult>& out) {
  Battery b("exact", out);

  b.run("weights.closed_forms_agree", [] {
    int bad = 0;
    for (int N = 1; N <= 64; ++N)
      for (int n = 1; n <= N; ++n)
        if (weight_product_form(n, N) != weight_binomial_form(n, N)) ++bad;
    return Outcome{bad == 0, fmt::format("N <= 64, mismatches {}", bad)};
  });

  b.run("weights.sum_is_half", [] {
    int bad = 0;
    for (int N = 1; N <= 64; ++N) {
      const WeightTable w = weights(N);
      Rational sum = 0;
      for (int n = 1; n <= N; ++n) sum += w(n);
      if (sum != make_rational(1, 2)) ++bad;
    }
    return Outcome{bad == 0, fmt::format("N <= 64, failures {}", bad)};
  });

  b.run("weights.alternating_signs", [] {
    int bad = 0;
    for (int N = 1; N <= 64; ++N) {
      const WeightTable w = weights(N);
      for (int n = 1; n <= N; ++n)
        if ((n % 2 == 1) != (w(n) > 0)) ++bad;
    }
    return Outcome{bad == 0, fmt::format("N <= 64, wrong signs {}", bad)};
  });

  b.run("eta_exact.zero_pattern", [] {
    int bad = 0, boundary_zero = 0;
    for (int N = 1; N <= 16; ++N) {
      if (eta_series_exact(0, N) != make_rational(1, 2)) ++bad;
      for (int k = 1; k <= N - 1; ++k)
        if (eta_series_exact(-2 * k, N) != 0) ++bad;
      if (eta_series_exact(-2 * N, N) == 0) ++boundary_zero;
    }
    return Outcome{bad == 0 && boundary_zero == 0,
                   fmt::format("N <= 16, violations {}, unexpected zeros at -2N {}", bad, boundary_zero)};
  });

  b.run("vandermonde.cofactor_oracle", [&] {
    CounterRng rng(opt.seed, 0xE0);
    int bad = 0, trials = 0;
    for (std::size_t n = 1; n <= 6; ++n)
      for (int t = 0; t < 10; ++t, ++trials) {
        const NodeSet nodes(random_distinct(rng, n));
        if (vandermonde_det(nodes) != cofactor_det(vandermonde_matrix(nodes))) ++bad;
      }
    return Outcome{bad == 0, fmt::format("{} random node sets, N <= 6, mismatches {}", trials, bad)};
  });

  b.run("vandermonde.squares_closed_form", [] {
    int bad = 0;
    for (unsigned N = 1; N <= 8; ++N) {
      std::vector<Rational> sq;
      for (unsigned n = 1; n <= N; ++n) sq.push_back(make_rational(static_cast<long>(n * n)));
      if (squares_vandermonde_det(N) != vandermonde_det(NodeSet(sq))) ++bad;
    }
    return Outcome{bad == 0, fmt::format("N <= 8, mismatches {}", bad)};
  });

  b.run("vandermonde.inverse_identity", [&] {
    CounterRng rng(opt.seed, 0xE1);
    int bad = 0, trials = 0;
    for (std::size_t n = 1; n <= 6; ++n)
      for (int t = 0; t < 5; ++t, ++trials) {
        const NodeSet nodes(random_distinct(rng, n));
        const Matrix<Rational> V = vandermonde_matrix(nodes);
        const Matrix<Rational> W = vandermonde_inverse(nodes);
        if (!(V * W == Matrix<Rational>::identity(n))) ++bad;
        bool zero_node = false;
        for (std::size_t i = 0; i < n; ++i) zero_node |= nodes[i] == 0;
        if (zero_node) continue;
        const std::vector<Rational> row = vandermonde_inverse_first_row(nodes);
        for (std::size_t i = 0; i < n; ++i)
          if (row[i] != W(0, i)) ++bad;
      }
    return Outcome{bad == 0, fmt::format("{} node sets, V W = I and first-row formula, failures {}", trials, bad)};
  });

  b.run("vandermonde.first_row_on_squares", [] {
    int bad = 0;
    for (int N = 1; N <= 12; ++N) {
      std::vector<Rational> sq;
      for (int n = 1; n <= N; ++n) sq.push_back(make_rational(static_cast<long>(n) * n));
      const std::vector<Rational> row = vandermonde_inverse_first_row(NodeSet(sq));
      const WeightTable w = weights(N);
      for (int n = 1; n <= N; ++n)
        if (row[n - 1] != 2 * w(n)) ++bad;
    }
    return Outcome{bad == 0, fmt::format("w_1n = 2 a_nN for N <= 12, mismatches {}", bad)};
  });

  b.run("partial_fractions.reconstruction", [&] {
    CounterRng rng(opt.seed, 0xE2);
    int bad = 0, probes = 0;
    for (std::size_t n = 1; n <= 6; ++n) {
      const NodeSet nodes(random_distinct(rng, n));
      PolyCoeffs p;
      for (std::size_t i = 0; i < n; ++i) p.push_back(random_rational(rng));
      const std::vector<Rational> c = partial_fraction_coeffs(p, nodes);
      for (int t = 0; t < 20; ++t) {
        Rational x = random_rational(rng) + make_rational(1, 97);
        bool on_grid = false;
        for (std::size_t i = 0; i < n; ++i) on_grid |= nodes[i] == x;
        if (on_grid) continue;
        Rational lhs = 0, q = 1;
        for (std::size_t i = 0; i < n; ++i) {
          lhs += c[i] / (x - nodes[i]);
          q *= x - nodes[i];
        }
        ++probes;
        if (lhs != poly_eval(p, x) / q) ++bad;
      }
    }
    return Outcome{bad == 0, fmt::format("{} probes, mismatches {}", probes, bad)};
  });

  b.run("rank_one.det_and_inverse", [&] {
    CounterRng rng(opt.seed, 0xE3);
    int bad = 0, trials = 0;
    for (std::size_t K = 1; K <= 5; ++K)
      for (int t = 0; t < 10; ++t, ++trials) {
        const std::vector<Rational> lam = random_nonzero(rng, K);
        const Matrix<Rational> A = rank_one_perturbed_matrix(lam);
        const Rational det = rank_one_perturbed_det(lam);
        if (det != cofactor_det(A)) ++bad;
        if (det != 0 && !(A * rank_one_perturbed_inverse(lam) == Matrix<Rational>::identity(K))) ++bad;
      }
    return Outcome{bad == 0, fmt::format("{} random instances, K <= 5, mismatches {}", trials, bad)};
  });

  b.run("rank_one.singular_instances", [&] {
    CounterRng rng(opt.seed, 0xE4);
    int bad = 0, built = 0;
    for (std::size_t K = 1; K <= 5; ++K)
      for (int t = 0; t < 10; ++t) {
        std::vector<Rational> lam = random_nonzero(rng, K - 1);
        Rational rest = -1;
        for (const Rational& l : lam) rest -= 1 / l;
        if (rest == 0) continue;
        lam.push_back(1 / rest);
        ++built;
        if (rank_one_perturbed_det(lam) != 0 || cofactor_det(rank_one_perturbed_matrix(lam)) != 0) ++bad;
        try {
          rank_one_perturbed_inverse(lam);
          ++bad;
        } catch (const Error& e) {
          if (e.code() != Errc::SingularMatrix) ++bad;
        }
      }
    return Outcome{bad == 0, fmt::format("{} instances with sum 1/lambda = -1, failures {}", built, bad)};
  });
}

// ---------------------------------------------------------------- series

void series_scope(const SuiteOptions&, std::vector<CheckResult>& out) {
  Battery b("series", out);

  b.run("eta_series.s0_is_half", [] {
    double worst = 0.0;
    for (int N = 1; N <= 64; ++N) worst = std::max(worst, std::abs(eta_series(0.0, N).value - 0.5));
    return Outcome{worst < 1e-14, fmt::format("max |eta_N(0) - 1/2| {:.3e}", worst)};
  });

  b.run("eta_series.convergence_grid", [] {
    int points = 0, bad = 0;
    std::string first;
    for (int i = 0; i <= 8; ++i)
      for (int j = 0; j <= 8; ++j) {
        const cplx s(-10.0 + 2.5 * i, -10.0 + 2.5 * j);
        const bool zero_point = s.imag() == 0.0 && s.real() <= 0.0 && std::fmod(s.real(), 2.0) == 0.0;
        if (zero_point) continue;
        ++points;
        double prev = std::numeric_limits<double>::infinity();
        for (int N : {8, 16, 32, 64}) {
          const double d = std::abs(eta_series(s, 2 * N).value - eta_series(s, N).value);
          if (!(d < prev)) {
            if (first.empty()) first = fmt::format(" (first at s={}, N={})", fmt_c(s), N);
            ++bad;
            break;
          }
          prev = d;
        }
      }
    return Outcome{bad == 0, fmt::format("{} grid points, non-decreasing {}{}", points, bad, first)};
  });

  b.run("h_factor.gamma_limit", [] {
    int bad = 0;
    std::string detail;
    for (double s : {-3.0, -1.0, 0.0, 1.0, 2.0, 4.0}) {
      const double limit = 1.0 / std::tgamma(1.0 + s / 2.0);
      double prev = std::abs(h_factor(s, 1 << 8) - limit);
      const bool exact_one = s == 0.0 || s == 2.0;
      for (int e = 9; e <= 14; ++e) {
        const double err = std::abs(h_factor(s, 1 << e) - limit);
        if (exact_one ? err > 1e-12 : !(err < prev)) ++bad;
        prev = err;
      }
      detail += fmt::format("{}s={} err {:.3e}", detail.empty() ? "" : "; ", s, prev);
    }
    return Outcome{bad == 0, detail};
  });

  b.run("eta_reference.classical_values", [] {
    const double e1 = std::abs(eta_reference(1.0) - std::numbers::ln2);
    const double e2 = std::abs(eta_reference(2.0) - std::numbers::pi * std::numbers::pi / 12.0);
    const double e0 = std::abs(eta_reference(0.0) - 0.5);
    return Outcome{e1 < 1e-14 && e2 < 1e-14 && e0 < 1e-14,
                   fmt::format("errors ln2 {:.3e}, pi^2/12 {:.3e}, 1/2 {:.3e}", e1, e2, e0)};
  });

  b.run("eta_series.error_scales_inverse_N", [] {
    // N (eta_N(1) - ln 2) tends to -eta(-1) = -1/4
    const double c = 64.0 * (eta_series(1.0, 64).value.real() - std::numbers::ln2);
    return Outcome{std::abs(c + 0.25) < 1e-2, fmt::format("64 (eta_64(1) - ln 2) = {:.6f}", c)};
  });
}

// ---------------------------------------------------------------- determinants

void determinants_scope(const SuiteOptions& opt, std::vector<CheckResult>& out) {
  Battery b("determinants", out);

  b.run("four_way_agreement", [&] {
    CounterRng rng(opt.seed, 0xD0);
    double worst = 0.0;
    int evaluated = 0;
    for (int t = 0; t < 50; ++t) {
      const cplx s = random_s_outside_guards(rng, 6.0, 12, 0.25);
      for (int N = 2; N <= 12; ++N) {
        const cplx v[4] = {eta_series(s, N).value, eta_det(s, N).value, eta_tridiag(s, N, opt.guard).value,
                           eta_contfrac(s, N, opt.guard).value};
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j) worst = std::max(worst, rel_diff(v[i], v[j]));
        ++evaluated;
      }
    }
    return Outcome{worst < 1e-7, fmt::format("{} (s, N) pairs, max pairwise rel diff {:.3e}", evaluated, worst)};
  });

  b.run("gen_ratio_vs_alternating_sum", [&] {
    CounterRng rng(opt.seed, 0xD1);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const int N = 2 + t % 7;
      std::vector<double> u;
      double x = 0.1 + rng.uniform();
      for (int k = 0; k < N; ++k) {
        u.push_back(x);
        x += 0.2 + 2.0 * rng.uniform();
      }
      const cplx s(8.0 * rng.uniform() - 4.0, 8.0 * rng.uniform() - 4.0);
      const OrderedGrid g(u);
      worst = std::max(worst, rel_diff(gen_vandermonde_ratio(s, g), alternating_sum(s, g)));
    }
    return Outcome{worst < 1e-9, fmt::format("50 grids, N <= 8, max rel diff {:.3e}", worst)};
  });

  b.run("ratio_on_squares_is_two_eta", [&] {
    CounterRng rng(opt.seed, 0xD2);
    double worst = 0.0;
    for (int N = 2; N <= 10; ++N) {
      const cplx s = random_s_outside_guards(rng, 4.0, N, 0.25);
      worst = std::max(worst, rel_diff(gen_vandermonde_ratio(s, OrderedGrid::squares(N)), 2.0 * eta_series(s, N).value));
    }
    return Outcome{worst < 1e-9, fmt::format("N = 2..10, max rel diff {:.3e}", worst)};
  });

  b.run("delta_closed_forms", [&] {
    CounterRng rng(opt.seed, 0xD3);
    double worst = 0.0, worst_sum = 0.0;
    for (int t = 0; t < 10; ++t) {
      const cplx s = random_s_outside_guards(rng, 4.0, 12, 0.25);
      for (int N = 2; N <= 12; ++N) {
        const TridiagCoeffs c = tridiag_coeffs(s, N, opt.guard);
        const std::vector<cplx> d = delta_sequence(c, 0.0, 1.0);
        const std::vector<cplx> dt = delta_sequence(c, 1.0, 0.0);
        cplx partial = 0.0;
        for (int n = 2; n <= N; ++n) {
          partial += c.lambda_inv_at(n);
          const double scale = std::max(1.0, std::abs(partial));
          worst = std::max(worst, std::abs(d[n] - (1.0 + partial)) / scale);
          worst = std::max(worst, std::abs(dt[n] + partial) / scale);
        }
        worst_sum = std::max(worst_sum, std::abs(d[N] + dt[N] - 1.0));
      }
    }
    return Outcome{worst < 1e-12 && worst_sum < 1e-12,
                   fmt::format("n <= N <= 12, max closed-form deviation {:.3e}, |Delta + Delta~ - 1| {:.3e}", worst,
                               worst_sum)};
  });

  b.run("contfrac_small_case", [] {
    // N = 2, s = 1: weights (2/3, -1/6), so eta_2(1) = 7/12 and 1/Delta_2 = 6/7
    const EvalResult r = eta_contfrac(1.0, 2);
    const double inv = r.meta.at("inverse_re");
    return Outcome{std::abs(inv - 6.0 / 7.0) < 1e-15 && std::abs(r.value - 7.0 / 12.0) < 1e-15,
                   fmt::format("1/Delta = {:.17g}, eta_2(1) = {:.17g}", inv, r.value.real())};
  });

  b.run("tridiag_undefined_at_zero", [] {
    try {
      eta_tridiag(0.0, 8);
    } catch (const Error& e) {
      return Outcome{e.code() == Errc::DomainError, e.what()};
    }
    return Outcome{false, "no error raised"};
  });

  b.run("integral_representation_quadrature", [] {
    double worst = 0.0;
    for (int N : {2, 3})
      for (cplx s : {cplx(-1.0), cplx(1.0), cplx(2.0), cplx(1.0, 2.0), cplx(3.5, -0.5)})
        worst = std::max(worst, rel_diff(detVs_integral_quadrature(s, N), detVs_direct(s, N)));
    return Outcome{worst < 1e-7, fmt::format("N in {{2, 3}}, 5 values of s, max rel diff {:.3e}", worst)};
  });
}

// ---------------------------------------------------------------- sampling

void sampling_scope(const SuiteOptions& opt, std::vector<CheckResult>& out) {
  Battery b("sampling", out);
  SamplerConfig cfg;
  cfg.seed = opt.seed;
  const long n = opt.samples;

  b.run("interlacing", [&] {
    long total = 0, bad = 0;
    const std::vector<OrderedGrid> grids = {OrderedGrid::squares(3), OrderedGrid::squares(4), OrderedGrid::squares(8),
                                            OrderedGrid({0.5, 0.75, 3.0, 3.1, 9.0})};
    for (std::size_t i = 0; i < grids.size(); ++i) {
      for (const auto& x : gibbs_samples(grids[i], cfg, 2000, i)) {
        ++total;
        if (!InterlacedSample{x, grids[i].values()}.interlaced()) ++bad;
      }
      if (grids[i].size() <= DixonAndersonRejection::kMaxN)
        for (const auto& x : rejection_samples(grids[i], opt.seed + i, 2000)) {
          ++total;
          if (!InterlacedSample{x, grids[i].values()}.interlaced()) ++bad;
        }
    }
    return Outcome{bad == 0, fmt::format("{} samples, violations {}", total, bad)};
  });

  b.run("gibbs_vs_rejection_ks", [&] {
    const long m = 10000;
    SamplerConfig thin = cfg;
    thin.thinning = 10;
    bool ok = true;
    std::string detail;
    for (int N : {3, 4}) {
      const OrderedGrid u = OrderedGrid::squares(N);
      const auto g = gibbs_samples(u, thin, m, static_cast<std::uint64_t>(N));
      const auto r = rejection_samples(u, opt.seed + static_cast<std::uint64_t>(N), m);
      const double crit = stats::ks_critical(m, m, 0.01);
      for (int k = 0; k < N - 1; ++k) {
        std::vector<double> a, c;
        for (long i = 0; i < m; ++i) {
          a.push_back(g[i][k]);
          c.push_back(r[i][k]);
        }
        const double d = stats::ks_two_sample(a, c);
        ok &= d < crit;
        detail += fmt::format("{}N={} x{} D={:.4f}", detail.empty() ? "" : "; ", N, k + 1, d);
      }
      if (N == 4) detail += fmt::format(" (critical {:.4f})", crit);
    }
    return Outcome{ok, detail};
  });

  b.run("rejection_acceptance_rate", [&] {
    double rate = 0.0;
    DixonAndersonRejection r(OrderedGrid::squares(3), CounterRng(opt.seed, 7));
    for (int i = 0; i < 20000; ++i) r.next();
    rate = r.acceptance_rate();
    const double se = std::sqrt(0.25 / r.proposals());
    return Outcome{std::abs(rate - 0.5) < 4.0 * se, fmt::format("u = (1, 4, 9): rate {:.5f}, expected 0.5", rate)};
  });

  b.run("eta_mc_s2_N4", [&] { return within_se(eta_mc(2.0, 4, cfg, n), eta_series(2.0, 4).value); });
  b.run("eta_mc_s1_N8", [&] { return within_se(eta_mc(1.0, 8, cfg, n), eta_series(1.0, 8).value); });
  b.run("eta_mc_complex_s", [&] {
    const cplx s(1.5, 2.0);
    return within_se(eta_mc(s, 5, cfg, n), eta_series(s, 5).value);
  });

  b.run("zero_variance_at_s0", [&] {
    const MCEstimate e = eta_mc(0.0, 6, cfg, n);
    const MCEstimate r = ratio_mc(OrderedGrid::squares(4), 0.0, cfg, n);
    const MCEstimate x = exp_moment_mc(OrderedGrid({1.0, 2.0}), 0.0, cfg, n);
    const bool ok = e.mean == 0.5 && e.std_error == 0.0 && r.mean == 1.0 && r.std_error == 0.0 && x.mean == 1.0 &&
                    x.std_error == 0.0;
    return Outcome{ok, fmt::format("eta_mc {} ratio_mc {} exp_moment_mc {}", fmt_c(e.mean), fmt_c(r.mean), fmt_c(x.mean))};
  });

  b.run("psi_closed_limit_monotone", [] {
    int bad = 0;
    std::string detail;
    for (int k : {1, 2, 3}) {
      const double target = 1.0 / (k * k);
      double prev = std::numeric_limits<double>::infinity();
      for (int N = 8; N <= 256; N *= 2) {
        const double err = std::abs(psi_closed(k, N, 2.0) - target);
        if (!(err < prev)) ++bad;
        prev = err;
      }
      detail += fmt::format("{}n={} err(256) {:.3e}", detail.empty() ? "" : "; ", k, prev);
    }
    return Outcome{bad == 0, detail};
  });

  b.run("psi_mc_x1", [&] { return within_se(psi_mc(1, 4, 2.0, cfg, n), psi_closed(1, 4, 2.0)); });
  b.run("psi_mc_x2", [&] { return within_se(psi_mc(2, 4, 2.0, cfg, n), psi_closed(2, 4, 2.0)); });
  b.run("psi_mc_x0", [&] { return within_se(psi_mc(0, 4, 2.0, cfg, n), psi_zero_target(4, 2.0)); });

  b.run("exp_moment_u1", [&] {
    const OrderedGrid u({1.0});
    return within_se(exp_moment_mc(u, 2.0, cfg, n), exp_moment_closed(u, 2.0));
  });
  b.run("exp_moment_u12", [&] {
    const OrderedGrid u({1.0, 2.0});
    const cplx closed = exp_moment_closed(u, 2.0);
    auto [ok, detail] = within_se(exp_moment_mc(u, 2.0, cfg, n), closed);
    return Outcome{ok && std::abs(closed - 1.5) < 1e-14, detail};
  });
  b.run("exp_moment_squares3", [&] {
    const OrderedGrid u = OrderedGrid::squares(3);
    const cplx closed = exp_moment_closed(u, 1.0);
    const cplx via_weights = gamma(cplx(1.5)) * 2.0 * eta_series(1.0, 3).value;
    auto [ok, detail] = within_se(exp_moment_mc(u, 1.0, cfg, n), closed);
    return Outcome{ok && std::abs(closed - via_weights) < 1e-14, detail};
  });

  b.run("ratio_mc_squares4", [&] {
    const OrderedGrid u = OrderedGrid::squares(4);
    return within_se(ratio_mc(u, 2.0, cfg, n), alternating_sum(2.0, u));
  });
  b.run("ratio_mc_u123_negative_s", [&] {
    const OrderedGrid u({1.0, 2.0, 3.0});
    return within_se(ratio_mc(u, -1.0, cfg, n), alternating_sum(-1.0, u));
  });

  b.run("se_scaling", [&] {
    const double se1 = eta_mc(2.0, 4, cfg, n).std_error;
    const double se4 = eta_mc(2.0, 4, cfg, 4 * n).std_error;
    const double ratio = se1 / se4;
    return Outcome{ratio > 2.0 / 1.5 && ratio < 2.0 * 1.5,
                   fmt::format("se(n) / se(4n) = {:.4f}, expected 2 within a factor 1.5", ratio)};
  });

  b.run("serial_parallel_identical", [&] {
    SamplerConfig serial = cfg, parallel = cfg;
    serial.parallel = false;
    parallel.parallel = true;
    const MCEstimate a = eta_mc(cplx(1.0, 1.0), 6, serial, n);
    const MCEstimate c = eta_mc(cplx(1.0, 1.0), 6, parallel, n);
    const bool ok = a.mean == c.mean && a.std_error == c.std_error;
    return Outcome{ok, fmt::format("serial {} parallel {}", fmt_c(a.mean), fmt_c(c.mean))};
  });
}

// ---------------------------------------------------------------- ensembles

void ensembles_scope(const SuiteOptions& opt, std::vector<CheckResult>& out) {
  Battery b("ensembles", out);
  SamplerConfig cfg;
  cfg.seed = opt.seed;
  const long n = opt.samples;
  const std::vector<EnsembleSpec> small = {EnsembleSpec(Jacobi{3.0, 2.0}, 1), EnsembleSpec(Jacobi{3.0, 2.0}, 2),
                                           EnsembleSpec(Laguerre{3.0, 1.7}, 1), EnsembleSpec(Laguerre{3.0, 1.7}, 2)};

  b.run("normalizations_vs_quadrature", [&] {
    double worst = 0.0;
    for (const auto& spec : small) worst = std::max(worst, rel_diff(normalization_quadrature(spec), normalization(spec)));
    return Outcome{worst < 1e-6, fmt::format("Jacobi(3,2), Laguerre(3,1.7), N in {{1,2}}: max rel diff {:.3e}", worst)};
  });

  b.run("laguerre_exponent", [] {
    const EnsembleSpec spec(Laguerre{3.0, 1.7}, 2);
    const double q = normalization_quadrature(spec);
    const double hom = std::abs(laguerre_norm(2, 3.0, 1.7, LaguerreExponent::homogeneous) / q - 1.0);
    const double sh = std::abs(laguerre_norm(2, 3.0, 1.7, LaguerreExponent::shifted) / q - 1.0);
    return Outcome{hom < 1e-6, fmt::format("theta^((a+N-1)N) rel err {:.3e}; theta^((a+N)N) rel err {:.3e}", hom, sh)};
  });

  b.run("density_integrates_to_one", [&] {
    double worst = 0.0;
    for (const auto& spec : small) worst = std::max(worst, std::abs(density_mass_quadrature(spec) - 1.0));
    return Outcome{worst < 1e-6, fmt::format("max |mass - 1| {:.3e}", worst)};
  });

  b.run("jacobi_to_laguerre_limit", [] {
    const int N = 2;
    const double a = 3.0, theta = 1.7;
    const double target = laguerre_norm_log(N, a, theta);
    double prev = std::numeric_limits<double>::infinity(), gap = 0.0;
    bool decreasing = true;
    std::string detail;
    for (double L : {1e2, 1e3, 1e4, 1e5, 1e6}) {
      const double l = selberg_log(N, a, L / theta + 1.0) + (a + N - 1.0) * N * std::log(L);
      gap = std::abs(std::expm1(l - target));
      decreasing &= gap < prev;
      prev = gap;
      detail += fmt::format("{}L={:.0e} gap {:.3e}", detail.empty() ? "" : "; ", L, gap);
    }
    return Outcome{decreasing && gap < 1e-3, detail};
  });

  b.run("marginal_of_x", [] {
    const double a = 3.0, bb = 2.0;
    const EnsembleSpec spec(Jacobi{a, bb}, 2);
    const double log_beta = std::lgamma(a + 1.0) + std::lgamma(bb + 1.0) - std::lgamma(a + bb + 2.0);
    double worst = 0.0;
    for (double x : {0.1, 0.3, 0.5, 0.8}) {
      const double expected = std::exp(a * std::log(x) + bb * std::log1p(-x) - log_beta);
      worst = std::max(worst, std::abs(marginal_x_quadrature(spec, x) / expected - 1.0));
    }
    return Outcome{worst < 1e-6, fmt::format("N=2 Jacobi(3,2) vs Beta(a+1,b+1): max rel diff {:.3e}", worst)};
  });

  const std::vector<cplx> svals = {cplx(1.0), cplx(2.0), cplx(1.0, 1.0)};

  double half_err = 0.0, full_err = 0.0;
  b.run("avg_ratio_closed_vs_quadrature", [&] {
    for (const auto& spec : small)
      for (cplx s : svals) {
        const cplx q = avg_ratio_quadrature(spec, s);
        half_err = std::max(half_err, rel_diff(avg_ratio_closed(spec, s, GammaArgument::half_s), q));
        full_err = std::max(full_err, rel_diff(avg_ratio_closed(spec, s, GammaArgument::full_s), q));
      }
    return Outcome{half_err < 1e-6, fmt::format("N in {{1,2}}, both ensembles, 3 values of s: max rel diff {:.3e}", half_err)};
  });

  b.run("avg_ratio_gamma_argument", [&] {
    const bool half_ok = half_err < 1e-6, full_ok = full_err < 1e-6;
    const char* verdict = half_ok && !full_ok ? "Gamma_{N-1}(s/2)" : (full_ok && !half_ok ? "Gamma_{N-1}(s)" : "undecided");
    return Outcome{half_ok && !full_ok,
                   fmt::format("Gamma_{{N-1}}(s/2) max rel err {:.3e}; Gamma_{{N-1}}(s) max rel err {:.3e}; adopted {}",
                               half_err, full_err, verdict)};
  });

  b.run("corollary_closed_vs_quadrature", [&] {
    double worst = 0.0;
    for (const auto& spec : small)
      for (cplx s : {cplx(1.0), cplx(2.0)})
        worst = std::max(worst, rel_diff(corollary_integral_quadrature(spec, s), corollary_closed(spec, s)));
    return Outcome{worst < 1e-5, fmt::format("N in {{1,2}}, both ensembles: max rel diff {:.3e}", worst)};
  });

  b.run("theorem_corollary_consistency", [&] {
    double worst = 0.0;
    for (const auto& spec : small) {
      const cplx s(1.5, 0.5);
      const cplx lhs = corollary_integral_quadrature(spec, s) / normalization_quadrature(spec);
      worst = std::max(worst, rel_diff(lhs, avg_ratio_quadrature(spec, s)));
    }
    return Outcome{worst < 1e-6, fmt::format("cube integral / Z_N vs ordered expectation: max rel diff {:.3e}", worst)};
  });

  b.run("ensemble_sampler_ks", [&] {
    // Jacobi(2, 1), N = 1: density 2u, CDF u^2
    SamplerConfig thin = cfg;
    thin.thinning = 5;
    const long m = 10000;
    std::vector<double> xs;
    for (const auto& u : ensemble_samples(EnsembleSpec(Jacobi{2.0, 1.0}, 1), thin, m, 3)) xs.push_back(u[0]);
    const double d = stats::ks_one_sample(xs, [](double u) { return u * u; });
    const double crit = stats::ks_critical(m, 0, 0.01);
    return Outcome{d < crit, fmt::format("D = {:.4f}, critical {:.4f}", d, crit)};
  });

  b.run("ensemble_sampler_mean", [&] {
    const EnsembleSpec spec(Laguerre{3.0, 1.7}, 2);
    const cplx target =
        ordered_expectation_quadrature(spec, [](const std::vector<double>& u) { return cplx(u[0] + u[1]); });
    const MCEstimate est = run_chunks(
        n, cfg,
        [&](CounterRng& rng, long count, std::vector<cplx>& o) {
          EnsembleSampler chain(spec, cfg, rng);
          for (long i = 0; i < count; ++i) {
            const auto& u = chain.next();
            o.push_back(u[0] + u[1]);
          }
        },
        "ensemble_mean");
    return within_se(est, target);
  });

  struct MCCase {
    EnsembleSpec spec;
    double s;
  };
  for (const MCCase& c : {MCCase{EnsembleSpec(Jacobi{3.0, 2.0}, 2), 2.0}, MCCase{EnsembleSpec(Laguerre{3.0, 1.0}, 2), 1.0}}) {
    b.run(fmt::format("avg_ratio_mc {} s={}", c.spec.describe(), c.s), [&] {
      const cplx closed = avg_ratio_closed(c.spec, c.s);
      const AvgRatioEstimate e = avg_ratio_mc(c.spec, c.s, cfg, n);
      const double z1 = z_score(e.alternating, closed), z2 = z_score(e.joint, closed);
      const double comb = std::hypot(e.alternating.std_error, e.joint.std_error);
      const double z12 = std::abs(e.alternating.mean - e.joint.mean) / comb;
      return Outcome{z1 <= 4.0 && z2 <= 4.0 && z12 <= 4.0,
                     fmt::format("closed {} alternating {} (z {:.3f}) joint {} (z {:.3f}) cross z {:.3f}; acceptance {:.3f}/{:.3f}",
                                 fmt_c(closed), fmt_c(e.alternating.mean), z1, fmt_c(e.joint.mean), z2, z12,
                                 e.ensemble_acceptance, e.joint_acceptance)};
    });
  }

  b.run("avg_ratio_mc_s0", [&] {
    const AvgRatioEstimate e = avg_ratio_mc(EnsembleSpec(Jacobi{3.0, 2.0}, 3), 0.0, cfg, n);
    const bool ok = e.alternating.mean == 1.0 && e.joint.mean == 1.0 && e.alternating.std_error == 0.0 &&
                    e.joint.std_error == 0.0;
    return Outcome{ok, fmt::format("alternating {} joint {}", fmt_c(e.alternating.mean), fmt_c(e.joint.mean))};
  });
}

}  // namespace

SuiteReport run_suite(const SuiteOptions& opt) {
  const auto& scopes = suite_scopes();
  if (std::find(scopes.begin(), scopes.end(), opt.scope) == scopes.end())
    throw Error(Errc::DomainError, "unknown suite scope '" + opt.scope + "'");
  if (opt.samples < 1) throw Error(Errc::DomainError, "samples must be positive");
  SuiteReport report;
  const bool all = opt.scope == "all";
  if (all || opt.scope == "exact") exact_scope(opt, report.checks);
  if (all || opt.scope == "series") series_scope(opt, report.checks);
  if (all || opt.scope == "determinants") determinants_scope(opt, report.checks);
  if (all || opt.scope == "sampling") sampling_scope(opt, report.checks);
  if (all || opt.scope == "ensembles") ensembles_scope(opt, report.checks);
  return report;
}

}  // namespace altzeta
