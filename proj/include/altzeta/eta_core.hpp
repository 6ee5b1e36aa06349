#pragma once

// Weighted finite series for the alternating zeta function
//
//   eta_N(s) = sum_{n=1}^N a_{n,N} n^{-s},
//   a_{n,N}  = 1/2 prod_{j != n} j^2 / (j^2 - n^2)
//            = (-1)^{n-1} C(2N, N-n) / C(2N, N),
//
// which tends to eta(s) for every complex s, together with the entire
// prefactor h_N(s) = prod_{n<N} (1 + s/(2n)) (1 + 1/n)^{-s/2} and a
// reference oracle for eta(s) that shares no code with the weighted series.

#include "altzeta/rational.hpp"
#include "altzeta/special.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace altzeta {

inline constexpr double kDefaultGuard = 1e-6;
inline constexpr int kDefaultWeightCap = 512;

/// Evaluation point s. Components must be finite.
class SParam {
 public:
  SParam(double re, double im = 0.0);  // NOLINT: implicit from real is intended
  SParam(cplx s) : SParam(s.real(), s.imag()) {}  // NOLINT

  cplx value() const { return {re_, im_}; }
  double re() const { return re_; }
  double im() const { return im_; }
  bool is_zero() const { return re_ == 0.0 && im_ == 0.0; }

  /// Distance to the nearest of -2, -4, ..., -2(N-1); +inf when N < 2.
  double pole_distance(int N) const;
  /// Throws Errc::DomainError when s lies within `guard` of -2k, 1 <= k <= N-1.
  void require_off_poles(int N, double guard = kDefaultGuard) const;

 private:
  double re_;
  double im_;
};

/// Exact a_{1,N}, ..., a_{N,N}.
class WeightTable {
 public:
  WeightTable(int N, std::vector<Rational> weights) : N_(N), weights_(std::move(weights)) {}
  int N() const { return N_; }
  /// a_{n,N}, 1-based.
  const Rational& operator()(int n) const { return weights_.at(static_cast<std::size_t>(n - 1)); }
  const std::vector<Rational>& values() const { return weights_; }

 private:
  int N_;
  std::vector<Rational> weights_;
};

enum class Method { series, determinant, tridiag, contfrac, mc, ensemble };
std::string to_string(Method m);

struct EvalResult {
  cplx value;
  Method method;
  int N;
  /// Diagnostics: "growth_factor"/"rcond" for determinants, "std_error" and
  /// "n_samples" for Monte Carlo.
  std::map<std::string, double> meta;
  std::vector<std::string> flags;
};

/// 1/2 prod_{j != n} j^2/(j^2 - n^2), exactly.
Rational weight_product_form(int n, int N);
/// (-1)^{n-1} C(2N, N-n) / C(2N, N), exactly.
Rational weight_binomial_form(int n, int N);

/// Exact weights, both closed forms evaluated and required to agree.
/// Throws Errc::CapExceeded when N > cap, Errc::DomainError when N < 1.
WeightTable weights(int N, int cap = kDefaultWeightCap);

/// Floating-point weights (cached, shareable). N <= 170 converts the exact
/// binomial form; larger N uses a log-domain product.
std::shared_ptr<const std::vector<long double>> float_weights(int N);

EvalResult eta_series(SParam s, int N);

/// eta_N(s) for s in {0, -2, -4, ...}, where n^{-s} is an integer.
/// Throws Errc::DomainError for any other s.
Rational eta_series_exact(int s, int N);

/// h_N(s) = 2 / (s Gamma_{N-1}(s/2)) in pole-free product form.
cplx h_factor(SParam s, int N);

/// (1/z) prod_{n=1}^{M} (1 + 1/n)^z / (1 + z/n), the partial Gamma product.
/// Throws Errc::PoleError for z in {0, -1, -2, ...}.
cplx gamma_product_partial(cplx z, long M);

struct EtaReferenceOptions {
  double consistency_tol = 1e-12;
  /// Relative tolerance of the Riemann-zeta cross check used for real s > 0.
  double zeta_tol = 1e-10;
};

/// Reference eta(s) from the Euler transform of the Dirichlet series,
///   eta(s) = sum_{n>=0} 2^{-n-1} sum_{k=0}^n (-1)^k C(n,k) (k+1)^{-s},
/// summed in 100-digit arithmetic. The series is re-summed with twice the
/// number of terms and must move by less than `consistency_tol`; for real
/// s > 0 the result must also match (1 - 2^{1-s}) zeta(s).
/// Throws Errc::OracleUnstable on either failure.
cplx eta_reference(SParam s, const EtaReferenceOptions& opts = {});

}  // namespace altzeta
