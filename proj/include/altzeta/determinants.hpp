#pragma once

// Determinant-based evaluations of eta_N(s): the factorial-scaled N x N
// determinant, generalized Vandermonde ratios V^{(s/2)}(u)/V^{(0)}(u) and
// their alternating-sum form, the box integral for det V^{(s)}_N, and the
// tridiagonal recurrence with its continued fraction.

#include "altzeta/eta_core.hpp"

#include <vector>

namespace altzeta {

/// Strictly increasing positive nodes u_1 < ... < u_N with every gap above
/// `min_gap`. Throws Errc::GridError otherwise.
class OrderedGrid {
 public:
  explicit OrderedGrid(std::vector<double> u, double min_gap = 1e-9);
  /// (1, 4, 9, ..., N^2).
  static OrderedGrid squares(int N);

  std::size_t size() const { return u_.size(); }
  double operator[](std::size_t i) const { return u_[i]; }
  const std::vector<double>& values() const { return u_; }

 private:
  std::vector<double> u_;
};

struct DetOptions {
  int cap = 40;
  /// Results with an LU reciprocal-condition estimate below this are flagged.
  double rcond_threshold = 1e-16;
};

/// 1/2 det M, M_{n,1} = n^{1-s}, M_{n,k} = n^{2k-1}/(2k-1)! (k >= 2), by
/// partially pivoted LU in extended precision. meta: "growth_factor",
/// "rcond"; flag "ill_conditioned" when rcond < threshold.
/// Throws Errc::CapExceeded when N > cap and Errc::DomainError when N < 2.
EvalResult eta_det(SParam s, int N, const DetOptions& opt = {});

/// det(u^{-s/2}, u, ..., u^{N-1}) / det(1, u, ..., u^{N-1}). Rows are scaled
/// by 1/u_n before factorization. Throws Errc::GridError when N < 2.
cplx gen_vandermonde_ratio(SParam s, const OrderedGrid& u);

/// sum_n (-1)^{n-1} u_n^{-s/2} prod_{j != n} u_j / |u_j - u_n|.
cplx alternating_sum(SParam s, const OrderedGrid& u);

/// det V^{(s)}_N, rows (n^{-s}, n^2, n^4, ..., n^{2(N-1)}), by direct LU.
cplx detVs_direct(SParam s, int N);

/// det V^{(s)}_N from the box integral
///   h_N(s) (N-1)! int prod_{i<j}(x_j - x_i) prod_n (x_n/(n(n+1)))^{s/2} dx,
/// x_n in [n^2, (n+1)^2]. N in {2, 3} and Re s > -2, else Errc::DomainError.
cplx detVs_integral_quadrature(SParam s, int N, double rel_tol = 1e-11);

struct TridiagCoeffs {
  int N;
  cplx s;
  /// lambda_{n,N}^{-1} = 2 a_{n,N} (n^{-s} - 1) for n = 2..N; index n-2.
  std::vector<cplx> lambda_inv;
  /// beta_{2,N} = 1/lambda_{2,N}, beta_{n,N} = lambda_{n-1,N}/lambda_{n,N}; index n-2.
  std::vector<cplx> beta;

  cplx lambda_inv_at(int n) const { return n == 1 ? cplx(1.0) : lambda_inv.at(static_cast<std::size_t>(n - 2)); }
  cplx beta_at(int n) const { return beta.at(static_cast<std::size_t>(n - 2)); }
};

/// Throws Errc::DomainError when N < 2, |s| <= guard, or some
/// lambda_{k,N}^{-1} (2 <= k <= N-1) vanishes to within guard, where a beta
/// would be undefined (k^{-s} = 1).
TridiagCoeffs tridiag_coeffs(SParam s, int N, double guard = kDefaultGuard);

/// Delta_0..Delta_N from Delta_n = (1 + beta_n) Delta_{n-1} - beta_n Delta_{n-2}.
std::vector<cplx> delta_sequence(const TridiagCoeffs& c, cplx d0, cplx d1);

/// Delta_{N,N}/2 with Delta_0 = 0, Delta_1 = 1.
EvalResult eta_tridiag(SParam s, int N, double guard = kDefaultGuard);

/// 1/Delta_{N,N} = 1 - beta_2/(1 + beta_2 - beta_3/(1 + beta_3 - ... - beta_N/(1 + beta_N))),
/// evaluated tail first. Returns Delta_{N,N}/2; meta "inverse_re"/"inverse_im"
/// hold the continued-fraction value. Throws Errc::ContFracBreakdown when a partial
/// denominator falls below `breakdown` in modulus.
EvalResult eta_contfrac(SParam s, int N, double guard = kDefaultGuard, double breakdown = 1e-12);
cplx contfrac_value(const TridiagCoeffs& c, double breakdown = 1e-12);

}  // namespace altzeta
