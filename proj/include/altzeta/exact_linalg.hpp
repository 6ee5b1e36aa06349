#pragma once

// Exact-rational Vandermonde, Lagrange and partial-fraction kernel, plus the
// closed forms for the "identity plus rank one" matrices
//   A = diag(lambda) + 1 1^T.
// No floating point anywhere in this module.

#include "altzeta/matrix.hpp"
#include "altzeta/rational.hpp"

#include <span>
#include <vector>

namespace altzeta {

/// Pairwise-distinct rational nodes x_1..x_N. Construction throws
/// Errc::DegenerateNodes on a repeated node.
class NodeSet {
 public:
  explicit NodeSet(std::vector<Rational> nodes);

  std::size_t size() const { return nodes_.size(); }
  const Rational& operator[](std::size_t i) const { return nodes_[i]; }
  std::span<const Rational> values() const { return nodes_; }
  bool strictly_increasing() const;

 private:
  std::vector<Rational> nodes_;
};

/// Ascending-degree coefficients; trailing zeros are not significant.
using PolyCoeffs = std::vector<Rational>;

/// Degree after trimming trailing zeros; the zero polynomial has degree -1.
int degree(const PolyCoeffs& p);
Rational poly_eval(const PolyCoeffs& p, const Rational& x);

/// prod_{i<j} (x_j - x_i).
Rational vandermonde_det(const NodeSet& nodes);

/// det of the Vandermonde matrix on (1^2, 2^2, ..., N^2), in the factorial
/// closed form (1/N!) prod_{n=1}^{N-1} (2n+1)!.
Rational squares_vandermonde_det(unsigned N);

/// Rows (1, x_i, x_i^2, ..., x_i^{N-1}).
Matrix<Rational> vandermonde_matrix(const NodeSet& nodes);

/// Coefficients of L_n(x) = prod_{j != n} (x - x_j) / (x_n - x_j).
PolyCoeffs lagrange_basis(const NodeSet& nodes, std::size_t n);

/// W = V^{-1}; column n holds the coefficients of the n-th Lagrange basis
/// polynomial.
Matrix<Rational> vandermonde_inverse(const NodeSet& nodes);

/// First row of V^{-1}: w_{1n} = prod_{j != n} x_j / (x_j - x_n), i.e. L_n(0).
/// Throws Errc::ZeroNode if some node is 0.
std::vector<Rational> vandermonde_inverse_first_row(const NodeSet& nodes);

/// Value at x of the interpolant of degree < N. Throws Errc::ArityError when
/// |values| != |nodes|.
Rational lagrange_interpolate(const NodeSet& nodes, std::span<const Rational> values,
                              const Rational& x);

/// c_n = P(x_n) / Q'(x_n) with Q = prod (x - x_n), so that
/// P/Q = sum c_n / (x - x_n). Throws Errc::DegreeError when deg P >= N.
std::vector<Rational> partial_fraction_coeffs(const PolyCoeffs& p, const NodeSet& nodes);

/// Determinant by cofactor expansion along the first row; an O(n!) oracle,
/// limited to 7 x 7 (Errc::CapExceeded beyond).
Rational cofactor_det(const Matrix<Rational>& m);

/// The K x K matrix with 1 + lambda_i on the diagonal and 1 elsewhere.
Matrix<Rational> rank_one_perturbed_matrix(std::span<const Rational> lambdas);

/// (prod lambda_i)(1 + sum 1/lambda_i). Throws Errc::ZeroLambda.
Rational rank_one_perturbed_det(std::span<const Rational> lambdas);

/// b_ij = -1/(S lambda_i lambda_j), b_ii = 1/lambda_i - 1/(S lambda_i^2),
/// S = 1 + sum 1/lambda_i. Throws Errc::ZeroLambda, or Errc::SingularMatrix
/// when S == 0.
Matrix<Rational> rank_one_perturbed_inverse(std::span<const Rational> lambdas);

}  // namespace altzeta
