#include "altzeta/exact_linalg.hpp"

#include "altzeta/error.hpp"

#include <algorithm>

namespace altzeta {

NodeSet::NodeSet(std::vector<Rational> nodes) : nodes_(std::move(nodes)) {
  std::vector<Rational> sorted = nodes_;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw Error(Errc::DegenerateNodes, "repeated node " + dup->str());
}

bool NodeSet::strictly_increasing() const {
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (!(nodes_[i - 1] < nodes_[i])) return false;
  return true;
}

int degree(const PolyCoeffs& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

Rational poly_eval(const PolyCoeffs& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational vandermonde_det(const NodeSet& nodes) {
  Rational d = 1;
  for (std::size_t j = 0; j < nodes.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) d *= nodes[j] - nodes[i];
  return d;
}

Rational squares_vandermonde_det(unsigned N) {
  if (N == 0) throw Error(Errc::DomainError, "squares_vandermonde_det requires N >= 1");
  Integer num = 1;
  for (unsigned n = 1; n + 1 <= N; ++n) num *= factorial(2 * n + 1);
  return Rational(num, factorial(N));
}

Matrix<Rational> vandermonde_matrix(const NodeSet& nodes) {
  const std::size_t n = nodes.size();
  Matrix<Rational> v(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational p = 1;
    for (std::size_t k = 0; k < n; ++k) {
      v(i, k) = p;
      p *= nodes[i];
    }
  }
  return v;
}

PolyCoeffs lagrange_basis(const NodeSet& nodes, std::size_t n) {
  const std::size_t N = nodes.size();
  PolyCoeffs poly{Rational(1)};
  Rational denom = 1;
  for (std::size_t j = 0; j < N; ++j) {
    if (j == n) continue;
    // poly *= (x - x_j)
    PolyCoeffs next(poly.size() + 1, Rational(0));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= poly[k] * nodes[j];
    }
    poly = std::move(next);
    denom *= nodes[n] - nodes[j];
  }
  for (auto& c : poly) c /= denom;
  return poly;
}

Matrix<Rational> vandermonde_inverse(const NodeSet& nodes) {
  const std::size_t N = nodes.size();
  Matrix<Rational> w(N, N, Rational(0));
  for (std::size_t n = 0; n < N; ++n) {
    PolyCoeffs basis = lagrange_basis(nodes, n);
    for (std::size_t k = 0; k < basis.size(); ++k) w(k, n) = basis[k];
  }
  return w;
}

std::vector<Rational> vandermonde_inverse_first_row(const NodeSet& nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == 0)
      throw Error(Errc::ZeroNode, "node " + std::to_string(i + 1) + " is zero");
  std::vector<Rational> row(nodes.size());
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    Rational w = 1;
    for (std::size_t j = 0; j < nodes.size(); ++j)
      if (j != n) w *= nodes[j] / (nodes[j] - nodes[n]);
    row[n] = w;
  }
  return row;
}

Rational lagrange_interpolate(const NodeSet& nodes, std::span<const Rational> values,
                              const Rational& x) {
  if (values.size() != nodes.size())
    throw Error(Errc::ArityError, std::to_string(values.size()) + " values for " +
                                      std::to_string(nodes.size()) + " nodes");
  Rational sum = 0;
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    Rational term = values[n];
    for (std::size_t j = 0; j < nodes.size(); ++j)
      if (j != n) term *= (x - nodes[j]) / (nodes[n] - nodes[j]);
    sum += term;
  }
  return sum;
}

std::vector<Rational> partial_fraction_coeffs(const PolyCoeffs& p, const NodeSet& nodes) {
  const int deg = degree(p);
  if (deg >= static_cast<int>(nodes.size()))
    throw Error(Errc::DegreeError, "deg P = " + std::to_string(deg) + " but only " +
                                       std::to_string(nodes.size()) + " nodes");
  std::vector<Rational> c(nodes.size());
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    Rational dq = 1;
    for (std::size_t j = 0; j < nodes.size(); ++j)
      if (j != n) dq *= nodes[n] - nodes[j];
    c[n] = poly_eval(p, nodes[n]) / dq;
  }
  return c;
}

Rational cofactor_det(const Matrix<Rational>& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(Errc::ArityError, "cofactor_det needs a square matrix");
  if (n > 7) throw Error(Errc::CapExceeded, "cofactor expansion limited to 7 x 7");
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Rational det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    Matrix<Rational> minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = m(i, j);
    const Rational term = m(0, c) * cofactor_det(minor);
    det += (c % 2 == 0) ? term : Rational(-term);
  }
  return det;
}

namespace {

void require_nonzero(std::span<const Rational> lambdas) {
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    if (lambdas[i] == 0) throw Error(Errc::ZeroLambda, "lambda_" + std::to_string(i + 1) + " = 0");
}

}  // namespace

Matrix<Rational> rank_one_perturbed_matrix(std::span<const Rational> lambdas) {
  const std::size_t K = lambdas.size();
  Matrix<Rational> a(K, K, Rational(1));
  for (std::size_t i = 0; i < K; ++i) a(i, i) += lambdas[i];
  return a;
}

Rational rank_one_perturbed_det(std::span<const Rational> lambdas) {
  require_nonzero(lambdas);
  Rational prod = 1, s = 1;
  for (const auto& l : lambdas) {
    prod *= l;
    s += 1 / l;
  }
  return prod * s;
}

Matrix<Rational> rank_one_perturbed_inverse(std::span<const Rational> lambdas) {
  require_nonzero(lambdas);
  Rational s = 1;
  for (const auto& l : lambdas) s += 1 / l;
  if (s == 0) throw Error(Errc::SingularMatrix, "1 + sum 1/lambda_i = 0");
  const std::size_t K = lambdas.size();
  Matrix<Rational> b(K, K);
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = 0; j < K; ++j)
      b(i, j) = (i == j) ? 1 / lambdas[i] - 1 / (s * lambdas[i] * lambdas[i])
                         : -1 / (s * lambdas[i] * lambdas[j]);
  return b;
}

}  // namespace altzeta
