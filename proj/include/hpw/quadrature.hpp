#pragma once

#include <span>
#include <vector>

namespace hpw {

/// Nodes and weights of a 1D quadrature rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule mapped to [a, b]. Reference rules are cached.
QuadratureRule gauss_legendre(int n, double a, double b);

/// Reference n-point Gauss-Legendre rule on [-1, 1] (shared, immutable).
const QuadratureRule& gauss_legendre_reference(int n);

/// Chebyshev points of the first kind on [-1, 1], ordered increasingly.
std::vector<double> chebyshev_points(int n);

/// Coefficients of the degree n-1 Chebyshev interpolant through values
/// sampled at chebyshev_points(n).
std::vector<double> chebyshev_coefficients(std::span<const double> values);

/// Clenshaw evaluation of sum_k c_k T_k(t), t in [-1, 1].
inline double chebyshev_eval(const double* coeffs, int n, double t) {
  double b1 = 0.0;
  double b2 = 0.0;
  const double two_t = 2.0 * t;
  for (int k = n - 1; k >= 1; --k) {
    const double b0 = coeffs[k] + two_t * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs[0] + t * b1 - b2;
}

}  // namespace hpw
