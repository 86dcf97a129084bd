#include "hpw/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace hpw {

namespace {

QuadratureRule make_reference(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // boost returns the non-negative zeros in increasing order.
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
  const int half = static_cast<int>(zeros.size());
  for (int k = 0; k < half; ++k) {
    const double x = zeros[k];
    const double dp = boost::math::legendre_p_prime(n, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Odd n: zeros[0] == 0 is the middle node.
    const int up = n / 2 + k;
    const int down = (n % 2 == 1) ? n / 2 - k : n / 2 - 1 - k;
    rule.nodes[up] = x;
    rule.weights[up] = w;
    rule.nodes[down] = -x;
    rule.weights[down] = w;
  }
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre_reference(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<QuadratureRule>(make_reference(n));
  return *slot;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  const QuadratureRule& ref = gauss_legendre_reference(n);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = mid + half * ref.nodes[k];
    rule.weights[k] = half * ref.weights[k];
  }
  return rule;
}

std::vector<double> chebyshev_points(int n) {
  std::vector<double> t(n);
  for (int j = 0; j < n; ++j) {
    t[j] = -std::cos(std::numbers::pi * (j + 0.5) / n);
  }
  return t;
}

std::vector<double> chebyshev_coefficients(std::span<const double> values) {
  const int n = static_cast<int>(values.size());
  std::vector<double> c(n, 0.0);
  // values[j] sits at t_j = -cos(pi (j + 1/2) / n) = cos(pi (n - j - 1/2) / n).
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      const double angle = std::numbers::pi * (n - j - 0.5) / n;
      s += values[j] * std::cos(k * angle);
    }
    c[k] = (k == 0 ? 1.0 : 2.0) * s / n;
  }
  return c;
}

}  // namespace hpw
