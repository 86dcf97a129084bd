#pragma once

#include <array>
#include <cmath>

#include "hpw/spectral.hpp"

namespace hpw::testing {

/// |phi'' + coth(r) phi' + (lambda^2 + 1/4) phi| at r from eighth-order
/// central differences of spherical_function, relative to max(1, |phi|).
inline double spherical_ode_residual(double lambda, double r, double h = 0.02) {
  static constexpr std::array<double, 4> d1{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  static constexpr std::array<double, 4> d2{8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0};
  const double phi = spherical_function(lambda, r);
  double first = 0.0;
  double second = -205.0 / 72.0 * phi;
  for (int k = 1; k <= 4; ++k) {
    const double plus = spherical_function(lambda, r + k * h);
    const double minus = spherical_function(lambda, r - k * h);
    first += d1[k - 1] * (plus - minus);
    second += d2[k - 1] * (plus + minus);
  }
  first /= h;
  second /= h * h;
  const double residual = second + first / std::tanh(r) + (lambda * lambda + 0.25) * phi;
  return std::abs(residual) / std::max(1.0, std::abs(phi));
}

}  // namespace hpw::testing
