#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "hpw/errors.hpp"
#include "hpw/euclid_oracle.hpp"

using namespace hpw;

TEST_CASE("one-dimensional extremal norms") {
  const double inf = std::numeric_limits<double>::infinity();
  for (double omega : {1.0, std::numbers::pi, 5.0}) {
    CHECK(euclid::extremal_norm_1d(1.0, omega) ==
          doctest::Approx(std::numbers::pi * omega / 2.0).epsilon(1e-9));
    CHECK(euclid::extremal_norm_1d(inf, omega) == doctest::Approx(omega * omega / 4.0));
    // int sin^4(u)/u^4 du = 2 pi / 3.
    CHECK(euclid::extremal_norm_1d(2.0, omega) ==
          doctest::Approx(std::sqrt(std::numbers::pi * std::pow(omega, 3) / 12.0)).epsilon(1e-9));
  }
}

TEST_CASE("Nikolskii constant of the extremal function") {
  const double inf = std::numeric_limits<double>::infinity();
  for (double omega : {std::numbers::pi, 2.0 * std::numbers::pi}) {
    const euclid::ExtremalRatio r = euclid::extremal_ratio(1.0, inf, omega, 1);
    CHECK(std::abs(r.constant - 1.0 / (2.0 * std::numbers::pi)) < 1e-6);
    const euclid::ExtremalRatio r2 = euclid::extremal_ratio(1.0, inf, omega, 2);
    CHECK(r2.constant == doctest::Approx(r.constant * r.constant).epsilon(1e-9));
  }
  // Scale invariance of the constant.
  CHECK(euclid::extremal_ratio(1.0, 2.0, 2.0, 1).constant ==
        doctest::Approx(euclid::extremal_ratio(1.0, 2.0, 7.0, 1).constant).epsilon(1e-9));
  CHECK_THROWS(euclid::extremal_ratio(2.0, 1.0, 1.0, 1));
  CHECK_THROWS(euclid::extremal_ratio(1.0, 2.0, 1.0, 3));
}

TEST_CASE("Shannon sampling") {
  euclid::SincSpan f;
  f.band = std::numbers::pi;
  for (long k = -32; k < 32; ++k) {
    f.shifts.push_back(k);
    f.coeffs.push_back(std::cos(0.3 * k) / (1.0 + 0.1 * k * k));
  }
  const euclid::ShannonNorms norms = euclid::shannon_pp(f);
  CHECK(std::abs(norms.discrete * norms.discrete - norms.continuous * norms.continuous) <
        1e-10 * norms.continuous * norms.continuous);
  CHECK(norms.tail_bound < 1e-10);

  const std::vector<double> s = euclid::sample_integers(f, -32, 64);
  const euclid::SincSpan g = euclid::shannon_reconstruct(s, -32);
  for (double x : {-10.3, 0.25, 3.7, 20.01}) CHECK(g(x) == doctest::Approx(f(x)).epsilon(1e-12));

  euclid::SincSpan wide = f;
  wide.band = 4.0;
  CHECK_THROWS_AS(euclid::shannon_pp(wide), DomainError);
}
