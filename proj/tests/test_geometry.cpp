#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hpw/errors.hpp"
#include "hpw/geometry.hpp"
#include "hpw/quadrature.hpp"

using namespace hpw;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
  for (int n : {1, 2, 5, 16, 48}) {
    const QuadratureRule rule = gauss_legendre(n, -0.5, 2.0);
    double s = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) s += rule.weights[k] * std::pow(rule.nodes[k], 2 * n - 1);
    const double exact = (std::pow(2.0, 2 * n) - std::pow(-0.5, 2 * n)) / (2 * n);
    CHECK(s == doctest::Approx(exact).epsilon(1e-12));
  }
  CHECK_THROWS(gauss_legendre(0, 0.0, 1.0));
}

TEST_CASE("Chebyshev coefficients reproduce a smooth function") {
  const int n = 16;
  const auto t = chebyshev_points(n);
  std::vector<double> values(n);
  for (int j = 0; j < n; ++j) values[j] = std::exp(t[j]);
  const auto c = chebyshev_coefficients(values);
  for (double x : {-1.0, -0.3, 0.0, 0.77, 1.0}) {
    CHECK(chebyshev_eval(c.data(), n, x) == doctest::Approx(std::exp(x)).epsilon(1e-14));
  }
}

TEST_CASE("geodesic distance") {
  CHECK(geodesic_distance(kOrigin, kOrigin) == 0.0);
  CHECK(distance_from_origin(from_polar(2.5, 1.0)) == doctest::Approx(2.5).epsilon(1e-14));
  // Opposite points on a diameter add up.
  CHECK(geodesic_distance(from_polar(1.0, 0.0), from_polar(2.0, std::numbers::pi)) ==
        doctest::Approx(3.0).epsilon(1e-13));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const Point a = sample_area_uniform(3.0, rng);
    const Point b = sample_area_uniform(3.0, rng);
    const Point c = sample_area_uniform(3.0, rng);
    CHECK(geodesic_distance(a, b) == doctest::Approx(geodesic_distance(b, a)).epsilon(1e-14));
    CHECK(geodesic_distance(a, c) <= geodesic_distance(a, b) + geodesic_distance(b, c) + 1e-12);
    CHECK(polar_distance(to_polar_point(a), to_polar_point(b)) ==
          doctest::Approx(geodesic_distance(a, b)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(geodesic_distance({1.0, 0.0}, kOrigin), DomainError);
  CHECK_THROWS_AS(distance_from_origin({0.8, 0.8}), DomainError);
}

TEST_CASE("sphere and ball areas") {
  CHECK(sphere_area(0.0) == 0.0);
  CHECK(sphere_area(1.3) == doctest::Approx(2.0 * std::numbers::pi * std::sinh(1.3)));
  // The rank-one formula with a = 1, b = 0 is the curvature -1/2 circle.
  CHECK(sphere_area_killing_form(1.0, 1, 0) ==
        doctest::Approx(2.0 * std::numbers::pi * std::sqrt(2.0) * std::sinh(1.0 / std::sqrt(2.0))));
  CHECK(ball_area(2.0) == doctest::Approx(2.0 * std::numbers::pi * (std::cosh(2.0) - 1.0)));
  CHECK(ball_area(1e-6) == doctest::Approx(std::numbers::pi * 1e-12).epsilon(1e-9));
  CHECK_THROWS_AS(sphere_area(-1.0), DomainError);
  MetricConvention three_d;
  three_d.dim = 3;
  CHECK_THROWS_AS(sphere_area(1.0, three_d), DomainError);
}

TEST_CASE("Killing flows are isometric one-parameter groups") {
  std::mt19937_64 rng(9);
  for (int field = 1; field <= 3; ++field) {
    for (int i = 0; i < 20; ++i) {
      const Point a = sample_area_uniform(2.5, rng);
      const Point b = sample_area_uniform(2.5, rng);
      const double t = 0.7, s = -0.4;
      CHECK(geodesic_distance(killing_flow(field, t, a), killing_flow(field, t, b)) ==
            doctest::Approx(geodesic_distance(a, b)).epsilon(1e-11));
      const Point composed = killing_flow(field, s, killing_flow(field, t, a));
      const Point direct = killing_flow(field, s + t, a);
      CHECK(geodesic_distance(composed, direct) < 1e-11);
    }
  }
  // Translations move o at unit speed; rotation fixes it.
  CHECK(distance_from_origin(killing_flow(1, 1.5, kOrigin)) == doctest::Approx(1.5));
  CHECK(distance_from_origin(killing_flow(2, -0.8, kOrigin)) == doctest::Approx(0.8));
  CHECK(distance_from_origin(killing_flow(3, 2.0, kOrigin)) == 0.0);
  CHECK_THROWS_AS(killing_flow(4, 1.0, kOrigin), DomainError);
}

TEST_CASE("transvections carry o to the target and invert") {
  const Point y = from_polar(1.7, 2.2);
  CHECK(geodesic_distance(transvect(y, kOrigin), y) < 1e-13);
  const Point x = from_polar(0.9, -0.4);
  CHECK(geodesic_distance(transvect_inverse(y, transvect(y, x)), x) < 1e-12);
}

TEST_CASE("polar grid integrates the area") {
  const PolarGrid grid = build_polar_grid(4.0, 40, 64);
  CHECK(integrate(grid, [](Point) { return 1.0; }) ==
        doctest::Approx(ball_area(4.0)).epsilon(1e-10));
  // A radial Gaussian against its closed form 2 pi int e^{-s^2} sinh s ds on [0, inf).
  const PolarGrid wide = build_polar_grid(7.0, 120, 16);
  const double gauss = integrate(wide, [](Point x) {
    const double r = distance_from_origin(x);
    return std::exp(-r * r);
  });
  const double exact = std::numbers::pi * std::sqrt(std::numbers::pi) * std::exp(0.25) * std::erf(0.5);
  CHECK(gauss == doctest::Approx(exact).epsilon(1e-10));
  CHECK_THROWS_AS(build_polar_grid(40.0, 8, 16), QuadratureError);
  CHECK_THROWS_AS(build_polar_grid(2.0, 4, 16), DomainError);
}

TEST_CASE("point index range queries agree with brute force") {
  std::mt19937_64 rng(3);
  std::vector<PolarPoint> pts;
  PointIndex index(0.3, 3.0);
  for (std::uint32_t i = 0; i < 400; ++i) {
    pts.push_back(to_polar_point(sample_area_uniform(3.0, rng)));
    index.insert(pts.back(), i);
  }
  for (int k = 0; k < 50; ++k) {
    const PolarPoint x = to_polar_point(sample_area_uniform(3.0, rng));
    int brute = 0;
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) {
      const double d = polar_distance(x, p);
      if (d < 0.3) ++brute;
      nearest = std::min(nearest, d);
    }
    CHECK(index.count_within(x, 0.3) == brute);
    if (nearest <= 0.3) {
      CHECK(index.nearest_within(x, 0.3) == doctest::Approx(nearest).epsilon(1e-12));
    } else {
      CHECK(std::isinf(index.nearest_within(x, 0.3)));
    }
  }
}
