#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hpw/errors.hpp"
#include "hpw/spectral.hpp"
#include "ode_residual.hpp"

using namespace hpw;

TEST_CASE("spherical functions") {
  for (double lambda : {0.0, 0.5, 2.0, 8.0, 30.0}) CHECK(spherical_function(lambda, 0.0) == 1.0);
  // phi_{i/2} = 1 is outside the real line; phi_0 is positive and decays.
  CHECK(spherical_function(0.0, 3.0) > 0.0);
  CHECK(spherical_function(0.0, 3.0) < spherical_function(0.0, 1.0));
  for (double lambda : {0.5, 2.0, 8.0}) {
    for (double r : {0.1, 0.7, 2.0, 5.0}) {
      CAPTURE(lambda);
      CAPTURE(r);
      CHECK(testing::spherical_ode_residual(lambda, r) < 1e-6);
    }
  }
  // Evenness in lambda.
  CHECK(spherical_function(-2.5, 1.3) == doctest::Approx(spherical_function(2.5, 1.3)).epsilon(1e-14));
}

TEST_CASE("batch evaluation matches the checked path") {
  const std::vector<double> lambdas{0.1, 1.0, 4.0, 9.5};
  std::vector<double> out(lambdas.size());
  spherical_function_batch(2.2, lambdas, out);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    CHECK(out[i] == doctest::Approx(spherical_function(lambdas[i], 2.2)).epsilon(1e-11));
  }
}

TEST_CASE("Plancherel density calibration") {
  const PlancherelDensity& mu = plancherel_density();
  CHECK(mu(0.0) == 0.0);
  CHECK(mu(0.3) > 0.0);
  CHECK(mu(-0.3) == doctest::Approx(mu(0.3)));
  CHECK(mu.calibration_residual < 1e-4);
  CHECK(mu.normalization == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-3));
  // Frozen after first use.
  CHECK(&plancherel_density() == &mu);
}

TEST_CASE("profiles") {
  const SpectralProfile box = SpectralProfile::box(3.0);
  CHECK(box(0.0) == 1.0);
  CHECK(box(2.99) == 1.0);
  CHECK(box(3.01) == 0.0);
  const SpectralProfile smooth = SpectralProfile::smooth(3.0, 1.0);
  CHECK(smooth(0.0) == doctest::Approx(1.0));
  CHECK(smooth(3.0) == 0.0);
  CHECK(smooth(2.9) < smooth(1.0));
  const SpectralProfile bump = SpectralProfile::bump_at_band(3.0, 0.1);
  CHECK(bump(2.5) == 0.0);
  CHECK(bump(2.95) > 0.0);
  CHECK(bump.lower() == doctest::Approx(2.9));
  CHECK(smooth.name() != box.name());
  CHECK(smooth.node_count() >= 64);
  const SpectralProfile lifted = smooth.with_laplacian_power(2.0);
  CHECK(lifted(1.0) == doctest::Approx(smooth(1.0) * (1.0 + 0.25)));
  CHECK_THROWS(SpectralProfile::box(-1.0));
}

TEST_CASE("kernel spans") {
  const SpectralProfile g = SpectralProfile::smooth(4.0, 1.0);
  const auto k = radial_kernel(g);
  CHECK(k->r_max() >= kDefaultKernelRadius);
  CHECK(radial_kernel(g).get() == k.get());
  // K(x, y) depends only on the distance.
  const Point y = from_polar(1.2, 0.4);
  const Point x = from_polar(0.5, 2.0);
  CHECK(filtered_kernel(g, x, y) == doctest::Approx((*k)(geodesic_distance(x, y))).epsilon(1e-13));

  std::mt19937_64 rng(11);
  const BandlimitedFn f = random_span(g, 6, 1.5, rng);
  CHECK(f.centers().size() == 6);
  CHECK(f.scaled(2.0)(x) == doctest::Approx(2.0 * f(x)));
}

TEST_CASE("Gram matrices are positive definite") {
  const SpectralProfile g = SpectralProfile::smooth(2.0, 1.0);
  std::mt19937_64 rng(2);
  std::vector<Point> centers;
  for (int i = 0; i < 30; ++i) centers.push_back(sample_area_uniform(2.5, rng));
  const Eigen::MatrixXd gram = spectral_gram(g, centers);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-10 * gram.trace());
  CHECK((gram - gram.transpose()).norm() == 0.0);
}

TEST_CASE("spectral inner products agree with spatial quadrature") {
  const SpectralProfile g = SpectralProfile::smooth(3.0, 1.0);
  std::mt19937_64 rng(4);
  const BandlimitedFn f = random_span(g, 4, 1.0, rng);
  const BandlimitedFn h = random_span(g, 4, 1.0, rng);
  const PolarGrid grid = grid_for_band(9.0, 3.0);
  const double spatial = integrate(grid, [&](Point x) { return f(x) * h(x); });
  const double spectral = l2_inner(f, h);
  const double scale = std::sqrt(l2_inner(f, f) * l2_inner(h, h));
  CHECK(std::abs(spatial - spectral) < 1e-4 * scale);
  const LpNorm two = lp_norm(f, 2.0, grid, TailPolicy::kReport);
  CHECK(two.tail_bound > 0.0);
  CHECK(two.value == doctest::Approx(std::sqrt(l2_inner(f, f))).epsilon(1e-4));
  CHECK_THROWS_AS(lp_norm(f, 2.0, grid_for_band(2.0, 3.0)), TailError);
}

TEST_CASE("Killing derivatives") {
  const SpectralProfile g = SpectralProfile::smooth(3.0, 1.0);
  const Point y = from_polar(0.8, 1.1);
  const BandlimitedFn radial(g, {y}, {1.0});
  for (int j = 1; j <= 3; ++j) {
    CHECK(std::abs(killing_derivative(radial, {j})(y)) < 1e-8);
  }
  std::mt19937_64 rng(8);
  const BandlimitedFn f = random_span(g, 5, 1.0, rng);
  const Point x = from_polar(0.6, -0.9);
  for (int j = 1; j <= 3; ++j) {
    const double t = 1e-3;
    const double fd = (f(killing_flow(j, t, x)) - f(killing_flow(j, -t, x))) / (2 * t);
    CHECK(killing_derivative(f, {j})(x) == doctest::Approx(fd).epsilon(1e-5));
  }
  CHECK_THROWS(killing_derivative(f, {1, 2, 3, 1}));
}
