#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hpw/errors.hpp"
#include "hpw/functionals.hpp"
#include "hpw/lattice.hpp"

using namespace hpw;

TEST_CASE("multiplicity bound") {
  CHECK(multiplicity_bound(2) == doctest::Approx(144.0 * std::exp(1.0)));
  CHECK(multiplicity_bound(2) < 391.45);
}

TEST_CASE("lattices are certified and deterministic") {
  for (double r : {0.5, 1.0}) {
    const Lattice a = build_lattice(r, 3.0, 17);
    const Lattice b = build_lattice(r, 3.0, 17);
    CHECK(a.certificates.all_ok());
    CHECK(a.certificates.min_separation >= r / 2);
    CHECK(a.certificates.max_gap <= r / 2);
    CHECK(a.certificates.max_multiplicity <= 25);
    CHECK(a.centers.front().u == 0.0);
    CHECK(a.centers.front().v == 0.0);
    REQUIRE(a.centers.size() == b.centers.size());
    for (std::size_t i = 0; i < a.centers.size(); ++i) {
      CHECK(a.centers[i].u == b.centers[i].u);
      CHECK(a.centers[i].v == b.centers[i].v);
    }
  }
  const Lattice c = build_lattice(0.5, 3.0, 18);
  CHECK(c.certificates.all_ok());
}

TEST_CASE("certificates detect broken point sets") {
  const Lattice lattice = build_lattice(0.5, 2.0, 3);
  std::vector<Point> sparse(lattice.centers.begin(), lattice.centers.begin() + 3);
  CHECK_FALSE(certify_lattice(sparse, 0.5, 2.0).covering_ok);
  std::vector<Point> crowded = lattice.centers;
  crowded.push_back(from_polar(0.01, 0.0));
  CHECK_FALSE(certify_lattice(crowded, 0.5, 2.0).packing_ok);
}

TEST_CASE("lattice JSON round trip") {
  const Lattice lattice = build_lattice(0.5, 2.0, 5);
  const Lattice back = lattice_from_json(Json::parse(lattice_to_json(lattice).dump()));
  CHECK(back.radius == lattice.radius);
  CHECK(back.domain_radius == lattice.domain_radius);
  CHECK(back.seed == lattice.seed);
  REQUIRE(back.centers.size() == lattice.centers.size());
  for (std::size_t i = 0; i < back.centers.size(); ++i) {
    CHECK(back.centers[i].u == lattice.centers[i].u);
    CHECK(back.centers[i].v == lattice.centers[i].v);
  }
  CHECK(back.certificates.all_ok());
}

TEST_CASE("invalid lattice parameters") {
  CHECK_THROWS(build_lattice(0.0, 2.0, 1));
  CHECK_THROWS(build_lattice(0.5, -1.0, 1));
}

TEST_CASE("sampling functionals") {
  const Point c = from_polar(1.0, 0.3);
  const SamplingFunctional dirac = SamplingFunctional::dirac(c);
  CHECK(dirac.mass() == 1.0);
  CHECK(dirac.apply([](Point x) { return distance_from_origin(x); }) == doctest::Approx(1.0));

  const SamplingFunctional ball = SamplingFunctional::ball_average(c, 0.1);
  CHECK(ball.mass() == doctest::Approx(ball_area(0.1)).epsilon(1e-10));
  CHECK(ball.apply([](Point) { return 1.0; }) / ball.mass() == doctest::Approx(1.0).epsilon(1e-12));
  for (const Point& x : ball.nodes()) CHECK(geodesic_distance(x, c) <= 0.1 + 1e-12);
}

TEST_CASE("families and sampling matrices") {
  const Lattice lattice = build_lattice(0.5, 2.0, 9);
  const FunctionalFamily dirac = build_family(lattice, FunctionalKind::kDirac, 0.0);
  CHECK(dirac.size() == lattice.centers.size());
  const FunctionalFamily balls = build_family(lattice, FunctionalKind::kBallAverage, 0.25);
  CHECK(balls.min_mass == doctest::Approx(ball_area(0.125)).epsilon(1e-10));
  CHECK(balls.max_mass == doctest::Approx(balls.min_mass));
  CHECK_THROWS(build_family(lattice, FunctionalKind::kBallAverage, 0.75));

  CHECK(functional_kind_from_string(to_string(FunctionalKind::kBallAverage)) ==
        FunctionalKind::kBallAverage);
  CHECK_THROWS(functional_kind_from_string("nonsense"));

  const SpectralProfile g = SpectralProfile::smooth(2.0, 1.0);
  const std::vector<Point> dictionary{kOrigin, from_polar(1.0, 0.0), from_polar(1.0, 2.0)};
  const BandlimitedFn f(g, dictionary, {1.0, -0.5, 0.25});
  for (bool normalized : {false, true}) {
    const Eigen::MatrixXd a = sampling_matrix(balls, g, dictionary, normalized);
    const std::vector<double> s = sample(balls, f, normalized);
    const Eigen::Vector3d c(1.0, -0.5, 0.25);
    const Eigen::VectorXd predicted = a * c;
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(predicted(static_cast<Eigen::Index>(i)) == doctest::Approx(s[i]).epsilon(1e-12));
    }
  }
  const std::vector<double> point_samples = sample(dirac, f, false);
  CHECK(point_samples[0] == doctest::Approx(f(lattice.centers[0])));
  const Json json = family_to_json(balls);
  CHECK(json.at("kind") == to_string(FunctionalKind::kBallAverage));
}
