#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "hpw/errors.hpp"
#include "hpw/inequality_lab.hpp"

using namespace hpw;

TEST_CASE("Nikolskii schedule") {
  const NikolskiiSchedule s = NikolskiiSchedule::make(2, 1.0, 2.0);
  CHECK(s.alpha == doctest::Approx(1.0));
  CHECK(s.beta == doctest::Approx(0.25));
  CHECK(s.m == 4);
  CHECK(s.t_star == doctest::Approx(1.0 / 3.0));
  CHECK(s.r_of_omega(4.0) == doctest::Approx(1.0 / 12.0));
  CHECK(s.eta_closed_form() == doctest::Approx(1.7548).epsilon(1e-4));
  CHECK(s.eta_closed_form() <= 2.0);
  CHECK(s.eta(s.t_minimizer()) <= s.eta(s.t_star));
  CHECK(s.eta(s.t_minimizer()) <= s.eta(s.t_minimizer() * 1.01));
  CHECK(s.eta(s.t_minimizer()) <= s.eta(s.t_minimizer() * 0.99));

  const double inf = std::numeric_limits<double>::infinity();
  CHECK(NikolskiiSchedule::make(2, 2.0, inf).alpha == doctest::Approx(1.0));
  CHECK_THROWS_AS(NikolskiiSchedule::make(2, 2.0, 2.0), ConfigError);
  CHECK_THROWS_AS(NikolskiiSchedule::make(2, 3.0, 2.0), ConfigError);
  CHECK_THROWS_AS(NikolskiiSchedule::make(2, 1.0, inf), ConfigError);
  CHECK_THROWS_AS(NikolskiiSchedule::make(3, 1.0, 2.0), ConfigError);
}

TEST_CASE("report serialization") {
  InequalityReport report;
  report.name = "bernstein";
  report.parameters["omega"] = 2.0;
  report.parameters["s"] = 1.0;
  report.lhs = 1.0;
  report.rhs = 2.0;
  report.tolerance = 1e-6;
  report.finish();
  CHECK(report.passed);
  CHECK(report.ratio == 0.5);

  const InequalityReport back = report_from_json(Json::parse(report_to_json(report).dump()));
  CHECK(back.name == report.name);
  CHECK(back.ratio == report.ratio);
  CHECK(back.passed);
  CHECK(back.parameters.at("omega") == 2.0);

  InequalityReport failing = report;
  failing.lhs = 3.0;
  failing.finish();
  CHECK_FALSE(failing.passed);
  CHECK_FALSE(all_passed({report, failing}));
  CHECK(all_passed({report}));

  const std::string csv = reports_to_csv({report, failing});
  CHECK(csv.rfind("name,omega,p,q,r,lhs,rhs,ratio,passed\n", 0) == 0);
  CHECK(csv.find("bernstein,2,,,,1,2,0.5,true") != std::string::npos);
  CHECK(csv.find(",false") != std::string::npos);
  CHECK(reports_to_json({report, failing}).at("passed") == false);
}

TEST_CASE("trial seeds are deterministic and distinct") {
  CHECK(trial_seed(1, 0, 0) == trial_seed(1, 0, 0));
  CHECK(trial_seed(1, 0, 0) != trial_seed(1, 0, 1));
  CHECK(trial_seed(1, 0, 0) != trial_seed(1, 1, 0));
  CHECK(trial_seed(1, 0, 0) != trial_seed(2, 0, 0));
}

TEST_CASE("Bernstein inequality and sharpness") {
  const TrialSpace space{8, 3.0, 1.0, 1.0};
  const InequalityReport a = check_bernstein(4.0, 2.0, 20, 3, space);
  const InequalityReport b = check_bernstein(4.0, 2.0, 20, 3, space);
  CHECK(a.passed);
  CHECK(a.ratio <= 1.0 + 1e-6);
  CHECK(a.ratio == b.ratio);
  CHECK(a.details.at("sharpness").get<double>() >= 0.98);
  CHECK(a.details.at("sharpness").get<double>() <= 1.0 + 1e-9);
}

TEST_CASE("Plancherel-Polya frame bounds") {
  const InequalityReport coarse = check_plancherel_polya(2.0, 0.4, 2.0, FunctionalKind::kDirac, 1, 7);
  CHECK(coarse.passed);
  const double c1 = coarse.details.at("c1").get<double>();
  const double c2 = coarse.details.at("c2").get<double>();
  CHECK(c1 > 0.0);
  CHECK(c2 >= c1);
  CHECK(coarse.details.at("samples").get<double>() > coarse.details.at("dictionarySize").get<double>());
  CHECK_THROWS_AS(check_plancherel_polya(2.0, 0.6, 2.0, FunctionalKind::kDirac, 1, 7), DomainError);
}

TEST_CASE("monotonicity summary") {
  auto make = [](double r, double cond) {
    InequalityReport rep;
    rep.name = "plancherel-polya";
    rep.parameters["omega"] = 2.0;
    rep.parameters["p"] = 2.0;
    rep.parameters["r"] = r;
    rep.lhs = cond;
    rep.rhs = 1e6;
    rep.details["c1"] = 1.0;
    rep.details["c2"] = cond;
    rep.details["conditioning"] = cond;
    rep.finish();
    return rep;
  };
  CHECK(check_pp_monotonicity({make(0.4, 3.0), make(0.2, 2.0), make(0.3, 2.5)}).passed);
  CHECK_FALSE(check_pp_monotonicity({make(0.4, 3.0), make(0.2, 3.5), make(0.3, 2.5)}).passed);
}

TEST_CASE("frame bounds of an orthonormal system") {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(4, 3) * 2.0;
  const Eigen::MatrixXd g = Eigen::MatrixXd::Identity(3, 3);
  const FrameBounds fb = frame_bounds(a, g, 0.5);
  CHECK(fb.sigma_min == doctest::Approx(4.0));
  CHECK(fb.sigma_max == doctest::Approx(4.0));
  CHECK(fb.c1 == doctest::Approx(1.0));
  CHECK(fb.conditioning() == doctest::Approx(1.0));
}
