#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hpw/errors.hpp"
#include "hpw/reconstruction.hpp"

using namespace hpw;

namespace {

PlancherelPolyaOptions small_options() {
  PlancherelPolyaOptions options;
  options.domain_radius = 3.0;
  options.span_radius = 1.5;
  return options;
}

ReconstructionProblem small_problem(FunctionalKind kind = FunctionalKind::kDirac) {
  const SamplingSetup setup = make_sampling_setup(2.0, 0.4, kind, 7, small_options());
  return problem_from_setup(setup, 2.0, 1.0, 0.25);
}

BandlimitedFn random_element(const ReconstructionProblem& problem, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> c(problem.synthesis_centers().size());
  for (double& v : c) v = normal(rng);
  return BandlimitedFn(problem.profile(), problem.synthesis_centers(), c);
}

}  // namespace

TEST_CASE("zero samples give the zero function") {
  const ReconstructionProblem problem = small_problem();
  const Reconstructor solver(problem);
  const std::vector<double> zeros(solver.family().size(), 0.0);
  CHECK(solver.coefficients(zeros).norm() == 0.0);
}

TEST_CASE("reconstruction is linear") {
  const ReconstructionProblem problem = small_problem();
  const Reconstructor solver(problem);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  std::vector<double> s1(solver.family().size()), s2(s1.size()), mix(s1.size());
  for (std::size_t i = 0; i < s1.size(); ++i) {
    s1[i] = normal(rng);
    s2[i] = normal(rng);
    mix[i] = 2.0 * s1[i] - 3.0 * s2[i];
  }
  const Eigen::VectorXd lhs = solver.coefficients(mix);
  const Eigen::VectorXd rhs = 2.0 * solver.coefficients(s1) - 3.0 * solver.coefficients(s2);
  CHECK(solver.span_norm(lhs - rhs) <= 1e-10 * solver.span_norm(lhs));
}

TEST_CASE("exact recovery of span elements") {
  for (FunctionalKind kind : {FunctionalKind::kDirac, FunctionalKind::kBallAverage}) {
    const ReconstructionProblem problem = small_problem(kind);
    const BandlimitedFn f = random_element(problem, 4);
    const Reconstructor solver(problem);
    const BandlimitedFn g = solver(solver.samples_of(f));
    CHECK(l2_distance(g, f) < 1e-8 * std::sqrt(l2_inner(f, f)));
    CHECK(g(from_polar(0.3, 1.0)) == doctest::Approx(f(from_polar(0.3, 1.0))).epsilon(1e-7));
  }
}

TEST_CASE("stability probe") {
  const ReconstructionProblem problem = small_problem();
  const BandlimitedFn f = random_element(problem, 5);
  const ReconstructionReport quiet = stability_probe(problem, f, 0.0, 3, 1);
  CHECK(quiet.noise_amplification == 0.0);
  CHECK(quiet.relative_l2_error < 1e-8);
  CHECK(quiet.residual < 1e-8);

  const ReconstructionReport noisy = stability_probe(problem, f, 1e-3, 5, 1);
  CHECK(noisy.noise_amplification > 0.0);
  CHECK(noisy.noise_amplification <= noisy.lower_frame_prediction * (1.0 + 1e-6));
  CHECK(noisy.frame_prediction > 0.0);
  const ReconstructionReport again = stability_probe(problem, f, 1e-3, 5, 1);
  CHECK(again.noise_amplification == noisy.noise_amplification);

  const ReconstructionReport back =
      reconstruction_report_from_json(Json::parse(report_to_json(noisy).dump()));
  CHECK(back.noise_amplification == noisy.noise_amplification);
  CHECK(back.frame_prediction == noisy.frame_prediction);
  CHECK(back.seed == noisy.seed);
  CHECK_THROWS_AS(stability_probe(problem, f, -1.0, 3, 1), DomainError);
}

TEST_CASE("problem JSON round trip") {
  const ReconstructionProblem problem = small_problem(FunctionalKind::kBallAverage);
  const ReconstructionProblem back = problem_from_json(Json::parse(problem_to_json(problem).dump()));
  CHECK(back.band == problem.band);
  CHECK(back.kind == problem.kind);
  CHECK(back.epsilon == problem.epsilon);
  CHECK(back.dictionary.size() == problem.dictionary.size());
  CHECK(back.lattice.centers.size() == problem.lattice.centers.size());
  const BandlimitedFn f = random_element(problem, 6);
  const std::vector<double> s = Reconstructor(problem).samples_of(f);
  CHECK(Reconstructor(back).coefficients(s).isApprox(Reconstructor(problem).coefficients(s)));
}

TEST_CASE("errors") {
  const ReconstructionProblem problem = small_problem();
  const Reconstructor solver(problem);
  const std::vector<double> short_samples(solver.family().size() - 1, 1.0);
  CHECK_THROWS_AS(solver.coefficients(short_samples), DomainError);

  ReconstructionProblem degenerate = problem;
  degenerate.dictionary = {kOrigin, from_polar(1e-7, 0.0), from_polar(0.5, 1.0)};
  CHECK_THROWS_AS(Reconstructor{degenerate}, IllPosedError);
}
