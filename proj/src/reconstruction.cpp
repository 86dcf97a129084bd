#include "hpw/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hpw/errors.hpp"
#include "hpw/parallel.hpp"

namespace hpw {

namespace {

Json points_to_json(const std::vector<Point>& points) {
  Json out = Json::array();
  for (const Point& p : points) out.push_back(Json::array({p.u, p.v}));
  return out;
}

std::vector<Point> points_from_json(const Json& json) {
  std::vector<Point> out;
  for (const Json& p : json) out.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return out;
}

}  // namespace

ReconstructionProblem problem_from_setup(const SamplingSetup& setup, double omega,
                                         double sharpness, double epsilon) {
  ReconstructionProblem problem;
  problem.band = omega;
  problem.sharpness = sharpness;
  problem.lattice = setup.lattice;
  problem.kind = setup.family.kind;
  problem.epsilon = setup.family.kind == FunctionalKind::kBallAverage ? epsilon : 0.0;
  problem.dictionary = setup.dictionary;
  return problem;
}

Json problem_to_json(const ReconstructionProblem& problem) {
  Json out;
  out["band"] = problem.band;
  out["sharpness"] = problem.sharpness;
  out["kind"] = to_string(problem.kind);
  out["epsilon"] = problem.epsilon;
  out["gamma"] = problem.gamma;
  out["lattice"] = lattice_to_json(problem.lattice);
  out["dictionary"] = points_to_json(problem.dictionary);
  return out;
}

ReconstructionProblem problem_from_json(const Json& json) {
  ReconstructionProblem problem;
  problem.band = json.at("band").get<double>();
  problem.sharpness = json.value("sharpness", 1.0);
  problem.kind = functional_kind_from_string(json.at("kind").get<std::string>());
  problem.epsilon = json.value("epsilon", 0.0);
  problem.gamma = json.value("gamma", -1.0);
  problem.lattice = lattice_from_json(json.at("lattice"));
  if (json.contains("dictionary")) problem.dictionary = points_from_json(json.at("dictionary"));
  return problem;
}

Json report_to_json(const ReconstructionReport& report) {
  Json out;
  out["residual"] = report.residual;
  out["relativeL2Error"] = report.relative_l2_error;
  out["noiseAmplification"] = report.noise_amplification;
  out["gramCondition"] = report.gram_condition;
  out["framePrediction"] = double_to_json(report.frame_prediction);
  out["lowerFramePrediction"] = double_to_json(report.lower_frame_prediction);
  out["noiseLevel"] = report.noise_level;
  out["trials"] = report.trials;
  out["seed"] = report.seed;
  return out;
}

ReconstructionReport reconstruction_report_from_json(const Json& json) {
  ReconstructionReport r;
  r.residual = json.at("residual").get<double>();
  r.relative_l2_error = json.at("relativeL2Error").get<double>();
  r.noise_amplification = json.at("noiseAmplification").get<double>();
  r.gram_condition = json.at("gramCondition").get<double>();
  r.frame_prediction = json_to_double(json.at("framePrediction"));
  r.lower_frame_prediction = json_to_double(json.at("lowerFramePrediction"));
  r.noise_level = json.at("noiseLevel").get<double>();
  r.trials = json.at("trials").get<int>();
  r.seed = json.at("seed").get<std::uint64_t>();
  return r;
}

// ---------------------------------------------------------------------------

Reconstructor::Reconstructor(const ReconstructionProblem& problem)
    : profile_(problem.profile()),
      centers_(problem.synthesis_centers()),
      family_(problem.family()),
      normalized_(problem.normalized()) {
  if (centers_.empty()) throw DomainError("reconstruction dictionary is empty");
  if (family_.size() != problem.lattice.centers.size()) {
    throw DomainError("family and lattice sizes differ");
  }
  gram_ = spectral_gram(profile_, centers_);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram_, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  gram_condition_ = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(gram_condition_ <= 1e12)) {
    throw IllPosedError("reconstruction dictionary is ill-posed: Gram condition " +
                            format_double(gram_condition_) +
                            " exceeds 1e12; use fewer or more widely separated centers",
                        gram_condition_);
  }
  const double n = static_cast<double>(centers_.size());
  gamma_ = problem.gamma >= 0.0 ? problem.gamma : 1e-10 * gram_.trace() / n;

  a_ = hpw::sampling_matrix(family_, profile_, centers_, normalized_);
  gram_chol_.compute(gram_);
  // B = A L^-T, so that c^T G c = z^T z with c = L^-T z.
  whitened_ = gram_chol_.matrixL().solve(a_.transpose()).transpose();
  Eigen::MatrixXd normal = whitened_.transpose() * whitened_;
  normal.diagonal().array() += gamma_;
  normal_chol_.compute(normal);
  if (normal_chol_.info() != Eigen::Success) {
    throw IllPosedError("regularized normal matrix is not positive definite", gram_condition_);
  }
}

Eigen::VectorXd Reconstructor::coefficients(std::span<const double> samples) const {
  if (samples.size() != family_.size()) {
    throw DomainError("expected " + std::to_string(family_.size()) + " samples, got " +
                      std::to_string(samples.size()));
  }
  const Eigen::Map<const Eigen::VectorXd> s(samples.data(), static_cast<Eigen::Index>(samples.size()));
  const Eigen::VectorXd z = normal_chol_.solve(whitened_.transpose() * s);
  return gram_chol_.matrixU().solve(z);
}

BandlimitedFn Reconstructor::operator()(std::span<const double> samples) const {
  const Eigen::VectorXd c = coefficients(samples);
  return BandlimitedFn(profile_, centers_, std::vector<double>(c.data(), c.data() + c.size()));
}

std::vector<double> Reconstructor::samples_of(const BandlimitedFn& f) const {
  return sample(family_, f, normalized_);
}

double Reconstructor::span_norm(const Eigen::VectorXd& c) const {
  return std::sqrt(std::max(0.0, c.dot(gram_ * c)));
}

BandlimitedFn reconstruct(const ReconstructionProblem& problem, std::span<const double> samples) {
  return Reconstructor(problem)(samples);
}

double l2_distance(const BandlimitedFn& f, const BandlimitedFn& h) {
  if (f.profile().name() != h.profile().name()) {
    throw DomainError("l2_distance: functions use different kernels");
  }
  // Merge equal centers so that matching coefficients cancel before the quadratic form.
  std::vector<Point> centers = f.centers();
  std::vector<double> coeffs = f.coeffs();
  for (std::size_t j = 0; j < h.centers().size(); ++j) {
    const Point y = h.centers()[j];
    auto it = std::find_if(centers.begin(), centers.end(),
                           [&](const Point& x) { return x.u == y.u && x.v == y.v; });
    if (it == centers.end()) {
      centers.push_back(y);
      coeffs.push_back(-h.coeffs()[j]);
    } else {
      coeffs[it - centers.begin()] -= h.coeffs()[j];
    }
  }
  const BandlimitedFn diff(f.profile(), std::move(centers), std::move(coeffs));
  return std::sqrt(std::max(0.0, l2_inner(diff, diff)));
}

ReconstructionReport stability_probe(const ReconstructionProblem& problem,
                                     const BandlimitedFn& f_true, double noise_level, int trials,
                                     std::uint64_t seed) {
  if (!(noise_level >= 0.0)) throw DomainError("noise level must be non-negative");
  if (trials < 1) throw DomainError("trials must be >= 1");
  const Reconstructor solver(problem);

  ReconstructionReport report;
  report.noise_level = noise_level;
  report.trials = trials;
  report.seed = seed;
  report.gram_condition = solver.gram_condition();

  const std::vector<double> s = solver.samples_of(f_true);
  const Eigen::VectorXd c = solver.coefficients(s);
  const Eigen::Map<const Eigen::VectorXd> sv(s.data(), static_cast<Eigen::Index>(s.size()));
  report.residual = (solver.sampling_matrix() * c - sv).norm() / sv.norm();
  const BandlimitedFn f_rec(problem.profile(), problem.synthesis_centers(),
                            std::vector<double>(c.data(), c.data() + c.size()));
  report.relative_l2_error =
      l2_distance(f_rec, f_true) / std::sqrt(l2_inner(f_true, f_true));

  const FrameBounds fb = frame_bounds(solver.sampling_matrix(), solver.gram(), problem.lattice.radius);
  const double r = problem.lattice.radius;
  report.frame_prediction = r / fb.c1;
  report.lower_frame_prediction = r * fb.c2;

  std::vector<double> amplification(trials, 0.0);
  parallel_for(trials, [&](std::size_t t) {
    std::mt19937_64 rng(trial_seed(seed, 80, t));
    std::normal_distribution<double> normal(0.0, noise_level > 0.0 ? noise_level : 1.0);
    std::vector<double> noisy = s;
    double eta_sq = 0.0;
    for (double& v : noisy) {
      const double e = noise_level > 0.0 ? normal(rng) : 0.0;
      v += e;
      eta_sq += e * e;
    }
    if (eta_sq == 0.0) return;
    const Eigen::VectorXd dc = solver.coefficients(noisy) - c;
    amplification[t] = solver.span_norm(dc) / std::sqrt(eta_sq);
  });
  report.noise_amplification = *std::max_element(amplification.begin(), amplification.end());
  return report;
}

}  // namespace hpw
