#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hpw/functionals.hpp"
#include "hpw/inequality_lab.hpp"
#include "hpw/json_io.hpp"
#include "hpw/lattice.hpp"
#include "hpw/spectral.hpp"

namespace hpw {

/// Sampling data plus the synthesis dictionary. A negative gamma selects the
/// default 1e-10 * trace(G) / dim(G).
struct ReconstructionProblem {
  double band = 0.0;
  double sharpness = 1.0;  ///< smooth profile parameter of the synthesis kernel
  Lattice lattice;
  FunctionalKind kind = FunctionalKind::kDirac;
  double epsilon = 0.0;
  std::vector<Point> dictionary;  ///< empty means the lattice centers
  double gamma = -1.0;

  SpectralProfile profile() const { return SpectralProfile::smooth(band, sharpness); }
  FunctionalFamily family() const { return build_family(lattice, kind, epsilon); }
  const std::vector<Point>& synthesis_centers() const {
    return dictionary.empty() ? lattice.centers : dictionary;
  }
  /// Ball-average samples enter divided by |K_nu|.
  bool normalized() const { return kind == FunctionalKind::kBallAverage; }
};

ReconstructionProblem problem_from_setup(const SamplingSetup& setup, double omega,
                                         double sharpness, double epsilon);

Json problem_to_json(const ReconstructionProblem& problem);
ReconstructionProblem problem_from_json(const Json& json);

struct ReconstructionReport {
  double residual = 0.0;          ///< ||A c - s|| / ||s|| for the noiseless samples
  double relative_l2_error = 0.0;  ///< ||R(s) - f|| / ||f||
  double noise_amplification = 0.0;  ///< max ||R(s + eta) - R(s)||_2 / ||eta||_2
  double gram_condition = 0.0;
  double frame_prediction = 0.0;        ///< r^(d/2) / c1
  double lower_frame_prediction = 0.0;  ///< r^(d/2) c2, the least-squares worst case
  double noise_level = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
};

Json report_to_json(const ReconstructionReport& report);
ReconstructionReport reconstruction_report_from_json(const Json& json);

/// Regularized least squares min ||A c - s||^2 + gamma c^T G c, solved in
/// G-whitened coordinates. Matrices and factorizations are built once.
class Reconstructor {
 public:
  /// Throws IllPosedError when cond(G) > 1e12.
  explicit Reconstructor(const ReconstructionProblem& problem);

  /// Samples outside the range of A are projected, never rejected.
  Eigen::VectorXd coefficients(std::span<const double> samples) const;
  BandlimitedFn operator()(std::span<const double> samples) const;

  /// Samples of f as the solver expects them (normalized for ball averages).
  std::vector<double> samples_of(const BandlimitedFn& f) const;
  /// ||f_c||_2 = sqrt(c^T G c).
  double span_norm(const Eigen::VectorXd& c) const;

  const Eigen::MatrixXd& sampling_matrix() const { return a_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  double gram_condition() const { return gram_condition_; }
  double gamma() const { return gamma_; }
  const FunctionalFamily& family() const { return family_; }

 private:
  SpectralProfile profile_;
  std::vector<Point> centers_;
  FunctionalFamily family_;
  bool normalized_;
  Eigen::MatrixXd a_;
  Eigen::MatrixXd gram_;
  Eigen::LLT<Eigen::MatrixXd> gram_chol_;
  Eigen::MatrixXd whitened_;  ///< A L^-T
  Eigen::LLT<Eigen::MatrixXd> normal_chol_;
  double gram_condition_ = 0.0;
  double gamma_ = 0.0;
};

/// Throws DomainError when samples.size() differs from the family size.
BandlimitedFn reconstruct(const ReconstructionProblem& problem, std::span<const double> samples);

/// ||f - h||_2 from the spectral Gram of the merged center set.
double l2_distance(const BandlimitedFn& f, const BandlimitedFn& h);

/// Noiseless recovery of f_true plus the worst noise amplification over
/// `trials` Gaussian perturbations of standard deviation noise_level.
ReconstructionReport stability_probe(const ReconstructionProblem& problem,
                                     const BandlimitedFn& f_true, double noise_level, int trials,
                                     std::uint64_t seed);

}  // namespace hpw
