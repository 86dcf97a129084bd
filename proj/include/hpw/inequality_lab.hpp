#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hpw/functionals.hpp"
#include "hpw/json_io.hpp"
#include "hpw/spectral.hpp"

namespace hpw {

/// One measured inequality lhs <= rhs. passed == (ratio <= 1 + tolerance).
struct InequalityReport {
  std::string name;
  Json parameters = Json::object();  ///< omega, p, q, r, m, seed, counts, tolerance, ...
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double tolerance = 0.0;
  Json witness = Json::object();  ///< description of the worst trial function
  Json details = Json::object();  ///< auxiliary measurements
  bool passed = false;

  /// Sets ratio and passed from lhs, rhs and tolerance.
  void finish();
};

Json report_to_json(const InequalityReport& report);
InequalityReport report_from_json(const Json& json);
Json reports_to_json(const std::vector<InequalityReport>& reports);
/// Header plus one row per report: name, omega, p, q, r, lhs, rhs, ratio, passed.
std::string reports_to_csv(const std::vector<InequalityReport>& reports);
bool all_passed(const std::vector<InequalityReport>& reports);

/// Independent stream for trial `index` of experiment stream `stream`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Exponent bookkeeping for the Nikolskii inequality with m = 2d.
struct NikolskiiSchedule {
  int d = 2;
  double p = 1.0;
  double q = 2.0;
  double alpha = 0.0;  ///< d/p - d/q
  double beta = 0.0;   ///< alpha / (2d)
  int m = 4;
  double t_star = 0.0;  ///< alpha / (2d - alpha)

  /// Requires d = 2, 1 <= p < q <= inf and 0 < alpha < d.
  static NikolskiiSchedule make(int d, double p, double q);

  double r_of_omega(double omega) const { return t_star / omega; }
  /// t^-alpha (1 + t^m).
  double eta(double t) const;
  /// ((1 - beta)^(1 - beta) beta^beta)^-1.
  double eta_closed_form() const;
  /// Minimizer of eta, (alpha / (2d - alpha))^(1/m).
  double t_minimizer() const;
};

/// Trial function settings shared by the harnesses.
struct TrialSpace {
  int centers = 24;
  double domain_radius = 4.0;  ///< norms are taken on B(o, R_dom)
  double sharpness = 1.0;      ///< smooth profile parameter
  /// Centers are drawn in B(o, R_dom - center_margin).
  double center_margin = 1.0;

  double center_radius() const { return domain_radius - center_margin; }
};

/// ||D^s f||_2 <= (omega^2 + rho^2)^(s/2) ||f||_2 over random box-profile spans,
/// evaluated spectrally. details.sharpness is the single-kernel ratio for the
/// bump profile of width bump_width * omega.
InequalityReport check_bernstein(double omega, double s, int trials, std::uint64_t seed,
                                 const TrialSpace& space = {}, double bump_width = 0.01);

/// Empirical Killing-field Bernstein constants a(omega) for fields {V_1, V_2}
/// and all index tuples of length k. One report per band plus a summary whose
/// lhs is the relative spread max a / min a - 1 against rhs 0.25.
std::vector<InequalityReport> check_v_bernstein(const std::vector<double>& omegas, int k,
                                                int trials, std::uint64_t seed,
                                                const TrialSpace& space = {});

/// r^l ||V_k^l f|| <= a^(m-l) r^m ||V_k^m f|| + c_m a^-l ||f|| for p = 2; c_m is
/// fitted at a = 1 on the same trial set and then checked at the given a.
InequalityReport check_interpolation(double omega, int l, int m, double a, double r, int trials,
                                     std::uint64_t seed, const TrialSpace& space = {});

struct NikolskiiOptions {
  TrialSpace space{24, 3.0, 1.0, 1.0};
  int isometries = 32;
  /// Trials for which the three-term chain is evaluated (the sup witness first).
  int chain_trials = 6;
  /// Center counts cycled over trial indices.
  std::vector<int> center_counts{1, 2, 4, 8, 16, 24};
};

/// One measurement report per band (tolerance infinite; it records the sup
/// ratio against omega^alpha and the chain constants) and a final slope report.
std::vector<InequalityReport> check_nikolskii(const NikolskiiSchedule& schedule,
                                              const std::vector<double>& omegas, int trials,
                                              std::uint64_t seed,
                                              const NikolskiiOptions& options = {});

struct PlancherelPolyaOptions {
  double domain_radius = 4.0;   ///< sampling lattice domain
  double span_radius = 2.0;     ///< dictionary domain
  double dictionary_scale = 2.0;  ///< dictionary lattice radius = scale / omega
  double epsilon = 0.25;        ///< ball-average radius factor
  double admissibility = 1.0;   ///< working constant C: requires r < 1 / (C omega)
  double sharpness = 1.0;
};

/// Sampling lattice on B(o, domain_radius), its functional family, and a coarser
/// dictionary lattice of radius dictionary_scale / omega on B(o, span_radius).
struct SamplingSetup {
  SpectralProfile profile;
  Lattice lattice;
  FunctionalFamily family;
  std::vector<Point> dictionary;
  bool normalized = false;  ///< ball averages are divided by their mass
};

SamplingSetup make_sampling_setup(double omega, double r, FunctionalKind kind,
                                  std::uint64_t seed, const PlancherelPolyaOptions& options);

/// p = 2 frame constants of a sampling matrix A on the span with Gram G.
struct FrameBounds {
  double sigma_min = 0.0;  ///< extreme generalized eigenvalues of (A^T A, G)
  double sigma_max = 0.0;
  double c1 = 0.0;  ///< r^-1 / sqrt(sigma_max)
  double c2 = 0.0;  ///< r^-1 / sqrt(sigma_min)
  double gram_condition = 0.0;

  double conditioning() const { return c2 / c1; }
};

/// Throws IllPosedError when cond(G) > 1e12.
FrameBounds frame_bounds(const Eigen::MatrixXd& a, const Eigen::MatrixXd& gram, double r);

/// Frame constants c1, c2 with c1 S <= r^(-d/p) ||f||_p <= c2 S, S the l_p norm
/// of the samples. p = 2: generalized eigenvalues of (A^T A, G) on the dictionary
/// span. p = 1, inf: Monte Carlo over random span elements.
InequalityReport check_plancherel_polya(double omega, double r, double p, FunctionalKind kind,
                                        int trials, std::uint64_t seed,
                                        const PlancherelPolyaOptions& options = {});

/// c2/c1 must not increase as r decreases (reports sorted by r internally).
InequalityReport check_pp_monotonicity(const std::vector<InequalityReport>& by_radius);

}  // namespace hpw
