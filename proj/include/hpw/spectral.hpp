#pragma once

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hpw/geometry.hpp"

namespace hpw {

// ---------------------------------------------------------------------------
// Spherical functions
// ---------------------------------------------------------------------------

/// Quadrature of the angular integral representation of phi_lambda(r) for a
/// fixed r, reusable for every |lambda| <= lambda_max:
///   phi_lambda(r) = sum_i amp_i * cos(lambda * log_base_i).
struct SphericalRule {
  std::vector<double> log_base;
  std::vector<double> amp;
};

/// Graded Gauss-Legendre rule on theta in [0, pi]. Panels double in width away
/// from the peak of (cosh r - sinh r cos theta)^(-1/2) at theta = 0 and are
/// subdivided so that lambda_max * d(log base) <= phase_per_panel.
SphericalRule spherical_rule(double r, double lambda_max, int order = 16,
                             double phase_per_panel = 8.0);

/// phi_lambda(r) = (1/2pi) Re int_0^{2pi} (cosh r - sinh r cos t)^(-1/2 + i lambda) dt.
/// Cross-checks two quadrature resolutions; throws QuadratureError when they
/// disagree by more than 1e-10 of the absolute integrand mass.
double spherical_function(double lambda, double r);

/// Unchecked batch evaluation for many lambdas at one radius.
void spherical_function_batch(double r, std::span<const double> lambdas, std::span<double> out);

// ---------------------------------------------------------------------------
// Plancherel density
// ---------------------------------------------------------------------------

/// mu(lambda) = lambda tanh(pi lambda) / Z, Z fixed by a round-trip calibration.
struct PlancherelDensity {
  double normalization = 0.0;
  double calibration_residual = 0.0;

  double operator()(double lambda) const;
};

/// Result of transforming F(r) = exp(-r^2) by 2D quadrature and inverting it.
struct PlancherelCalibration {
  double normalization = 0.0;
  double max_error = 0.0;              ///< max |F - inverse| on r in [0, 3]
  std::vector<double> radii;           ///< check radii
  std::vector<double> reconstructed;   ///< inverse transform at the check radii
};

PlancherelCalibration calibrate_plancherel();

/// Process-wide density, calibrated on first use and frozen afterwards.
const PlancherelDensity& plancherel_density();

// ---------------------------------------------------------------------------
// Spectral profiles
// ---------------------------------------------------------------------------

/// A weight g(lambda) supported in [lower, band]. The name identifies the
/// function uniquely and keys the kernel cache.
class SpectralProfile {
 public:
  /// Indicator of [0, band]: the reproducing kernel of PW_band.
  static SpectralProfile box(double band);
  /// exp(a - a / (1 - (lambda/band)^2)): C-infinity, even in lambda, vanishing
  /// to all orders at the band edge.
  static SpectralProfile smooth(double band, double sharpness = 1.0);
  /// Smooth bump supported in [band - width, band].
  static SpectralProfile bump_at_band(double band, double width);

  /// g(lambda) * (lambda^2 + rho^2)^(s/2).
  SpectralProfile with_laplacian_power(double s) const;
  /// Pointwise product, supported on the intersection of the supports.
  SpectralProfile times(const SpectralProfile& other) const;

  double operator()(double lambda) const;
  double band() const { return band_; }
  double lower() const { return lower_; }
  const std::string& name() const { return name_; }
  /// Spectral quadrature node count on [lower, band].
  int node_count() const;

 private:
  SpectralProfile(double lower, double band, std::string name,
                  std::function<double(double)> weight);

  double lower_;
  double band_;
  std::string name_;
  std::function<double(double)> weight_;
};

SpectralProfile profile_from_name(const std::string& kind, double band, double parameter);

// ---------------------------------------------------------------------------
// Filtered reproducing kernels
// ---------------------------------------------------------------------------

inline constexpr double kDefaultKernelRadius = 16.0;

/// K_g(r) = int g(lambda) phi_lambda(r) dmu(lambda), tabulated as piecewise
/// Chebyshev series on [0, r_max].
class RadialKernel {
 public:
  RadialKernel(double panel_width, int order, std::vector<double> coeffs);

  double operator()(double r) const;
  double r_max() const { return panel_width_ * panels_; }
  double panel_width() const { return panel_width_; }

 private:
  double panel_width_;
  int order_;
  int panels_;
  std::vector<double> coeffs_;
};

/// Cached kernel for a profile; tables cover distances up to r_max.
std::shared_ptr<const RadialKernel> radial_kernel(const SpectralProfile& g,
                                                  double r_max = kDefaultKernelRadius);

double filtered_kernel(const SpectralProfile& g, Point x, Point y);

/// [K_g(a_i, b_j)].
Eigen::MatrixXd kernel_matrix(const SpectralProfile& g, std::span<const Point> a,
                              std::span<const Point> b);

// ---------------------------------------------------------------------------
// Band-limited functions
// ---------------------------------------------------------------------------

/// f(x) = sum_j c_j K_g(x, y_j), an element of PW_band.
class BandlimitedFn {
 public:
  BandlimitedFn(SpectralProfile profile, std::vector<Point> centers, std::vector<double> coeffs);

  double operator()(Point x) const;

  const SpectralProfile& profile() const { return profile_; }
  double band() const { return profile_.band(); }
  const std::vector<Point>& centers() const { return centers_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  const RadialKernel& kernel() const { return *kernel_; }

  BandlimitedFn scaled(double alpha) const;

 private:
  SpectralProfile profile_;
  std::shared_ptr<const RadialKernel> kernel_;
  std::vector<Point> centers_;
  std::vector<double> coeffs_;
};

BandlimitedFn synthesize(const SpectralProfile& g, std::vector<Point> centers,
                         std::vector<double> coeffs);

/// Random span: `count` area-uniform centers in B(o, center_radius), standard
/// normal coefficients.
BandlimitedFn random_span(const SpectralProfile& g, int count, double center_radius,
                          std::mt19937_64& rng);

/// <f, h> in L2(X), evaluated spectrally: <K_a(., y), K_b(., y')> = K_{ab}(y, y').
double l2_inner(const BandlimitedFn& f, const BandlimitedFn& h);

/// Spectral Gram [<K_g(., y_i), K_g(., y_j)>] = [K_{g^2}(y_i, y_j)].
Eigen::MatrixXd spectral_gram(const SpectralProfile& g, std::span<const Point> centers);

/// D^s f with D = Delta^(1/2): profile multiplied by (lambda^2 + rho^2)^(s/2).
BandlimitedFn apply_laplacian_power(const BandlimitedFn& f, double s);

enum class TailPolicy { kStrict, kReport };

struct LpNorm {
  double value = 0.0;
  /// Minkowski bound on the L_p mass of f outside B(o, R_dom), from the
  /// tabulated kernel decay.
  double tail_bound = 0.0;
};

/// Truncated L_p norm on B(o, R_dom) for p in [1, inf] (p = inf: +infinity).
/// kStrict throws TailError when tail_bound > 1e-6 * value.
LpNorm lp_norm(const BandlimitedFn& f, double p, const PolarGrid& grid,
               TailPolicy policy = TailPolicy::kStrict);

/// Same, for any function sampled on a prepared cloud (no tail estimate).
double lp_norm_of_values(std::span<const double> values, std::span<const double> weights,
                         double p);

/// Tensor grid adequate for |f|^p with f of band `band` on B(o, R).
PolarGrid grid_for_band(double domain_radius, double band);

/// (V_{i_1} ... V_{i_k} f)(x) by nested Richardson-extrapolated central
/// differences along the exact flows; k <= 3.
class KillingDerivative {
 public:
  KillingDerivative(std::function<double(Point)> f, std::vector<int> indices);

  double operator()(Point x) const;
  const std::vector<int>& indices() const { return indices_; }

 private:
  double apply(std::size_t level, Point x) const;

  std::function<double(Point)> f_;
  std::vector<int> indices_;
};

KillingDerivative killing_derivative(const BandlimitedFn& f, std::vector<int> indices);

}  // namespace hpw
