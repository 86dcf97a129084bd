#include "hpw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>

#include "hpw/errors.hpp"
#include "hpw/quadrature.hpp"

namespace hpw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRho = 0.5;
constexpr int kChebOrder = 16;
constexpr std::size_t kMaxRuleNodes = 400000;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double log_base(double r, double theta) {
  const double s = std::sin(0.5 * theta);
  return std::log(std::exp(-r) + 2.0 * std::sinh(r) * s * s);
}

}  // namespace

SphericalRule spherical_rule(double r, double lambda_max, int order, double phase_per_panel) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("spherical_rule: r must be finite and >= 0");
  SphericalRule rule;
  // base(theta) = cosh r - sinh r cos theta = e^-r + 2 sinh r sin^2(theta/2)
  std::vector<double> breaks{0.0};
  const double peak = 2.0 * std::exp(-r);
  if (peak >= 0.5 * kPi) {
    breaks.push_back(kPi);
  } else {
    double b = peak;
    while (b < kPi) {
      breaks.push_back(b);
      b *= 2.0;
    }
    breaks.push_back(kPi);
  }
  const QuadratureRule& ref = gauss_legendre_reference(order);
  const double lam = std::abs(lambda_max);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p];
    const double b = breaks[p + 1];
    const double phase = lam * (log_base(r, b) - log_base(r, a));
    int sub = std::max(1, static_cast<int>(std::ceil(phase / phase_per_panel)));
    sub = std::min<int>(sub, static_cast<int>(kMaxRuleNodes / order));
    const double h = (b - a) / sub;
    for (int s = 0; s < sub; ++s) {
      const double lo = a + s * h;
      for (int k = 0; k < order; ++k) {
        const double theta = lo + 0.5 * h * (ref.nodes[k] + 1.0);
        const double lb = log_base(r, theta);
        rule.log_base.push_back(lb);
        rule.amp.push_back(0.5 * h * ref.weights[k] * std::exp(-0.5 * lb) / kPi);
      }
    }
  }
  return rule;
}

namespace {

double apply_rule(const SphericalRule& rule, double lambda) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.amp.size(); ++i) {
    s += rule.amp[i] * std::cos(lambda * rule.log_base[i]);
  }
  return s;
}

}  // namespace

double spherical_function(double lambda, double r) {
  if (!std::isfinite(lambda) || !std::isfinite(r) || r < 0.0) {
    throw DomainError("spherical_function: need finite lambda and r >= 0");
  }
  if (r == 0.0) return 1.0;
  const SphericalRule coarse = spherical_rule(r, lambda, 16, 8.0);
  const SphericalRule fine = spherical_rule(r, lambda, 24, 4.0);
  const double a = apply_rule(coarse, lambda);
  const double b = apply_rule(fine, lambda);
  double mass = 0.0;
  for (double w : fine.amp) mass += w;
  const double residual = std::abs(a - b);
  if (residual > 1e-10 * mass) {
    throw QuadratureError("spherical_function: angular quadrature did not converge at lambda*r = " +
                              fmt(lambda * r),
                          residual);
  }
  return b;
}

void spherical_function_batch(double r, std::span<const double> lambdas, std::span<double> out) {
  if (out.size() != lambdas.size()) throw std::invalid_argument("spherical_function_batch: size mismatch");
  if (r == 0.0) {
    std::fill(out.begin(), out.end(), 1.0);
    return;
  }
  double lmax = 0.0;
  for (double l : lambdas) lmax = std::max(lmax, std::abs(l));
  const SphericalRule rule = spherical_rule(r, lmax);
  for (std::size_t i = 0; i < lambdas.size(); ++i) out[i] = apply_rule(rule, lambdas[i]);
}

// ---------------------------------------------------------------------------

double PlancherelDensity::operator()(double lambda) const {
  return lambda * std::tanh(kPi * lambda) / normalization;
}

PlancherelCalibration calibrate_plancherel() {
  constexpr double kSpatialRadius = 7.0;
  constexpr double kLambdaMax = 14.0;
  const QuadratureRule radial = gauss_legendre(200, 0.0, kSpatialRadius);
  const QuadratureRule spectral = gauss_legendre(128, 0.0, kLambdaMax);
  const std::size_t nl = spectral.size();

  // Forward transform: 2D quadrature of F * phi_lambda over B(o, 7).
  std::vector<double> transform(nl, 0.0);
  std::vector<double> phi(nl);
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double r = radial.nodes[i];
    spherical_function_batch(r, spectral.nodes, phi);
    const double w = kTwoPi * radial.weights[i] * std::sinh(r) * std::exp(-r * r);
    for (std::size_t k = 0; k < nl; ++k) transform[k] += w * phi[k];
  }

  PlancherelCalibration cal;
  for (int j = 0; j <= 60; ++j) cal.radii.push_back(0.05 * j);
  std::vector<double> raw;
  for (double r : cal.radii) {
    spherical_function_batch(r, spectral.nodes, phi);
    double s = 0.0;
    for (std::size_t k = 0; k < nl; ++k) {
      const double l = spectral.nodes[k];
      s += spectral.weights[k] * transform[k] * phi[k] * l * std::tanh(kPi * l);
    }
    raw.push_back(s);
  }
  double uu = 0.0;
  double uf = 0.0;
  for (std::size_t j = 0; j < raw.size(); ++j) {
    const double f = std::exp(-cal.radii[j] * cal.radii[j]);
    uu += raw[j] * raw[j];
    uf += raw[j] * f;
  }
  cal.normalization = uu / uf;
  for (std::size_t j = 0; j < raw.size(); ++j) {
    const double value = raw[j] / cal.normalization;
    cal.reconstructed.push_back(value);
    cal.max_error = std::max(cal.max_error, std::abs(value - std::exp(-cal.radii[j] * cal.radii[j])));
  }
  return cal;
}

const PlancherelDensity& plancherel_density() {
  static const PlancherelDensity density = [] {
    const PlancherelCalibration cal = calibrate_plancherel();
    if (!(cal.max_error < 1e-4)) {
      throw QuadratureError("Plancherel calibration round trip failed", cal.max_error);
    }
    return PlancherelDensity{cal.normalization, cal.max_error};
  }();
  return density;
}

// ---------------------------------------------------------------------------

SpectralProfile::SpectralProfile(double lower, double band, std::string name,
                                 std::function<double(double)> weight)
    : lower_(lower), band_(band), name_(std::move(name)), weight_(std::move(weight)) {}

SpectralProfile SpectralProfile::box(double band) {
  if (!(band > 0.0)) throw DomainError("box profile: band must be positive");
  return SpectralProfile(0.0, band, "box(" + fmt(band) + ")", [band](double l) {
    return std::abs(l) <= band ? 1.0 : 0.0;
  });
}

SpectralProfile SpectralProfile::smooth(double band, double sharpness) {
  if (!(band > 0.0) || !(sharpness > 0.0)) {
    throw DomainError("smooth profile: band and sharpness must be positive");
  }
  return SpectralProfile(0.0, band, "smooth(" + fmt(band) + "," + fmt(sharpness) + ")",
                         [band, sharpness](double l) {
                           const double t = l / band;
                           if (std::abs(t) >= 1.0) return 0.0;
                           return std::exp(sharpness - sharpness / (1.0 - t * t));
                         });
}

SpectralProfile SpectralProfile::bump_at_band(double band, double width) {
  if (!(band > 0.0) || !(width > 0.0) || width > band) {
    throw DomainError("bump profile: need 0 < width <= band");
  }
  const double mid = band - 0.5 * width;
  const double half = 0.5 * width;
  return SpectralProfile(band - width, band, "bump(" + fmt(band) + "," + fmt(width) + ")",
                         [mid, half](double l) {
                           const double t = (std::abs(l) - mid) / half;
                           if (std::abs(t) >= 1.0) return 0.0;
                           return std::exp(1.0 - 1.0 / (1.0 - t * t));
                         });
}

SpectralProfile SpectralProfile::with_laplacian_power(double s) const {
  if (!(s >= 0.0)) throw DomainError("with_laplacian_power: s must be >= 0");
  if (s == 0.0) return *this;
  auto base = weight_;
  return SpectralProfile(lower_, band_, name_ + "*D^" + fmt(s), [base, s](double l) {
    return base(l) * std::pow(l * l + kRho * kRho, 0.5 * s);
  });
}

SpectralProfile SpectralProfile::times(const SpectralProfile& other) const {
  const double lo = std::max(lower_, other.lower_);
  const double hi = std::min(band_, other.band_);
  if (!(hi > lo)) throw DomainError("profile product has empty support");
  auto a = weight_;
  auto b = other.weight_;
  return SpectralProfile(lo, hi, "(" + name_ + ")x(" + other.name_ + ")",
                         [a, b](double l) { return a(l) * b(l); });
}

double SpectralProfile::operator()(double lambda) const {
  if (std::abs(lambda) > band_) return 0.0;
  return weight_(lambda);
}

int SpectralProfile::node_count() const {
  return std::max(64, static_cast<int>(std::ceil(20.0 * band_)));
}

SpectralProfile profile_from_name(const std::string& kind, double band, double parameter) {
  if (kind == "box") return SpectralProfile::box(band);
  if (kind == "smooth") return SpectralProfile::smooth(band, parameter > 0.0 ? parameter : 1.0);
  if (kind == "bump") return SpectralProfile::bump_at_band(band, parameter);
  throw DomainError("unknown profile kind '" + kind + "' (expected box, smooth or bump)");
}

// ---------------------------------------------------------------------------

namespace {

/// phi_{lambda_i}(r) at Chebyshev nodes of every radial panel.
struct SphericalTable {
  QuadratureRule lambdas;
  double panel_width = 0.0;
  int panels = 0;
  // values[(panel * kChebOrder + node) * n_lambda + i]
  std::vector<double> values;
};

using TableKey = std::tuple<double, double, int, double>;

std::shared_ptr<const SphericalTable> build_table(double lo, double hi, int n, double r_max) {
  auto table = std::make_shared<SphericalTable>();
  table->lambdas = gauss_legendre(n, lo, hi);
  table->panel_width = std::min(0.5, 3.0 / hi);
  table->panels = static_cast<int>(std::ceil(r_max / table->panel_width));
  const std::vector<double> cheb = chebyshev_points(kChebOrder);
  const std::size_t nl = table->lambdas.size();
  table->values.resize(static_cast<std::size_t>(table->panels) * kChebOrder * nl);
  std::vector<double> phi(nl);
  for (int p = 0; p < table->panels; ++p) {
    for (int k = 0; k < kChebOrder; ++k) {
      const double r = table->panel_width * (p + 0.5 * (cheb[k] + 1.0));
      spherical_function_batch(r, table->lambdas.nodes, phi);
      std::copy(phi.begin(), phi.end(),
                table->values.begin() + (static_cast<std::size_t>(p) * kChebOrder + k) * nl);
    }
  }
  return table;
}

std::shared_ptr<const SphericalTable> spherical_table(double lo, double hi, int n, double r_max) {
  static std::mutex mutex;
  static std::map<TableKey, std::shared_ptr<const SphericalTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[TableKey{lo, hi, n, r_max}];
  if (!slot) slot = build_table(lo, hi, n, r_max);
  return slot;
}

}  // namespace

RadialKernel::RadialKernel(double panel_width, int order, std::vector<double> coeffs)
    : panel_width_(panel_width),
      order_(order),
      panels_(static_cast<int>(coeffs.size()) / order),
      coeffs_(std::move(coeffs)) {}

double RadialKernel::operator()(double r) const {
  if (r < 0.0) r = 0.0;
  const double x = r / panel_width_;
  int p = static_cast<int>(x);
  if (p >= panels_) {
    if (r > r_max() * (1.0 + 1e-12)) {
      throw DomainError("kernel table covers distances up to " + fmt(r_max()) + ", got " + fmt(r));
    }
    p = panels_ - 1;
  }
  const double t = 2.0 * (x - p) - 1.0;
  return chebyshev_eval(coeffs_.data() + static_cast<std::size_t>(p) * order_, order_, t);
}

std::shared_ptr<const RadialKernel> radial_kernel(const SpectralProfile& g, double r_max) {
  static std::mutex mutex;
  static std::map<std::pair<std::string, double>, std::shared_ptr<const RadialKernel>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{g.name(), r_max}];
  if (slot) return slot;

  const PlancherelDensity& mu = plancherel_density();
  const auto table = spherical_table(g.lower(), g.band(), g.node_count(), r_max);
  const std::size_t nl = table->lambdas.size();
  std::vector<double> weight(nl);
  for (std::size_t i = 0; i < nl; ++i) {
    const double l = table->lambdas.nodes[i];
    weight[i] = table->lambdas.weights[i] * g(l) * mu(l);
  }
  std::vector<double> coeffs;
  coeffs.reserve(static_cast<std::size_t>(table->panels) * kChebOrder);
  std::vector<double> values(kChebOrder);
  for (int p = 0; p < table->panels; ++p) {
    for (int k = 0; k < kChebOrder; ++k) {
      const double* row = table->values.data() + (static_cast<std::size_t>(p) * kChebOrder + k) * nl;
      double s = 0.0;
      for (std::size_t i = 0; i < nl; ++i) s += weight[i] * row[i];
      values[k] = s;
    }
    const std::vector<double> c = chebyshev_coefficients(values);
    coeffs.insert(coeffs.end(), c.begin(), c.end());
  }
  slot = std::make_shared<const RadialKernel>(table->panel_width, kChebOrder, std::move(coeffs));
  return slot;
}

double filtered_kernel(const SpectralProfile& g, Point x, Point y) {
  return (*radial_kernel(g))(geodesic_distance(x, y));
}

Eigen::MatrixXd kernel_matrix(const SpectralProfile& g, std::span<const Point> a,
                              std::span<const Point> b) {
  const auto kernel = radial_kernel(g);
  Eigen::MatrixXd m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = (*kernel)(geodesic_distance(a[i], b[j]));
  }
  return m;
}

// ---------------------------------------------------------------------------

BandlimitedFn::BandlimitedFn(SpectralProfile profile, std::vector<Point> centers,
                             std::vector<double> coeffs)
    : profile_(std::move(profile)), centers_(std::move(centers)), coeffs_(std::move(coeffs)) {
  if (centers_.empty()) throw DomainError("band-limited function needs at least one center");
  if (centers_.size() != coeffs_.size()) {
    throw DomainError("centers and coefficients differ in length");
  }
  for (const Point& y : centers_) require_in_disk(y);
  kernel_ = radial_kernel(profile_);
}

double BandlimitedFn::operator()(Point x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < centers_.size(); ++j) {
    s += coeffs_[j] * (*kernel_)(geodesic_distance(x, centers_[j]));
  }
  return s;
}

BandlimitedFn BandlimitedFn::scaled(double alpha) const {
  std::vector<double> c = coeffs_;
  for (double& v : c) v *= alpha;
  return BandlimitedFn(profile_, centers_, std::move(c));
}

BandlimitedFn synthesize(const SpectralProfile& g, std::vector<Point> centers,
                         std::vector<double> coeffs) {
  return BandlimitedFn(g, std::move(centers), std::move(coeffs));
}

BandlimitedFn random_span(const SpectralProfile& g, int count, double center_radius,
                          std::mt19937_64& rng) {
  if (count < 1) throw DomainError("random_span: count must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Point> centers;
  std::vector<double> coeffs;
  for (int j = 0; j < count; ++j) {
    centers.push_back(sample_area_uniform(center_radius, rng));
    coeffs.push_back(normal(rng));
  }
  return BandlimitedFn(g, std::move(centers), std::move(coeffs));
}

double l2_inner(const BandlimitedFn& f, const BandlimitedFn& h) {
  const auto kernel = radial_kernel(f.profile().times(h.profile()));
  double s = 0.0;
  for (std::size_t i = 0; i < f.centers().size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < h.centers().size(); ++j) {
      row += h.coeffs()[j] * (*kernel)(geodesic_distance(f.centers()[i], h.centers()[j]));
    }
    s += f.coeffs()[i] * row;
  }
  return s;
}

Eigen::MatrixXd spectral_gram(const SpectralProfile& g, std::span<const Point> centers) {
  return kernel_matrix(g.times(g), centers, centers);
}

BandlimitedFn apply_laplacian_power(const BandlimitedFn& f, double s) {
  return BandlimitedFn(f.profile().with_laplacian_power(s), f.centers(), f.coeffs());
}

// ---------------------------------------------------------------------------

namespace {

/// (2 pi int_a^R |K|^p sinh s ds)^(1/p), or sup_{s >= a} |K| for p = inf.
double kernel_tail(const RadialKernel& kernel, double a, double p) {
  const double r_max = kernel.r_max();
  if (a >= r_max) return 0.0;
  a = std::max(a, 0.0);
  const double w = kernel.panel_width();
  const int first = static_cast<int>(a / w);
  const int last = static_cast<int>(std::ceil(r_max / w - 1e-9));
  if (std::isinf(p)) {
    double sup = 0.0;
    for (int q = first; q < last; ++q) {
      for (int k = 0; k <= 64; ++k) {
        const double s = std::max(a, (q + k / 64.0) * w);
        sup = std::max(sup, std::abs(kernel(std::min(s, r_max))));
      }
    }
    return sup;
  }
  const QuadratureRule& ref = gauss_legendre_reference(24);
  double total = 0.0;
  for (int q = first; q < last; ++q) {
    const double lo = std::max(a, q * w);
    const double hi = std::min(r_max, (q + 1) * w);
    if (hi <= lo) continue;
    for (std::size_t k = 0; k < ref.size(); ++k) {
      const double s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * ref.nodes[k];
      total += 0.5 * (hi - lo) * ref.weights[k] * std::pow(std::abs(kernel(s)), p) * std::sinh(s);
    }
  }
  return std::pow(kTwoPi * total, 1.0 / p);
}

double local_max_abs(const BandlimitedFn& f, Point start, double step, double domain) {
  Point best = start;
  double value = std::abs(f(start));
  const double limit = std::tanh(0.5 * domain);
  double h = step;
  while (h > 1e-10) {
    bool moved = false;
    const Point trial[4] = {{best.u + h, best.v}, {best.u - h, best.v},
                            {best.u, best.v + h}, {best.u, best.v - h}};
    for (const Point& t : trial) {
      if (std::hypot(t.u, t.v) > limit) continue;
      const double v = std::abs(f(t));
      if (v > value) {
        value = v;
        best = t;
        moved = true;
      }
    }
    if (!moved) h *= 0.5;
  }
  return value;
}

}  // namespace

double lp_norm_of_values(std::span<const double> values, std::span<const double> weights,
                         double p) {
  if (!(p >= 1.0)) throw DomainError("lp_norm: p must lie in [1, inf]");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += weights[i] * std::pow(std::abs(values[i]), p);
  return std::pow(s, 1.0 / p);
}

LpNorm lp_norm(const BandlimitedFn& f, double p, const PolarGrid& grid, TailPolicy policy) {
  if (!(p >= 1.0)) throw DomainError("lp_norm: p must lie in [1, inf]");
  const QuadratureCloud cloud = make_cloud(grid);
  std::vector<double> values(cloud.points.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = f(cloud.points[i]);

  LpNorm result;
  result.value = lp_norm_of_values(values, cloud.weights, p);
  if (std::isinf(p) && result.value > 0.0) {
    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const std::size_t top = std::min<std::size_t>(8, order.size());
    std::partial_sort(order.begin(), order.begin() + top, order.end(), [&](auto a, auto b) {
      return std::abs(values[a]) > std::abs(values[b]);
    });
    const double spacing = grid.domain_radius / grid.radial.size();
    for (std::size_t k = 0; k < top; ++k) {
      const Point x = cloud.points[order[k]];
      const double conformal = 0.5 * (1.0 - (x.u * x.u + x.v * x.v));
      result.value = std::max(result.value,
                              local_max_abs(f, x, conformal * spacing, grid.domain_radius));
    }
  }

  for (std::size_t j = 0; j < f.centers().size(); ++j) {
    const double a = grid.domain_radius - distance_from_origin(f.centers()[j]);
    result.tail_bound += std::abs(f.coeffs()[j]) * kernel_tail(f.kernel(), a, p);
  }
  if (policy == TailPolicy::kStrict && result.tail_bound > 1e-6 * result.value) {
    throw TailError("lp_norm: tail bound " + fmt(result.tail_bound) + " exceeds 1e-6 of the norm " +
                        fmt(result.value) + "; increase R_dom",
                    result.tail_bound, result.value);
  }
  return result;
}

PolarGrid grid_for_band(double domain_radius, double band) {
  const int n_r = std::max(16, static_cast<int>(std::ceil(1.2 * band * domain_radius + 24.0)));
  const int n_t = std::max(
      32, static_cast<int>(std::ceil(6.0 * std::max(band, 1.0) * std::sinh(domain_radius))) + 16);
  return build_polar_grid(domain_radius, n_r, n_t);
}

// ---------------------------------------------------------------------------

KillingDerivative::KillingDerivative(std::function<double(Point)> f, std::vector<int> indices)
    : f_(std::move(f)), indices_(std::move(indices)) {
  if (indices_.size() > 3) throw DomainError("killing_derivative: order must be <= 3");
  for (int i : indices_) {
    if (i < 1 || i > 3) throw DomainError("killing_derivative: field index must be 1, 2 or 3");
  }
}

double KillingDerivative::operator()(Point x) const { return apply(0, x); }

double KillingDerivative::apply(std::size_t level, Point x) const {
  if (level == indices_.size()) return f_(x);
  const int field = indices_[level];
  const double h = indices_.size() == 1 ? 1e-4 : 1e-3;
  auto central = [&](double step) {
    return (apply(level + 1, killing_flow(field, step, x)) -
            apply(level + 1, killing_flow(field, -step, x))) /
           (2.0 * step);
  };
  const double coarse = central(h);
  const double fine = central(0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

KillingDerivative killing_derivative(const BandlimitedFn& f, std::vector<int> indices) {
  return KillingDerivative([f](Point x) { return f(x); }, std::move(indices));
}

}  // namespace hpw
