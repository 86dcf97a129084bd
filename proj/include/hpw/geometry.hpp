#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "hpw/quadrature.hpp"

namespace hpw {

/// A point of the hyperbolic plane in Poincare-disk coordinates (u^2 + v^2 < 1).
/// The base point o is the disk center.
struct Point {
  double u = 0.0;
  double v = 0.0;

  std::complex<double> z() const { return {u, v}; }
  static Point from(std::complex<double> z) { return {z.real(), z.imag()}; }
  friend bool operator==(const Point&, const Point&) = default;
};

inline constexpr Point kOrigin{0.0, 0.0};

/// Curvature normalization. The lab fixes curvature -1 on H^2, where rho = 1/2.
struct MetricConvention {
  double curvature = -1.0;
  double rho = 0.5;
  int dim = 2;
};

inline constexpr MetricConvention kHyperbolicPlane{};

/// Throws DomainError unless the point is strictly inside the unit disk.
void require_in_disk(Point x);

double geodesic_distance(Point x, Point y);
double distance_from_origin(Point x);

/// Point at geodesic polar coordinates (radius, angle) about o.
Point from_polar(double radius, double angle);

/// Surface area S(r) of the geodesic circle of radius r (2 pi sinh r at curvature -1).
double sphere_area(double r, const MetricConvention& convention = kHyperbolicPlane);

/// Rank-one Killing-form formula S(r) = Omega_d 2^-b c^(-a-b) sh^a(cr) sh^b(2cr),
/// c = (2a + 8b)^(-1/2), d = a + b + 1. Exposed for cross-checks only.
double sphere_area_killing_form(double r, int a, int b);

/// Hyperbolic area of a geodesic ball of radius r at curvature -1.
double ball_area(double r);

/// One-parameter isometry groups: 1 and 2 are the unit-speed translations
/// along the u- and v-axis geodesics through o, 3 is rotation about o.
Point killing_flow(int field_index, double t, Point x);

/// The transvection carrying o to `target`, applied to x.
Point transvect(Point target, Point x);
/// Inverse of transvect(target, .).
Point transvect_inverse(Point target, Point x);

/// Tensor-product quadrature on B(o, R) in geodesic polar coordinates.
/// Integration weight of node (i, j) is radial_weight_i * sinh(r_i) * angular_weight_j.
struct PolarGrid {
  QuadratureRule radial;
  QuadratureRule angular;
  double domain_radius = 0.0;

  std::size_t size() const { return radial.size() * angular.size(); }
};

/// Flattened node cloud of a PolarGrid: points and measure weights.
struct QuadratureCloud {
  std::vector<Point> points;
  std::vector<double> weights;
};

/// Gauss-Legendre radially, trapezoid angularly. Throws QuadratureError when the
/// grid does not reproduce the ball area to relative 1e-8.
PolarGrid build_polar_grid(double domain_radius, int n_radial, int n_angular);

QuadratureCloud make_cloud(const PolarGrid& grid);

template <class F>
double integrate(const PolarGrid& grid, F&& f) {
  double total = 0.0;
  for (std::size_t i = 0; i < grid.radial.size(); ++i) {
    const double r = grid.radial.nodes[i];
    const double wr = grid.radial.weights[i] * std::sinh(r);
    double ring = 0.0;
    for (std::size_t j = 0; j < grid.angular.size(); ++j) {
      ring += grid.angular.weights[j] * f(from_polar(r, grid.angular.nodes[j]));
    }
    total += wr * ring;
  }
  return total;
}

/// Area-uniform random point of B(o, R) (radial density proportional to sinh).
template <class Rng>
Point sample_area_uniform(double radius, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double a = unit(rng);
  const double b = unit(rng);
  const double rho = std::acosh(1.0 + a * (std::cosh(radius) - 1.0));
  return from_polar(rho, 2.0 * 3.14159265358979323846 * b);
}

/// Geodesic polar data cached for fast exact distance tests.
struct PolarPoint {
  double rho = 0.0;
  double theta = 0.0;
  double sinh_rho = 0.0;
  double cos_theta = 1.0;
  double sin_theta = 0.0;
};

PolarPoint to_polar_point(Point x);
PolarPoint polar_point(double rho, double theta);

/// sinh^2(d/2) for the geodesic distance d; monotone in d and cancellation-free.
inline double half_sinh_sq(const PolarPoint& a, const PolarPoint& b) {
  const double s = std::sinh(0.5 * (a.rho - b.rho));
  const double dc = a.cos_theta - b.cos_theta;
  const double ds = a.sin_theta - b.sin_theta;
  return s * s + 0.25 * a.sinh_rho * b.sinh_rho * (dc * dc + ds * ds);
}

inline double polar_distance(const PolarPoint& a, const PolarPoint& b) {
  return 2.0 * std::asinh(std::sqrt(half_sinh_sq(a, b)));
}

/// Bucket index over B(o, R): rings of geodesic width `cell`, each split into
/// sectors whose inner arc length is at least `cell`. Range queries with radius
/// up to `cell` visit only neighbouring buckets.
class PointIndex {
 public:
  PointIndex(double cell, double max_radius);

  void insert(const PolarPoint& p, std::uint32_t id);
  std::size_t size() const { return count_; }

  /// Calls fn(entry_point, id) for every stored point within distance q of x.
  /// Returning true from fn stops the scan early; the call then returns true.
  template <class F>
  bool any_within(const PolarPoint& x, double q, F&& fn) const;

  /// Number of stored points at distance < q (strict) from x.
  int count_within(const PolarPoint& x, double q) const;

  /// Distance to the nearest stored point if it is within q, otherwise +inf.
  double nearest_within(const PolarPoint& x, double q) const;

 private:
  struct Entry {
    PolarPoint p;
    std::uint32_t id;
  };
  struct Ring {
    double inner = 0.0;
    std::vector<std::vector<Entry>> sectors;
  };

  int ring_of(double rho) const;
  int sector_of(const Ring& ring, double theta) const;

  template <class F>
  void visit_buckets(const PolarPoint& x, double q, F&& fn) const;

  double cell_;
  double max_radius_;
  std::vector<Ring> rings_;
  std::size_t count_ = 0;
};

template <class F>
void PointIndex::visit_buckets(const PolarPoint& x, double q, F&& fn) const {
  constexpr double two_pi = 2.0 * 3.14159265358979323846;
  const int k_lo = std::max(0, ring_of(std::max(0.0, x.rho - q)));
  const int k_hi = std::min(static_cast<int>(rings_.size()) - 1, ring_of(x.rho + q));
  const double sh_q = std::sinh(0.5 * q);
  for (int k = k_lo; k <= k_hi; ++k) {
    const Ring& ring = rings_[k];
    const int n = static_cast<int>(ring.sectors.size());
    const double s_min = std::max(ring.inner, x.rho - q);
    bool all = (n == 1) || s_min <= 0.0 || x.rho <= 0.0;
    double half_width = 0.0;
    if (!all) {
      const double ratio = sh_q / std::sqrt(x.sinh_rho * std::sinh(s_min));
      if (ratio >= 1.0) {
        all = true;
      } else {
        half_width = 2.0 * std::asin(ratio);
      }
    }
    if (!all) {
      const double lo = (x.theta - half_width) / two_pi * n;
      const double hi = (x.theta + half_width) / two_pi * n;
      const long s_lo = static_cast<long>(std::floor(lo));
      const long s_hi = static_cast<long>(std::floor(hi));
      if (s_hi - s_lo + 1 >= n) {
        all = true;
      } else {
        for (long s = s_lo; s <= s_hi; ++s) {
          const long wrapped = ((s % n) + n) % n;
          if (fn(ring.sectors[wrapped])) return;
        }
        continue;
      }
    }
    for (const auto& sector : ring.sectors) {
      if (fn(sector)) return;
    }
  }
}

template <class F>
bool PointIndex::any_within(const PolarPoint& x, double q, F&& fn) const {
  const double limit = std::sinh(0.5 * q);
  const double limit_sq = limit * limit;
  bool stopped = false;
  visit_buckets(x, q, [&](const std::vector<Entry>& bucket) {
    for (const Entry& e : bucket) {
      if (half_sinh_sq(x, e.p) <= limit_sq && fn(e.p, e.id)) {
        stopped = true;
        return true;
      }
    }
    return false;
  });
  return stopped;
}

}  // namespace hpw
