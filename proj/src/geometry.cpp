#include "hpw/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hpw/errors.hpp"

namespace hpw {

namespace {

using cplx = std::complex<double>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx mobius(cplx a, cplx z) { return (z + a) / (1.0 + std::conj(a) * z); }

}  // namespace

void require_in_disk(Point x) {
  const double n2 = x.u * x.u + x.v * x.v;
  if (!(n2 < 1.0)) {
    throw DomainError("point (" + std::to_string(x.u) + ", " + std::to_string(x.v) +
                      ") is not strictly inside the unit disk");
  }
}

double geodesic_distance(Point x, Point y) {
  require_in_disk(x);
  require_in_disk(y);
  const cplx a = x.z();
  const cplx b = y.z();
  const double ratio = std::abs(a - b) / std::abs(1.0 - std::conj(a) * b);
  return 2.0 * std::atanh(std::min(ratio, 1.0));
}

double distance_from_origin(Point x) {
  require_in_disk(x);
  return 2.0 * std::atanh(std::hypot(x.u, x.v));
}

Point from_polar(double radius, double angle) {
  const double t = std::tanh(0.5 * radius);
  return {t * std::cos(angle), t * std::sin(angle)};
}

double sphere_area(double r, const MetricConvention& convention) {
  if (r < 0.0) throw DomainError("sphere_area: radius must be non-negative");
  if (convention.dim != 2) throw DomainError("sphere_area: only d = 2 is implemented");
  const double k = std::sqrt(-convention.curvature);
  return kTwoPi * std::sinh(k * r) / k;
}

double sphere_area_killing_form(double r, int a, int b) {
  if (r < 0.0) throw DomainError("sphere_area_killing_form: radius must be non-negative");
  if (a < 0 || b < 0 || a + b < 1) throw DomainError("sphere_area_killing_form: need a + b >= 1");
  const int d = a + b + 1;
  const double c = 1.0 / std::sqrt(2.0 * a + 8.0 * b);
  const double omega_d = 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
  return omega_d * std::pow(2.0, -b) * std::pow(c, -a - b) * std::pow(std::sinh(c * r), a) *
         std::pow(std::sinh(2.0 * c * r), b);
}

double ball_area(double r) {
  if (r < 0.0) throw DomainError("ball_area: radius must be non-negative");
  // 2 pi (cosh r - 1) without cancellation for small r.
  const double s = std::sinh(0.5 * r);
  return 4.0 * std::numbers::pi * s * s;
}

Point killing_flow(int field_index, double t, Point x) {
  require_in_disk(x);
  const cplx z = x.z();
  switch (field_index) {
    case 1:
      return Point::from(mobius(cplx(std::tanh(0.5 * t), 0.0), z));
    case 2:
      return Point::from(mobius(cplx(0.0, std::tanh(0.5 * t)), z));
    case 3:
      return Point::from(std::polar(1.0, t) * z);
    default:
      throw DomainError("killing_flow: field index must be 1, 2 or 3");
  }
}

Point transvect(Point target, Point x) { return Point::from(mobius(target.z(), x.z())); }

Point transvect_inverse(Point target, Point x) {
  return Point::from(mobius(-target.z(), x.z()));
}

PolarGrid build_polar_grid(double domain_radius, int n_radial, int n_angular) {
  if (!(domain_radius > 0.0)) throw DomainError("build_polar_grid: R_dom must be positive");
  if (n_radial < 8 || n_angular < 8) {
    throw DomainError("build_polar_grid: need at least 8 radial and 8 angular nodes");
  }
  PolarGrid grid;
  grid.domain_radius = domain_radius;
  grid.radial = gauss_legendre(n_radial, 0.0, domain_radius);
  grid.angular.nodes.resize(n_angular);
  grid.angular.weights.assign(n_angular, kTwoPi / n_angular);
  for (int j = 0; j < n_angular; ++j) grid.angular.nodes[j] = kTwoPi * j / n_angular;

  double area = 0.0;
  for (std::size_t i = 0; i < grid.radial.size(); ++i) {
    area += grid.radial.weights[i] * std::sinh(grid.radial.nodes[i]);
  }
  area *= kTwoPi;
  const double exact = ball_area(domain_radius);
  const double residual = std::abs(area - exact) / exact;
  if (residual > 1e-8) {
    throw QuadratureError("build_polar_grid: too few radial nodes for R_dom = " +
                              std::to_string(domain_radius),
                          residual);
  }
  return grid;
}

QuadratureCloud make_cloud(const PolarGrid& grid) {
  QuadratureCloud cloud;
  cloud.points.reserve(grid.size());
  cloud.weights.reserve(grid.size());
  for (std::size_t i = 0; i < grid.radial.size(); ++i) {
    const double r = grid.radial.nodes[i];
    const double wr = grid.radial.weights[i] * std::sinh(r);
    for (std::size_t j = 0; j < grid.angular.size(); ++j) {
      cloud.points.push_back(from_polar(r, grid.angular.nodes[j]));
      cloud.weights.push_back(wr * grid.angular.weights[j]);
    }
  }
  return cloud;
}

PolarPoint polar_point(double rho, double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return {rho, t, std::sinh(rho), std::cos(t), std::sin(t)};
}

PolarPoint to_polar_point(Point x) {
  const double rho = distance_from_origin(x);
  const double theta = (x.u == 0.0 && x.v == 0.0) ? 0.0 : std::atan2(x.v, x.u);
  return polar_point(rho, theta);
}

PointIndex::PointIndex(double cell, double max_radius) : cell_(cell), max_radius_(max_radius) {
  if (!(cell > 0.0) || !(max_radius >= 0.0)) {
    throw DomainError("PointIndex: cell and radius must be positive");
  }
  const int n_rings = static_cast<int>(std::floor(max_radius / cell)) + 1;
  rings_.resize(n_rings);
  for (int k = 0; k < n_rings; ++k) {
    Ring& ring = rings_[k];
    ring.inner = k * cell;
    const double arc = kTwoPi * std::sinh(ring.inner);
    const int n = std::max(1, static_cast<int>(std::floor(arc / cell)));
    ring.sectors.resize(n);
  }
}

int PointIndex::ring_of(double rho) const {
  return std::min(static_cast<int>(rings_.size()) - 1, static_cast<int>(rho / cell_));
}

int PointIndex::sector_of(const Ring& ring, double theta) const {
  const int n = static_cast<int>(ring.sectors.size());
  const int s = static_cast<int>(theta / kTwoPi * n);
  return std::clamp(s, 0, n - 1);
}

void PointIndex::insert(const PolarPoint& p, std::uint32_t id) {
  if (p.rho > max_radius_ + cell_) throw DomainError("PointIndex: point outside indexed ball");
  Ring& ring = rings_[ring_of(p.rho)];
  ring.sectors[sector_of(ring, p.theta)].push_back({p, id});
  ++count_;
}

int PointIndex::count_within(const PolarPoint& x, double q) const {
  const double limit = std::sinh(0.5 * q);
  const double limit_sq = limit * limit;
  int count = 0;
  visit_buckets(x, q, [&](const std::vector<Entry>& bucket) {
    for (const Entry& e : bucket) {
      if (half_sinh_sq(x, e.p) < limit_sq) ++count;
    }
    return false;
  });
  return count;
}

double PointIndex::nearest_within(const PolarPoint& x, double q) const {
  const double limit = std::sinh(0.5 * q);
  double best = limit * limit;
  bool found = false;
  visit_buckets(x, q, [&](const std::vector<Entry>& bucket) {
    for (const Entry& e : bucket) {
      const double h = half_sinh_sq(x, e.p);
      if (h <= best) {
        best = h;
        found = true;
      }
    }
    return false;
  });
  if (!found) return std::numeric_limits<double>::infinity();
  return 2.0 * std::asinh(std::sqrt(best));
}

}  // namespace hpw
