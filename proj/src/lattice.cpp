#include "hpw/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "hpw/errors.hpp"

namespace hpw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Polar certification grid on B(o, radius) with ring and arc spacing h.
template <class F>
void for_each_grid_point(double radius, double h, F&& fn) {
  fn(polar_point(0.0, 0.0));
  const int rings = static_cast<int>(std::floor(radius / h + 1e-12));
  for (int k = 1; k <= rings; ++k) {
    const double rho = k * h;
    const int n = std::max(1, static_cast<int>(std::ceil(kTwoPi * std::sinh(rho) / h)));
    for (int j = 0; j < n; ++j) fn(polar_point(rho, kTwoPi * j / n));
  }
}

struct IndexedCenters {
  PointIndex index;
  std::vector<PolarPoint> polar;

  IndexedCenters(double cell, double radius) : index(cell, radius) {}

  void add(const PolarPoint& p) {
    index.insert(p, static_cast<std::uint32_t>(polar.size()));
    polar.push_back(p);
  }
};

/// Fine polar cells flagged once they lie entirely inside the open r/2-ball of
/// some center. Candidates falling in a flagged cell are certain rejections.
class BlockedCells {
 public:
  BlockedCells(double exclusion, double domain_radius)
      : exclusion_(exclusion), h_(exclusion / 8.0) {
    const int rings = static_cast<int>(std::ceil(domain_radius / h_)) + 1;
    offset_.resize(rings + 1, 0);
    count_.resize(rings);
    for (int k = 0; k < rings; ++k) {
      count_[k] = std::max(1, static_cast<int>(std::ceil(kTwoPi * std::sinh((k + 1) * h_) / h_)));
      offset_[k + 1] = offset_[k] + count_[k];
    }
    blocked_.assign(offset_.back(), 0);
  }

  bool blocked(double rho, double theta) const {
    const int k = std::min(static_cast<int>(rho / h_), static_cast<int>(count_.size()) - 1);
    const int j = std::min(static_cast<int>(theta / kTwoPi * count_[k]), count_[k] - 1);
    return blocked_[offset_[k] + j] != 0;
  }

  void block_around(const PolarPoint& c) {
    // Every point of a cell is within h of its center.
    const double reach = exclusion_ - h_;
    if (reach <= 0.0) return;
    const int rings = static_cast<int>(count_.size());
    const int k_lo = std::max(0, static_cast<int>((c.rho - reach) / h_) - 1);
    const int k_hi = std::min(rings - 1, static_cast<int>((c.rho + reach) / h_) + 1);
    const double limit = std::sinh(0.5 * reach);
    const double limit_sq = limit * limit;
    for (int k = k_lo; k <= k_hi; ++k) {
      const double rho = (k + 0.5) * h_;
      const int n = count_[k];
      int j_lo = 0;
      int j_hi = n - 1;
      if (c.rho > 0.0) {
        const double ratio = limit / std::sqrt(c.sinh_rho * std::sinh(rho));
        if (ratio < 1.0) {
          const double half_width = 2.0 * std::asin(ratio);
          j_lo = static_cast<int>(std::floor((c.theta - half_width) / kTwoPi * n - 0.5));
          j_hi = static_cast<int>(std::ceil((c.theta + half_width) / kTwoPi * n - 0.5));
          if (j_hi - j_lo + 1 >= n) {
            j_lo = 0;
            j_hi = n - 1;
          }
        }
      }
      for (int j = j_lo; j <= j_hi; ++j) {
        const int wrapped = ((j % n) + n) % n;
        unsigned char& flag = blocked_[offset_[k] + wrapped];
        if (flag) continue;
        const PolarPoint mid = polar_point(rho, kTwoPi * (wrapped + 0.5) / n);
        if (half_sinh_sq(c, mid) < limit_sq) flag = 1;
      }
    }
  }

 private:
  double exclusion_;
  double h_;
  std::vector<int> offset_;
  std::vector<int> count_;
  std::vector<unsigned char> blocked_;
};

struct GridScan {
  double max_gap = 0.0;
  int max_multiplicity = 0;
  std::int64_t points = 0;
  std::vector<PolarPoint> uncovered;
};

GridScan scan_grid(const IndexedCenters& centers, double r, double cover_radius, double h,
                   bool multiplicity) {
  GridScan scan;
  const double half = 0.5 * r;
  for_each_grid_point(cover_radius, h, [&](const PolarPoint& x) {
    ++scan.points;
    const double gap = centers.index.nearest_within(x, half + 2.0 * h);
    if (gap > half) scan.uncovered.push_back(x);
    scan.max_gap = std::max(scan.max_gap, gap);
    if (multiplicity) {
      scan.max_multiplicity = std::max(scan.max_multiplicity, centers.index.count_within(x, r));
    }
  });
  return scan;
}

}  // namespace

double multiplicity_bound(int d) {
  if (d < 1) throw DomainError("multiplicity_bound: d must be >= 1");
  return std::pow(12.0, d) * std::exp(std::sqrt(d - 1.0));
}

LatticeCertificates certify_lattice(const std::vector<Point>& centers, double r,
                                    double domain_radius) {
  IndexedCenters indexed(0.5 * r, domain_radius);
  for (const Point& c : centers) indexed.add(to_polar_point(c));

  LatticeCertificates cert;
  cert.grid_spacing = r / 8.0;
  cert.min_separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < indexed.polar.size(); ++i) {
    indexed.index.any_within(indexed.polar[i], r, [&](const PolarPoint& p, std::uint32_t id) {
      if (id != i) cert.min_separation = std::min(cert.min_separation, polar_distance(indexed.polar[i], p));
      return false;
    });
  }
  cert.packing_ok = cert.min_separation >= 0.5 * r - 1e-12;

  const double cover_radius = std::max(0.0, domain_radius - r);
  const GridScan scan = scan_grid(indexed, r, cover_radius, cert.grid_spacing, true);
  cert.max_gap = scan.max_gap;
  cert.grid_points = scan.points;
  cert.covering_ok = scan.max_gap <= 0.5 * r + cert.grid_spacing;
  cert.max_multiplicity = scan.max_multiplicity;
  cert.multiplicity_ok = cert.max_multiplicity <= multiplicity_bound(2);
  return cert;
}

Lattice build_lattice(double r, double domain_radius, std::uint64_t seed) {
  if (!(r > 0.0) || !(domain_radius >= r) || !std::isfinite(domain_radius)) {
    throw DomainError("build_lattice: need 0 < r <= R_dom");
  }
  Lattice lattice;
  lattice.radius = r;
  lattice.domain_radius = domain_radius;
  lattice.seed = seed;
  lattice.centers.push_back(kOrigin);

  IndexedCenters indexed(0.5 * r, domain_radius);
  BlockedCells blocked(0.5 * r, domain_radius);
  indexed.add(polar_point(0.0, 0.0));
  blocked.block_around(indexed.polar.back());
  const double half = 0.5 * r;
  const auto accepts = [&](const PolarPoint& x) {
    return !indexed.index.any_within(x, half, [&](const PolarPoint& p, std::uint32_t) {
      return polar_distance(x, p) < half;
    });
  };

  if (domain_radius > r) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double cosh_minus_one = 2.0 * std::pow(std::sinh(0.5 * domain_radius), 2);
    std::size_t rejections = 0;
    while (rejections < 10 * indexed.polar.size()) {
      const double a = unit(rng);
      const double b = unit(rng);
      const double rho = std::acosh(1.0 + a * cosh_minus_one);
      if (blocked.blocked(rho, kTwoPi * b)) {
        ++rejections;
        continue;
      }
      const PolarPoint x = polar_point(rho, kTwoPi * b);
      if (accepts(x)) {
        indexed.add(x);
        blocked.block_around(x);
        lattice.centers.push_back(from_polar(x.rho, x.theta));
        rejections = 0;
      } else {
        ++rejections;
      }
    }
  }

  const double spacing = r / 8.0;
  const double cover_radius = std::max(0.0, domain_radius - r);
  int retries = 0;
  for (;;) {
    GridScan scan = scan_grid(indexed, r, cover_radius, spacing, false);
    if (scan.uncovered.empty()) break;
    if (retries == 3) {
      throw std::runtime_error("build_lattice: covering certificate still fails after 3 retries (" +
                               std::to_string(scan.uncovered.size()) + " uncovered grid points)");
    }
    ++retries;
    for (const PolarPoint& x : scan.uncovered) {
      if (accepts(x)) {
        indexed.add(x);
        lattice.centers.push_back(from_polar(x.rho, x.theta));
      }
    }
  }

  lattice.certificates = certify_lattice(lattice.centers, r, domain_radius);
  lattice.certificates.covering_retries = retries;
  return lattice;
}

Json lattice_to_json(const Lattice& lattice) {
  Json out;
  out["r"] = lattice.radius;
  out["R_dom"] = lattice.domain_radius;
  out["seed"] = lattice.seed;
  Json centers = Json::array();
  for (const Point& c : lattice.centers) centers.push_back(Json::array({c.u, c.v}));
  out["centers"] = std::move(centers);
  const LatticeCertificates& c = lattice.certificates;
  Json cert;
  cert["packingOK"] = c.packing_ok;
  cert["coveringOK"] = c.covering_ok;
  cert["maxMultiplicity"] = c.max_multiplicity;
  cert["multiplicityOK"] = c.multiplicity_ok;
  cert["multiplicityBound"] = multiplicity_bound(2);
  cert["minSeparation"] = double_to_json(c.min_separation);
  cert["maxGap"] = c.max_gap;
  cert["gridSpacing"] = c.grid_spacing;
  cert["gridPoints"] = c.grid_points;
  cert["coveringRetries"] = c.covering_retries;
  out["certificates"] = std::move(cert);
  return out;
}

Lattice lattice_from_json(const Json& json) {
  Lattice lattice;
  lattice.radius = json_to_double(json.at("r"));
  lattice.domain_radius = json_to_double(json.at("R_dom"));
  lattice.seed = json.at("seed").get<std::uint64_t>();
  for (const auto& c : json.at("centers")) {
    if (!c.is_array() || c.size() != 2) throw std::invalid_argument("lattice center must be [u, v]");
    Point p{json_to_double(c[0]), json_to_double(c[1])};
    require_in_disk(p);
    lattice.centers.push_back(p);
  }
  if (lattice.centers.empty()) throw std::invalid_argument("lattice has no centers");
  const Json& cert = json.at("certificates");
  LatticeCertificates& c = lattice.certificates;
  c.packing_ok = cert.at("packingOK").get<bool>();
  c.covering_ok = cert.at("coveringOK").get<bool>();
  c.max_multiplicity = cert.at("maxMultiplicity").get<int>();
  c.multiplicity_ok = cert.value("multiplicityOK", c.max_multiplicity <= multiplicity_bound(2));
  if (cert.contains("minSeparation")) c.min_separation = json_to_double(cert["minSeparation"]);
  if (cert.contains("maxGap")) c.max_gap = json_to_double(cert["maxGap"]);
  if (cert.contains("gridSpacing")) c.grid_spacing = json_to_double(cert["gridSpacing"]);
  c.grid_points = cert.value("gridPoints", std::int64_t{0});
  c.covering_retries = cert.value("coveringRetries", 0);
  return lattice;
}

}  // namespace hpw
