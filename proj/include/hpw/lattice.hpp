#pragma once

#include <cstdint>
#include <vector>

#include "hpw/geometry.hpp"
#include "hpw/json_io.hpp"

namespace hpw {

struct LatticeCertificates {
  bool packing_ok = false;
  bool covering_ok = false;
  int max_multiplicity = 0;
  bool multiplicity_ok = false;
  double min_separation = 0.0;  ///< smallest pairwise center distance
  double max_gap = 0.0;         ///< largest grid-point distance to the nearest center
  double grid_spacing = 0.0;
  std::int64_t grid_points = 0;
  int covering_retries = 0;

  bool all_ok() const { return packing_ok && covering_ok && multiplicity_ok; }
};

/// Certified point set on B(o, R_dom): centers at least r/2 apart whose
/// r/2-balls cover B(o, R_dom - r) and whose r-balls overlap boundedly.
struct Lattice {
  double radius = 0.0;
  double domain_radius = 0.0;
  std::uint64_t seed = 0;
  std::vector<Point> centers;
  LatticeCertificates certificates;
};

/// 12^d e^sqrt(d - 1).
double multiplicity_bound(int d);

/// Greedy random packing started at o, stopped after 10 x |centers|
/// consecutive rejections, then certified on a polar grid of spacing r/8.
/// Uncovered grid points are inserted as extra centers (at most 3 rounds);
/// throws std::runtime_error if the cover still fails.
Lattice build_lattice(double r, double domain_radius, std::uint64_t seed);

/// Recomputes all certificates for the given centers.
LatticeCertificates certify_lattice(const std::vector<Point>& centers, double r,
                                    double domain_radius);

Json lattice_to_json(const Lattice& lattice);
Lattice lattice_from_json(const Json& json);

}  // namespace hpw
