#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hpw/geometry.hpp"
#include "hpw/json_io.hpp"
#include "hpw/lattice.hpp"
#include "hpw/spectral.hpp"

namespace hpw {

enum class FunctionalKind { kDirac, kBallAverage };

std::string to_string(FunctionalKind kind);
FunctionalKind functional_kind_from_string(const std::string& name);

/// A finite non-negative measure near a lattice center: a point mass, or the
/// uniform (Riemannian) measure on a small geodesic ball.
class SamplingFunctional {
 public:
  static SamplingFunctional dirac(Point center);
  /// Local 16 x 16 polar quadrature on B(center, radius), transported from o.
  static SamplingFunctional ball_average(Point center, double radius);

  FunctionalKind kind() const { return kind_; }
  Point center() const { return center_; }
  double support_radius() const { return support_radius_; }
  /// Total mass: 1 for Dirac, the ball area for ball averages.
  double mass() const { return mass_; }

  const std::vector<Point>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  double apply(const std::function<double(Point)>& f) const;
  double apply(const BandlimitedFn& f) const;

 private:
  FunctionalKind kind_ = FunctionalKind::kDirac;
  Point center_;
  double support_radius_ = 0.0;
  double mass_ = 1.0;
  std::vector<Point> nodes_;
  std::vector<double> weights_;
};

struct FunctionalFamily {
  FunctionalKind kind = FunctionalKind::kDirac;
  double epsilon = 0.0;
  double lattice_radius = 0.0;
  std::vector<SamplingFunctional> members;
  double min_mass = 0.0;
  double max_mass = 0.0;

  std::size_t size() const { return members.size(); }
};

/// One functional per lattice center; ball averages use radius epsilon * r,
/// epsilon in (0, 1/2].
FunctionalFamily build_family(const Lattice& lattice, FunctionalKind kind, double epsilon);

/// Samples [Phi_nu(f)]; with `normalized` each is divided by the member's mass.
std::vector<double> sample(const FunctionalFamily& family, const BandlimitedFn& f,
                           bool normalized);

/// A_{nu j} = Phi_nu(K_g(., y_j)), optionally mass-normalized like `sample`.
Eigen::MatrixXd sampling_matrix(const FunctionalFamily& family, const SpectralProfile& g,
                                std::span<const Point> dictionary, bool normalized);

/// Kind, epsilon and the per-member masses.
Json family_to_json(const FunctionalFamily& family);

}  // namespace hpw
