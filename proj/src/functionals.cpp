#include "hpw/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hpw/errors.hpp"
#include "hpw/parallel.hpp"

namespace hpw {

std::string to_string(FunctionalKind kind) {
  return kind == FunctionalKind::kDirac ? "dirac" : "ball_average";
}

FunctionalKind functional_kind_from_string(const std::string& name) {
  if (name == "dirac") return FunctionalKind::kDirac;
  if (name == "ball_average" || name == "ball") return FunctionalKind::kBallAverage;
  throw DomainError("unknown functional kind '" + name + "' (expected dirac or ball_average)");
}

SamplingFunctional SamplingFunctional::dirac(Point center) {
  require_in_disk(center);
  SamplingFunctional phi;
  phi.kind_ = FunctionalKind::kDirac;
  phi.center_ = center;
  phi.nodes_ = {center};
  phi.weights_ = {1.0};
  return phi;
}

SamplingFunctional SamplingFunctional::ball_average(Point center, double radius) {
  require_in_disk(center);
  if (!(radius > 0.0)) throw DomainError("ball_average: radius must be positive");
  SamplingFunctional phi;
  phi.kind_ = FunctionalKind::kBallAverage;
  phi.center_ = center;
  phi.support_radius_ = radius;
  const QuadratureCloud local = make_cloud(build_polar_grid(radius, 16, 16));
  phi.nodes_.reserve(local.points.size());
  for (const Point& p : local.points) phi.nodes_.push_back(transvect(center, p));
  phi.weights_ = local.weights;
  phi.mass_ = 0.0;
  for (double w : phi.weights_) phi.mass_ += w;
  const double area = ball_area(radius);
  if (std::abs(phi.mass_ - area) > 1e-8 * area) {
    throw QuadratureError("ball_average: local quadrature misses the ball area",
                          std::abs(phi.mass_ - area) / area);
  }
  return phi;
}

double SamplingFunctional::apply(const std::function<double(Point)>& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) s += weights_[i] * f(nodes_[i]);
  return s;
}

double SamplingFunctional::apply(const BandlimitedFn& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) s += weights_[i] * f(nodes_[i]);
  return s;
}

FunctionalFamily build_family(const Lattice& lattice, FunctionalKind kind, double epsilon) {
  if (kind == FunctionalKind::kBallAverage && !(epsilon > 0.0 && epsilon <= 0.5)) {
    throw DomainError("build_family: epsilon must lie in (0, 1/2]");
  }
  FunctionalFamily family;
  family.kind = kind;
  family.epsilon = kind == FunctionalKind::kDirac ? 0.0 : epsilon;
  family.lattice_radius = lattice.radius;
  family.members.reserve(lattice.centers.size());
  for (const Point& c : lattice.centers) {
    family.members.push_back(kind == FunctionalKind::kDirac
                                 ? SamplingFunctional::dirac(c)
                                 : SamplingFunctional::ball_average(c, epsilon * lattice.radius));
  }
  family.min_mass = std::numeric_limits<double>::infinity();
  family.max_mass = 0.0;
  for (const auto& m : family.members) {
    family.min_mass = std::min(family.min_mass, m.mass());
    family.max_mass = std::max(family.max_mass, m.mass());
  }
  if (!(family.min_mass > 0.0) || !std::isfinite(family.max_mass)) {
    throw DomainError("build_family: masses are not bounded away from 0 and infinity");
  }
  return family;
}

std::vector<double> sample(const FunctionalFamily& family, const BandlimitedFn& f,
                           bool normalized) {
  std::vector<double> s(family.size());
  parallel_for(family.size(), [&](std::size_t nu) {
    const SamplingFunctional& phi = family.members[nu];
    s[nu] = phi.apply(f) / (normalized ? phi.mass() : 1.0);
  });
  return s;
}

Eigen::MatrixXd sampling_matrix(const FunctionalFamily& family, const SpectralProfile& g,
                                std::span<const Point> dictionary, bool normalized) {
  const auto kernel = radial_kernel(g);
  Eigen::MatrixXd a(family.size(), dictionary.size());
  parallel_for(family.size(), [&](std::size_t nu) {
    const SamplingFunctional& phi = family.members[nu];
    const double scale = normalized ? 1.0 / phi.mass() : 1.0;
    for (std::size_t j = 0; j < dictionary.size(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < phi.nodes().size(); ++k) {
        s += phi.weights()[k] * (*kernel)(geodesic_distance(phi.nodes()[k], dictionary[j]));
      }
      a(nu, j) = scale * s;
    }
  });
  return a;
}

Json family_to_json(const FunctionalFamily& family) {
  Json out;
  out["kind"] = to_string(family.kind);
  out["epsilon"] = family.epsilon;
  out["size"] = family.size();
  out["minMass"] = family.min_mass;
  out["maxMass"] = family.max_mass;
  Json masses = Json::array();
  for (const auto& m : family.members) masses.push_back(m.mass());
  out["masses"] = std::move(masses);
  return out;
}

}  // namespace hpw
