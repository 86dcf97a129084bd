#include "hpw/inequality_lab.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hpw/errors.hpp"
#include "hpw/parallel.hpp"

namespace hpw {

namespace {

constexpr double kRhoSq = 0.25;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

QuadratureCloud cloud_for_band(double domain_radius, double omega) {
  return make_cloud(grid_for_band(domain_radius, omega));
}

std::vector<double> values_on(const std::function<double(Point)>& f, const QuadratureCloud& cloud) {
  std::vector<double> v(cloud.points.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(cloud.points[i]);
  return v;
}

Json describe(const BandlimitedFn& f, std::size_t trial, std::uint64_t seed) {
  Json w;
  w["trial"] = trial;
  w["seed"] = seed;
  w["profile"] = f.profile().name();
  w["centers"] = f.centers().size();
  return w;
}

std::string cell(const Json& params, const char* key) {
  if (!params.contains(key)) return "";
  const Json& v = params[key];
  if (v.is_number()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return "";
}

/// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

void require_trials(int trials) {
  if (trials < 1) throw DomainError("trials must be >= 1");
}

void require_band(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("omega must be positive");
}

}  // namespace

void InequalityReport::finish() {
  if (rhs > 0.0) {
    ratio = lhs / rhs;
  } else {
    ratio = lhs > 0.0 ? kInf : 0.0;
  }
  passed = ratio <= 1.0 + tolerance;
  parameters["tolerance"] = double_to_json(tolerance);
}

Json report_to_json(const InequalityReport& report) {
  Json out;
  out["name"] = report.name;
  out["parameters"] = report.parameters;
  out["lhs"] = double_to_json(report.lhs);
  out["rhs"] = double_to_json(report.rhs);
  out["ratio"] = double_to_json(report.ratio);
  out["tolerance"] = double_to_json(report.tolerance);
  out["passed"] = report.passed;
  out["witness"] = report.witness;
  out["details"] = report.details;
  return out;
}

InequalityReport report_from_json(const Json& json) {
  InequalityReport r;
  r.name = json.at("name").get<std::string>();
  r.parameters = json.at("parameters");
  r.lhs = json_to_double(json.at("lhs"));
  r.rhs = json_to_double(json.at("rhs"));
  r.ratio = json_to_double(json.at("ratio"));
  r.tolerance = json_to_double(json.at("tolerance"));
  r.passed = json.at("passed").get<bool>();
  r.witness = json.value("witness", Json::object());
  r.details = json.value("details", Json::object());
  return r;
}

Json reports_to_json(const std::vector<InequalityReport>& reports) {
  Json out;
  out["passed"] = all_passed(reports);
  Json list = Json::array();
  for (const auto& r : reports) list.push_back(report_to_json(r));
  out["reports"] = std::move(list);
  return out;
}

std::string reports_to_csv(const std::vector<InequalityReport>& reports) {
  std::string out = csv_line({"name", "omega", "p", "q", "r", "lhs", "rhs", "ratio", "passed"});
  for (const auto& rep : reports) {
    out += csv_line({rep.name, cell(rep.parameters, "omega"), cell(rep.parameters, "p"),
                     cell(rep.parameters, "q"), cell(rep.parameters, "r"), format_double(rep.lhs),
                     format_double(rep.rhs), format_double(rep.ratio),
                     rep.passed ? "true" : "false"});
  }
  return out;
}

bool all_passed(const std::vector<InequalityReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ (stream * 0xD1B54A32D192ED03ull)) + index);
}

// ---------------------------------------------------------------------------

NikolskiiSchedule NikolskiiSchedule::make(int d, double p, double q) {
  if (d != 2) throw ConfigError("Nikolskii schedule: only d = 2 is implemented");
  if (!(p >= 1.0 && q >= p)) throw ConfigError("Nikolskii schedule requires 1 ≤ p ≤ q ≤ ∞");
  NikolskiiSchedule s;
  s.d = d;
  s.p = p;
  s.q = q;
  s.alpha = d / p - (std::isinf(q) ? 0.0 : d / q);
  if (!(s.alpha > 0.0 && s.alpha < d)) {
    throw ConfigError("Nikolskii schedule: alpha = d/p - d/q must lie in (0, d); p = q is degenerate");
  }
  s.m = 2 * d;
  s.beta = s.alpha / s.m;
  s.t_star = s.alpha / (2 * d - s.alpha);
  return s;
}

double NikolskiiSchedule::eta(double t) const {
  return std::pow(t, -alpha) * (1.0 + std::pow(t, m));
}

double NikolskiiSchedule::eta_closed_form() const {
  return 1.0 / (std::pow(1.0 - beta, 1.0 - beta) * std::pow(beta, beta));
}

double NikolskiiSchedule::t_minimizer() const {
  return std::pow(alpha / (2 * d - alpha), 1.0 / m);
}

// ---------------------------------------------------------------------------

InequalityReport check_bernstein(double omega, double s, int trials, std::uint64_t seed,
                                 const TrialSpace& space, double bump_width) {
  require_band(omega);
  require_trials(trials);
  if (!(s == 1.0 || s == 2.0 || s == 3.0)) throw DomainError("check_bernstein: s must be 1, 2 or 3");

  const SpectralProfile g = SpectralProfile::box(omega);
  const double bound = std::pow(omega * omega + kRhoSq, 0.5 * s);

  struct Trial {
    double num = 0.0, den = 0.0;
  };
  std::vector<Trial> results(trials);
  std::vector<std::uint64_t> seeds(trials);
  radial_kernel(g.times(g));
  radial_kernel(g.with_laplacian_power(s).times(g.with_laplacian_power(s)));
  parallel_for(trials, [&](std::size_t t) {
    seeds[t] = trial_seed(seed, 0, t);
    std::mt19937_64 rng(seeds[t]);
    const BandlimitedFn f = random_span(g, space.centers, space.center_radius(), rng);
    const BandlimitedFn df = apply_laplacian_power(f, s);
    results[t] = {std::sqrt(std::max(0.0, l2_inner(df, df))), std::sqrt(l2_inner(f, f))};
  });

  std::size_t worst = 0;
  for (std::size_t t = 1; t < results.size(); ++t) {
    if (results[t].num / results[t].den > results[worst].num / results[worst].den) worst = t;
  }

  const BandlimitedFn bump(SpectralProfile::bump_at_band(omega, bump_width * omega), {kOrigin},
                           {1.0});
  const BandlimitedFn dbump = apply_laplacian_power(bump, s);
  const double sharpness = std::sqrt(l2_inner(dbump, dbump) / l2_inner(bump, bump)) / bound;

  InequalityReport rep;
  rep.name = "bernstein";
  rep.parameters["omega"] = omega;
  rep.parameters["s"] = s;
  rep.parameters["seed"] = seed;
  rep.parameters["trials"] = trials;
  rep.parameters["centers"] = space.centers;
  rep.lhs = results[worst].num;
  rep.rhs = bound * results[worst].den;
  rep.tolerance = 1e-6;
  {
    std::mt19937_64 rng(seeds[worst]);
    rep.witness = describe(random_span(g, space.centers, space.center_radius(), rng), worst,
                           seeds[worst]);
  }
  rep.details["bound"] = bound;
  rep.details["sharpness"] = sharpness;
  rep.details["sharpnessProfile"] = bump.profile().name();
  rep.finish();
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<InequalityReport> check_v_bernstein(const std::vector<double>& omegas, int k,
                                                int trials, std::uint64_t seed,
                                                const TrialSpace& space) {
  require_trials(trials);
  if (k < 1 || k > 2) throw DomainError("check_v_bernstein: order k must be 1 or 2");
  if (omegas.size() < 2) throw DomainError("check_v_bernstein: need at least two bands");

  std::vector<std::vector<int>> tuples;
  if (k == 1) {
    tuples = {{1}, {2}};
  } else {
    tuples = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  }

  std::vector<InequalityReport> reports;
  std::vector<double> constants;
  for (std::size_t b = 0; b < omegas.size(); ++b) {
    const double omega = omegas[b];
    require_band(omega);
    const SpectralProfile g = SpectralProfile::smooth(omega, space.sharpness);
    const QuadratureCloud cloud = cloud_for_band(space.domain_radius, omega);

    struct Trial {
      double ratio = 0.0, num = 0.0, den = 0.0;
      std::size_t tuple = 0;
      std::uint64_t seed = 0;
    };
    std::vector<Trial> results(trials);
    radial_kernel(g);
    parallel_for(trials, [&](std::size_t t) {
      Trial& out = results[t];
      out.seed = trial_seed(seed, 10 + b, t);
      std::mt19937_64 rng(out.seed);
      const BandlimitedFn f = random_span(g, space.centers, space.center_radius(), rng);
      out.den = lp_norm_of_values(values_on(std::cref(f), cloud), cloud.weights, 2.0);
      for (std::size_t j = 0; j < tuples.size(); ++j) {
        const KillingDerivative vf = killing_derivative(f, tuples[j]);
        const double num = lp_norm_of_values(values_on(std::cref(vf), cloud), cloud.weights, 2.0);
        if (num / out.den > out.ratio) out = {num / out.den, num, out.den, j, out.seed};
      }
    });

    std::size_t worst = 0;
    for (std::size_t t = 1; t < results.size(); ++t) {
      if (results[t].ratio > results[worst].ratio) worst = t;
    }
    const Trial& w = results[worst];
    const double scale = std::sqrt(omega * omega + kRhoSq);
    const double a_hat = std::pow(w.ratio, 1.0 / k) / scale;
    constants.push_back(a_hat);

    InequalityReport rep;
    rep.name = "v-bernstein-band";
    rep.parameters["omega"] = omega;
    rep.parameters["k"] = k;
    rep.parameters["seed"] = seed;
    rep.parameters["trials"] = trials;
    rep.parameters["R_dom"] = space.domain_radius;
    rep.lhs = w.num;
    rep.rhs = std::pow(scale, k) * w.den;
    rep.witness["trial"] = worst;
    rep.witness["seed"] = w.seed;
    rep.witness["fields"] = tuples[w.tuple];
    rep.witness["centers"] = space.centers;
    rep.details["aHat"] = a_hat;
    reports.push_back(std::move(rep));
  }

  const auto [lo, hi] = std::minmax_element(constants.begin(), constants.end());
  for (auto& rep : reports) {
    rep.tolerance = kInf;
    rep.details["aHatMin"] = *lo;
    rep.finish();
  }

  InequalityReport summary;
  summary.name = "v-bernstein";
  summary.parameters["k"] = k;
  summary.parameters["seed"] = seed;
  summary.parameters["trials"] = trials;
  summary.lhs = *hi / *lo - 1.0;
  summary.rhs = 0.25;
  summary.tolerance = 0.0;
  summary.details["omegas"] = omegas;
  summary.details["aHat"] = constants;
  summary.finish();
  reports.push_back(std::move(summary));
  return reports;
}

// ---------------------------------------------------------------------------

InequalityReport check_interpolation(double omega, int l, int m, double a, double r, int trials,
                                     std::uint64_t seed, const TrialSpace& space) {
  require_band(omega);
  require_trials(trials);
  if (!(1 <= l && l < m && m <= 2)) throw DomainError("check_interpolation: need 1 <= l < m <= 2");
  if (!(a > 0.0) || !(r > 0.0)) throw DomainError("check_interpolation: a and r must be positive");

  const SpectralProfile g = SpectralProfile::smooth(omega, space.sharpness);
  const QuadratureCloud cloud = cloud_for_band(space.domain_radius, omega);

  // One sample per (trial, field): r^l ||V^l f||, r^m ||V^m f||, ||f||.
  struct Sample {
    double low = 0.0, high = 0.0, norm = 0.0;
  };
  std::vector<Sample> samples(2 * trials);
  std::vector<std::uint64_t> seeds(trials);
  radial_kernel(g);
  parallel_for(trials, [&](std::size_t t) {
    seeds[t] = trial_seed(seed, 20, t);
    std::mt19937_64 rng(seeds[t]);
    const BandlimitedFn f = random_span(g, space.centers, space.center_radius(), rng);
    const double norm = lp_norm_of_values(values_on(std::cref(f), cloud), cloud.weights, 2.0);
    for (int field = 1; field <= 2; ++field) {
      const auto vl = killing_derivative(f, std::vector<int>(l, field));
      const auto vm = killing_derivative(f, std::vector<int>(m, field));
      samples[2 * t + field - 1] = {
          std::pow(r, l) * lp_norm_of_values(values_on(std::cref(vl), cloud), cloud.weights, 2.0),
          std::pow(r, m) * lp_norm_of_values(values_on(std::cref(vm), cloud), cloud.weights, 2.0),
          norm};
    }
  });

  double c_m = 0.0;
  for (const Sample& s : samples) c_m = std::max(c_m, (s.low - s.high) / s.norm);

  std::size_t worst = 0;
  double worst_ratio = -1.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    const double rhs = std::pow(a, m - l) * s.high + c_m * std::pow(a, -l) * s.norm;
    if (s.low / rhs > worst_ratio) {
      worst_ratio = s.low / rhs;
      worst = i;
    }
  }
  const Sample& w = samples[worst];

  InequalityReport rep;
  rep.name = "interpolation";
  rep.parameters["omega"] = omega;
  rep.parameters["p"] = 2.0;
  rep.parameters["r"] = r;
  rep.parameters["l"] = l;
  rep.parameters["m"] = m;
  rep.parameters["a"] = a;
  rep.parameters["seed"] = seed;
  rep.parameters["trials"] = trials;
  rep.lhs = w.low;
  rep.rhs = std::pow(a, m - l) * w.high + c_m * std::pow(a, -l) * w.norm;
  rep.tolerance = 1e-9;
  rep.witness["trial"] = worst / 2;
  rep.witness["seed"] = seeds[worst / 2];
  rep.witness["field"] = static_cast<int>(worst % 2) + 1;
  rep.witness["centers"] = space.centers;
  rep.details["cm"] = c_m;
  rep.finish();
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<InequalityReport> check_nikolskii(const NikolskiiSchedule& schedule,
                                              const std::vector<double>& omegas, int trials,
                                              std::uint64_t seed,
                                              const NikolskiiOptions& options) {
  require_trials(trials);
  if (omegas.size() < 3) throw DomainError("check_nikolskii: need at least three bands");
  if (options.isometries < 1 || options.chain_trials < 1 || options.center_counts.empty()) {
    throw DomainError("check_nikolskii: isometries, chain trials and center counts must be positive");
  }
  const TrialSpace& space = options.space;
  const double p = schedule.p;
  const double q = schedule.q;
  const double d = schedule.d;

  std::vector<InequalityReport> reports;
  std::vector<double> sup_ratio, sup_full;
  for (std::size_t b = 0; b < omegas.size(); ++b) {
    const double omega = omegas[b];
    require_band(omega);
    const double r = schedule.r_of_omega(omega);
    const SpectralProfile g = SpectralProfile::smooth(omega, space.sharpness);
    const QuadratureCloud cloud = cloud_for_band(space.domain_radius, omega);
    const Lattice lattice = build_lattice(r, space.domain_radius, trial_seed(seed, 30, b));

    struct Trial {
      double norm_p = 0.0, norm_q = 0.0;
      int count = 0;
      std::uint64_t seed = 0;
    };
    std::vector<Trial> results(trials);
    auto make_trial = [&](std::size_t t, std::uint64_t s) {
      std::mt19937_64 rng(s);
      const int count = options.center_counts[t % options.center_counts.size()];
      return random_span(g, count, space.center_radius(), rng);
    };
    radial_kernel(g);
    parallel_for(trials, [&](std::size_t t) {
      Trial& out = results[t];
      out.seed = trial_seed(seed, 40 + b, t);
      const BandlimitedFn f = make_trial(t, out.seed);
      const std::vector<double> v = values_on(std::cref(f), cloud);
      out.norm_p = lp_norm_of_values(v, cloud.weights, p);
      out.norm_q = lp_norm_of_values(v, cloud.weights, q);
      out.count = static_cast<int>(f.centers().size());
    });

    std::size_t worst = 0;
    double best_full = 0.0;
    for (std::size_t t = 0; t < results.size(); ++t) {
      const double ratio = results[t].norm_q / results[t].norm_p;
      if (ratio > results[worst].norm_q / results[worst].norm_p) worst = t;
      if (results[t].count == space.centers) best_full = std::max(best_full, ratio);
    }
    sup_ratio.push_back(results[worst].norm_q / results[worst].norm_p);
    sup_full.push_back(best_full);

    // Translates h_k . o for the sup over the group; h_0 = identity.
    std::vector<Point> shifts{kOrigin};
    {
      std::mt19937_64 rng(trial_seed(seed, 50, b));
      while (static_cast<int>(shifts.size()) < options.isometries) {
        shifts.push_back(sample_area_uniform(r, rng));
      }
    }
    std::vector<std::size_t> chain{worst};
    for (std::size_t t = 0; t < results.size() && static_cast<int>(chain.size()) < options.chain_trials;
         ++t) {
      if (t != worst) chain.push_back(t);
    }

    const double growth = 1.0 + std::pow(r * omega, schedule.m);
    const double r_pq = std::pow(r, (std::isinf(q) ? 0.0 : d / q) - d / p);
    double c_first = 0.0, c_second = 0.0;
    for (std::size_t t : chain) {
      const BandlimitedFn f = make_trial(t, results[t].seed);
      std::vector<double> sums(shifts.size());
      parallel_for(shifts.size(), [&](std::size_t k) {
        double s = 0.0;
        for (const Point& x : lattice.centers) {
          const double v = std::abs(f(transvect(x, shifts[k])));
          s = std::isinf(p) ? std::max(s, v) : s + std::pow(v, p);
        }
        sums[k] = std::isinf(p) ? s : std::pow(s, 1.0 / p);
      });
      const double middle = std::pow(r, d / p) * *std::max_element(sums.begin(), sums.end());
      c_first = std::max(c_first, results[t].norm_q / middle);
      c_second = std::max(c_second, middle / (r_pq * growth * results[t].norm_p));
    }

    const Trial& w = results[worst];
    InequalityReport rep;
    rep.name = "nikolskii-band";
    rep.parameters["omega"] = omega;
    rep.parameters["p"] = double_to_json(p);
    rep.parameters["q"] = double_to_json(q);
    rep.parameters["r"] = r;
    rep.parameters["m"] = schedule.m;
    rep.parameters["seed"] = seed;
    rep.parameters["trials"] = trials;
    rep.parameters["R_dom"] = space.domain_radius;
    rep.parameters["isometries"] = options.isometries;
    rep.parameters["chainTrials"] = chain.size();
    rep.lhs = w.norm_q;
    rep.rhs = std::pow(omega, schedule.alpha) * w.norm_p;
    rep.tolerance = kInf;
    rep.witness["trial"] = worst;
    rep.witness["seed"] = w.seed;
    rep.witness["profile"] = g.name();
    rep.witness["centers"] = w.count;
    rep.details["supRatio"] = sup_ratio.back();
    rep.details["supRatioFullSpans"] = best_full;
    rep.details["latticeSize"] = lattice.centers.size();
    rep.details["latticeCertified"] = lattice.certificates.all_ok();
    rep.details["chainConstantFirst"] = c_first;
    rep.details["chainConstantSecond"] = c_second;
    rep.finish();
    reports.push_back(std::move(rep));
  }

  const double slope = log_log_slope(omegas, sup_ratio);
  const bool full_measured =
      std::all_of(sup_full.begin(), sup_full.end(), [](double v) { return v > 0.0; });

  const auto [t_num, eta_num] = boost::math::tools::brent_find_minima(
      [&](double t) { return schedule.eta(t); }, 1e-3, 10.0, 40);

  InequalityReport summary;
  summary.name = "nikolskii";
  summary.parameters["p"] = double_to_json(p);
  summary.parameters["q"] = double_to_json(q);
  summary.parameters["m"] = schedule.m;
  summary.parameters["seed"] = seed;
  summary.parameters["trials"] = trials;
  summary.lhs = std::abs(slope - schedule.alpha);
  summary.rhs = 0.3;
  summary.tolerance = 0.0;
  summary.details["slope"] = slope;
  summary.details["expectedSlope"] = schedule.alpha;
  summary.details["slopeFullSpans"] = full_measured ? double_to_json(log_log_slope(omegas, sup_full))
                                                    : Json("unavailable");
  summary.details["omegas"] = omegas;
  summary.details["supRatios"] = sup_ratio;
  summary.details["tStar"] = schedule.t_star;
  summary.details["etaClosedForm"] = schedule.eta_closed_form();
  summary.details["etaAtTStar"] = schedule.eta(schedule.t_star);
  summary.details["etaMinimizer"] = schedule.t_minimizer();
  summary.details["etaNumericMinimizer"] = t_num;
  summary.details["etaNumericMinimum"] = eta_num;
  summary.finish();
  reports.push_back(std::move(summary));
  return reports;
}

// ---------------------------------------------------------------------------

SamplingSetup make_sampling_setup(double omega, double r, FunctionalKind kind,
                                  std::uint64_t seed, const PlancherelPolyaOptions& options) {
  require_band(omega);
  if (!(r > 0.0)) throw DomainError("sampling radius r must be positive");
  if (!(r * omega * options.admissibility < 1.0)) {
    throw DomainError("sampling radius r = " + format_double(r) +
                      " is not admissible: need r < 1/(C omega)");
  }
  Lattice lattice = build_lattice(r, options.domain_radius, seed);
  FunctionalFamily family = build_family(lattice, kind, options.epsilon);
  const Lattice dict =
      build_lattice(options.dictionary_scale / omega, options.span_radius, trial_seed(seed, 60, 0));
  return SamplingSetup{SpectralProfile::smooth(omega, options.sharpness), std::move(lattice),
                       std::move(family), dict.centers, kind == FunctionalKind::kBallAverage};
}

FrameBounds frame_bounds(const Eigen::MatrixXd& a, const Eigen::MatrixXd& gram, double r) {
  FrameBounds fb;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> g_eig(gram, Eigen::EigenvaluesOnly);
  const double g_min = g_eig.eigenvalues().minCoeff();
  const double g_max = g_eig.eigenvalues().maxCoeff();
  fb.gram_condition = g_min > 0.0 ? g_max / g_min : kInf;
  if (!(fb.gram_condition <= 1e12)) {
    throw IllPosedError("synthesis span is degenerate (Gram condition " +
                            format_double(fb.gram_condition) +
                            "); use fewer or more widely separated dictionary centers",
                        fb.gram_condition);
  }
  const Eigen::MatrixXd normal = a.transpose() * a;
  const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(normal, gram,
                                                                      Eigen::EigenvaluesOnly);
  fb.sigma_min = std::max(0.0, eig.eigenvalues().minCoeff());
  fb.sigma_max = eig.eigenvalues().maxCoeff();
  fb.c1 = 1.0 / (r * std::sqrt(fb.sigma_max));
  fb.c2 = fb.sigma_min > 0.0 ? 1.0 / (r * std::sqrt(fb.sigma_min)) : kInf;
  return fb;
}

InequalityReport check_plancherel_polya(double omega, double r, double p, FunctionalKind kind,
                                        int trials, std::uint64_t seed,
                                        const PlancherelPolyaOptions& options) {
  require_trials(trials);
  if (!(p == 1.0 || p == 2.0 || std::isinf(p))) {
    throw DomainError("check_plancherel_polya: p must be 1, 2 or inf");
  }
  const SamplingSetup setup = make_sampling_setup(omega, r, kind, seed, options);
  const Eigen::MatrixXd a =
      sampling_matrix(setup.family, setup.profile, setup.dictionary, setup.normalized);
  const Eigen::MatrixXd gram = spectral_gram(setup.profile, setup.dictionary);

  InequalityReport rep;
  rep.name = "plancherel-polya";
  rep.parameters["omega"] = omega;
  rep.parameters["p"] = double_to_json(p);
  rep.parameters["r"] = r;
  rep.parameters["kind"] = to_string(kind);
  rep.parameters["seed"] = seed;
  rep.parameters["R_dom"] = options.domain_radius;
  rep.parameters["dictionaryScale"] = options.dictionary_scale;
  if (kind == FunctionalKind::kBallAverage) rep.parameters["epsilon"] = options.epsilon;

  double c1 = 0.0, c2 = 0.0;
  if (p == 2.0) {
    const FrameBounds fb = frame_bounds(a, gram, r);
    c1 = fb.c1;
    c2 = fb.c2;
    rep.details["sigmaMin"] = fb.sigma_min;
    rep.details["sigmaMax"] = fb.sigma_max;
    rep.details["gramCondition"] = fb.gram_condition;
    rep.witness["kind"] = "generalized eigenvectors of the span";
  } else {
    rep.parameters["trials"] = trials;
    const QuadratureCloud cloud = cloud_for_band(options.domain_radius, omega);
    std::vector<double> ratios(trials);
    std::vector<std::uint64_t> seeds(trials);
    parallel_for(trials, [&](std::size_t t) {
      seeds[t] = trial_seed(seed, 70, t);
      std::mt19937_64 rng(seeds[t]);
      std::normal_distribution<double> normal(0.0, 1.0);
      Eigen::VectorXd c(setup.dictionary.size());
      for (Eigen::Index j = 0; j < c.size(); ++j) c[j] = normal(rng);
      const BandlimitedFn f(setup.profile, setup.dictionary,
                            std::vector<double>(c.data(), c.data() + c.size()));
      const Eigen::VectorXd s = a * c;
      const double sample_norm = std::isinf(p) ? s.lpNorm<Eigen::Infinity>() : s.lpNorm<1>();
      const double fn = lp_norm_of_values(values_on(std::cref(f), cloud), cloud.weights, p);
      ratios[t] = (std::isinf(p) ? 1.0 : std::pow(r, -2.0 / p)) * fn / sample_norm;
    });
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    c1 = *lo;
    c2 = *hi;
    rep.witness["trialMin"] = lo - ratios.begin();
    rep.witness["trialMax"] = hi - ratios.begin();
    rep.witness["seedMin"] = seeds[lo - ratios.begin()];
    rep.witness["seedMax"] = seeds[hi - ratios.begin()];
  }

  rep.lhs = c2 / c1;
  rep.rhs = 1e6;  // sqrt of the largest Gram condition the solver accepts
  rep.tolerance = 0.0;
  rep.details["c1"] = double_to_json(c1);
  rep.details["c2"] = double_to_json(c2);
  rep.details["conditioning"] = double_to_json(c2 / c1);
  rep.details["samples"] = setup.family.size();
  rep.details["dictionarySize"] = setup.dictionary.size();
  rep.details["latticeCertified"] = setup.lattice.certificates.all_ok();
  rep.details["family"] = family_to_json(setup.family);
  rep.details["family"].erase("masses");
  rep.finish();
  rep.passed = rep.passed && c1 > 0.0 && std::isfinite(c2);
  return rep;
}

InequalityReport check_pp_monotonicity(const std::vector<InequalityReport>& by_radius) {
  if (by_radius.size() < 2) throw DomainError("check_pp_monotonicity: need at least two radii");
  std::vector<const InequalityReport*> sorted;
  for (const auto& r : by_radius) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](auto x, auto y) {
    return x->parameters.at("r").template get<double>() < y->parameters.at("r").template get<double>();
  });

  InequalityReport rep;
  rep.name = "plancherel-polya-monotonicity";
  rep.parameters["omega"] = sorted.front()->parameters.at("omega");
  rep.parameters["p"] = sorted.front()->parameters.at("p");
  Json radii = Json::array(), cond = Json::array();
  double worst = 0.0;
  bool all_positive = true;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double k = json_to_double(sorted[i]->details.at("conditioning"));
    radii.push_back(sorted[i]->parameters.at("r"));
    cond.push_back(double_to_json(k));
    all_positive = all_positive && sorted[i]->passed;
    if (i + 1 < sorted.size()) {
      const double next = json_to_double(sorted[i + 1]->details.at("conditioning"));
      worst = std::max(worst, k / next);
    }
  }
  rep.lhs = worst;
  rep.rhs = 1.0;
  rep.tolerance = 1e-9;
  rep.details["radii"] = radii;
  rep.details["conditioning"] = cond;
  rep.finish();
  rep.passed = rep.passed && all_positive;
  return rep;
}

}  // namespace hpw
