#include "hpw/euclid_oracle.hpp"

#include <boost/math/special_functions/sin_pi.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hpw/errors.hpp"
#include "hpw/quadrature.hpp"

namespace hpw::euclid {

namespace {

constexpr double kPi = std::numbers::pi;

double extremal_1d(double x, double omega) {
  const double t = 0.5 * omega * x;
  if (std::abs(t) < 1e-4) {
    // sin^2(t)/x^2 = (omega/2)^2 (1 - t^2/3 + 2 t^4/45)
    const double t2 = t * t;
    return 0.25 * omega * omega * (1.0 - t2 / 3.0 + 2.0 * t2 * t2 / 45.0);
  }
  const double s = std::sin(t) / x;
  return s * s;
}

/// Mean of sin^(2p) over a period.
double sine_power_mean(double p) {
  return std::exp(std::lgamma(p + 0.5) - std::lgamma(p + 1.0)) / std::sqrt(kPi);
}

}  // namespace

double extremal_norm_1d(double p, double omega, double* relative_tail) {
  if (!(omega > 0.0)) throw DomainError("extremal_norm: omega must be positive");
  if (!(p >= 1.0)) throw DomainError("extremal_norm: p must be >= 1");
  if (std::isinf(p)) {
    // |sin t| <= |t| puts the maximum at 0.
    if (relative_tail) *relative_tail = 0.0;
    return 0.25 * omega * omega;
  }
  const double period = 2.0 * kPi / omega;
  const QuadratureRule& ref = gauss_legendre_reference(48);
  // x = a + T s(u), s(u) = 3u^2 - 2u^3 flattens the |sin|^2p zeros at the period ends.
  const auto period_integral = [&](long k) {
    const double a = k * period;
    double sum = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      const double u = 0.5 * (ref.nodes[i] + 1.0);
      const double x = a + period * u * u * (3.0 - 2.0 * u);
      const double jac = period * 6.0 * u * (1.0 - u);
      sum += 0.5 * ref.weights[i] * jac * std::pow(extremal_1d(x, omega), p);
    }
    return sum;
  };

  const double first = period_integral(0);
  // Remainder after the mean-value tail is at most period * X^(-2p) per side.
  const double target = 1e-10 * first;
  const double x_needed = std::pow(period / target, 1.0 / (2.0 * p));
  const long periods = std::max(1L, static_cast<long>(std::ceil(x_needed / period)));
  const double x_end = periods * period;

  double half = first;
  double compensation = 0.0;
  for (long k = 1; k < periods; ++k) {
    const double piece = period_integral(k);
    const double y = piece - compensation;
    const double t = half + y;
    compensation = (t - half) - y;
    half = t;
  }
  half += sine_power_mean(p) * std::pow(x_end, 1.0 - 2.0 * p) / (2.0 * p - 1.0);
  const double remainder = period * std::pow(x_end, -2.0 * p);
  const double total = 2.0 * half;
  const double rel = 2.0 * remainder / total;
  if (rel > 1e-8) {
    throw QuadratureError("extremal_norm: tail bound exceeds 1e-8 of the integral", rel);
  }
  if (relative_tail) *relative_tail = rel / p;
  return std::pow(total, 1.0 / p);
}

ExtremalRatio extremal_ratio(double p, double q, double omega, int d) {
  if (!(p >= 1.0 && p <= q)) {
    throw DomainError("extremal_ratio: need 1 <= p <= q <= inf");
  }
  if (d != 1 && d != 2) throw DomainError("extremal_ratio: d must be 1 or 2");
  ExtremalRatio out;
  double tail_p = 0.0;
  double tail_q = 0.0;
  const double np = extremal_norm_1d(p, omega, &tail_p);
  const double nq = (q == p) ? np : extremal_norm_1d(q, omega, &tail_q);
  if (q == p) tail_q = tail_p;
  out.norm_p = d == 1 ? np : np * np;
  out.norm_q = d == 1 ? nq : nq * nq;
  out.ratio = out.norm_q / out.norm_p;
  const double inv_p = 1.0 / p;
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  out.constant = out.ratio / std::pow(omega, d * (inv_p - inv_q));
  out.tail_bound = d * (tail_p + tail_q);
  return out;
}

double SincSpan::operator()(double x) const {
  double s = 0.0;
  const double scaled = band * x / kPi;
  for (std::size_t k = 0; k < shifts.size(); ++k) {
    const double t = scaled - static_cast<double>(shifts[k]);
    s += coeffs[k] * (t == 0.0 ? 1.0 : boost::math::sin_pi(t) / (kPi * t));
  }
  return s;
}

double sinc_l2_norm(const SincSpan& f) {
  if (f.shifts.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(f.shifts.begin(), f.shifts.end());
  // |F|^2 is a trigonometric polynomial in xi with frequencies up to (hi - lo) pi / band.
  const int n = static_cast<int>(*hi - *lo) + 64;
  const QuadratureRule rule = gauss_legendre(n, -f.band, f.band);
  double total = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double xi = rule.nodes[i];
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < f.shifts.size(); ++k) {
      const double phase = xi * kPi * static_cast<double>(f.shifts[k]) / f.band;
      re += f.coeffs[k] * std::cos(phase);
      im -= f.coeffs[k] * std::sin(phase);
    }
    total += rule.weights[i] * (re * re + im * im);
  }
  const double scale = kPi / f.band;
  return std::sqrt(total * scale * scale / (2.0 * kPi));
}

std::vector<double> sample_integers(const SincSpan& f, long first, long count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (long n = 0; n < count; ++n) out[n] = f(static_cast<double>(first + n));
  return out;
}

ShannonNorms shannon_pp(const SincSpan& f, long window) {
  if (!(f.band > 0.0)) throw DomainError("shannon_pp: band must be positive");
  if (f.band > kPi) {
    throw DomainError("shannon_pp: band " + std::to_string(f.band) +
                      " exceeds pi, so integer samples alias (need band <= pi)");
  }
  if (f.shifts.size() != f.coeffs.size()) throw DomainError("shannon_pp: size mismatch");
  ShannonNorms out;
  out.continuous = sinc_l2_norm(f);
  if (f.shifts.empty()) return out;
  const auto [lo, hi] = std::minmax_element(f.shifts.begin(), f.shifts.end());
  // Node positions in x are n pi / band; cover them plus the window on each side.
  const double x_lo = *lo * kPi / f.band;
  const double x_hi = *hi * kPi / f.band;
  const long first = static_cast<long>(std::floor(x_lo)) - window;
  const long last = static_cast<long>(std::ceil(x_hi)) + window;
  double sum = 0.0;
  for (long n = first; n <= last; ++n) {
    const double v = f(static_cast<double>(n));
    sum += v * v;
  }
  out.discrete = std::sqrt(sum);
  double l1 = 0.0;
  for (double c : f.coeffs) l1 += std::abs(c);
  // |f(x)| <= l1 * pi^-1 / (band/pi * dist(x, nodes)); summed over both tails.
  const double gap = static_cast<double>(window);
  out.tail_bound = 2.0 * l1 * l1 / (f.band * f.band * gap);
  // At band pi every sample off the node set is exactly zero.
  if (f.band == kPi) out.tail_bound = 0.0;
  return out;
}

SincSpan shannon_reconstruct(const std::vector<double>& samples, long first) {
  SincSpan f;
  f.band = kPi;
  f.shifts.resize(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) f.shifts[k] = first + static_cast<long>(k);
  f.coeffs = samples;
  return f;
}

}  // namespace hpw::euclid
