#pragma once

#include <vector>

namespace hpw::euclid {

/// Nikolskii ratio of f(x) = prod_i x_i^-2 sin^2(omega x_i / 2) on R^d.
struct ExtremalRatio {
  double norm_p = 0.0;
  double norm_q = 0.0;
  double ratio = 0.0;     ///< ||f||_q / ||f||_p
  double constant = 0.0;  ///< ratio / omega^(d/p - d/q)
  double tail_bound = 0.0;  ///< relative bound on the truncated-tail error of the norms
};

/// ||f||_p of the one-dimensional extremal function (p = inf allowed).
/// Whole periods are integrated by Gauss-Legendre; the remainder uses the period mean
/// of sin^2p and an integration-by-parts bound. Throws QuadratureError when
/// that bound exceeds 1e-8 of the result.
double extremal_norm_1d(double p, double omega, double* relative_tail = nullptr);

/// 1 <= p <= q <= inf, omega > 0, d in {1, 2}. Two dimensions by Fubini.
ExtremalRatio extremal_ratio(double p, double q, double omega, int d);

/// f(x) = sum_k c_k sinc(omega x / pi - n_k), nodes n_k pi / omega.
struct SincSpan {
  double band = 0.0;
  std::vector<long> shifts;
  std::vector<double> coeffs;

  double operator()(double x) const;
};

/// L2 norm computed on the Fourier side by Gauss-Legendre over [-band, band].
double sinc_l2_norm(const SincSpan& f);

struct ShannonNorms {
  double discrete = 0.0;    ///< (sum_n |f(n)|^2)^(1/2) over the truncated window
  double continuous = 0.0;  ///< ||f||_2
  double tail_bound = 0.0;  ///< bound on the omitted part of sum_n |f(n)|^2
};

/// Integer-point samples against the continuous norm. Throws DomainError for
/// band > pi, where integer sampling aliases.
ShannonNorms shannon_pp(const SincSpan& f, long window = 1L << 16);

/// Samples of f at the integers first, first + 1, ...
std::vector<double> sample_integers(const SincSpan& f, long first, long count);

/// Cardinal series through samples at first, first + 1, ... (band pi).
SincSpan shannon_reconstruct(const std::vector<double>& samples, long first);

}  // namespace hpw::euclid
