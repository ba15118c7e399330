#pragma once

#include <string_view>

#include "georate/arrival.hpp"
#include "georate/random.hpp"

namespace georate {

enum class Dimension { OneD = 1, TwoD = 2 };

/// Per-coordinate Brownian variance: sigma2 on a line, sigma2 / 2 along each
/// axis of the plane.
constexpr double coordinate_variance(Dimension dim, double sigma2) {
  return dim == Dimension::OneD ? sigma2 : sigma2 / 2.0;
}

enum class DensityForm { Gaussian, UniformMixtureClosedForm, NumericMixture };

std::string_view to_string(DensityForm form);

/// Density of one coordinate of a Brownian node's displacement accumulated
/// over k packet inter-arrival times:
///
///   f(x) = integral of N(x; 0, sigma2 * t) f_S^k(t) dt.
///
/// Deterministic arrivals give a Gaussian. Uniform arrivals with k = 1 use the
/// erf closed form. Everything else (exponential, k-fold uniform) is
/// integrated numerically over t = u^2, which removes the 1/sqrt(t) endpoint
/// singularity.
class DisplacementDensity {
 public:
  DisplacementDensity(double sigma2, ArrivalProcess arrival, unsigned k = 1);

  double sigma2() const noexcept { return sigma2_; }
  const ArrivalProcess& arrival() const noexcept { return arrival_; }
  unsigned k() const noexcept { return k_; }
  DensityForm form() const noexcept { return form_; }

  /// sigma2 * k * E[S], the exact variance of the mixture.
  double variance() const noexcept;

  /// Half width of the truncated support used by every x-integral.
  double support_half_width() const noexcept;

  double eval(double x) const;

  /// -integral f log2 f in bits; closed form for the Gaussian case.
  double differential_entropy() const;

  /// Quadrature of f over the truncated support (should be 1).
  double mass() const;

  /// Quadrature of x^2 f over the truncated support (should be variance()).
  double second_moment() const;

  double sample(Rng& rng) const;

 private:
  double mixture_eval(double x) const;

  double sigma2_;
  ArrivalProcess arrival_;
  unsigned k_;
  DensityForm form_;
};

/// Draws t_1..t_k from `arrival` and returns N(0, sigma2 * sum t_i).
double sample_displacement(double sigma2, const ArrivalProcess& arrival, unsigned k, Rng& rng);

/// Gaussian differential entropy 0.5 log2(2 pi e variance), in bits.
double gaussian_entropy_bits(double variance);

}  // namespace georate
