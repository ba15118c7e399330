#include "georate/displacement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "georate/entropy.hpp"
#include "georate/errors.hpp"
#include "georate/quadrature.hpp"

namespace georate {
namespace {

constexpr double kPi = std::numbers::pi;

// Exponential k = 1 mixtures are truncated at t = 40 / alpha.
constexpr double kExponentialTailRates = 40.0;
// Tail half-widths of the x-support, in standard deviations of the mixture.
// The exponential mixture is Laplace-like, so it needs a wider window than
// the light-tailed Gaussian and uniform mixtures.
constexpr double kLightTailWidth = 10.0;
constexpr double kHeavyTailWidth = 25.0;

const quad::Tolerance kDensityTol{1e-9, 1e-11};
const quad::Tolerance kEntropyTol{1e-7, 1e-10};

struct MixingWindow {
  double lo;
  double hi;
};

MixingWindow mixing_window(const ArrivalProcess& arrival, unsigned k) {
  const double mean = k * arrival.mean();
  const double sd = std::sqrt(k * arrival.variance());
  switch (arrival.kind()) {
    case ArrivalKind::Uniform:
      return {std::max(0.0, mean - 15.0 * sd), std::min(k * arrival.param(), mean + 15.0 * sd)};
    case ArrivalKind::Exponential:
      if (k == 1) return {0.0, kExponentialTailRates / arrival.param()};
      return {std::max(0.0, mean - 15.0 * sd), mean + 15.0 * sd + kExponentialTailRates / arrival.param()};
    case ArrivalKind::Deterministic:
      break;
  }
  return {mean, mean};
}

}  // namespace

std::string_view to_string(DensityForm form) {
  switch (form) {
    case DensityForm::Gaussian: return "gaussian";
    case DensityForm::UniformMixtureClosedForm: return "uniform-closed-form";
    case DensityForm::NumericMixture: return "numeric-mixture";
  }
  return "unknown";
}

double gaussian_entropy_bits(double variance) {
  return 0.5 * std::log2(2.0 * kPi * std::numbers::e * variance);
}

DisplacementDensity::DisplacementDensity(double sigma2, ArrivalProcess arrival, unsigned k)
    : sigma2_(sigma2), arrival_(arrival), k_(k) {
  if (!std::isfinite(sigma2) || sigma2 <= 0.0) {
    std::ostringstream msg;
    msg << "Brownian variance must be positive and finite, got " << sigma2;
    throw InvalidArgument(msg.str());
  }
  if (k == 0) throw InvalidArgument("number of inter-arrival epochs must be at least 1");
  if (arrival.kind() == ArrivalKind::Deterministic) {
    form_ = DensityForm::Gaussian;
  } else if (arrival.kind() == ArrivalKind::Uniform && k == 1) {
    form_ = DensityForm::UniformMixtureClosedForm;
  } else {
    form_ = DensityForm::NumericMixture;
  }
}

double DisplacementDensity::variance() const noexcept { return sigma2_ * k_ * arrival_.mean(); }

double DisplacementDensity::support_half_width() const noexcept {
  const double width =
      arrival_.kind() == ArrivalKind::Exponential ? kHeavyTailWidth : kLightTailWidth;
  return width * std::sqrt(variance());
}

double DisplacementDensity::eval(double x) const {
  if (!std::isfinite(x)) throw InvalidArgument("displacement must be finite");
  const double ax = std::abs(x);
  switch (form_) {
    case DensityForm::Gaussian: {
      const double v = variance();
      return std::exp(-ax * ax / (2.0 * v)) / std::sqrt(2.0 * kPi * v);
    }
    case DensityForm::UniformMixtureClosedForm: {
      // sqrt(2/(pi s)) e^{-x^2/2s} + (x/s) erf(x/sqrt(2s)) - |x|/s with s = sigma2 T,
      // with the last two terms merged into -(|x|/s) erfc(|x|/sqrt(2s)).
      const double s = sigma2_ * arrival_.param();
      return std::sqrt(2.0 / (kPi * s)) * std::exp(-ax * ax / (2.0 * s)) -
             ax / s * std::erfc(ax / std::sqrt(2.0 * s));
    }
    case DensityForm::NumericMixture:
      return mixture_eval(ax);
  }
  return 0.0;
}

double DisplacementDensity::mixture_eval(double ax) const {
  // t = u^2: N(x; sigma2 t) f(t) dt = sqrt(2/(pi sigma2)) e^{-x^2/(2 sigma2 u^2)} f(u^2) du.
  const double prefactor = std::sqrt(2.0 / (kPi * sigma2_));
  const double x2 = ax * ax;
  const auto integrand = [&](double u) {
    const double t = u * u;
    if (t <= 0.0) return ax == 0.0 ? prefactor * arrival_.kfold_pdf(k_, 0.0) : 0.0;
    return prefactor * std::exp(-x2 / (2.0 * sigma2_ * t)) * arrival_.kfold_pdf(k_, t);
  };
  const auto window = mixing_window(arrival_, k_);
  std::vector<double> breaks{std::sqrt(window.lo)};
  if (arrival_.kind() == ArrivalKind::Uniform) {
    // Irwin-Hall kinks at multiples of T.
    const double period = arrival_.param();
    for (unsigned j = 1; j < k_; ++j) {
      const double t = j * period;
      if (t > window.lo && t < window.hi) breaks.push_back(std::sqrt(t));
    }
  }
  // The Gaussian factor switches on around u = |x| / sigma; near x = 0 that
  // edge is very sharp and needs its own panels.
  const double sigma = std::sqrt(sigma2_);
  for (double edge : {0.25 * ax / sigma, ax / sigma, 4.0 * ax / sigma}) {
    if (edge > breaks.front() && edge < std::sqrt(window.hi)) breaks.push_back(edge);
  }
  breaks.push_back(std::sqrt(window.hi));
  std::sort(breaks.begin(), breaks.end());
  return quad::integrate_piecewise(integrand, breaks, kDensityTol);
}

double DisplacementDensity::differential_entropy() const {
  if (form_ == DensityForm::Gaussian) return gaussian_entropy_bits(variance());
  const double sd = std::sqrt(variance());
  const double limit = support_half_width();
  const std::vector<double> breaks{0.0, 0.5 * sd, 2.0 * sd, 5.0 * sd, limit};
  const auto integrand = [&](double x) { return neg_p_log2_p(eval(x)); };
  return 2.0 * quad::integrate_piecewise(integrand, breaks, kEntropyTol);
}

double DisplacementDensity::mass() const {
  const double sd = std::sqrt(variance());
  const std::vector<double> breaks{0.0, 0.5 * sd, 2.0 * sd, 5.0 * sd, support_half_width()};
  return 2.0 * quad::integrate_piecewise([&](double x) { return eval(x); }, breaks, kEntropyTol);
}

double DisplacementDensity::second_moment() const {
  const double sd = std::sqrt(variance());
  const std::vector<double> breaks{0.0, 0.5 * sd, 2.0 * sd, 5.0 * sd, support_half_width()};
  const quad::Tolerance tol{1e-9 * variance(), 1e-10};
  return 2.0 * quad::integrate_piecewise([&](double x) { return x * x * eval(x); }, breaks, tol);
}

double DisplacementDensity::sample(Rng& rng) const {
  return sample_displacement(sigma2_, arrival_, k_, rng);
}

double sample_displacement(double sigma2, const ArrivalProcess& arrival, unsigned k, Rng& rng) {
  const double elapsed = arrival.sample_sum(k, rng);
  return std::sqrt(sigma2 * elapsed) * std::normal_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace georate
