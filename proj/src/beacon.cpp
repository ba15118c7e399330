#include "georate/beacon.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <vector>
#include <numbers>
#include <sstream>

#include "georate/entropy.hpp"
#include "georate/errors.hpp"
#include "georate/quadrature.hpp"

namespace georate {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTailRates = 40.0;
// Gaussian window for the 2-D inner integral, in standard deviations.
constexpr double kWindowSds = 12.0;

const quad::Tolerance kInnerTol{1e-9, 1e-10};
const quad::Tolerance kOuterTol{1e-8, 1e-10};

// Integral of g(t) against the law of tau, over t = u^2 so that sqrt(t)
// behaviour of g near t = 0 (offsets on the disk edge) stays smooth.
template <typename G>
double expect_over(const ArrivalProcess& tau, G&& g, const quad::Tolerance& tol) {
  switch (tau.kind()) {
    case ArrivalKind::Deterministic:
      return g(tau.param());
    case ArrivalKind::Uniform: {
      const double period = tau.param();
      const auto integrand = [&](double u) { return g(u * u) * 2.0 * u / period; };
      return quad::integrate(integrand, 0.0, std::sqrt(period), tol);
    }
    case ArrivalKind::Exponential: {
      const double a = tau.param();
      const auto integrand = [&](double u) {
        const double t = u * u;
        return g(t) * a * std::exp(-a * t) * 2.0 * u;
      };
      const double panels[] = {0.0, std::sqrt(1.0 / a), std::sqrt(5.0 / a),
                               std::sqrt(kTailRates / a)};
      return quad::integrate_piecewise(integrand, panels, tol);
    }
  }
  return 0.0;
}

// P(|l + Y| <= r), Y ~ N(0, 2 sigma2 t): relative motion of two nodes on a line.
double line_retention(double sigma2, double radius, double l, double t) {
  if (t <= 0.0) {
    const double al = std::abs(l);
    return al < radius ? 1.0 : (al == radius ? 0.5 : 0.0);
  }
  const double scale = std::sqrt(4.0 * sigma2 * t);
  return 0.5 * (std::erf((radius - l) / scale) + std::erf((radius + l) / scale));
}

// (1/2T) integral_0^T erf(c / sqrt(4 sigma2 t)) dt for c >= 0, written with
// erfc so nothing cancels when c^2 / (4 sigma2 T) is large. Odd in c.
double uniform_erf_average(double c, double d) {
  if (c < 0.0) return -uniform_erf_average(-c, d);
  const double z = c / std::sqrt(d);
  return 0.5 - c * c / d * std::erfc(z) + c / std::sqrt(kPi * d) * std::exp(-z * z) -
         0.5 * std::erfc(z);
}

// P((l + X)^2 + Y^2 <= r^2) with X, Y ~ N(0, sigma2 t) independent.
double disk_retention(double sigma2, double radius, double l, double t) {
  if (t <= 0.0) {
    return l < radius ? 1.0 : (l == radius ? 0.5 : 0.0);
  }
  const double var = sigma2 * t;
  const double sd = std::sqrt(var);
  const double lo = std::max(-radius, l - kWindowSds * sd);
  const double hi = std::min(radius, l + kWindowSds * sd);
  if (lo >= hi) return 0.0;
  // x = r sin(theta) keeps the sqrt(r^2 - x^2) edge smooth.
  const double theta_lo = std::asin(std::clamp(lo / radius, -1.0, 1.0));
  const double theta_hi = std::asin(std::clamp(hi / radius, -1.0, 1.0));
  const double norm = 1.0 / std::sqrt(2.0 * kPi * var);
  const double chord_scale = 1.0 / std::sqrt(2.0 * var);
  const auto integrand = [&](double theta) {
    const double x = radius * std::sin(theta);
    const double half_chord = radius * std::cos(theta);
    const double dx = l - x;
    return norm * std::exp(-dx * dx / (2.0 * var)) * std::erf(half_chord * chord_scale) *
           half_chord;
  };
  // Panels around the Gaussian peak and the erf boundary layers at the disk
  // edge, which are about sd / r wide in theta.
  std::vector<double> breaks{theta_lo, theta_hi};
  const double peak = std::asin(std::clamp(l / radius, -1.0, 1.0));
  if (peak > theta_lo && peak < theta_hi) breaks.push_back(peak);
  for (double width : {2.0, 8.0, 32.0}) {
    const double edge = width * sd / radius;
    for (double theta : {0.5 * kPi - edge, -0.5 * kPi + edge}) {
      if (theta > theta_lo && theta < theta_hi) breaks.push_back(theta);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  return quad::integrate_piecewise(integrand, breaks, kInnerTol);
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

const char* overhead_tag(const BeaconBoundRequest& req) {
  if (req.dimension == Dimension::TwoD) return "Eq111";
  switch (req.arrival_tau.kind()) {
    case ArrivalKind::Deterministic: return "Eq95";
    case ArrivalKind::Uniform: return "Eq102";
    case ArrivalKind::Exponential: return "Eq106";
  }
  return "Eq90";
}

}  // namespace

std::string_view to_string(LStarCase c) {
  switch (c) {
    case LStarCase::AtRadius: return "l*=r";
    case LStarCase::AtOrigin: return "l*=0";
    case LStarCase::Interior: return "interior";
  }
  return "unknown";
}

void validate(const BeaconBoundRequest& req) {
  if (!std::isfinite(req.sigma2) || req.sigma2 <= 0.0) {
    throw InvalidArgument("sigma2 must be positive and finite");
  }
  if (!std::isfinite(req.radius) || req.radius <= 0.0) {
    throw InvalidArgument("radius must be positive and finite");
  }
  (void)Probability(req.delta);
  if (req.beacon_bits < 1) throw InvalidArgument("beacon size must be at least one bit");
}

double p_neighbor_1d(const BeaconBoundRequest& req, double l) {
  validate(req);
  if (!std::isfinite(l)) throw InvalidArgument("offset must be finite");
  const auto& tau = req.arrival_tau;
  switch (tau.kind()) {
    case ArrivalKind::Deterministic:
      return clamp_probability(line_retention(req.sigma2, req.radius, l, tau.param()));
    case ArrivalKind::Uniform: {
      const double d = 4.0 * req.sigma2 * tau.param();
      return clamp_probability(uniform_erf_average(req.radius - l, d) +
                               uniform_erf_average(req.radius + l, d));
    }
    case ArrivalKind::Exponential:
      return p_neighbor_1d_quadrature(req, l);
  }
  return 0.0;
}

double p_neighbor_1d_quadrature(const BeaconBoundRequest& req, double l) {
  validate(req);
  if (!std::isfinite(l)) throw InvalidArgument("offset must be finite");
  const auto g = [&](double t) { return line_retention(req.sigma2, req.radius, l, t); };
  return clamp_probability(expect_over(req.arrival_tau, g, kOuterTol));
}

double p_neighbor_2d(const BeaconBoundRequest& req, double l) {
  validate(req);
  if (!std::isfinite(l)) throw InvalidArgument("offset must be finite");
  const double offset = std::abs(l);
  const auto g = [&](double t) { return disk_retention(req.sigma2, req.radius, offset, t); };
  return clamp_probability(expect_over(req.arrival_tau, g, kOuterTol));
}

double p_neighbor(const BeaconBoundRequest& req, double l) {
  return req.dimension == Dimension::OneD ? p_neighbor_1d(req, l) : p_neighbor_2d(req, l);
}

LStar find_lstar(const BeaconBoundRequest& req) {
  validate(req);
  const double r = req.radius;
  const double p_r = p_neighbor(req, r);
  if (p_r >= 0.5) return {r, p_r, binary_entropy(Probability(p_r)), LStarCase::AtRadius};
  const double p_0 = p_neighbor(req, 0.0);
  if (p_0 <= 0.5) return {0.0, p_0, binary_entropy(Probability(p_0)), LStarCase::AtOrigin};

  // p is strictly decreasing on [0, r], so p(l) - 0.5 has one sign change.
  const double tolerance = 1e-10 * r;
  std::uintmax_t max_iter = 200;
  const auto f = [&](double l) { return p_neighbor(req, l) - 0.5; };
  const auto done = [&](double a, double b) { return std::abs(b - a) <= tolerance; };
  const auto [a, b] = boost::math::tools::bisect(f, 0.0, r, done, max_iter);
  if (!done(a, b)) {
    std::ostringstream msg;
    msg << "bisection for l* stopped at width " << (b - a) << " after " << max_iter
        << " iterations";
    throw ConvergenceError(msg.str());
  }
  return {0.5 * (a + b), 0.5, 1.0, LStarCase::Interior};
}

double beacon_rate(const BeaconBoundRequest& req) {
  return clamp_nonneg(find_lstar(req).entropy - ternary_entropy(Probability(req.delta)));
}

double non_neighbor_rate(const BeaconBoundRequest& req) {
  // Outside the radius p decreases in |l| from p(r) <= 0.5, so H(p) peaks at r.
  const double p_r = p_neighbor(req, req.radius);
  return clamp_nonneg(binary_entropy(Probability(p_r)) - ternary_entropy(Probability(req.delta)));
}

BeaconReport beacon_bound(const BeaconBoundRequest& req) {
  BeaconReport out;
  out.l_star = find_lstar(req);
  out.beacons_per_message =
      clamp_nonneg(out.l_star.entropy - ternary_entropy(Probability(req.delta)));
  out.bits_per_second = req.beacon_bits / req.arrival_tau.mean() * out.beacons_per_message;
  out.equation_tag = overhead_tag(req);
  out.loose = req.sigma2 * req.arrival_tau.mean() > 2.0 * req.radius;
  return out;
}

double beacon_overhead(const BeaconBoundRequest& req) { return beacon_bound(req).bits_per_second; }

double beacon_rate_cases_deterministic_1d(const BeaconBoundRequest& req) {
  validate(req);
  if (req.dimension != Dimension::OneD || req.arrival_tau.kind() != ArrivalKind::Deterministic) {
    throw InvalidArgument("case analysis applies to deterministic 1-D requests");
  }
  const double s2t = req.sigma2 * req.arrival_tau.param();
  const double p_r = 0.5 * std::erf(req.radius / std::sqrt(s2t));
  const double p_0 = std::erf(req.radius / std::sqrt(4.0 * s2t));
  const double ternary = ternary_entropy(Probability(req.delta));
  if (p_r >= 0.5) return clamp_nonneg(binary_entropy(Probability(p_r)) - ternary);
  if (p_0 <= 0.5) return clamp_nonneg(binary_entropy(Probability(p_0)) - ternary);
  return clamp_nonneg(1.0 - ternary);
}

double beacon_rate_unit_step_deterministic_1d(const BeaconBoundRequest& req) {
  validate(req);
  if (req.dimension != Dimension::OneD || req.arrival_tau.kind() != ArrivalKind::Deterministic) {
    throw InvalidArgument("unit-step form applies to deterministic 1-D requests");
  }
  // Heaviside with U(0) = 1/2; H(p) = 1 on both branch boundaries, so the
  // half weights recombine to the case value there.
  const auto step = [](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? 0.0 : 0.5); };
  const double s2t = req.sigma2 * req.arrival_tau.param();
  const double p_r = 0.5 * std::erf(req.radius / std::sqrt(s2t));
  const double p_0 = std::erf(req.radius / std::sqrt(4.0 * s2t));
  const double entropy = binary_entropy(Probability(p_r)) * step(p_r - 0.5) +
                         binary_entropy(Probability(p_0)) * step(0.5 - p_0) +
                         step(0.5 - p_r) * step(p_0 - 0.5);
  return clamp_nonneg(entropy - ternary_entropy(Probability(req.delta)));
}

}  // namespace georate
