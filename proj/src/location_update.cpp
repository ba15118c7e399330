#include "georate/location_update.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "georate/entropy.hpp"
#include "georate/errors.hpp"

namespace georate {
namespace {

void validate(const LocationBoundRequest& req) {
  if (!std::isfinite(req.sigma2) || req.sigma2 <= 0.0) {
    throw InvalidArgument("sigma2 must be positive and finite");
  }
  if (!std::isfinite(req.epsilon2) || req.epsilon2 <= 0.0) {
    throw InvalidArgument("epsilon2 must be positive and finite");
  }
}

double coordinates(Dimension dim) { return dim == Dimension::OneD ? 1.0 : 2.0; }

// Entropy of the displacement over k epochs and its excess over the
// Gaussian-distortion threshold. The threshold is 0.5 log2(2 pi e eps2) per
// coordinate on the line and log2(pi e eps2) for the plane.
struct EntropyExcess {
  double entropy;
  double excess;
};

EntropyExcess entropy_excess(const LocationBoundRequest& req, unsigned k) {
  const double dims = coordinates(req.dimension);
  const double coord_var = coordinate_variance(req.dimension, req.sigma2);
  if (req.arrival.kind() == ArrivalKind::Deterministic) {
    const double ratio = req.sigma2 * k * req.arrival.param() / req.epsilon2;
    return {dims * gaussian_entropy_bits(coord_var * k * req.arrival.param()),
            0.5 * dims * std::log2(ratio)};
  }
  const DisplacementDensity density(coord_var, req.arrival, k);
  const double h = dims * density.differential_entropy();
  const double threshold =
      req.dimension == Dimension::OneD
          ? 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * req.epsilon2)
          : std::log2(std::numbers::pi * std::numbers::e * req.epsilon2);
  return {h, h - threshold};
}

const char* tag_for(Dimension dim, ArrivalKind kind) {
  if (dim == Dimension::OneD) {
    switch (kind) {
      case ArrivalKind::Deterministic: return "Eq30";
      case ArrivalKind::Uniform: return "Eq34";
      case ArrivalKind::Exponential: return "Eq37";
    }
  }
  switch (kind) {
    case ArrivalKind::Deterministic: return "Eq49";
    case ArrivalKind::Uniform: return "Eq52";
    case ArrivalKind::Exponential: return "Eq55";
  }
  return "";
}

BoundReport unrelaxed(const LocationBoundRequest& req) {
  validate(req);
  const auto terms = entropy_excess(req, 1);
  BoundReport out;
  out.entropy_term = terms.entropy;
  out.bits_per_packet = clamp_nonneg(terms.excess);
  out.bits_per_second = out.bits_per_packet / req.arrival.mean();
  out.equation_tag = tag_for(req.dimension, req.arrival.kind());
  return out;
}

}  // namespace

BoundReport update_bound_1d(const LocationBoundRequest& req) {
  if (req.dimension != Dimension::OneD) throw InvalidArgument("update_bound_1d needs a 1-D request");
  return unrelaxed(req);
}

BoundReport update_bound_2d(const LocationBoundRequest& req) {
  if (req.dimension != Dimension::TwoD) throw InvalidArgument("update_bound_2d needs a 2-D request");
  return unrelaxed(req);
}

unsigned k_star(const LocationBoundRequest& req) {
  validate(req);
  // A density of variance v has entropy at most that of the Gaussian, so the
  // condition is unreachable while sigma2 * k * E[S] <= eps2 (the same
  // variance comparison in 1-D and 2-D). Start the scan past those k.
  const double per_epoch = req.sigma2 * req.arrival.mean();
  const double first = std::floor(req.epsilon2 / per_epoch) + 1.0;
  if (first > kMaxKStar) {
    std::ostringstream msg;
    msg << "k* exceeds the search cap " << kMaxKStar;
    throw ConvergenceError(msg.str());
  }
  for (auto k = static_cast<unsigned>(std::max(first, 1.0)); k <= kMaxKStar; ++k) {
    if (req.arrival.kind() == ArrivalKind::Deterministic) {
      if (per_epoch * k > req.epsilon2) return k;
      continue;
    }
    if (entropy_excess(req, k).excess > 0.0) return k;
  }
  throw ConvergenceError("k* search did not terminate within the cap");
}

BoundReport relaxed_update_bound(const LocationBoundRequest& req) {
  const unsigned k = k_star(req);
  if (k == 1) {
    auto out = unrelaxed(req);
    out.k_star = 1;
    return out;
  }
  const auto terms = entropy_excess(req, k);
  BoundReport out;
  out.k_star = k;
  out.entropy_term = terms.entropy;
  out.bits_per_packet = terms.excess / k;
  out.bits_per_second = terms.excess / (k * req.arrival.mean());
  out.equation_tag = req.dimension == Dimension::OneD ? "Eq120" : "Eq123";
  return out;
}

BoundReport update_bound(const LocationBoundRequest& req) {
  if (req.relaxed) return relaxed_update_bound(req);
  return req.dimension == Dimension::OneD ? update_bound_1d(req) : update_bound_2d(req);
}

SessionBoundReport per_session_bound(double sigma2, const ArrivalProcess& session,
                                     const ArrivalProcess& intra, double epsilon2) {
  const LocationBoundRequest session_req{Dimension::OneD, sigma2, session, epsilon2, false};
  const LocationBoundRequest intra_req{Dimension::OneD, sigma2, intra, epsilon2, false};
  validate(session_req);
  const auto session_terms = entropy_excess(session_req, 1);
  const auto intra_terms = entropy_excess(intra_req, 1);

  SessionBoundReport out;
  out.session_bits_per_second = clamp_nonneg(session_terms.excess) / session.mean();
  out.piggyback_bits_per_second = 2.0 * clamp_nonneg(intra_terms.excess) / intra.mean();
  out.report.bits_per_second = out.session_bits_per_second + out.piggyback_bits_per_second;
  // Per-packet view: the location bits carried by each data/ACK pair.
  out.report.bits_per_packet = 2.0 * clamp_nonneg(intra_terms.excess);
  out.report.entropy_term = session_terms.entropy;
  out.report.equation_tag = "Eq129";
  return out;
}

}  // namespace georate
