#pragma once

#include <string>
#include <string_view>

#include "georate/arrival.hpp"
#include "georate/displacement.hpp"

namespace georate {

struct BeaconBoundRequest {
  Dimension dimension = Dimension::OneD;
  double sigma2 = 1.0;   ///< Per-node Brownian variance; relative motion has twice this.
  double radius = 1.0;   ///< Communication radius r, meters.
  ArrivalProcess arrival_tau = ArrivalProcess::deterministic(1.0);  ///< Forwarded-packet law.
  double delta = 0.0;    ///< Allowed probability of an inconsistent neighbor bit.
  unsigned beacon_bits = 1;
};

/// Which branch fixed the worst-case initial offset l*.
enum class LStarCase {
  AtRadius,   ///< p(r) >= 0.5, l* = r.
  AtOrigin,   ///< p(0) <= 0.5, l* = 0.
  Interior,   ///< p(0) > 0.5 > p(r), p(l*) = 0.5.
};

std::string_view to_string(LStarCase c);

struct LStar {
  double l_star = 0.0;
  double p_at_l_star = 0.0;
  double entropy = 0.0;  ///< H(p(l*)) in bits.
  LStarCase branch = LStarCase::Interior;
};

struct BeaconReport {
  LStar l_star;
  double beacons_per_message = 0.0;  ///< Mutual information per forwarded packet.
  double bits_per_second = 0.0;
  std::string equation_tag;
  /// sigma2 E[tau] > 2r: nodes mostly leave each other's range between
  /// packets and the bound may be loose.
  bool loose = false;
};

void validate(const BeaconBoundRequest& req);

/// Probability that a node at offset l is inside radius r of the reference
/// node at the next forwarding epoch (line). Deterministic and uniform laws
/// use closed forms; exponential is integrated.
double p_neighbor_1d(const BeaconBoundRequest& req, double l);

/// Same quantity by direct quadrature of the erf mixture for every family.
double p_neighbor_1d_quadrature(const BeaconBoundRequest& req, double l);

/// Plane version: nested quadrature over the disk and the arrival law.
double p_neighbor_2d(const BeaconBoundRequest& req, double l);

/// Dispatches on req.dimension.
double p_neighbor(const BeaconBoundRequest& req, double l);

/// Worst-case offset in [0, r]; bisects p(l) = 0.5 in the interior case.
LStar find_lstar(const BeaconBoundRequest& req);

/// max(H(p(l*)) - H(delta/2, 1 - delta, delta/2), 0).
double beacon_rate(const BeaconBoundRequest& req);

/// Neighbor-branch bound for offsets outside the radius, maximised at |l| = r.
double non_neighbor_rate(const BeaconBoundRequest& req);

/// B / E[tau] * beacon_rate, bundled with l* and metadata.
BeaconReport beacon_bound(const BeaconBoundRequest& req);

double beacon_overhead(const BeaconBoundRequest& req);

/// Deterministic 1-D rate by explicit case analysis on p(0) and p(r).
double beacon_rate_cases_deterministic_1d(const BeaconBoundRequest& req);

/// Deterministic 1-D rate in the unit-step compact form.
double beacon_rate_unit_step_deterministic_1d(const BeaconBoundRequest& req);

}  // namespace georate
