#pragma once

#include <optional>
#include <string>

#include "georate/arrival.hpp"
#include "georate/displacement.hpp"

namespace georate {

struct LocationBoundRequest {
  Dimension dimension = Dimension::OneD;
  double sigma2 = 1.0;    ///< Brownian variance rate, m^2/s.
  ArrivalProcess arrival = ArrivalProcess::deterministic(1.0);
  double epsilon2 = 1.0;  ///< Mean squared location error allowed at query epochs, m^2.
  bool relaxed = false;   ///< Require the fidelity only every k* packets.
};

/// Lower bound on the location update rate.
struct BoundReport {
  double bits_per_packet = 0.0;
  double bits_per_second = 0.0;
  std::string equation_tag;
  std::optional<unsigned> k_star;
  /// Differential entropy (bits) of the displacement the bound was built
  /// from; for the plane, the sum over both coordinates.
  double entropy_term = 0.0;
};

/// Update bound of the per-session scheme: the server is refreshed once per
/// session and both ends piggyback locations on every packet in between.
struct SessionBoundReport {
  BoundReport report;                 ///< bits_per_second is the total.
  double session_bits_per_second = 0.0;
  double piggyback_bits_per_second = 0.0;
};

inline constexpr unsigned kMaxKStar = 1'000'000;

BoundReport update_bound_1d(const LocationBoundRequest& req);
BoundReport update_bound_2d(const LocationBoundRequest& req);

/// Smallest k whose k-epoch displacement entropy beats the fidelity threshold.
/// Throws ConvergenceError past kMaxKStar.
unsigned k_star(const LocationBoundRequest& req);

/// Bound under the every-k*-packets fidelity criterion. Always positive.
BoundReport relaxed_update_bound(const LocationBoundRequest& req);

/// Dispatches on dimension and the relaxed flag.
BoundReport update_bound(const LocationBoundRequest& req);

/// One-dimensional per-session bound. `session` is the law between sessions,
/// `intra` the law between packets inside a session. Each of the two terms
/// is clamped at zero separately.
SessionBoundReport per_session_bound(double sigma2, const ArrivalProcess& session,
                                     const ArrivalProcess& intra, double epsilon2);

}  // namespace georate
