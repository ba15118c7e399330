#pragma once

#include <string_view>
#include <vector>

#include "georate/location_update.hpp"

namespace georate {

/// Protocol-Model network parameters.
struct NetworkConfig {
  double n = 1.0;             ///< Node count.
  double area = 1.0;          ///< A, m^2.
  double bandwidth = 1.0;     ///< W, bits/s.
  double delta_guard = 1.0;   ///< Protocol-Model guard zone Delta.
  double eta = 1.0;           ///< Mean node-to-location-server distance, m.
  double radius = 1.0;        ///< Communication radius r, m.
  double beacon_bits = 1.0;   ///< B, bits.
};

void validate(const NetworkConfig& cfg);

enum class ServiceKind { SingleServer, MultiServer, XYLS, Hierarchical };

std::string_view to_string(ServiceKind kind);
ServiceKind parse_service_kind(std::string_view name);

/// How far update bits travel.
///
/// SingleServer sends each update NetworkConfig::eta meters. MultiServer
/// sends it to every server (sum of etas). XYLS floods a column, sqrt(A).
/// Hierarchical level i carries its own rate U(eps_i^2) over etas[i];
/// `level_update_overheads` holds those rates once resolved.
struct LocationServiceDescriptor {
  ServiceKind kind = ServiceKind::SingleServer;
  std::vector<double> etas;
  std::vector<double> epsilons2;
  std::vector<double> level_update_overheads;
};

void validate(const LocationServiceDescriptor& svc);

/// Fills level_update_overheads with U(eps_i^2) computed from `base`, with
/// base.epsilon2 replaced level by level.
LocationServiceDescriptor resolve_levels(LocationServiceDescriptor svc,
                                         const LocationBoundRequest& base);

struct CapacityReport {
  double raw_capacity = 0.0;   ///< bit-meters/s.
  double overhead = 0.0;       ///< bit-meters/s consumed by updates and beacons.
  double margin = 0.0;         ///< raw - overhead before clamping.
  double residual = 0.0;       ///< max(margin, 0).
  double deficit_fraction = 0.0;
  bool saturated = false;      ///< overhead >= raw.
  double n_star = 0.0;
  bool n_star_unbounded = false;
};

/// (sqrt(8)/pi) (1/Delta) W sqrt(n A).
double raw_transport_capacity(const NetworkConfig& cfg);

/// Per-node overhead in bit-meters/s: eta_eff * U + r * U_b.
/// For Hierarchical, `update_overhead` is unused and the resolved level
/// rates are weighted by their etas instead.
double per_node_overhead(const NetworkConfig& cfg, double update_overhead,
                         double beacon_overhead, const LocationServiceDescriptor& svc);

CapacityReport residual_capacity(const NetworkConfig& cfg, double update_overhead,
                                 double beacon_overhead, const LocationServiceDescriptor& svc);

/// Per-session variant: session refreshes travel cfg.eta, piggybacked
/// locations travel eta_prime. The distance eta_prime has no fixed value
/// and must be supplied.
CapacityReport per_session_capacity(const NetworkConfig& cfg, const SessionBoundReport& session,
                                    double eta_prime, double beacon_overhead);

struct CriticalSize {
  double value = 0.0;
  bool unbounded = false;  ///< Zero overhead: no size exhausts the capacity.
};

CriticalSize critical_n(const NetworkConfig& cfg, double update_overhead, double beacon_overhead,
                        const LocationServiceDescriptor& svc);

/// Largest n with nonnegative residual for a given per-node overhead.
CriticalSize critical_n_for(const NetworkConfig& cfg, double per_node);

}  // namespace georate
