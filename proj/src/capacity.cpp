#include "georate/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "georate/errors.hpp"

namespace georate {
namespace {

// sqrt(8) / pi
const double kProtocolConstant = std::sqrt(8.0) / std::numbers::pi;

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw InvalidArgument(std::string(name) + " must be positive and finite");
  }
}

void require_nonneg(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0) {
    throw InvalidArgument(std::string(name) + " must be nonnegative and finite");
  }
}

CapacityReport assemble(const NetworkConfig& cfg, double per_node) {
  CapacityReport out;
  out.raw_capacity = raw_transport_capacity(cfg);
  out.overhead = cfg.n * per_node;
  out.saturated = out.overhead >= out.raw_capacity;
  out.margin = out.raw_capacity - out.overhead;
  out.residual = std::max(out.margin, 0.0);
  out.deficit_fraction = std::min(out.overhead / out.raw_capacity, 1.0);
  const auto critical = critical_n_for(cfg, per_node);
  out.n_star = critical.value;
  out.n_star_unbounded = critical.unbounded;
  return out;
}

}  // namespace

std::string_view to_string(ServiceKind kind) {
  switch (kind) {
    case ServiceKind::SingleServer: return "single";
    case ServiceKind::MultiServer: return "multi";
    case ServiceKind::XYLS: return "xyls";
    case ServiceKind::Hierarchical: return "hierarchical";
  }
  return "unknown";
}

ServiceKind parse_service_kind(std::string_view name) {
  if (name == "single") return ServiceKind::SingleServer;
  if (name == "multi") return ServiceKind::MultiServer;
  if (name == "xyls") return ServiceKind::XYLS;
  if (name == "hierarchical") return ServiceKind::Hierarchical;
  throw InvalidArgument("unknown location service '" + std::string(name) +
                        "' (expected single, multi, xyls or hierarchical)");
}

void validate(const NetworkConfig& cfg) {
  require_positive(cfg.n, "node count");
  if (cfg.n < 1.0) throw InvalidArgument("node count must be at least 1");
  require_positive(cfg.area, "area");
  require_positive(cfg.bandwidth, "bandwidth");
  require_positive(cfg.delta_guard, "guard factor");
  require_positive(cfg.eta, "eta");
  require_positive(cfg.radius, "radius");
  require_positive(cfg.beacon_bits, "beacon size");
}

void validate(const LocationServiceDescriptor& svc) {
  for (double eta : svc.etas) require_positive(eta, "server distance");
  switch (svc.kind) {
    case ServiceKind::SingleServer:
    case ServiceKind::XYLS:
      break;
    case ServiceKind::MultiServer:
      if (svc.etas.empty()) throw InvalidArgument("multi-server service needs at least one eta");
      break;
    case ServiceKind::Hierarchical:
      if (svc.etas.empty() || svc.etas.size() != svc.epsilons2.size()) {
        throw InvalidArgument("hierarchical service needs one eta and one epsilon2 per level");
      }
      for (double e : svc.epsilons2) require_positive(e, "level epsilon2");
      if (!svc.level_update_overheads.empty() &&
          svc.level_update_overheads.size() != svc.etas.size()) {
        throw InvalidArgument("hierarchical level rates do not match the level count");
      }
      break;
  }
}

LocationServiceDescriptor resolve_levels(LocationServiceDescriptor svc,
                                         const LocationBoundRequest& base) {
  validate(svc);
  if (svc.kind != ServiceKind::Hierarchical) return svc;
  svc.level_update_overheads.clear();
  for (double eps2 : svc.epsilons2) {
    auto req = base;
    req.epsilon2 = eps2;
    svc.level_update_overheads.push_back(update_bound(req).bits_per_second);
  }
  return svc;
}

double raw_transport_capacity(const NetworkConfig& cfg) {
  validate(cfg);
  return kProtocolConstant / cfg.delta_guard * cfg.bandwidth * std::sqrt(cfg.n * cfg.area);
}

double per_node_overhead(const NetworkConfig& cfg, double update_overhead,
                         double beacon_overhead, const LocationServiceDescriptor& svc) {
  validate(cfg);
  validate(svc);
  require_nonneg(update_overhead, "update overhead");
  require_nonneg(beacon_overhead, "beacon overhead");
  double update_bit_meters = 0.0;
  switch (svc.kind) {
    case ServiceKind::SingleServer:
      update_bit_meters = cfg.eta * update_overhead;
      break;
    case ServiceKind::MultiServer:
      update_bit_meters =
          std::accumulate(svc.etas.begin(), svc.etas.end(), 0.0) * update_overhead;
      break;
    case ServiceKind::XYLS:
      update_bit_meters = std::sqrt(cfg.area) * update_overhead;
      break;
    case ServiceKind::Hierarchical:
      if (svc.level_update_overheads.empty()) {
        throw InvalidArgument("hierarchical level rates are unresolved; call resolve_levels");
      }
      for (std::size_t i = 0; i < svc.etas.size(); ++i) {
        require_nonneg(svc.level_update_overheads[i], "level update overhead");
        update_bit_meters += svc.level_update_overheads[i] * svc.etas[i];
      }
      break;
  }
  return update_bit_meters + cfg.radius * beacon_overhead;
}

CapacityReport residual_capacity(const NetworkConfig& cfg, double update_overhead,
                                 double beacon_overhead, const LocationServiceDescriptor& svc) {
  return assemble(cfg, per_node_overhead(cfg, update_overhead, beacon_overhead, svc));
}

CapacityReport per_session_capacity(const NetworkConfig& cfg, const SessionBoundReport& session,
                                    double eta_prime, double beacon_overhead) {
  validate(cfg);
  require_positive(eta_prime, "piggyback distance eta'");
  require_nonneg(beacon_overhead, "beacon overhead");
  const double per_node = cfg.eta * session.session_bits_per_second +
                          eta_prime * session.piggyback_bits_per_second +
                          cfg.radius * beacon_overhead;
  return assemble(cfg, per_node);
}

CriticalSize critical_n_for(const NetworkConfig& cfg, double per_node) {
  validate(cfg);
  require_nonneg(per_node, "per-node overhead");
  if (per_node == 0.0) return {std::numeric_limits<double>::infinity(), true};
  const double budget = kProtocolConstant / cfg.delta_guard * cfg.bandwidth * std::sqrt(cfg.area);
  const double root = budget / per_node;
  return {root * root, false};
}

CriticalSize critical_n(const NetworkConfig& cfg, double update_overhead, double beacon_overhead,
                        const LocationServiceDescriptor& svc) {
  return critical_n_for(cfg, per_node_overhead(cfg, update_overhead, beacon_overhead, svc));
}

}  // namespace georate
