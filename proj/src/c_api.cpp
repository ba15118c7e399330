// extern "C" surface over the C++ core. Nothing here may throw across the
// boundary: every entry point runs inside guard().

#include "georate/georate.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "georate/beacon.hpp"
#include "georate/capacity.hpp"
#include "georate/displacement.hpp"
#include "georate/entropy.hpp"
#include "georate/errors.hpp"
#include "georate/location_update.hpp"
#include "georate/monte_carlo.hpp"
#include "georate/sweep.hpp"
#include "georate/validation.hpp"

struct georate_density {
  georate::DisplacementDensity density;
};

struct georate_service {
  georate::LocationServiceDescriptor descriptor;
};

struct georate_sweep {
  std::vector<georate::SweepRow> rows;
  std::string csv;
};

struct georate_validation {
  georate::ValidationReport report;
  std::string table;
};

namespace {

using namespace georate;

thread_local std::string last_error;

georate_status fail(georate_status status, const char* message) {
  last_error = message;
  return status;
}

template <typename Body>
georate_status guard(Body&& body) {
  try {
    body();
    last_error.clear();
    return GEORATE_OK;
  } catch (const InvalidArgument& e) {
    return fail(GEORATE_ERR_INVALID_ARGUMENT, e.what());
  } catch (const QuadratureError& e) {
    return fail(GEORATE_ERR_QUADRATURE, e.what());
  } catch (const ConvergenceError& e) {
    return fail(GEORATE_ERR_CONVERGENCE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GEORATE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GEORATE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GEORATE_ERR_INTERNAL, "unknown failure");
  }
}

const char* require_text(const char* p, const char* what) {
  if (p == nullptr) throw InvalidArgument(std::string(what) + " must not be null");
  return p;
}

template <typename T>
T& require(T* p, const char* what) {
  if (p == nullptr) throw InvalidArgument(std::string(what) + " must not be null");
  return *p;
}

ArrivalProcess to_cpp(georate_arrival a) {
  switch (a.kind) {
    case GEORATE_ARRIVAL_DETERMINISTIC: return {ArrivalKind::Deterministic, a.param};
    case GEORATE_ARRIVAL_UNIFORM: return {ArrivalKind::Uniform, a.param};
    case GEORATE_ARRIVAL_EXPONENTIAL: return {ArrivalKind::Exponential, a.param};
  }
  throw InvalidArgument("unknown arrival kind");
}

georate_arrival to_c(const ArrivalProcess& a) {
  switch (a.kind()) {
    case ArrivalKind::Deterministic: return {GEORATE_ARRIVAL_DETERMINISTIC, a.param()};
    case ArrivalKind::Uniform: return {GEORATE_ARRIVAL_UNIFORM, a.param()};
    case ArrivalKind::Exponential: return {GEORATE_ARRIVAL_EXPONENTIAL, a.param()};
  }
  return {GEORATE_ARRIVAL_DETERMINISTIC, a.param()};
}

Dimension to_dimension(int d) {
  if (d == 1) return Dimension::OneD;
  if (d == 2) return Dimension::TwoD;
  throw InvalidArgument("dimension must be 1 or 2");
}

LocationBoundRequest to_cpp(const georate_update_request& r) {
  return {to_dimension(r.dimension), r.sigma2, to_cpp(r.arrival), r.epsilon2, r.relaxed != 0};
}

BeaconBoundRequest to_cpp(const georate_beacon_request& r) {
  return {to_dimension(r.dimension), r.sigma2, r.radius, to_cpp(r.arrival_tau), r.delta,
          r.beacon_bits};
}

NetworkConfig to_cpp(const georate_network& n) {
  return {n.n, n.area, n.bandwidth, n.delta_guard, n.eta, n.radius, n.beacon_bits};
}

McConfig to_cpp(const georate_mc_config& m) { return {m.samples, m.master_seed, m.bins}; }

Scenario to_cpp(const georate_scenario& s, const georate_service* service) {
  Scenario out;
  out.dimension = to_dimension(s.dimension);
  out.sigma2 = s.sigma2;
  out.arrival = to_cpp(s.arrival);
  out.arrival_tau = to_cpp(s.arrival_tau);
  out.epsilon2 = s.epsilon2;
  out.relaxed = s.relaxed != 0;
  out.delta = s.delta;
  out.network = to_cpp(s.network);
  if (service != nullptr) out.service = service->descriptor;
  return out;
}

void copy_tag(char (&dst)[16], const std::string& tag) {
  std::memset(dst, 0, sizeof dst);
  std::strncpy(dst, tag.c_str(), sizeof dst - 1);
}

georate_bound_report to_c(const BoundReport& r) {
  georate_bound_report out{};
  out.bits_per_packet = r.bits_per_packet;
  out.bits_per_second = r.bits_per_second;
  out.entropy_term = r.entropy_term;
  out.k_star = r.k_star.value_or(0);
  copy_tag(out.equation_tag, r.equation_tag);
  return out;
}

georate_beacon_report to_c(const BeaconReport& r) {
  georate_beacon_report out{};
  out.l_star = r.l_star.l_star;
  out.p_at_l_star = r.l_star.p_at_l_star;
  out.entropy = r.l_star.entropy;
  switch (r.l_star.branch) {
    case LStarCase::AtRadius: out.branch = GEORATE_LSTAR_AT_RADIUS; break;
    case LStarCase::AtOrigin: out.branch = GEORATE_LSTAR_AT_ORIGIN; break;
    case LStarCase::Interior: out.branch = GEORATE_LSTAR_INTERIOR; break;
  }
  out.beacons_per_message = r.beacons_per_message;
  out.bits_per_second = r.bits_per_second;
  out.loose = r.loose ? 1 : 0;
  copy_tag(out.equation_tag, r.equation_tag);
  return out;
}

georate_capacity_report to_c(const CapacityReport& r) {
  return {r.raw_capacity, r.overhead, r.margin, r.residual, r.deficit_fraction, r.n_star,
          r.saturated ? 1 : 0, r.n_star_unbounded ? 1 : 0};
}

SessionBoundReport to_cpp(const georate_session_report& s) {
  SessionBoundReport out;
  out.report.bits_per_packet = s.report.bits_per_packet;
  out.report.bits_per_second = s.report.bits_per_second;
  out.report.entropy_term = s.report.entropy_term;
  out.report.equation_tag = s.report.equation_tag;
  out.session_bits_per_second = s.session_bits_per_second;
  out.piggyback_bits_per_second = s.piggyback_bits_per_second;
  return out;
}

LocationServiceDescriptor descriptor_or_single(const georate_service* service) {
  return service != nullptr ? service->descriptor : LocationServiceDescriptor{};
}

}  // namespace

extern "C" {

const char* georate_last_error(void) { return last_error.c_str(); }

const char* georate_version(void) { return "0.1.0"; }

const char* georate_status_name(georate_status status) {
  switch (status) {
    case GEORATE_OK: return "ok";
    case GEORATE_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GEORATE_ERR_QUADRATURE: return "quadrature did not converge";
    case GEORATE_ERR_CONVERGENCE: return "search did not converge";
    case GEORATE_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

georate_status georate_arrival_parse(const char* token, georate_arrival* out) {
  return guard([&] { require(out, "out") = to_c(ArrivalProcess::parse(require_text(token, "token"))); });
}

georate_status georate_arrival_mean(georate_arrival arrival, double* out) {
  return guard([&] { require(out, "out") = to_cpp(arrival).mean(); });
}

georate_status georate_arrival_kfold_pdf(georate_arrival arrival, unsigned k, double t,
                                         double* out) {
  return guard([&] { require(out, "out") = to_cpp(arrival).kfold_pdf(k, t); });
}

georate_status georate_density_create(double sigma2, georate_arrival arrival, unsigned k,
                                      georate_density** out) {
  return guard([&] {
    auto& slot = require(out, "out");
    slot = nullptr;
    slot = new georate_density{DisplacementDensity(sigma2, to_cpp(arrival), k)};
  });
}

void georate_density_destroy(georate_density* density) { delete density; }

georate_status georate_density_eval(const georate_density* density, double x, double* out) {
  return guard([&] { require(out, "out") = require(density, "density").density.eval(x); });
}

georate_status georate_density_entropy(const georate_density* density, double* out) {
  return guard([&] {
    require(out, "out") = require(density, "density").density.differential_entropy();
  });
}

georate_status georate_binary_entropy(double p, double* out) {
  return guard([&] { require(out, "out") = binary_entropy(Probability(p)); });
}

georate_status georate_ternary_entropy(double delta, double* out) {
  return guard([&] { require(out, "out") = ternary_entropy(Probability(delta)); });
}

georate_status georate_update_bound(const georate_update_request* req, georate_bound_report* out) {
  return guard([&] { require(out, "out") = to_c(update_bound(to_cpp(require(req, "request")))); });
}

georate_status georate_k_star(const georate_update_request* req, unsigned* out) {
  return guard([&] { require(out, "out") = k_star(to_cpp(require(req, "request"))); });
}

georate_status georate_per_session_bound(double sigma2, georate_arrival session,
                                         georate_arrival intra, double epsilon2,
                                         georate_session_report* out) {
  return guard([&] {
    const auto r = per_session_bound(sigma2, to_cpp(session), to_cpp(intra), epsilon2);
    auto& dst = require(out, "out");
    dst.report = to_c(r.report);
    dst.session_bits_per_second = r.session_bits_per_second;
    dst.piggyback_bits_per_second = r.piggyback_bits_per_second;
  });
}

georate_status georate_p_neighbor(const georate_beacon_request* req, double l, double* out) {
  return guard([&] { require(out, "out") = p_neighbor(to_cpp(require(req, "request")), l); });
}

georate_status georate_beacon_bound(const georate_beacon_request* req, georate_beacon_report* out) {
  return guard([&] { require(out, "out") = to_c(beacon_bound(to_cpp(require(req, "request")))); });
}

georate_status georate_service_parse_kind(const char* name, georate_service_kind* out) {
  return guard([&] {
    switch (parse_service_kind(require_text(name, "name"))) {
      case ServiceKind::SingleServer: require(out, "out") = GEORATE_SERVICE_SINGLE; break;
      case ServiceKind::MultiServer: require(out, "out") = GEORATE_SERVICE_MULTI; break;
      case ServiceKind::XYLS: require(out, "out") = GEORATE_SERVICE_XYLS; break;
      case ServiceKind::Hierarchical: require(out, "out") = GEORATE_SERVICE_HIERARCHICAL; break;
    }
  });
}

georate_status georate_service_create(georate_service_kind kind, georate_service** out) {
  return guard([&] {
    auto& slot = require(out, "out");
    slot = nullptr;
    ServiceKind k;
    switch (kind) {
      case GEORATE_SERVICE_SINGLE: k = ServiceKind::SingleServer; break;
      case GEORATE_SERVICE_MULTI: k = ServiceKind::MultiServer; break;
      case GEORATE_SERVICE_XYLS: k = ServiceKind::XYLS; break;
      case GEORATE_SERVICE_HIERARCHICAL: k = ServiceKind::Hierarchical; break;
      default: throw InvalidArgument("unknown location service kind");
    }
    slot = new georate_service{LocationServiceDescriptor{k, {}, {}, {}}};
  });
}

void georate_service_destroy(georate_service* service) { delete service; }

georate_status georate_service_add_server(georate_service* service, double eta) {
  return guard([&] {
    auto& d = require(service, "service").descriptor;
    if (d.kind != ServiceKind::MultiServer) {
      throw InvalidArgument("servers can only be added to a multi-server service");
    }
    if (!std::isfinite(eta) || eta <= 0.0) throw InvalidArgument("eta must be positive");
    d.etas.push_back(eta);
  });
}

georate_status georate_service_add_level(georate_service* service, double eta, double epsilon2) {
  return guard([&] {
    auto& d = require(service, "service").descriptor;
    if (d.kind != ServiceKind::Hierarchical) {
      throw InvalidArgument("levels can only be added to a hierarchical service");
    }
    if (!std::isfinite(eta) || eta <= 0.0) throw InvalidArgument("eta must be positive");
    if (!std::isfinite(epsilon2) || epsilon2 <= 0.0) {
      throw InvalidArgument("epsilon2 must be positive");
    }
    d.etas.push_back(eta);
    d.epsilons2.push_back(epsilon2);
    d.level_update_overheads.clear();
  });
}

georate_status georate_service_resolve_levels(georate_service* service,
                                              const georate_update_request* base) {
  return guard([&] {
    auto& s = require(service, "service");
    s.descriptor = resolve_levels(s.descriptor, to_cpp(require(base, "base")));
  });
}

georate_status georate_raw_capacity(const georate_network* network, double* out) {
  return guard([&] { require(out, "out") = raw_transport_capacity(to_cpp(require(network, "network"))); });
}

georate_status georate_residual_capacity(const georate_network* network, double update_overhead,
                                         double beacon_overhead, const georate_service* service,
                                         georate_capacity_report* out) {
  return guard([&] {
    require(out, "out") = to_c(residual_capacity(to_cpp(require(network, "network")),
                                                 update_overhead, beacon_overhead,
                                                 descriptor_or_single(service)));
  });
}

georate_status georate_critical_n(const georate_network* network, double update_overhead,
                                  double beacon_overhead, const georate_service* service,
                                  double* value, int* unbounded) {
  return guard([&] {
    const auto c = critical_n(to_cpp(require(network, "network")), update_overhead,
                              beacon_overhead, descriptor_or_single(service));
    require(value, "value") = c.value;
    require(unbounded, "unbounded") = c.unbounded ? 1 : 0;
  });
}

georate_status georate_per_session_capacity(const georate_network* network,
                                            const georate_session_report* session,
                                            double eta_prime, double beacon_overhead,
                                            georate_capacity_report* out) {
  return guard([&] {
    require(out, "out") =
        to_c(per_session_capacity(to_cpp(require(network, "network")),
                                  to_cpp(require(session, "session")), eta_prime, beacon_overhead));
  });
}

georate_status georate_scenario_evaluate(const georate_scenario* scenario,
                                         const georate_service* service,
                                         georate_bound_report* update,
                                         georate_beacon_report* beacon,
                                         georate_capacity_report* capacity) {
  return guard([&] {
    const auto result = evaluate(to_cpp(require(scenario, "scenario"), service));
    if (update != nullptr) *update = to_c(result.update);
    if (beacon != nullptr) *beacon = to_c(result.beacon);
    if (capacity != nullptr) *capacity = to_c(result.capacity);
  });
}

georate_status georate_parse_axis(const char* name, georate_axis* out) {
  return guard([&] {
    switch (parse_sweep_axis(require_text(name, "name"))) {
      case SweepAxis::Sigma2: require(out, "out") = GEORATE_AXIS_SIGMA2; break;
      case SweepAxis::MeanInterarrival: require(out, "out") = GEORATE_AXIS_MEAN_INTERARRIVAL; break;
      case SweepAxis::NodeCount: require(out, "out") = GEORATE_AXIS_NODE_COUNT; break;
    }
  });
}

georate_status georate_sweep_run(georate_axis axis, const double* grid, size_t grid_len,
                                 const georate_scenario* fixed, const georate_service* service,
                                 const char* const* quantities, size_t n_quantities,
                                 georate_sweep** out) {
  return guard([&] {
    auto& slot = require(out, "out");
    slot = nullptr;
    SweepSpec spec;
    switch (axis) {
      case GEORATE_AXIS_SIGMA2: spec.axis = SweepAxis::Sigma2; break;
      case GEORATE_AXIS_MEAN_INTERARRIVAL: spec.axis = SweepAxis::MeanInterarrival; break;
      case GEORATE_AXIS_NODE_COUNT: spec.axis = SweepAxis::NodeCount; break;
      default: throw InvalidArgument("unknown sweep axis");
    }
    if (grid_len > 0) spec.grid.assign(&require(grid, "grid"), grid + grid_len);
    spec.fixed = to_cpp(require(fixed, "fixed scenario"), service);
    for (size_t i = 0; i < n_quantities; ++i) {
      spec.outputs.push_back(parse_quantity(require_text(quantities[i], "quantity name")));
    }
    auto result = std::make_unique<georate_sweep>();
    result->rows = run_sweep(spec);
    result->csv = to_csv(result->rows);
    slot = result.release();
  });
}

size_t georate_sweep_row_count(const georate_sweep* sweep) {
  return sweep != nullptr ? sweep->rows.size() : 0;
}

double georate_sweep_value(const georate_sweep* sweep, size_t row) {
  if (sweep == nullptr || row >= sweep->rows.size()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return sweep->rows[row].value;
}

const char* georate_sweep_csv(const georate_sweep* sweep) {
  return sweep != nullptr ? sweep->csv.c_str() : "";
}

void georate_sweep_destroy(georate_sweep* sweep) { delete sweep; }

georate_status georate_estimate_p_l(const georate_beacon_request* req, double l,
                                    const georate_mc_config* mc, double* value,
                                    double* std_error) {
  return guard([&] {
    const auto e = estimate_p_l(to_cpp(require(req, "request")), l, to_cpp(require(mc, "mc")));
    require(value, "value") = e.value;
    if (std_error != nullptr) *std_error = e.std_error;
  });
}

georate_status georate_validation_run(const georate_mc_config* mc, double band_sigmas,
                                      georate_validation** out) {
  return guard([&] {
    auto& slot = require(out, "out");
    slot = nullptr;
    auto result = std::make_unique<georate_validation>();
    result->report = run_validation(to_cpp(require(mc, "mc")), band_sigmas);
    result->table = format_report(result->report);
    slot = result.release();
  });
}

int georate_validation_all_pass(const georate_validation* report) {
  return report != nullptr && report->report.all_pass() ? 1 : 0;
}

size_t georate_validation_row_count(const georate_validation* report) {
  return report != nullptr ? report->report.rows.size() : 0;
}

georate_status georate_validation_get_row(const georate_validation* report, size_t i,
                                          georate_validation_row* out) {
  return guard([&] {
    const auto& rows = require(report, "report").report.rows;
    if (i >= rows.size()) throw InvalidArgument("validation row index out of range");
    const auto& row = rows[i];
    require(out, "out") = {row.quantity.c_str(), row.label.c_str(), row.analytic,
                           row.monte_carlo,      row.std_error,     row.sigma_distance,
                           row.pass ? 1 : 0};
  });
}

const char* georate_validation_table(const georate_validation* report) {
  return report != nullptr ? report->table.c_str() : "";
}

void georate_validation_destroy(georate_validation* report) { delete report; }

}  // extern "C"
