/*
 * georate: lower bounds on geographic-routing overhead (location updates and
 * beacons) for Brownian nodes, and the transport capacity they leave.
 *
 * C interface. Every call returns a georate_status; on failure the
 * thread-local message from georate_last_error() explains it. Handles are
 * opaque, created by *_create / *_run and released by the matching
 * *_destroy. Strings returned by the library are owned by their handle
 * (or are static) and stay valid until that handle is destroyed.
 */
#ifndef GEORATE_H
#define GEORATE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GEORATE_BUILDING)
#    define GEORATE_API __declspec(dllexport)
#  else
#    define GEORATE_API __declspec(dllimport)
#  endif
#else
#  define GEORATE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum georate_status {
  GEORATE_OK = 0,
  GEORATE_ERR_INVALID_ARGUMENT = 1,
  GEORATE_ERR_QUADRATURE = 2,   /* adaptive quadrature missed its tolerance */
  GEORATE_ERR_CONVERGENCE = 3,  /* bisection or k* search hit its cap */
  GEORATE_ERR_INTERNAL = 4
} georate_status;

GEORATE_API const char* georate_last_error(void);
GEORATE_API const char* georate_version(void);
GEORATE_API const char* georate_status_name(georate_status status);

/* ---- arrival laws ------------------------------------------------------ */

typedef enum georate_arrival_kind {
  GEORATE_ARRIVAL_DETERMINISTIC = 0, /* param = T, seconds */
  GEORATE_ARRIVAL_UNIFORM = 1,       /* param = T, uniform on [0, T] */
  GEORATE_ARRIVAL_EXPONENTIAL = 2    /* param = rate alpha, 1/s */
} georate_arrival_kind;

typedef struct georate_arrival {
  georate_arrival_kind kind;
  double param;
} georate_arrival;

/* Parses "kind:param", e.g. "exponential:0.5". */
GEORATE_API georate_status georate_arrival_parse(const char* token, georate_arrival* out);
GEORATE_API georate_status georate_arrival_mean(georate_arrival arrival, double* out);
/* Density of the sum of k inter-arrival times; not defined for deterministic. */
GEORATE_API georate_status georate_arrival_kfold_pdf(georate_arrival arrival, unsigned k, double t,
                                                     double* out);

/* ---- displacement densities -------------------------------------------- */

typedef struct georate_density georate_density;

GEORATE_API georate_status georate_density_create(double sigma2, georate_arrival arrival,
                                                  unsigned k, georate_density** out);
GEORATE_API void georate_density_destroy(georate_density* density);
GEORATE_API georate_status georate_density_eval(const georate_density* density, double x,
                                                double* out);
/* Differential entropy in bits. */
GEORATE_API georate_status georate_density_entropy(const georate_density* density, double* out);

/* ---- scalar entropies -------------------------------------------------- */

GEORATE_API georate_status georate_binary_entropy(double p, double* out);
GEORATE_API georate_status georate_ternary_entropy(double delta, double* out);

/* ---- location updates -------------------------------------------------- */

typedef struct georate_update_request {
  int dimension; /* 1 or 2 */
  double sigma2;
  georate_arrival arrival;
  double epsilon2;
  int relaxed; /* nonzero: fidelity only every k* packets */
} georate_update_request;

typedef struct georate_bound_report {
  double bits_per_packet;
  double bits_per_second;
  double entropy_term;
  unsigned k_star; /* 0 when the bound is not relaxed */
  char equation_tag[16];
} georate_bound_report;

typedef struct georate_session_report {
  georate_bound_report report; /* bits_per_second is the total */
  double session_bits_per_second;
  double piggyback_bits_per_second;
} georate_session_report;

GEORATE_API georate_status georate_update_bound(const georate_update_request* req,
                                                georate_bound_report* out);
GEORATE_API georate_status georate_k_star(const georate_update_request* req, unsigned* out);
GEORATE_API georate_status georate_per_session_bound(double sigma2, georate_arrival session,
                                                     georate_arrival intra, double epsilon2,
                                                     georate_session_report* out);

/* ---- beacons ----------------------------------------------------------- */

typedef struct georate_beacon_request {
  int dimension; /* 1 or 2 */
  double sigma2;
  double radius;
  georate_arrival arrival_tau;
  double delta;
  unsigned beacon_bits;
} georate_beacon_request;

typedef enum georate_lstar_case {
  GEORATE_LSTAR_AT_RADIUS = 0,
  GEORATE_LSTAR_AT_ORIGIN = 1,
  GEORATE_LSTAR_INTERIOR = 2
} georate_lstar_case;

typedef struct georate_beacon_report {
  double l_star;
  double p_at_l_star;
  double entropy; /* H(p(l*)), bits */
  georate_lstar_case branch;
  double beacons_per_message;
  double bits_per_second;
  int loose; /* sigma2 E[tau] > 2r */
  char equation_tag[16];
} georate_beacon_report;

GEORATE_API georate_status georate_p_neighbor(const georate_beacon_request* req, double l,
                                              double* out);
GEORATE_API georate_status georate_beacon_bound(const georate_beacon_request* req,
                                                georate_beacon_report* out);

/* ---- capacity ---------------------------------------------------------- */

typedef struct georate_network {
  double n;
  double area;
  double bandwidth;
  double delta_guard;
  double eta;
  double radius;
  double beacon_bits;
} georate_network;

typedef enum georate_service_kind {
  GEORATE_SERVICE_SINGLE = 0,
  GEORATE_SERVICE_MULTI = 1,
  GEORATE_SERVICE_XYLS = 2,
  GEORATE_SERVICE_HIERARCHICAL = 3
} georate_service_kind;

typedef struct georate_service georate_service;

GEORATE_API georate_status georate_service_parse_kind(const char* name, georate_service_kind* out);
GEORATE_API georate_status georate_service_create(georate_service_kind kind,
                                                  georate_service** out);
GEORATE_API void georate_service_destroy(georate_service* service);
/* Multi-server: one call per server. */
GEORATE_API georate_status georate_service_add_server(georate_service* service, double eta);
/* Hierarchical: one call per level. */
GEORATE_API georate_status georate_service_add_level(georate_service* service, double eta,
                                                     double epsilon2);
/* Hierarchical: computes U(eps_i^2) per level from base (epsilon2 replaced). */
GEORATE_API georate_status georate_service_resolve_levels(georate_service* service,
                                                          const georate_update_request* base);

typedef struct georate_capacity_report {
  double raw_capacity;
  double overhead;
  double margin; /* raw - overhead, unclamped */
  double residual;
  double deficit_fraction;
  double n_star;
  int saturated;
  int n_star_unbounded;
} georate_capacity_report;

GEORATE_API georate_status georate_raw_capacity(const georate_network* network, double* out);
/* service may be NULL for a single server at network->eta. */
GEORATE_API georate_status georate_residual_capacity(const georate_network* network,
                                                     double update_overhead,
                                                     double beacon_overhead,
                                                     const georate_service* service,
                                                     georate_capacity_report* out);
GEORATE_API georate_status georate_critical_n(const georate_network* network,
                                              double update_overhead, double beacon_overhead,
                                              const georate_service* service, double* value,
                                              int* unbounded);
GEORATE_API georate_status georate_per_session_capacity(const georate_network* network,
                                                        const georate_session_report* session,
                                                        double eta_prime, double beacon_overhead,
                                                        georate_capacity_report* out);

/* ---- scenarios and sweeps ---------------------------------------------- */

typedef struct georate_scenario {
  int dimension;
  double sigma2;
  georate_arrival arrival;     /* packets destined to a node */
  georate_arrival arrival_tau; /* packets forwarded by a node */
  double epsilon2;
  int relaxed;
  double delta;
  georate_network network;
} georate_scenario;

GEORATE_API georate_status georate_scenario_evaluate(const georate_scenario* scenario,
                                                     const georate_service* service,
                                                     georate_bound_report* update,
                                                     georate_beacon_report* beacon,
                                                     georate_capacity_report* capacity);

typedef enum georate_axis {
  GEORATE_AXIS_SIGMA2 = 0,
  GEORATE_AXIS_MEAN_INTERARRIVAL = 1,
  GEORATE_AXIS_NODE_COUNT = 2
} georate_axis;

typedef struct georate_sweep georate_sweep;

GEORATE_API georate_status georate_parse_axis(const char* name, georate_axis* out);
/* quantities: names such as "update_bits_per_second", "deficit_fraction". */
GEORATE_API georate_status georate_sweep_run(georate_axis axis, const double* grid,
                                             size_t grid_len, const georate_scenario* fixed,
                                             const georate_service* service,
                                             const char* const* quantities, size_t n_quantities,
                                             georate_sweep** out);
GEORATE_API size_t georate_sweep_row_count(const georate_sweep* sweep);
/* Value of row i (grid-major, then quantity order); NaN for failed points. */
GEORATE_API double georate_sweep_value(const georate_sweep* sweep, size_t row);
GEORATE_API const char* georate_sweep_csv(const georate_sweep* sweep);
GEORATE_API void georate_sweep_destroy(georate_sweep* sweep);

/* ---- Monte Carlo validation ------------------------------------------- */

typedef struct georate_mc_config {
  uint64_t samples;
  uint64_t master_seed;
  unsigned bins;
} georate_mc_config;

typedef struct georate_validation georate_validation;

typedef struct georate_validation_row {
  const char* quantity;
  const char* label;
  double analytic;
  double monte_carlo;
  double std_error;
  double sigma_distance;
  int pass;
} georate_validation_row;

GEORATE_API georate_status georate_estimate_p_l(const georate_beacon_request* req, double l,
                                                const georate_mc_config* mc, double* value,
                                                double* std_error);
GEORATE_API georate_status georate_validation_run(const georate_mc_config* mc,
                                                  double band_sigmas,
                                                  georate_validation** out);
GEORATE_API int georate_validation_all_pass(const georate_validation* report);
GEORATE_API size_t georate_validation_row_count(const georate_validation* report);
GEORATE_API georate_status georate_validation_get_row(const georate_validation* report, size_t i,
                                                      georate_validation_row* out);
GEORATE_API const char* georate_validation_table(const georate_validation* report);
GEORATE_API void georate_validation_destroy(georate_validation* report);

#ifdef __cplusplus
}
#endif

#endif /* GEORATE_H */
