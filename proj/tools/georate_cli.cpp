// georate command-line front end. Links only against the C API in georate.h.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "georate/georate.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;
constexpr std::uint64_t kDefaultSeed = 20240601;

/// Raised for problems with the invocation itself; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when the library reports a failure; carries the exit code.
struct ApiError : std::runtime_error {
  int exit_code;
  ApiError(const std::string& what, int code) : std::runtime_error(what), exit_code(code) {}
};

void check(georate_status status) {
  if (status == GEORATE_OK) return;
  const int code = status == GEORATE_ERR_INVALID_ARGUMENT ? kExitUsage : kExitComputation;
  throw ApiError(std::string(georate_status_name(status)) + ": " + georate_last_error(), code);
}

std::string fmt(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void line(const std::string& key, double value, const char* tag = nullptr) {
  std::printf("%-22s %s", key.c_str(), fmt(value).c_str());
  if (tag != nullptr && tag[0] != '\0') std::printf("  [%s]", tag);
  std::printf("\n");
}

georate_arrival parse_arrival(const std::string& token) {
  georate_arrival a{};
  if (georate_arrival_parse(token.c_str(), &a) != GEORATE_OK) {
    throw UsageError(std::string("bad arrival '") + token + "': " + georate_last_error());
  }
  return a;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad number '") + item + "' in " + what);
    }
  }
  if (out.empty()) throw UsageError(std::string(what) + " must not be empty");
  return out;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw UsageError("--outputs must name at least one quantity");
  return out;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("GEORATE_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  try {
    std::size_t used = 0;
    const auto seed = std::stoull(env, &used, 0);
    if (env[used] != '\0') throw std::invalid_argument(env);
    return seed;
  } catch (const std::exception&) {
    throw UsageError(std::string("GEORATE_SEED is not an unsigned integer: ") + env);
  }
}

// Every parameter a scenario can take. Flags and the config file both write
// into this; flags are applied last so they win.
struct Params {
  std::optional<int> dim;
  std::optional<double> sigma2;
  std::optional<std::string> arrival;
  std::optional<std::string> arrival_tau;
  std::optional<double> eps2;
  std::optional<bool> relaxed;
  std::optional<double> delta;
  std::optional<double> n, area, bandwidth, delta_guard, eta, radius, beacon_bits;
  std::optional<std::string> service;
  std::optional<std::vector<double>> service_etas;
  std::optional<std::vector<double>> service_epsilons2;

  void overlay(const Params& o) {
    auto take = [](auto& dst, const auto& src) {
      if (src) dst = src;
    };
    take(dim, o.dim);
    take(sigma2, o.sigma2);
    take(arrival, o.arrival);
    take(arrival_tau, o.arrival_tau);
    take(eps2, o.eps2);
    take(relaxed, o.relaxed);
    take(delta, o.delta);
    take(n, o.n);
    take(area, o.area);
    take(bandwidth, o.bandwidth);
    take(delta_guard, o.delta_guard);
    take(eta, o.eta);
    take(radius, o.radius);
    take(beacon_bits, o.beacon_bits);
    take(service, o.service);
    take(service_etas, o.service_etas);
    take(service_epsilons2, o.service_epsilons2);
  }
};

Params load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw UsageError("config " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config " + path + " must be a flat JSON object");

  Params p;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "dim") p.dim = value.get<int>();
      else if (key == "sigma2") p.sigma2 = value.get<double>();
      else if (key == "arrival") p.arrival = value.get<std::string>();
      else if (key == "arrival_tau") p.arrival_tau = value.get<std::string>();
      else if (key == "eps2") p.eps2 = value.get<double>();
      else if (key == "relaxed") p.relaxed = value.get<bool>();
      else if (key == "delta") p.delta = value.get<double>();
      else if (key == "n") p.n = value.get<double>();
      else if (key == "area") p.area = value.get<double>();
      else if (key == "bandwidth") p.bandwidth = value.get<double>();
      else if (key == "delta_guard") p.delta_guard = value.get<double>();
      else if (key == "eta") p.eta = value.get<double>();
      else if (key == "r") p.radius = value.get<double>();
      else if (key == "B") p.beacon_bits = value.get<double>();
      else if (key == "service") p.service = value.get<std::string>();
      else if (key == "service_etas") p.service_etas = value.get<std::vector<double>>();
      else if (key == "service_epsilons2") p.service_epsilons2 = value.get<std::vector<double>>();
      else throw UsageError("unknown config key '" + key + "' in " + path);
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  return p;
}

georate_scenario to_scenario(const Params& p) {
  georate_scenario s{};
  s.dimension = p.dim.value_or(2);
  s.sigma2 = p.sigma2.value_or(1.0);
  s.arrival = parse_arrival(p.arrival.value_or("deterministic:1"));
  s.arrival_tau = parse_arrival(p.arrival_tau.value_or(p.arrival.value_or("deterministic:1")));
  s.epsilon2 = p.eps2.value_or(1.0);
  s.relaxed = p.relaxed.value_or(false) ? 1 : 0;
  s.delta = p.delta.value_or(0.1);
  s.network.n = p.n.value_or(1.0);
  s.network.area = p.area.value_or(1.0);
  s.network.bandwidth = p.bandwidth.value_or(1.0);
  s.network.delta_guard = p.delta_guard.value_or(1.0);
  s.network.eta = p.eta.value_or(1.0);
  s.network.radius = p.radius.value_or(1.0);
  s.network.beacon_bits = p.beacon_bits.value_or(1.0);
  return s;
}

// Owns a georate_service built from the parameters, or holds NULL for the
// default single server.
class Service {
 public:
  explicit Service(const Params& p) {
    const std::string name = p.service.value_or("single");
    georate_service_kind kind{};
    if (georate_service_parse_kind(name.c_str(), &kind) != GEORATE_OK) {
      throw UsageError(georate_last_error());
    }
    const auto etas = p.service_etas.value_or(std::vector<double>{});
    const auto eps = p.service_epsilons2.value_or(std::vector<double>{});
    if (kind == GEORATE_SERVICE_SINGLE && etas.empty()) return;
    check(georate_service_create(kind, &handle_));
    if (kind == GEORATE_SERVICE_MULTI) {
      for (double e : etas) check(georate_service_add_server(handle_, e));
    } else if (kind == GEORATE_SERVICE_HIERARCHICAL) {
      if (etas.size() != eps.size()) {
        throw UsageError("service_etas and service_epsilons2 must have equal length");
      }
      for (std::size_t i = 0; i < etas.size(); ++i) {
        check(georate_service_add_level(handle_, etas[i], eps[i]));
      }
    }
  }
  ~Service() { georate_service_destroy(handle_); }
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  const georate_service* get() const { return handle_; }

 private:
  georate_service* handle_ = nullptr;
};

void print_update(const georate_bound_report& u) {
  line("bits_per_packet", u.bits_per_packet, u.equation_tag);
  line("bits_per_second", u.bits_per_second, u.equation_tag);
  if (u.k_star != 0) std::printf("%-22s %u\n", "k_star", u.k_star);
}

void print_beacon(const georate_beacon_report& b) {
  static const char* const branch[] = {"at-radius", "at-origin", "interior"};
  line("l_star", b.l_star);
  std::printf("%-22s %s\n", "l_star_case", branch[b.branch]);
  line("p_neighbor_at_l_star", b.p_at_l_star);
  line("neighbor_entropy", b.entropy);
  line("beacon_rate", b.beacons_per_message, "Eq89");
  line("beacon_bits_per_second", b.bits_per_second, b.equation_tag);
  if (b.loose != 0) {
    std::fprintf(stderr,
                 "warning: sigma2*E[tau] exceeds 2r; the beacon bound is loose in this regime\n");
  }
}

void print_n_star(double value, bool unbounded) {
  if (unbounded) {
    std::printf("%-22s unbounded  [Eq114]\n", "n_star");
    return;
  }
  line("n_star", value, "Eq114");
  std::printf("%-22s %.0f  [Eq114]\n", "n_star_floor", std::floor(value));
}

void print_capacity(const georate_capacity_report& c) {
  line("raw_capacity", c.raw_capacity, "Eq112");
  line("overhead", c.overhead, "Eq113");
  line("residual_capacity", c.residual, "Eq113");
  line("deficit_fraction", c.deficit_fraction, "Eq113");
  if (c.saturated != 0) {
    std::printf("%-22s yes\n", "saturated");
    std::fprintf(stderr, "warning: routing overhead consumes the whole transport capacity\n");
  }
  print_n_star(c.n_star, c.n_star_unbounded != 0);
}

// Adds the scenario flags shared by the capacity-style subcommands.
void add_scenario_flags(CLI::App* cmd, Params& p, std::string& config) {
  cmd->add_option("--config", config, "Flat JSON file with scenario and network keys");
  cmd->add_option("--dim", p.dim, "Dimension, 1 or 2")->check(CLI::IsMember({1, 2}));
  cmd->add_option("--sigma2", p.sigma2, "Brownian variance per second");
  cmd->add_option("--arrival", p.arrival, "Packet arrivals at a node, kind:param");
  cmd->add_option("--arrival-tau", p.arrival_tau, "Packets forwarded by a node, kind:param");
  cmd->add_option("--eps2", p.eps2, "Squared-error fidelity epsilon^2");
  cmd->add_flag("--relaxed{true}", p.relaxed, "Require fidelity only every k* packets");
  cmd->add_option("--delta", p.delta, "Neighbor error probability");
  cmd->add_option("--n", p.n, "Node count");
  cmd->add_option("--area", p.area, "Network area A");
  cmd->add_option("--W,--bandwidth", p.bandwidth, "Link bandwidth W, bits/s");
  cmd->add_option("--guard,--delta-guard", p.delta_guard, "Protocol-model guard Delta");
  cmd->add_option("--eta", p.eta, "Mean distance to the location server");
  cmd->add_option("--r", p.radius, "Communication radius");
  cmd->add_option("--B", p.beacon_bits, "Bits per beacon");
  cmd->add_option("--service", p.service, "single, multi, xyls or hierarchical");
}

Params merged(const std::string& config, const Params& flags) {
  Params p;
  if (!config.empty()) p = load_config(config);
  p.overlay(flags);
  return p;
}

int cmd_update_bound(const Params& p) {
  georate_update_request req{};
  req.dimension = p.dim.value_or(1);
  req.sigma2 = p.sigma2.value_or(1.0);
  req.arrival = parse_arrival(p.arrival.value_or("deterministic:1"));
  req.epsilon2 = p.eps2.value_or(1.0);
  req.relaxed = p.relaxed.value_or(false) ? 1 : 0;
  georate_bound_report report{};
  check(georate_update_bound(&req, &report));
  print_update(report);
  return kExitOk;
}

int cmd_beacon_bound(const Params& p) {
  georate_beacon_request req{};
  req.dimension = p.dim.value_or(1);
  req.sigma2 = p.sigma2.value_or(1.0);
  req.radius = p.radius.value_or(1.0);
  req.arrival_tau = parse_arrival(p.arrival_tau.value_or(p.arrival.value_or("deterministic:1")));
  req.delta = p.delta.value_or(0.1);
  const double bits = p.beacon_bits.value_or(1.0);
  if (!(bits >= 1.0) || bits != std::floor(bits) || bits > 4294967295.0) {
    throw UsageError("--B must be a positive integer");
  }
  req.beacon_bits = static_cast<unsigned>(bits);
  georate_beacon_report report{};
  check(georate_beacon_bound(&req, &report));
  print_beacon(report);
  return kExitOk;
}

int cmd_capacity(const Params& p) {
  const auto scenario = to_scenario(p);
  const Service service(p);
  georate_bound_report update{};
  georate_beacon_report beacon{};
  georate_capacity_report capacity{};
  check(georate_scenario_evaluate(&scenario, service.get(), &update, &beacon, &capacity));
  std::printf("# location updates\n");
  print_update(update);
  std::printf("# beacons\n");
  print_beacon(beacon);
  std::printf("# capacity\n");
  print_capacity(capacity);
  return kExitOk;
}

int cmd_critical_n(const Params& p) {
  const auto scenario = to_scenario(p);
  const Service service(p);
  georate_bound_report update{};
  georate_beacon_report beacon{};
  georate_capacity_report capacity{};
  check(georate_scenario_evaluate(&scenario, service.get(), &update, &beacon, &capacity));
  line("update_bits_per_second", update.bits_per_second, update.equation_tag);
  line("beacon_bits_per_second", beacon.bits_per_second, beacon.equation_tag);
  print_n_star(capacity.n_star, capacity.n_star_unbounded != 0);
  return kExitOk;
}

struct SweepArgs {
  std::string axis;
  std::string grid;
  std::string outputs;
  std::string out = "-";
};

int cmd_sweep(const Params& p, const SweepArgs& args) {
  georate_axis axis{};
  if (georate_parse_axis(args.axis.c_str(), &axis) != GEORATE_OK) {
    throw UsageError(georate_last_error());
  }
  const auto grid = parse_list(args.grid, "--grid");
  const auto names = split_names(args.outputs);
  std::vector<const char*> name_ptrs;
  for (const auto& n : names) name_ptrs.push_back(n.c_str());

  const auto scenario = to_scenario(p);
  const Service service(p);

  // Open the destination before the (possibly long) sweep so a bad path
  // fails fast.
  std::ofstream file;
  if (args.out != "-") {
    file.open(args.out, std::ios::binary | std::ios::trunc);
    if (!file) throw ApiError("cannot write " + args.out, kExitComputation);
  }

  georate_sweep* sweep = nullptr;
  check(georate_sweep_run(axis, grid.data(), grid.size(), &scenario, service.get(),
                          name_ptrs.data(), name_ptrs.size(), &sweep));
  const std::string csv = georate_sweep_csv(sweep);
  std::size_t failed = 0;
  for (std::size_t i = 0; i < georate_sweep_row_count(sweep); ++i) {
    if (std::isnan(georate_sweep_value(sweep, i))) ++failed;
  }
  georate_sweep_destroy(sweep);

  if (args.out == "-") {
    std::fwrite(csv.data(), 1, csv.size(), stdout);
  } else {
    file << csv;
    file.close();
    if (!file) throw ApiError("failed writing " + args.out, kExitComputation);
  }
  if (failed > 0) {
    std::fprintf(stderr, "warning: %zu sweep point(s) failed; see the warnings column\n", failed);
  }
  return kExitOk;
}

struct ValidateArgs {
  std::uint64_t samples = 1000000;
  std::optional<std::uint64_t> seed;
  unsigned bins = 50;
  double band = 3.0;
};

int cmd_validate(const ValidateArgs& args) {
  georate_mc_config mc{args.samples, args.seed.value_or(default_seed()), args.bins};
  georate_validation* report = nullptr;
  check(georate_validation_run(&mc, args.band, &report));
  std::fputs(georate_validation_table(report), stdout);
  const bool ok = georate_validation_all_pass(report) != 0;
  if (!ok) {
    for (std::size_t i = 0; i < georate_validation_row_count(report); ++i) {
      georate_validation_row row{};
      if (georate_validation_get_row(report, i, &row) == GEORATE_OK && row.pass == 0) {
        std::fprintf(stderr, "FAILED: %s %s (%.2f sigma)\n", row.quantity, row.label,
                     row.sigma_distance);
      }
    }
  }
  georate_validation_destroy(report);
  return ok ? kExitOk : kExitComputation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate-distortion bounds on geographic routing overhead"};
  app.set_version_flag("--version", georate_version());
  app.require_subcommand(1);

  Params update_flags;
  auto* update = app.add_subcommand("update-bound", "Lower bound on location-update overhead");
  update->add_option("--dim", update_flags.dim, "Dimension, 1 or 2")->check(CLI::IsMember({1, 2}));
  update->add_option("--sigma2", update_flags.sigma2, "Brownian variance per second");
  update->add_option("--arrival", update_flags.arrival, "Packet arrivals, kind:param");
  update->add_option("--eps2", update_flags.eps2, "Squared-error fidelity epsilon^2");
  update->add_flag("--relaxed{true}", update_flags.relaxed, "Require fidelity only every k* packets");

  Params beacon_flags;
  auto* beacon = app.add_subcommand("beacon-bound", "Lower bound on beacon overhead");
  beacon->add_option("--dim", beacon_flags.dim, "Dimension, 1 or 2")->check(CLI::IsMember({1, 2}));
  beacon->add_option("--sigma2", beacon_flags.sigma2, "Brownian variance per second");
  beacon->add_option("--r", beacon_flags.radius, "Communication radius");
  beacon->add_option("--arrival,--arrival-tau", beacon_flags.arrival_tau,
                     "Packets forwarded by a node, kind:param");
  beacon->add_option("--delta", beacon_flags.delta, "Neighbor error probability");
  beacon->add_option("--B", beacon_flags.beacon_bits, "Bits per beacon");

  Params capacity_flags;
  std::string capacity_config;
  auto* capacity = app.add_subcommand("capacity", "Residual transport capacity of a scenario");
  add_scenario_flags(capacity, capacity_flags, capacity_config);

  Params critical_flags;
  std::string critical_config;
  auto* critical = app.add_subcommand("critical-n", "Critical network size n*");
  add_scenario_flags(critical, critical_flags, critical_config);

  Params sweep_flags;
  std::string sweep_config;
  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep written as CSV");
  add_scenario_flags(sweep, sweep_flags, sweep_config);
  sweep->add_option("--axis", sweep_args.axis, "sigma2, mean-interarrival or n")->required();
  sweep->add_option("--grid", sweep_args.grid, "Comma-separated increasing grid")->required();
  sweep->add_option("--outputs", sweep_args.outputs, "Comma-separated quantity names")->required();
  sweep->add_option("--out", sweep_args.out, "Output CSV path, - for stdout");

  ValidateArgs validate_args;
  auto* validate = app.add_subcommand("validate", "Monte Carlo check of every quadrature result");
  validate->add_option("--samples", validate_args.samples, "Samples per check")
      ->check(CLI::PositiveNumber);
  validate->add_option("--seed", validate_args.seed, "Master seed (default: $GEORATE_SEED)");
  validate->add_option("--bins", validate_args.bins, "Histogram bins")->check(CLI::PositiveNumber);
  validate->add_option("--band", validate_args.band, "Pass band in standard errors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*update) return cmd_update_bound(update_flags);
    if (*beacon) return cmd_beacon_bound(beacon_flags);
    if (*capacity) return cmd_capacity(merged(capacity_config, capacity_flags));
    if (*critical) return cmd_critical_n(merged(critical_config, critical_flags));
    if (*sweep) return cmd_sweep(merged(sweep_config, sweep_flags), sweep_args);
    if (*validate) return cmd_validate(validate_args);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const ApiError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitComputation;
  }
  return kExitUsage;
}
