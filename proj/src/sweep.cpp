#include "georate/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "georate/errors.hpp"
#include "georate/parallel.hpp"

namespace georate {
namespace {

constexpr Quantity kAllQuantities[] = {
    Quantity::UpdateBitsPerPacket, Quantity::UpdateBitsPerSecond, Quantity::BeaconRate,
    Quantity::BeaconBitsPerSecond, Quantity::RawCapacity,         Quantity::Overhead,
    Quantity::ResidualCapacity,    Quantity::DeficitFraction,     Quantity::NStar,
};

bool needs_update(Quantity q) {
  return q != Quantity::BeaconRate && q != Quantity::BeaconBitsPerSecond &&
         q != Quantity::RawCapacity;
}

bool needs_beacon(Quantity q) {
  return q != Quantity::UpdateBitsPerPacket && q != Quantity::UpdateBitsPerSecond &&
         q != Quantity::RawCapacity;
}

// CSV field without separators or quotes.
std::string sanitize(std::string text) {
  for (char& c : text) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

void append_warning(std::string& warnings, std::string_view text) {
  if (!warnings.empty()) warnings += ';';
  warnings += text;
}

}  // namespace

LocationBoundRequest Scenario::update_request() const {
  return {dimension, sigma2, arrival, epsilon2, relaxed};
}

BeaconBoundRequest Scenario::beacon_request() const {
  const double bits = network.beacon_bits;
  if (!(bits >= 1.0) || bits != std::floor(bits) || bits > 4294967295.0) {
    throw InvalidArgument("beacon size must be a positive whole number of bits");
  }
  return {dimension, sigma2, network.radius, arrival_tau, delta, static_cast<unsigned>(bits)};
}

ScenarioResult evaluate(const Scenario& scenario) {
  ScenarioResult out;
  out.update = update_bound(scenario.update_request());
  out.beacon = beacon_bound(scenario.beacon_request());
  const auto service = resolve_levels(scenario.service, scenario.update_request());
  out.capacity = residual_capacity(scenario.network, out.update.bits_per_second,
                                   out.beacon.bits_per_second, service);
  return out;
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Sigma2: return "sigma2";
    case SweepAxis::MeanInterarrival: return "mean-interarrival";
    case SweepAxis::NodeCount: return "n";
  }
  return "unknown";
}

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "sigma2") return SweepAxis::Sigma2;
  if (name == "mean-interarrival") return SweepAxis::MeanInterarrival;
  if (name == "n") return SweepAxis::NodeCount;
  throw InvalidArgument("unknown sweep axis '" + std::string(name) +
                        "' (expected sigma2, mean-interarrival or n)");
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::UpdateBitsPerPacket: return "update_bits_per_packet";
    case Quantity::UpdateBitsPerSecond: return "update_bits_per_second";
    case Quantity::BeaconRate: return "beacon_rate";
    case Quantity::BeaconBitsPerSecond: return "beacon_bits_per_second";
    case Quantity::RawCapacity: return "raw_capacity";
    case Quantity::Overhead: return "overhead";
    case Quantity::ResidualCapacity: return "residual_capacity";
    case Quantity::DeficitFraction: return "deficit_fraction";
    case Quantity::NStar: return "n_star";
  }
  return "unknown";
}

Quantity parse_quantity(std::string_view name) {
  for (auto q : kAllQuantities) {
    if (to_string(q) == name) return q;
  }
  throw InvalidArgument("unknown quantity '" + std::string(name) + "'");
}

void validate(const SweepSpec& spec) {
  if (spec.grid.empty()) throw InvalidArgument("sweep grid is empty");
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    if (!std::isfinite(spec.grid[i]) || spec.grid[i] <= 0.0) {
      throw InvalidArgument("sweep grid values must be positive and finite");
    }
    if (i > 0 && !(spec.grid[i] > spec.grid[i - 1])) {
      throw InvalidArgument("sweep grid must be strictly increasing");
    }
  }
  if (spec.outputs.empty()) throw InvalidArgument("sweep requests no quantities");
}

Scenario apply_axis(const Scenario& base, SweepAxis axis, double value) {
  Scenario s = base;
  switch (axis) {
    case SweepAxis::Sigma2:
      s.sigma2 = value;
      break;
    case SweepAxis::MeanInterarrival:
      s.arrival = ArrivalProcess::with_mean(base.arrival.kind(), value);
      s.arrival_tau = ArrivalProcess::with_mean(base.arrival_tau.kind(), value);
      break;
    case SweepAxis::NodeCount:
      s.network.n = value;
      break;
  }
  return s;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate(spec);
  bool want_update = false;
  bool want_beacon = false;
  for (auto q : spec.outputs) {
    want_update = want_update || needs_update(q);
    want_beacon = want_beacon || needs_beacon(q);
  }

  const std::size_t width = spec.outputs.size();
  std::vector<SweepRow> rows(spec.grid.size() * width);
  parallel_for(spec.grid.size(), [&](std::size_t i) {
    const double x = spec.grid[i];
    SweepRow* out = &rows[i * width];
    for (std::size_t j = 0; j < width; ++j) {
      out[j].axis_value = x;
      out[j].quantity = spec.outputs[j];
    }
    try {
      const Scenario s = apply_axis(spec.fixed, spec.axis, x);
      BoundReport update;
      BeaconReport beacon;
      if (want_update) update = update_bound(s.update_request());
      if (want_beacon) beacon = beacon_bound(s.beacon_request());
      CapacityReport capacity;
      const double raw = raw_transport_capacity(s.network);
      if (want_update && want_beacon) {
        const auto service = resolve_levels(s.service, s.update_request());
        capacity = residual_capacity(s.network, update.bits_per_second, beacon.bits_per_second,
                                     service);
      }
      for (std::size_t j = 0; j < width; ++j) {
        SweepRow& row = out[j];
        switch (row.quantity) {
          case Quantity::UpdateBitsPerPacket:
            row.value = update.bits_per_packet;
            row.equation_tag = update.equation_tag;
            break;
          case Quantity::UpdateBitsPerSecond:
            row.value = update.bits_per_second;
            row.equation_tag = update.equation_tag;
            break;
          case Quantity::BeaconRate:
            row.value = beacon.beacons_per_message;
            row.equation_tag = "Eq89";
            if (beacon.loose) append_warning(row.warnings, "loose");
            break;
          case Quantity::BeaconBitsPerSecond:
            row.value = beacon.bits_per_second;
            row.equation_tag = beacon.equation_tag;
            if (beacon.loose) append_warning(row.warnings, "loose");
            break;
          case Quantity::RawCapacity:
            row.value = raw;
            row.equation_tag = "Eq112";
            break;
          case Quantity::Overhead:
            row.value = capacity.overhead;
            row.equation_tag = "Eq113";
            break;
          case Quantity::ResidualCapacity:
            row.value = capacity.residual;
            row.equation_tag = "Eq113";
            if (capacity.saturated) append_warning(row.warnings, "saturated");
            break;
          case Quantity::DeficitFraction:
            row.value = capacity.deficit_fraction;
            row.equation_tag = "Eq113";
            if (capacity.saturated) append_warning(row.warnings, "saturated");
            break;
          case Quantity::NStar:
            row.value = capacity.n_star;
            row.equation_tag = "Eq114";
            if (capacity.n_star_unbounded) append_warning(row.warnings, "unbounded");
            break;
        }
      }
    } catch (const Error& e) {
      for (std::size_t j = 0; j < width; ++j) {
        out[j].value = std::numeric_limits<double>::quiet_NaN();
        out[j].equation_tag.clear();
        out[j].warnings = "error: " + sanitize(e.what());
      }
    }
  });
  return rows;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "NaN";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "axis_value,quantity,value,equation_tag,warnings\n";
  for (const auto& row : rows) {
    out += format_number(row.axis_value);
    out += ',';
    out += to_string(row.quantity);
    out += ',';
    out += format_number(row.value);
    out += ',';
    out += row.equation_tag;
    out += ',';
    out += row.warnings;
    out += '\n';
  }
  return out;
}

}  // namespace georate
