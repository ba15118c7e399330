#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "georate/beacon.hpp"
#include "georate/capacity.hpp"
#include "georate/location_update.hpp"

namespace georate {

/// Full parameter record for one operating point: mobility, traffic laws,
/// fidelity targets, network and location service.
struct Scenario {
  Dimension dimension = Dimension::TwoD;
  double sigma2 = 1.0;
  ArrivalProcess arrival = ArrivalProcess::deterministic(1.0);      ///< Packets destined to a node.
  ArrivalProcess arrival_tau = ArrivalProcess::deterministic(1.0);  ///< Packets forwarded by a node.
  double epsilon2 = 1.0;
  bool relaxed = false;
  double delta = 0.1;
  NetworkConfig network;
  LocationServiceDescriptor service;

  LocationBoundRequest update_request() const;
  BeaconBoundRequest beacon_request() const;
};

struct ScenarioResult {
  BoundReport update;
  BeaconReport beacon;
  CapacityReport capacity;
};

ScenarioResult evaluate(const Scenario& scenario);

enum class SweepAxis { Sigma2, MeanInterarrival, NodeCount };

enum class Quantity {
  UpdateBitsPerPacket,
  UpdateBitsPerSecond,
  BeaconRate,
  BeaconBitsPerSecond,
  RawCapacity,
  Overhead,
  ResidualCapacity,
  DeficitFraction,
  NStar,
};

std::string_view to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view name);
std::string_view to_string(Quantity q);
Quantity parse_quantity(std::string_view name);

struct SweepSpec {
  SweepAxis axis = SweepAxis::Sigma2;
  std::vector<double> grid;  ///< Positive, strictly increasing.
  Scenario fixed;
  std::vector<Quantity> outputs;
};

void validate(const SweepSpec& spec);

/// Copy of `base` moved to `value` along `axis`. MeanInterarrival rescales
/// both arrival laws, keeping their families.
Scenario apply_axis(const Scenario& base, SweepAxis axis, double value);

struct SweepRow {
  double axis_value = 0.0;
  Quantity quantity = Quantity::UpdateBitsPerPacket;
  double value = 0.0;  ///< NaN when the point failed.
  std::string equation_tag;
  std::string warnings;
};

/// Evaluates every grid point (concurrently) and returns rows in grid order,
/// then output order. A failing point yields NaN rows carrying the error
/// text; it never aborts the sweep.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// CSV with header axis_value,quantity,value,equation_tag,warnings and
/// numbers at 9 significant digits.
std::string to_csv(const std::vector<SweepRow>& rows);

/// printf("%.9g") helper shared with the report printers.
std::string format_number(double value);

}  // namespace georate
