#pragma once

#include <cstdint>
#include <vector>

#include "georate/beacon.hpp"
#include "georate/displacement.hpp"

namespace georate {

struct McConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t master_seed = 20240601;
  unsigned bins = 50;
};

void validate(const McConfig& mc);

/// Monte Carlo estimate with its standard error.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Samples are drawn in fixed-size chunks; chunk c uses substream c of the
/// master seed, so estimates are bit-identical for a given seed whatever the
/// thread count.
inline constexpr std::uint64_t kChunkSize = 1u << 16;

/// Fraction of simulated relative displacements that stay within r of the
/// reference node, starting from offset l.
Estimate estimate_p_l(const BeaconBoundRequest& req, double l, const McConfig& mc);

/// Resubstitution entropy estimate, -(1/N) sum log2 f(x_i), in bits.
Estimate estimate_entropy(const DisplacementDensity& density, const McConfig& mc);

/// Sample variance of displacement draws.
Estimate estimate_variance(double sigma2, const ArrivalProcess& arrival, unsigned k,
                           const McConfig& mc);

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  double expected = 0.0;  ///< Bin probability from the density.
  double observed = 0.0;  ///< Fraction of samples in the bin.
  double std_error = 0.0; ///< sqrt(expected (1 - expected) / N).
};

/// Histogram of sampled displacements over +-4 standard deviations in
/// mc.bins equal bins, next to the bin masses obtained by integrating eval.
std::vector<HistogramBin> displacement_histogram(const DisplacementDensity& density,
                                                 const McConfig& mc);

}  // namespace georate
