#include "georate/monte_carlo.hpp"

#include <cmath>
#include <vector>

#include "georate/errors.hpp"
#include "georate/parallel.hpp"
#include "georate/quadrature.hpp"

namespace georate {
namespace {

// Neumaier-compensated running sum.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

struct Moments {
  Accumulator s1;
  Accumulator s2;
  Accumulator s4;
};

// Runs draw(rng) -> double over mc.samples draws and returns the first,
// second and fourth raw-power sums, reduced in chunk order.
template <typename Draw>
Moments sample_moments(const McConfig& mc, Draw&& draw) {
  const std::uint64_t chunks = (mc.samples + kChunkSize - 1) / kChunkSize;
  std::vector<Moments> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    auto rng = make_substream(mc.master_seed, c);
    const std::uint64_t begin = c * kChunkSize;
    const std::uint64_t end = std::min<std::uint64_t>(mc.samples, begin + kChunkSize);
    Moments& m = partial[c];
    for (std::uint64_t i = begin; i < end; ++i) {
      const double x = draw(rng);
      const double x2 = x * x;
      m.s1.add(x);
      m.s2.add(x2);
      m.s4.add(x2 * x2);
    }
  });
  Moments total;
  for (const auto& m : partial) {
    total.s1.add(m.s1.value());
    total.s2.add(m.s2.value());
    total.s4.add(m.s4.value());
  }
  return total;
}

}  // namespace

void validate(const McConfig& mc) {
  if (mc.samples == 0) throw InvalidArgument("Monte Carlo sample count must be positive");
  if (mc.bins < 10) throw InvalidArgument("histogram needs at least 10 bins");
}

Estimate estimate_p_l(const BeaconBoundRequest& req, double l, const McConfig& mc) {
  validate(mc);
  validate(req);
  const double r2 = req.radius * req.radius;
  const auto draw = [&](Rng& rng) -> double {
    const double tau = req.arrival_tau.sample(rng);
    std::normal_distribution<double> normal(0.0, 1.0);
    if (req.dimension == Dimension::OneD) {
      // Relative motion of two independent walkers: variance 2 sigma2 tau.
      const double x = l + std::sqrt(2.0 * req.sigma2 * tau) * normal(rng);
      return x * x <= r2 ? 1.0 : 0.0;
    }
    // Each node moves sigma2/2 per axis, so the pair moves sigma2 per axis.
    const double sd = std::sqrt(req.sigma2 * tau);
    const double x = l + sd * normal(rng);
    const double y = sd * normal(rng);
    return x * x + y * y <= r2 ? 1.0 : 0.0;
  };
  const auto m = sample_moments(mc, draw);
  const double n = static_cast<double>(mc.samples);
  const double p = m.s1.value() / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

Estimate estimate_entropy(const DisplacementDensity& density, const McConfig& mc) {
  validate(mc);
  const auto draw = [&](Rng& rng) { return -std::log2(density.eval(density.sample(rng))); };
  const auto m = sample_moments(mc, draw);
  const double n = static_cast<double>(mc.samples);
  const double mean = m.s1.value() / n;
  const double var = std::max(m.s2.value() / n - mean * mean, 0.0);
  return {mean, std::sqrt(var / n)};
}

Estimate estimate_variance(double sigma2, const ArrivalProcess& arrival, unsigned k,
                           const McConfig& mc) {
  validate(mc);
  if (!std::isfinite(sigma2) || sigma2 <= 0.0) throw InvalidArgument("sigma2 must be positive");
  if (k == 0) throw InvalidArgument("k must be at least 1");
  const auto draw = [&](Rng& rng) { return sample_displacement(sigma2, arrival, k, rng); };
  const auto m = sample_moments(mc, draw);
  const double n = static_cast<double>(mc.samples);
  const double mean = m.s1.value() / n;
  const double m2 = m.s2.value() / n;
  const double variance = (m2 - mean * mean) * n / (n - 1.0);
  // Zero-mean law: Var(X^2) = E[X^4] - E[X^2]^2 drives the error.
  const double m4 = m.s4.value() / n;
  return {variance, std::sqrt(std::max(m4 - m2 * m2, 0.0) / n)};
}

std::vector<HistogramBin> displacement_histogram(const DisplacementDensity& density,
                                                 const McConfig& mc) {
  validate(mc);
  const double half = 4.0 * std::sqrt(density.variance());
  const double width = 2.0 * half / mc.bins;
  const std::uint64_t chunks = (mc.samples + kChunkSize - 1) / kChunkSize;
  std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(mc.bins, 0));
  parallel_for(chunks, [&](std::size_t c) {
    auto rng = make_substream(mc.master_seed, c);
    const std::uint64_t begin = c * kChunkSize;
    const std::uint64_t end = std::min<std::uint64_t>(mc.samples, begin + kChunkSize);
    for (std::uint64_t i = begin; i < end; ++i) {
      const double x = density.sample(rng);
      if (x < -half || x >= half) continue;
      const auto bin = std::min<std::size_t>(static_cast<std::size_t>((x + half) / width), mc.bins - 1);
      ++partial[c][bin];
    }
  });
  const double n = static_cast<double>(mc.samples);
  std::vector<HistogramBin> out(mc.bins);
  for (unsigned b = 0; b < mc.bins; ++b) {
    auto& bin = out[b];
    bin.lo = -half + b * width;
    bin.hi = bin.lo + width;
    std::uint64_t count = 0;
    for (const auto& p : partial) count += p[b];
    bin.observed = count / n;
    const double a = bin.lo;
    const double z = bin.hi;
    // Split at 0 where the mixtures have a kink.
    if (a < 0.0 && z > 0.0) {
      bin.expected = quad::integrate([&](double x) { return density.eval(x); }, a, 0.0) +
                     quad::integrate([&](double x) { return density.eval(x); }, 0.0, z);
    } else {
      bin.expected = quad::integrate([&](double x) { return density.eval(x); }, a, z);
    }
    bin.std_error = std::sqrt(bin.expected * (1.0 - bin.expected) / n);
  }
  return out;
}

}  // namespace georate
