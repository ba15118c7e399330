#pragma once

#include <cstdint>
#include <random>

namespace georate {

/// Random stream used by every sampler in the library.
using Rng = std::mt19937_64;

/// Derives the seed of substream `index` from `master_seed`.
///
/// Two rounds of the splitmix64 finalizer over (master_seed, index), so task
/// i of a parallel job always receives the same stream no matter which
/// worker runs it.
std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index);

inline Rng make_substream(std::uint64_t master_seed, std::uint64_t index) {
  return Rng(substream_seed(master_seed, index));
}

}  // namespace georate
