#pragma once

#include <cstdint>
#include <random>

namespace eon {

using Rng = std::mt19937_64;

/// Named random substreams. Every stochastic input of a run is drawn from
/// its own engine so changing one consumer leaves the others untouched.
enum class Stream : std::uint32_t {
  kGraph = 1,
  kArrivals = 2,
  kSizes = 3,
  kEndpoints = 4,
  kHolding = 5,
  kRandomFit = 6,
  kInstances = 7,
};

/// Engine for (seed, stream, index). index distinguishes repeated draws of
/// the same stream, e.g. graph regenerations.
inline Rng make_rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

}  // namespace eon
