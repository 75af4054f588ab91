#pragma once

// Deterministic, splittable random streams: xoshiro256** states derived from
// a (seed, stream) pair through splitmix64. Derived streams make results
// independent of how work is partitioned across shards.

#include <array>
#include <cstdint>

#include "hypercorr/linalg.hpp"

namespace hypercorr {

std::uint64_t splitmix64(std::uint64_t& state);

class Rng {
  public:
    static Rng from_seed(std::uint64_t seed);
    static Rng derive(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53 mantissa bits.
    double uniform();

    /// Uniformly distributed point on the unit sphere.
    Vec3 unit_vector();

    /// Unit-rate exponential variate.
    double exponential();

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

  private:
    std::array<std::uint64_t, 4> s_{};
};

}  // namespace hypercorr
