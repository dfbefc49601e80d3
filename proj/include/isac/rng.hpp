// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>

namespace isac {

/// Counter-keyed pseudo-random generator.
///
/// The stream for a Monte Carlo trial is a pure function of (master seed, trial index),
/// so estimates do not depend on how trials are spread over workers. The generator is a
/// SplitMix64 sequence whose starting state is a hash of both keys; it satisfies
/// UniformRandomBitGenerator and can drive the standard distributions.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform double in [0, 1).
    double uniform();

private:
    std::uint64_t state_;
};

/// Stateless 64-bit finalizer (SplitMix64 output function).
std::uint64_t mix64(std::uint64_t x);

}  // namespace isac
