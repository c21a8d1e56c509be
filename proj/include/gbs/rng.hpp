#pragma once

#include <cstdint>
#include <random>

#include "gbs/math.hpp"

namespace gbs {

// Deterministic random stream addressed by (seed, stream id). Distinct ids
// under one seed give independent streams, so work partitioned by stream id
// is reproducible for any worker count.
class rng_stream {
public:
    rng_stream(std::uint64_t seed, std::uint64_t stream_id)
        : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream_id))) {}

    // Uniform on [0, 1) with 53-bit resolution.
    [[nodiscard]] double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1): rejects the single zero value.
    [[nodiscard]] double uniform_pos() {
        double u = uniform();
        while (u == 0.0) {
            u = uniform();
        }
        return u;
    }

    // Exponential(1) via inversion; strictly positive.
    [[nodiscard]] double exponential() {
        return -std::log(uniform_pos());
    }

    // Standard normal via quantile inversion (keeps draws order-stable).
    [[nodiscard]] double normal() {
        return normal_quantile(uniform_pos());
    }

private:
    std::mt19937_64 engine_;
};

} // namespace gbs
