// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace authec {

/// Counter-based 64-bit stream.
///
/// Output k (k = 1, 2, ...) of the stream with key K is
///     splitmix64_mix(K + k * 0x9E3779B97F4A7C15)
/// where splitmix64_mix is the SplitMix64 finalizer. The key of substream s
/// under seed S is splitmix64_mix(S ^ splitmix64_mix(s + 0xD1B54A32D192ED03)).
/// Every output is a pure function of (key, counter); the same stream
/// can be regenerated in any language and any thread layout.
///
/// Uniforms use the top 53 bits: (u >> 11) * 2^-53 + 2^-54, so they lie in the
/// open interval (0,1). Normals use Box-Muller on two consecutive uniforms,
/// returning the cosine branch first and caching the sine branch.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    double uniform();
    double uniform(double lo, double hi);
    double normal();

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

}  // namespace authec
