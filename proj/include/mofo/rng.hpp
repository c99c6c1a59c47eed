/*
 * Copyright 2026 The mofo project
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>

namespace mofo
{

/// Counter-based pseudo-random generator (SplitMix64).
///
/// The i-th output is mix64(seed + i * GOLDEN_GAMMA), so the stream is a pure
/// function of (seed, counter) and is byte-identical on every platform: only
/// 64-bit integer arithmetic is involved. Floating-point conversion uses the
/// top 53 bits, which is likewise exact.
class CounterRng
{
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64()
    {
        counter_ += 1;
        return mix64(seed_ + counter_ * kGoldenGamma);
    }

    /// Uniform double in [0, 1).
    double next_double()
    {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Uniform integer in [0, n) without modulo bias (rejection sampling).
    std::uint64_t next_below(std::uint64_t n)
    {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x = next_u64();
        while (x >= limit)
        {
            x = next_u64();
        }
        return x % n;
    }

    /// Independent substream; forks with distinct labels never collide with
    /// the parent stream or each other.
    CounterRng fork(std::uint64_t label) const
    {
        return CounterRng(mix64(seed_ ^ mix64(label + kGoldenGamma)));
    }

    std::uint64_t seed() const { return seed_; }

    static std::uint64_t mix64(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace mofo
