// Copyright 2026 The lpcsp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// SplitMix64 generator used by every instance generator (see docs/prng.md).

#ifndef LPCSP_BENCH_RNG_HPP
#define LPCSP_BENCH_RNG_HPP

#include <lpcsp/common.hpp>

#include <cstdint>

namespace lpcsp::bench {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1): the top 53 bits scaled by 2^-53.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi]: modulo reduction with rejection.
    Value range(Value lo, Value hi) {
        if (lo > hi) throw StructuralError("empty random range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        if (span == 0) return static_cast<Value>(next());
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return lo + static_cast<Value>(x % span);
    }

    bool chance(double p) { return uniform() < p; }

private:
    std::uint64_t state_;
};

} // namespace lpcsp::bench

#endif // LPCSP_BENCH_RNG_HPP
