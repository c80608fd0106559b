/*
Copyright (c) 2026 the lusline authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef LUSLINE_RNG_HPP
#define LUSLINE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace lus {

// Seedable generator with hand-rolled distributions. std::mt19937_64 has a
// fixed algorithm, and implementing the transforms here (instead of using
// std::*_distribution, which is implementation-defined) keeps generated
// corpora identical across standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(engine_() % static_cast<uint64_t>(hi - lo + 1));
    }

    // standard normal via Box-Muller (one value per call; the pair's second
    // half is discarded to keep the stream position predictable)
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    // Poisson by inversion for small means, normal approximation above 64
    long poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean > 64.0) {
            double v = mean + std::sqrt(mean) * normal();
            return v < 0.0 ? 0 : static_cast<long>(std::lround(v));
        }
        double l = std::exp(-mean), p = 1.0;
        long k = 0;
        do {
            ++k;
            p *= uniform();
        } while (p > l);
        return k - 1;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace lus

#endif
