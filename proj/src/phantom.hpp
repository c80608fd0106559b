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

#ifndef LUSLINE_PHANTOM_HPP
#define LUSLINE_PHANTOM_HPP

#include <cstdint>
#include <vector>

#include "image.hpp"
#include "radon.hpp"

namespace lus {

struct NoiseSpec {
    double gaussian_sigma = 0.0;
    double salt_pepper_density = 0.0;
    double poisson_scale = 0.0;       // photons per unit intensity; 0 disables
    double speckle_sigma = 0.0;       // multiplicative std
};

struct PhantomSpec {
    int width = 512;
    int height = 512;
    double pleural_depth = 0.28;      // fraction of height
    double pleural_tilt_deg = 0.0;    // in [-15, 15]
    int n_alines = 0;                 // 0..3
    int n_blines = 0;                 // 0..5
    std::vector<double> bline_columns;  // fractions of width, one per B-line
    double line_thickness = 5.0;      // pixels
    double aline_decay = 0.7;         // per-echo intensity factor
    double pleural_intensity = 0.9;
    double bline_intensity = 0.55;
    double background_level = 0.06;
    NoiseSpec noise;
    uint64_t seed = 0;

    void validate() const;
};

struct Phantom {
    Image clean;
    Image noisy;
    Mask pleural_mask;
    Mask aline_mask;
    Mask bline_mask;
    std::vector<LineDetection> truth;
};

Phantom generate_phantom(const PhantomSpec& spec);

// Noise stages in order: speckle, Poisson, additive Gaussian, salt-and-pepper;
// the result is clamped to [0,1]. Deterministic given the seed.
Image apply_noise(const Image& img, const NoiseSpec& noise, uint64_t seed);

// Uniformly samples spec fields (depth, tilt, counts, columns) for corpus
// generation; geometry honors the supported simulated ranges.
PhantomSpec sample_spec(int width, int height, const NoiseSpec& noise, uint64_t seed);

}  // namespace lus

#endif
