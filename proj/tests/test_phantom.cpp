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

#include "doctest.h"

#include <cmath>

#include "phantom.hpp"
#include "wavelet.hpp"

using namespace lus;

namespace {

PhantomSpec basic_spec() {
    PhantomSpec spec;
    spec.width = 128;
    spec.height = 128;
    spec.pleural_depth = 0.25;
    spec.seed = 99;
    return spec;
}

double point_line_distance(const Segment& seg, double x, double y) {
    double dx = seg.b.x - seg.a.x, dy = seg.b.y - seg.a.y;
    double len = std::hypot(dx, dy);
    return std::abs((x - seg.a.x) * dy - (y - seg.a.y) * dx) / len;
}

}  // namespace

TEST_CASE("spec validation") {
    PhantomSpec spec = basic_spec();
    spec.n_alines = 4;
    CHECK_THROWS_AS(generate_phantom(spec), std::invalid_argument);
    spec = basic_spec();
    spec.n_blines = 2;  // bline_columns left empty
    CHECK_THROWS_AS(generate_phantom(spec), std::invalid_argument);
    spec = basic_spec();
    spec.pleural_tilt_deg = 20.0;
    CHECK_THROWS_AS(generate_phantom(spec), std::invalid_argument);
    spec = basic_spec();
    spec.noise.gaussian_sigma = -0.1;
    CHECK_THROWS_AS(generate_phantom(spec), std::invalid_argument);
}

TEST_CASE("structure-free phantom has only the pleural band") {
    PhantomSpec spec = basic_spec();
    Phantom ph = generate_phantom(spec);
    CHECK(ph.aline_mask.count() == 0);
    CHECK(ph.bline_mask.count() == 0);
    CHECK(ph.pleural_mask.count() > 0);
    REQUIRE(ph.truth.size() == 1);
    CHECK(ph.truth[0].pattern == PatternClass::Pleural);
    CHECK(ph.truth[0].theta_deg == doctest::Approx(90.0));
    // depth 0.25 of 128 -> row 32; rho = row - cy = -32
    CHECK(ph.truth[0].rho_px == doctest::Approx(-32.0));
    // the band is bright at its center row, background dim elsewhere
    CHECK(ph.clean(64, 32) == doctest::Approx(spec.pleural_intensity).epsilon(1e-6));
    CHECK(ph.clean(64, 100) < 0.2);
}

TEST_CASE("A-line echoes appear at depth multiples with decayed intensity") {
    PhantomSpec spec = basic_spec();
    spec.n_alines = 2;
    Phantom ph = generate_phantom(spec);
    std::vector<const LineDetection*> alines;
    for (const auto& det : ph.truth)
        if (det.pattern == PatternClass::ALine) alines.push_back(&det);
    REQUIRE(alines.size() == 2);
    CHECK(alines[0]->rho_px == doctest::Approx(2 * 32.0 - 64.0));
    CHECK(alines[1]->rho_px == doctest::Approx(3 * 32.0 - 64.0));
    CHECK(ph.clean(64, 64) ==
          doctest::Approx(spec.pleural_intensity * spec.aline_decay).epsilon(1e-6));
    CHECK(ph.clean(64, 96) ==
          doctest::Approx(spec.pleural_intensity * spec.aline_decay * spec.aline_decay)
              .epsilon(1e-6));

    // echoes below the frame are skipped
    spec.pleural_depth = 0.45;
    spec.n_alines = 3;
    Phantom deep = generate_phantom(spec);
    int count = 0;
    for (const auto& det : deep.truth)
        if (det.pattern == PatternClass::ALine) ++count;
    CHECK(count == 1);  // only 2x depth (0.9) fits
}

TEST_CASE("B-lines run from the pleural line to the bottom") {
    PhantomSpec spec = basic_spec();
    spec.n_blines = 2;
    spec.bline_columns = {0.5, 0.75};  // integer pixel columns 64 and 96
    Phantom ph = generate_phantom(spec);
    int found = 0;
    for (const auto& det : ph.truth) {
        if (det.pattern != PatternClass::BLine) continue;
        ++found;
        CHECK(det.theta_deg == 0.0);
        CHECK(det.segment.b.y == doctest::Approx(127.0));
        CHECK(det.segment.a.y == doctest::Approx(32.0));
    }
    CHECK(found == 2);
    // bright below the pleural line at the column, dark above it
    CHECK(ph.clean(64, 80) == doctest::Approx(spec.bline_intensity).epsilon(1e-6));
    CHECK(ph.clean(64, 10) < 0.2);
}

TEST_CASE("masks stay within thickness/2 + 1 px of the truth lines") {
    PhantomSpec spec = basic_spec();
    spec.pleural_tilt_deg = 7.0;
    spec.n_alines = 1;
    spec.n_blines = 1;
    spec.bline_columns = {0.5};
    Phantom ph = generate_phantom(spec);
    const double limit = spec.line_thickness / 2.0 + 1.0;

    auto check_mask = [&](const Mask& mask, PatternClass cls) {
        for (int y = 0; y < mask.height(); ++y)
            for (int x = 0; x < mask.width(); ++x) {
                if (!mask(x, y)) continue;
                double best = 1e9;
                for (const auto& det : ph.truth)
                    if (det.pattern == cls)
                        best = std::min(best, point_line_distance(det.segment, x, y));
                CHECK(best <= limit);
            }
    };
    check_mask(ph.pleural_mask, PatternClass::Pleural);
    check_mask(ph.aline_mask, PatternClass::ALine);
    check_mask(ph.bline_mask, PatternClass::BLine);
}

TEST_CASE("generation is deterministic") {
    PhantomSpec spec = basic_spec();
    spec.n_blines = 1;
    spec.bline_columns = {0.4};
    spec.noise.gaussian_sigma = 0.05;
    spec.noise.speckle_sigma = 0.3;
    Phantom a = generate_phantom(spec);
    Phantom b = generate_phantom(spec);
    CHECK(a.clean.data() == b.clean.data());
    CHECK(a.noisy.data() == b.noisy.data());
    CHECK(a.pleural_mask.data() == b.pleural_mask.data());

    spec.seed = 100;
    Phantom c = generate_phantom(spec);
    CHECK(a.noisy.data() != c.noisy.data());
}

TEST_CASE("apply_noise with zero parameters is the identity") {
    PhantomSpec spec = basic_spec();
    Phantom ph = generate_phantom(spec);
    Image out = apply_noise(ph.clean, NoiseSpec{}, 123);
    CHECK(out.data() == ph.clean.data());
}

TEST_CASE("salt-and-pepper density is honored") {
    Image img(512, 512, 0.5);
    NoiseSpec noise;
    noise.salt_pepper_density = 0.1;
    Image out = apply_noise(img, noise, 7);
    int extreme = 0;
    for (double v : out.data())
        if (v == 0.0 || v == 1.0) ++extreme;
    double frac = static_cast<double>(extreme) / out.size();
    CHECK(frac == doctest::Approx(0.1).epsilon(0.1));  // binomial concentration
}

TEST_CASE("gaussian noise yields the analytic SNR") {
    // constant 0.5 keeps the [0,1] clamp inert, so the analytic value applies:
    // SNR = 10 log10(0.5^2 / sigma^2) = 20 dB for sigma = 0.05
    Image img(256, 256, 0.5);
    NoiseSpec noise;
    noise.gaussian_sigma = 0.05;
    Image noisy = apply_noise(img, noise, 31);
    CHECK(snr_db(img, noisy) == doctest::Approx(20.0).epsilon(0.01));
}

TEST_CASE("increasing gaussian sigma decreases expected SNR") {
    PhantomSpec spec = basic_spec();
    Phantom ph = generate_phantom(spec);
    double prev = 1e9;
    for (double sigma : {0.02, 0.05, 0.1, 0.2}) {
        double total = 0.0;
        for (uint64_t seed = 0; seed < 20; ++seed) {
            NoiseSpec noise;
            noise.gaussian_sigma = sigma;
            total += snr_db(ph.clean, apply_noise(ph.clean, noise, seed));
        }
        double mean = total / 20;
        CHECK(mean < prev);
        prev = mean;
    }
}

TEST_CASE("sample_spec stays inside the documented ranges") {
    NoiseSpec noise;
    for (uint64_t seed = 0; seed < 50; ++seed) {
        PhantomSpec spec = sample_spec(256, 256, noise, seed);
        spec.validate();
        CHECK(spec.pleural_depth >= 0.20);
        CHECK(spec.pleural_depth <= 0.34);
        CHECK(std::abs(spec.pleural_tilt_deg) <= 10.0);
        CHECK(spec.n_alines >= 0);
        CHECK(spec.n_alines <= 3);
        CHECK(spec.n_blines >= 0);
        CHECK(spec.n_blines <= 5);
        for (size_t i = 0; i < spec.bline_columns.size(); ++i) {
            CHECK(spec.bline_columns[i] >= 0.10);
            CHECK(spec.bline_columns[i] <= 0.90);
            if (i > 0)
                CHECK(spec.bline_columns[i] - spec.bline_columns[i - 1] >=
                      0.06 - 1e-9);
        }
        CHECK(spec.seed == seed);
    }
    // same seed, same spec
    PhantomSpec a = sample_spec(256, 256, noise, 5);
    PhantomSpec b = sample_spec(256, 256, noise, 5);
    CHECK(a.pleural_depth == b.pleural_depth);
    CHECK(a.bline_columns == b.bline_columns);
}
