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
#include <random>

#include "detect.hpp"
#include "phantom.hpp"

using namespace lus;

namespace {

double mean_row(const Segment& s) { return (s.a.y + s.b.y) * 0.5; }

// Gaussian cross-sections give each line a unique sinogram maximum; flat
// bands would form plateaus that strict peak finding rejects.
void paint_row_band(Image& img, int center, double value) {
    const double sigma = 1.5;
    for (int y = 0; y < img.height(); ++y) {
        double v = value * std::exp(-0.5 * (y - center) * (y - center) / (sigma * sigma));
        for (int x = 0; x < img.width(); ++x) img(x, y) = std::max(img(x, y), v);
    }
}

void paint_col_band(Image& img, int center, int y0, int y1, double value) {
    const double sigma = 1.5;
    for (int x = 0; x < img.width(); ++x) {
        double v = value * std::exp(-0.5 * (x - center) * (x - center) / (sigma * sigma));
        for (int y = y0; y < y1; ++y) img(x, y) = std::max(img(x, y), v);
    }
}

DenoiseSpec passthrough() {
    DenoiseSpec spec;
    spec.threshold = 0.0;
    return spec;
}

}  // namespace

TEST_CASE("config validation") {
    PipelineConfig cfg;
    cfg.validate();
    cfg.blur_fraction = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = PipelineConfig{};
    cfg.aline_spacing_tolerance = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = PipelineConfig{};
    cfg.rect_width = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("suppress_top blurs only the top band") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    Image img(64, 100);
    for (double& v : img.data()) v = dist(rng);
    PipelineConfig cfg;
    Image out = suppress_top(img, cfg);  // blur_fraction 0.10 -> rows [0, 10)
    for (int y = 10; y < 100; ++y)
        for (int x = 0; x < 64; ++x) CHECK(out(x, y) == img(x, y));
    bool changed = false;
    for (int y = 0; y < 10 && !changed; ++y)
        for (int x = 0; x < 64 && !changed; ++x) changed = out(x, y) != img(x, y);
    CHECK(changed);
}

TEST_CASE("pleural detection locks onto a tilted bright band") {
    PhantomSpec spec;
    spec.width = 128;
    spec.height = 128;
    spec.pleural_depth = 0.3;
    spec.pleural_tilt_deg = 5.0;
    Phantom ph = generate_phantom(spec);
    PipelineConfig cfg;
    auto det = detect_pleural(ph.clean, cfg);
    REQUIRE(det.has_value());
    CHECK(std::abs(det->theta_deg - 95.0) <= 1.0);
    CHECK(std::abs(mean_row(det->segment) - 0.3 * 128) <= 2.0);
    CHECK(det->support >= cfg.pleural_min_support);
}

TEST_CASE("pleural detection returns nothing on a dark image") {
    Image img(96, 96, 0.02);
    PipelineConfig cfg;
    CHECK_FALSE(detect_pleural(img, cfg).has_value());
}

TEST_CASE("pleural detection prefers the brighter of two bands") {
    Image img(128, 128, 0.0);
    paint_row_band(img, 40, 0.45);
    paint_row_band(img, 80, 0.90);  // deeper but twice as bright
    PipelineConfig cfg;
    auto det = detect_pleural(img, cfg);
    REQUIRE(det.has_value());
    CHECK(std::abs(mean_row(det->segment) - 80.0) <= 1.0);
}

TEST_CASE("split_lung_area arithmetic and bottom-edge error") {
    Image img(32, 128, 0.5);
    LineDetection pleural;
    pleural.segment = {{0.0, 10.3}, {31.0, 12.7}};
    auto [lung, offset] = split_lung_area(img, pleural, 5);
    CHECK(offset == 18);  // ceil(12.7) + 5
    CHECK(lung.height() == 110);
    CHECK(lung.width() == 32);

    pleural.segment = {{0.0, 125.5}, {31.0, 125.5}};
    CHECK_THROWS_AS(split_lung_area(img, pleural, 5), std::runtime_error);
}

TEST_CASE("A-line spacing filter keeps equidistant echoes only") {
    // lung frame with bright rows at 35, 55, 75; the pleural line sits 5 px
    // above the crop and the skin-to-pleura distance is 40, so 35 and 75 fit
    // the reverberation spacing while 55 does not
    Image lung(128, 128, 0.0);
    paint_row_band(lung, 35, 0.9);
    paint_row_band(lung, 55, 0.8);
    paint_row_band(lung, 75, 0.7);
    LineDetection pleural;
    pleural.theta_deg = 90.0;
    pleural.segment = {{0.0, -5.0}, {127.0, -5.0}};
    PipelineConfig cfg;
    auto alines = detect_a_lines(lung, pleural, 40.0, cfg);
    REQUIRE(alines.size() == 2);
    CHECK(std::abs(mean_row(alines[0].segment) - 35.0) <= 1.0);
    CHECK(std::abs(mean_row(alines[1].segment) - 75.0) <= 1.0);

    CHECK_THROWS_AS(detect_a_lines(lung, pleural, 0.0, cfg), std::invalid_argument);
}

TEST_CASE("A-line detection on a dark lung is empty") {
    Image lung(64, 64, 0.01);
    LineDetection pleural;
    pleural.theta_deg = 90.0;
    pleural.segment = {{0.0, -4.0}, {63.0, -4.0}};
    CHECK(detect_a_lines(lung, pleural, 30.0, PipelineConfig{}).empty());
}

TEST_CASE("B-line detection requires full vertical coverage") {
    Image lung(128, 96, 0.0);
    paint_col_band(lung, 30, 0, 96, 0.8);
    paint_col_band(lung, 90, 0, 96, 0.8);
    paint_col_band(lung, 60, 0, 48, 0.8);  // only half the extent
    PipelineConfig cfg;
    auto blines = detect_b_lines(lung, cfg);
    REQUIRE(blines.size() == 2);
    std::vector<double> rhos = {blines[0].rho_px, blines[1].rho_px};
    std::sort(rhos.begin(), rhos.end());
    CHECK(std::abs(rhos[0] - (30.0 - 64.0)) <= 1.0);
    CHECK(std::abs(rhos[1] - (90.0 - 64.0)) <= 1.0);
    for (const auto& det : blines) CHECK(det.support >= cfg.bline_min_coverage);
}

TEST_CASE("full pipeline recovers a 1/2/3 phantom layout") {
    PhantomSpec spec;
    spec.width = 256;
    spec.height = 256;
    spec.pleural_depth = 0.25;  // pleural 64, A-lines 128 and 192
    spec.n_alines = 2;
    spec.n_blines = 3;
    spec.bline_columns = {0.25, 0.5, 0.78125};  // columns 64, 128, 200
    Phantom ph = generate_phantom(spec);

    PipelineConfig cfg;
    DetectionResult res = run_pipeline_rect(ph.clean, passthrough(), cfg, "p0");
    CHECK(res.input_id == "p0");
    CHECK(res.rect_width == 256);
    REQUIRE(res.pleural.has_value());
    CHECK(std::abs(mean_row(res.pleural->segment) - 64.0) <= 3.0);

    REQUIRE(res.alines.size() == 2);
    CHECK(std::abs(mean_row(res.alines[0].segment) - 128.0) <= 3.0);
    CHECK(std::abs(mean_row(res.alines[1].segment) - 192.0) <= 3.0);

    REQUIRE(res.blines.size() == 3);
    std::vector<double> cols;
    for (const auto& det : res.blines)
        cols.push_back((det.segment.a.x + det.segment.b.x) / 2);
    std::sort(cols.begin(), cols.end());
    CHECK(std::abs(cols[0] - 64.0) <= 3.0);
    CHECK(std::abs(cols[1] - 128.0) <= 3.0);
    CHECK(std::abs(cols[2] - 200.0) <= 3.0);
    // each B-line is extended up to touch the pleural line
    for (const auto& det : res.blines) {
        double top = std::min(det.segment.a.y, det.segment.b.y);
        CHECK(std::abs(top - 64.0) <= 3.0);
    }
}

TEST_CASE("pipeline finds nothing in noise") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(0.0, 0.1);
    Image img(128, 128);
    for (double& v : img.data()) v = dist(rng);
    DetectionResult res = run_pipeline_rect(img, passthrough(), PipelineConfig{});
    CHECK_FALSE(res.pleural.has_value());
    CHECK(res.alines.empty());
    CHECK(res.blines.empty());
}

TEST_CASE("warped pipeline on a rectangular ROI matches the rectified run") {
    PhantomSpec spec;
    spec.width = 256;
    spec.height = 256;
    spec.n_alines = 1;
    spec.n_blines = 1;
    spec.bline_columns = {0.5};
    Phantom ph = generate_phantom(spec);

    Image big(300, 300, 0.0);
    for (int y = 0; y < 256; ++y)
        for (int x = 0; x < 256; ++x) big(x + 20, y + 30) = ph.clean(x, y);
    TrapezoidROI roi = TrapezoidROI::rectangle(20, 30, 20 + 255, 30 + 255);

    PipelineConfig cfg;
    cfg.rect_width = 256;
    cfg.rect_height = 256;
    DetectionResult direct = run_pipeline_rect(ph.clean, passthrough(), cfg);
    DetectionResult warped = run_pipeline(big, roi, passthrough(), cfg);
    REQUIRE(direct.pleural.has_value());
    REQUIRE(warped.pleural.has_value());
    CHECK(warped.pleural->theta_deg == doctest::Approx(direct.pleural->theta_deg));
    CHECK(warped.pleural->rho_px == doctest::Approx(direct.pleural->rho_px).epsilon(1e-6));
    CHECK(warped.alines.size() == direct.alines.size());
    CHECK(warped.blines.size() == direct.blines.size());
}

TEST_CASE("detection is deterministic") {
    PhantomSpec spec;
    spec.width = 192;
    spec.height = 192;
    spec.n_alines = 1;
    spec.noise.gaussian_sigma = 0.05;
    spec.noise.speckle_sigma = 0.3;
    Phantom ph = generate_phantom(spec);
    DenoiseSpec den;
    den.family = "sym8";
    den.level = 4;
    den.threshold = 40.0;
    PipelineConfig cfg;
    DetectionResult a = run_pipeline_rect(ph.noisy, den, cfg);
    DetectionResult b = run_pipeline_rect(ph.noisy, den, cfg);
    CHECK(a.pleural.has_value() == b.pleural.has_value());
    if (a.pleural && b.pleural) {
        CHECK(a.pleural->rho_px == b.pleural->rho_px);
        CHECK(a.pleural->score == b.pleural->score);
    }
    REQUIRE(a.alines.size() == b.alines.size());
    for (size_t i = 0; i < a.alines.size(); ++i)
        CHECK(a.alines[i].rho_px == b.alines[i].rho_px);
    REQUIRE(a.blines.size() == b.blines.size());
    for (size_t i = 0; i < a.blines.size(); ++i)
        CHECK(a.blines[i].rho_px == b.blines[i].rho_px);
}
