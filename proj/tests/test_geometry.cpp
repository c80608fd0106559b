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

#include "geometry.hpp"

using namespace lus;

namespace {

TrapezoidROI random_trapezoid(std::mt19937& rng, double w, double h) {
    // corners jittered around a generous rectangle so the quad stays simple
    std::uniform_real_distribution<double> jitter(-w * 0.08, w * 0.08);
    TrapezoidROI roi;
    roi.corners[0] = {w * 0.25 + jitter(rng), h * 0.2 + jitter(rng)};
    roi.corners[1] = {w * 0.75 + jitter(rng), h * 0.2 + jitter(rng)};
    roi.corners[2] = {w * 0.9 + jitter(rng), h * 0.85 + jitter(rng)};
    roi.corners[3] = {w * 0.1 + jitter(rng), h * 0.85 + jitter(rng)};
    roi.validate();
    return roi;
}

}  // namespace

TEST_CASE("ROI validation") {
    TrapezoidROI rect = TrapezoidROI::rectangle(10, 20, 110, 90);
    CHECK(rect.area() == doctest::Approx(100.0 * 70.0));
    rect.validate();

    TrapezoidROI degenerate = rect;
    degenerate.corners[1] = degenerate.corners[0];
    degenerate.corners[2] = degenerate.corners[3];
    CHECK_THROWS_AS(degenerate.validate(), std::invalid_argument);

    TrapezoidROI crossed = rect;
    std::swap(crossed.corners[2], crossed.corners[3]);  // bowtie
    CHECK_THROWS_AS(crossed.validate(), std::invalid_argument);

    TrapezoidROI upside_down = rect;
    std::swap(upside_down.corners[0], upside_down.corners[3]);
    std::swap(upside_down.corners[1], upside_down.corners[2]);
    CHECK_THROWS_AS(upside_down.validate(), std::invalid_argument);
}

TEST_CASE("warp corners and midpoint") {
    std::mt19937 rng(11);
    TrapezoidROI roi = random_trapezoid(rng, 200, 160);
    WarpMap map = fit_warp(roi, 64, 48);

    Point tl = map.forward({0, 0});
    Point tr = map.forward({63, 0});
    Point br = map.forward({63, 47});
    Point bl = map.forward({0, 47});
    CHECK(tl.x == doctest::Approx(roi.corners[0].x).epsilon(1e-12));
    CHECK(tl.y == doctest::Approx(roi.corners[0].y).epsilon(1e-12));
    CHECK(tr.x == doctest::Approx(roi.corners[1].x).epsilon(1e-12));
    CHECK(br.y == doctest::Approx(roi.corners[2].y).epsilon(1e-12));
    CHECK(bl.x == doctest::Approx(roi.corners[3].x).epsilon(1e-12));

    Point mid = map.forward({63 / 2.0, 47 / 2.0});
    double cx = 0.0, cy = 0.0;
    for (const auto& c : roi.corners) {
        cx += c.x / 4;
        cy += c.y / 4;
    }
    CHECK(mid.x == doctest::Approx(cx).epsilon(1e-9));
    CHECK(mid.y == doctest::Approx(cy).epsilon(1e-9));
}

TEST_CASE("inverse round-trip under 0.5 px for random interior points") {
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    for (int t = 0; t < 10; ++t) {
        TrapezoidROI roi = random_trapezoid(rng, 300, 260);
        WarpMap map = fit_warp(roi, 128, 128);
        for (int i = 0; i < 100; ++i) {
            Point rect{unit(rng) * 127, unit(rng) * 127};
            Point src = map.forward(rect);
            Point back = map.inverse(src);
            CHECK(std::hypot(back.x - rect.x, back.y - rect.y) < 0.5);
        }
    }
}

TEST_CASE("rectangle ROI warp reproduces the crop") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    Image img(60, 50);
    for (double& v : img.data()) v = dist(rng);

    // ROI congruent to the output frame: the warp is an integer translation
    TrapezoidROI roi = TrapezoidROI::rectangle(10, 5, 10 + 31, 5 + 23);
    WarpMap map = fit_warp(roi, 32, 24);
    Image out = warp_to_rect(img, map);
    for (int y = 0; y < 24; ++y)
        for (int x = 0; x < 32; ++x)
            CHECK(out(x, y) == doctest::Approx(img(x + 10, y + 5)).epsilon(1e-9));
}

TEST_CASE("constant ROI warps to a constant") {
    Image img(40, 40, 0.7);
    std::mt19937 rng(14);
    TrapezoidROI roi = random_trapezoid(rng, 40, 40);
    Image out = warp_to_rect(img, fit_warp(roi, 21, 17));
    for (double v : out.data()) CHECK(v == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("warp preserves the intensity range") {
    std::mt19937 rng(15);
    std::uniform_real_distribution<double> dist(0.2, 0.8);
    Image img(50, 50);
    for (double& v : img.data()) v = dist(rng);
    TrapezoidROI roi = random_trapezoid(rng, 50, 50);
    Image out = warp_to_rect(img, fit_warp(roi, 33, 29));
    for (double v : out.data()) {
        CHECK(v >= 0.0);  // 0 fill allowed
        CHECK(v <= 0.8 + 1e-12);
    }
}

TEST_CASE("map_segment_back") {
    // identity-like warp: ROI congruent to the output rectangle
    TrapezoidROI roi = TrapezoidROI::rectangle(0, 0, 63, 63);
    WarpMap map = fit_warp(roi, 64, 64);
    auto poly = map_segment_back({5, 10}, {55, 10}, map);
    REQUIRE(poly.size() >= 2);
    CHECK(poly.front().x == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(poly.back().x == doctest::Approx(55.0).epsilon(1e-9));
    for (const auto& p : poly) CHECK(p.y == doctest::Approx(10.0).epsilon(1e-9));

    // symmetric trapezoid: a horizontal line maps to a polyline symmetric
    // about the vertical axis
    TrapezoidROI trap;
    trap.corners = {Point{40, 10}, Point{80, 10}, Point{110, 100}, Point{10, 100}};
    WarpMap tmap = fit_warp(trap, 64, 64);
    auto tpoly = map_segment_back({0, 32}, {63, 32}, tmap);
    for (size_t i = 0; i < tpoly.size(); ++i) {
        const auto& a = tpoly[i];
        const auto& b = tpoly[tpoly.size() - 1 - i];
        CHECK(a.x + b.x == doctest::Approx(120.0).epsilon(1e-6));
        CHECK(a.y == doctest::Approx(b.y).epsilon(1e-9));
    }
}

TEST_CASE("fit_warp rejects bad arguments") {
    TrapezoidROI roi = TrapezoidROI::rectangle(0, 0, 50, 50);
    CHECK_THROWS_AS(fit_warp(roi, 1, 64), std::invalid_argument);
    TrapezoidROI tiny = TrapezoidROI::rectangle(0, 0, 0.5, 0.5);
    CHECK_THROWS_AS(fit_warp(tiny, 32, 32), std::invalid_argument);
}
