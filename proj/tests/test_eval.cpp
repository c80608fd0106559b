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

#include "eval.hpp"

using namespace lus;

namespace {

LineDetection horizontal_line(double row, double x0, double x1,
                              PatternClass cls = PatternClass::Pleural) {
    LineDetection det;
    det.pattern = cls;
    det.theta_deg = 90.0;
    det.segment = {{x0, row}, {x1, row}};
    return det;
}

Mask row_mask(int w, int h, int row) {
    Mask m(w, h);
    for (int x = 0; x < w; ++x) m.set(x, row, true);
    return m;
}

}  // namespace

TEST_CASE("f_beta reference values") {
    CHECK(f_beta(0.8352, 0.8702, 1.0) == doctest::Approx(0.8523).epsilon(1e-4));
    CHECK(f_beta(0.7410, 0.6065, 2.0) == doctest::Approx(0.6293).epsilon(1e-4));
    CHECK(f_beta(1.0, 1.0, 0.5) == doctest::Approx(1.0));
    CHECK(f_beta(0.0, 0.0, 1.0) == 0.0);
    CHECK(f_beta(1.0, 0.0, 2.0) == 0.0);
    CHECK_THROWS_AS(f_beta(1.2, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(f_beta(0.5, -0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(f_beta(0.5, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("f_beta algebraic identity") {
    for (double p : {0.2, 0.6, 0.95})
        for (double r : {0.1, 0.5, 0.9})
            for (double beta : {0.5, 1.0, 2.0}) {
                double expect = (1 + beta * beta) * p * r / (beta * beta * p + r);
                CHECK(f_beta(p, r, beta) == doctest::Approx(expect).epsilon(1e-12));
            }
}

TEST_CASE("rasterize covers exactly the stroke band") {
    auto dets = std::vector<LineDetection>{horizontal_line(50.0, 10.0, 69.0)};
    Mask m = rasterize_detections(dets, 100, 100, 3);
    for (int y = 0; y < 100; ++y)
        for (int x = 0; x < 100; ++x) {
            bool expect = y >= 49 && y <= 51 && x >= 10 && x <= 69;
            CHECK(m(x, y) == expect);
        }
    CHECK(rasterize_detections({}, 20, 20, 3).count() == 0);

    // a zero-length segment still paints a stroke-sized disk
    LineDetection dot = horizontal_line(10.0, 10.0, 10.0);
    Mask dotted = rasterize_detections({dot}, 20, 20, 5);
    CHECK(dotted(10, 10));
    CHECK(dotted(12, 10));
    CHECK_FALSE(dotted(14, 10));

    CHECK_THROWS_AS(rasterize_detections(dets, 100, 100, 0), std::invalid_argument);
}

TEST_CASE("precision_recall basics") {
    Mask truth = row_mask(40, 40, 20);

    auto [p_same, r_same] = precision_recall(truth, truth, 0);
    CHECK(*p_same == doctest::Approx(1.0));
    CHECK(*r_same == doctest::Approx(1.0));

    // empty prediction: precision undefined, recall zero
    auto [p_none, r_none] = precision_recall(Mask(40, 40), truth, 3);
    CHECK_FALSE(p_none.has_value());
    CHECK(*r_none == doctest::Approx(0.0));

    // empty truth: recall undefined, precision zero
    auto [p_fp, r_fp] = precision_recall(truth, Mask(40, 40), 3);
    CHECK(*p_fp == doctest::Approx(0.0));
    CHECK_FALSE(r_fp.has_value());

    // a 2-px shift is fully forgiven by tolerance 3 but not by tolerance 1
    Mask shifted = row_mask(40, 40, 22);
    auto [p_tol, r_tol] = precision_recall(shifted, truth, 3);
    CHECK(*p_tol == doctest::Approx(1.0));
    CHECK(*r_tol == doctest::Approx(1.0));
    auto [p_tight, r_tight] = precision_recall(shifted, truth, 1);
    CHECK(*p_tight == doctest::Approx(0.0));
    CHECK(*r_tight == doctest::Approx(0.0));
}

TEST_CASE("pixel_counts match a dilation oracle") {
    Mask pred(30, 30);
    Mask truth(30, 30);
    for (int x = 5; x < 25; ++x) pred.set(x, 10, true);
    for (int x = 0; x < 15; ++x) truth.set(x, 12, true);
    for (int tol : {0, 1, 2, 4}) {
        PixelCounts c = pixel_counts(pred, truth, tol);
        Mask truth_d = dilate(truth, tol);
        Mask pred_d = dilate(pred, tol);
        long tp_p = 0, fp = 0, tp_r = 0, fn = 0;
        for (int y = 0; y < 30; ++y)
            for (int x = 0; x < 30; ++x) {
                if (pred(x, y)) (truth_d(x, y) ? tp_p : fp)++;
                if (truth(x, y)) (pred_d(x, y) ? tp_r : fn)++;
            }
        CHECK(c.tp_precision == tp_p);
        CHECK(c.fp == fp);
        CHECK(c.tp_recall == tp_r);
        CHECK(c.fn == fn);
    }
    // swapping pred and truth swaps the two sides of the counts
    PixelCounts fwd = pixel_counts(pred, truth, 2);
    PixelCounts rev = pixel_counts(truth, pred, 2);
    CHECK(fwd.tp_precision == rev.tp_recall);
    CHECK(fwd.fp == rev.fn);
    CHECK(fwd.tp_recall == rev.tp_precision);
    CHECK(fwd.fn == rev.fp);
}

TEST_CASE("evaluate_corpus micro-averages pooled counts") {
    // image A: perfect pleural prediction; image B: empty prediction.
    // micro precision stays 1 (no false positives) while recall pools to
    // |A truth| / (|A truth| + |B truth|), unlike a per-image mean.
    const int w = 32, h = 32;
    EvalItem a;
    a.id = "a";
    a.result.rect_width = w;
    a.result.rect_height = h;
    a.result.pleural = horizontal_line(10.0, 0.0, 31.0);
    a.truth_pleural = rasterize_detections({*a.result.pleural}, w, h, 5);
    a.truth_aline = Mask(w, h);
    a.truth_bline = Mask(w, h);

    EvalItem b;
    b.id = "b";
    b.result.rect_width = w;
    b.result.rect_height = h;
    b.truth_pleural = rasterize_detections({horizontal_line(20.0, 0.0, 31.0)}, w, h, 5);
    b.truth_aline = Mask(w, h);
    b.truth_bline = Mask(w, h);

    ScoreReport rep = evaluate_corpus({a, b}, 3, 5);
    const ClassScore& pl = rep.per_class[static_cast<int>(PatternClass::Pleural)];
    REQUIRE(pl.precision.has_value());
    REQUIRE(pl.recall.has_value());
    CHECK(*pl.precision == doctest::Approx(1.0));
    long truth_a = a.truth_pleural.count();
    long truth_b = b.truth_pleural.count();
    double want_recall = static_cast<double>(truth_a) / (truth_a + truth_b);
    CHECK(*pl.recall == doctest::Approx(want_recall));
    CHECK(pl.f1 == doctest::Approx(f_beta(1.0, want_recall, 1.0)));
    CHECK(pl.f2 == doctest::Approx(f_beta(1.0, want_recall, 2.0)));

    // per-image rows keep each image's own scores
    REQUIRE(rep.per_image.size() == 2);
    CHECK(rep.per_image[0].id == "a");
    const ClassScore& row_a =
        rep.per_image[0].per_class[static_cast<int>(PatternClass::Pleural)];
    CHECK(*row_a.precision == doctest::Approx(1.0));
    CHECK(*row_a.recall == doctest::Approx(1.0));

    // classes with neither prediction nor truth stay undefined with zero F
    const ClassScore& al = rep.per_class[static_cast<int>(PatternClass::ALine)];
    CHECK_FALSE(al.precision.has_value());
    CHECK_FALSE(al.recall.has_value());
    CHECK(al.f1 == 0.0);
}

TEST_CASE("evaluate_corpus equals a pooled-mask oracle on one frame") {
    const int w = 48, h = 48;
    EvalItem item;
    item.id = "x";
    item.result.rect_width = w;
    item.result.rect_height = h;
    item.result.blines.push_back([] {
        LineDetection det;
        det.pattern = PatternClass::BLine;
        det.segment = {{12.0, 8.0}, {12.0, 47.0}};
        return det;
    }());
    item.truth_pleural = Mask(w, h);
    item.truth_aline = Mask(w, h);
    item.truth_bline = Mask(w, h);
    for (int y = 8; y < 48; ++y)
        for (int x = 13; x <= 15; ++x) item.truth_bline.set(x, y, true);

    int tol = 2, stroke = 3;
    ScoreReport rep = evaluate_corpus({item}, tol, stroke);
    Mask pred = rasterize_detections(item.result.blines, w, h, stroke);
    PixelCounts c = pixel_counts(pred, item.truth_bline, tol);
    const ClassScore& bl = rep.per_class[static_cast<int>(PatternClass::BLine)];
    CHECK(bl.counts.tp_precision == c.tp_precision);
    CHECK(bl.counts.fp == c.fp);
    CHECK(bl.counts.tp_recall == c.tp_recall);
    CHECK(bl.counts.fn == c.fn);
    CHECK(*bl.precision ==
          doctest::Approx(static_cast<double>(c.tp_precision) /
                          (c.tp_precision + c.fp)));
}

TEST_CASE("evaluate_corpus is order invariant") {
    const int w = 24, h = 24;
    auto make = [&](const std::string& id, double row) {
        EvalItem item;
        item.id = id;
        item.result.rect_width = w;
        item.result.rect_height = h;
        item.result.pleural = horizontal_line(row, 0.0, 23.0);
        item.truth_pleural = row_mask(w, h, static_cast<int>(row) + 1);
        item.truth_aline = Mask(w, h);
        item.truth_bline = Mask(w, h);
        return item;
    };
    EvalItem a = make("a", 8.0), b = make("b", 14.0), c = make("c", 18.0);
    ScoreReport fwd = evaluate_corpus({a, b, c}, 2, 3);
    ScoreReport rev = evaluate_corpus({c, a, b}, 2, 3);
    for (int cls = 0; cls < 3; ++cls) {
        CHECK(fwd.per_class[cls].counts.tp_precision ==
              rev.per_class[cls].counts.tp_precision);
        CHECK(fwd.per_class[cls].f2 == rev.per_class[cls].f2);
    }
    REQUIRE(fwd.per_image.size() == rev.per_image.size());
    for (size_t i = 0; i < fwd.per_image.size(); ++i)
        CHECK(fwd.per_image[i].id == rev.per_image[i].id);  // sorted by id
}
