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

#include "eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lus {

namespace {

void check_dims(const Mask& pred, const Mask& truth) {
    if (pred.width() != truth.width() || pred.height() != truth.height())
        throw std::invalid_argument("eval: mask dimension mismatch");
}

long overlap(const Mask& a, const Mask& b) {
    long n = 0;
    const auto& da = a.data();
    const auto& db = b.data();
    for (size_t i = 0; i < da.size(); ++i)
        if (da[i] && db[i]) ++n;
    return n;
}

ClassScore score_from_counts(const PixelCounts& counts) {
    ClassScore s;
    s.counts = counts;
    long pred_total = counts.tp_precision + counts.fp;
    long truth_total = counts.tp_recall + counts.fn;
    if (pred_total > 0)
        s.precision = static_cast<double>(counts.tp_precision) / pred_total;
    if (truth_total > 0)
        s.recall = static_cast<double>(counts.tp_recall) / truth_total;
    // An undefined side zeroes the F-scores rather than inflating them.
    double p = s.precision.value_or(0.0);
    double r = s.recall.value_or(0.0);
    if (s.precision && s.recall) {
        s.f05 = f_beta(p, r, 0.5);
        s.f1 = f_beta(p, r, 1.0);
        s.f2 = f_beta(p, r, 2.0);
    }
    return s;
}

}  // namespace

Mask rasterize_detections(const std::vector<LineDetection>& dets, int width, int height,
                          int stroke_width) {
    if (stroke_width < 1) throw std::invalid_argument("stroke_width must be >= 1");
    Mask mask(width, height);
    const double half = stroke_width / 2.0;
    for (const auto& det : dets) {
        const Point& a = det.segment.a;
        const Point& b = det.segment.b;
        double dx = b.x - a.x, dy = b.y - a.y;
        double len2 = dx * dx + dy * dy;
        int x0 = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x) - half)));
        int x1 = std::min(width - 1, static_cast<int>(std::ceil(std::max(a.x, b.x) + half)));
        int y0 = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - half)));
        int y1 = std::min(height - 1, static_cast<int>(std::ceil(std::max(a.y, b.y) + half)));
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                double px = x - a.x, py = y - a.y;
                if (len2 == 0.0) {
                    if (px * px + py * py <= half * half) mask.set(x, y, true);
                    continue;
                }
                double t = (px * dx + py * dy) / len2;
                if (t < 0.0 || t > 1.0) continue;
                double qx = px - t * dx, qy = py - t * dy;
                if (qx * qx + qy * qy <= half * half) mask.set(x, y, true);
            }
        }
    }
    return mask;
}

PixelCounts pixel_counts(const Mask& pred, const Mask& truth, int tolerance) {
    check_dims(pred, truth);
    if (tolerance < 0) throw std::invalid_argument("tolerance must be >= 0");
    PixelCounts counts;
    long pred_total = static_cast<long>(pred.count());
    long truth_total = static_cast<long>(truth.count());
    Mask truth_d = tolerance > 0 ? dilate(truth, tolerance) : truth;
    Mask pred_d = tolerance > 0 ? dilate(pred, tolerance) : pred;
    counts.tp_precision = overlap(pred, truth_d);
    counts.fp = pred_total - counts.tp_precision;
    counts.tp_recall = overlap(truth, pred_d);
    counts.fn = truth_total - counts.tp_recall;
    return counts;
}

std::pair<std::optional<double>, std::optional<double>> precision_recall(
    const Mask& pred, const Mask& truth, int tolerance) {
    ClassScore s = score_from_counts(pixel_counts(pred, truth, tolerance));
    return {s.precision, s.recall};
}

double f_beta(double precision, double recall, double beta) {
    if (precision < 0.0 || precision > 1.0 || recall < 0.0 || recall > 1.0)
        throw std::invalid_argument("f_beta: precision and recall must be in [0,1]");
    if (beta <= 0.0) throw std::invalid_argument("f_beta: beta must be > 0");
    double b2 = beta * beta;
    double denom = b2 * precision + recall;
    if (denom == 0.0) return 0.0;
    return (1.0 + b2) * precision * recall / denom;
}

ScoreReport evaluate_corpus(const std::vector<EvalItem>& items, int tolerance,
                            int stroke_width) {
    if (items.empty()) throw std::invalid_argument("evaluate_corpus: empty corpus");

    // Deterministic reduction order regardless of how the caller enumerated
    // the corpus.
    std::vector<const EvalItem*> sorted;
    sorted.reserve(items.size());
    for (const auto& it : items) sorted.push_back(&it);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const EvalItem* a, const EvalItem* b) { return a->id < b->id; });

    ScoreReport report;
    report.tolerance_px = tolerance;
    report.stroke_width = stroke_width;
    PixelCounts totals[3];

    for (const EvalItem* item : sorted) {
        const int w = item->truth_pleural.width(), h = item->truth_pleural.height();
        std::vector<LineDetection> pleural_dets;
        if (item->result.pleural) pleural_dets.push_back(*item->result.pleural);
        Mask preds[3] = {
            rasterize_detections(pleural_dets, w, h, stroke_width),
            rasterize_detections(item->result.alines, w, h, stroke_width),
            rasterize_detections(item->result.blines, w, h, stroke_width)};
        const Mask* truths[3] = {&item->truth_pleural, &item->truth_aline,
                                 &item->truth_bline};
        ImageScoreRow row;
        row.id = item->id;
        for (int c = 0; c < 3; ++c) {
            PixelCounts counts = pixel_counts(preds[c], *truths[c], tolerance);
            row.per_class[c] = score_from_counts(counts);
            totals[c].tp_precision += counts.tp_precision;
            totals[c].fp += counts.fp;
            totals[c].tp_recall += counts.tp_recall;
            totals[c].fn += counts.fn;
        }
        report.per_image.push_back(std::move(row));
    }

    for (int c = 0; c < 3; ++c) report.per_class[c] = score_from_counts(totals[c]);
    return report;
}

}  // namespace lus
