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

#ifndef LUSLINE_EVAL_HPP
#define LUSLINE_EVAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "detect.hpp"
#include "image.hpp"

namespace lus {

struct PixelCounts {
    long tp_precision = 0;  // pred pixels within tolerance of truth
    long fp = 0;            // remaining pred pixels
    long tp_recall = 0;     // truth pixels within tolerance of pred
    long fn = 0;            // remaining truth pixels
};

struct ClassScore {
    PixelCounts counts;
    std::optional<double> precision;  // empty when there are no predictions
    std::optional<double> recall;     // empty when there is no truth
    double f05 = 0.0;
    double f1 = 0.0;
    double f2 = 0.0;
};

struct ImageScoreRow {
    std::string id;
    ClassScore per_class[3];  // indexed by PatternClass
};

struct ScoreReport {
    ClassScore per_class[3];
    std::vector<ImageScoreRow> per_image;
    double tolerance_px = 0.0;
    int stroke_width = 0;
};

struct EvalItem {
    std::string id;
    DetectionResult result;
    Mask truth_pleural;
    Mask truth_aline;
    Mask truth_bline;
};

// Union of segments drawn with the given stroke width (butt caps: a pixel is
// covered when its projection lands inside the segment and its perpendicular
// distance is at most stroke_width / 2).
Mask rasterize_detections(const std::vector<LineDetection>& dets, int width, int height,
                          int stroke_width);

PixelCounts pixel_counts(const Mask& pred, const Mask& truth, int tolerance);

// precision = tp/(tp+fp) against tolerance-dilated truth; recall symmetric.
// Undefined sides are left empty.
std::pair<std::optional<double>, std::optional<double>> precision_recall(
    const Mask& pred, const Mask& truth, int tolerance);

double f_beta(double precision, double recall, double beta);

// Pools pixel counts over the corpus per class (micro-average), computes
// P/R/F0.5/F1/F2 once from the totals, and keeps per-image rows.
ScoreReport evaluate_corpus(const std::vector<EvalItem>& items, int tolerance,
                            int stroke_width);

}  // namespace lus

#endif
