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

#include "detect.hpp"

#include <algorithm>
#include <cmath>

namespace lus {

void PipelineConfig::validate() const {
    if (blur_fraction <= 0.0 || blur_fraction >= 1.0)
        throw std::invalid_argument("blur_fraction must be in (0,1)");
    if (blur_sigma <= 0.0) throw std::invalid_argument("blur_sigma must be > 0");
    if (pleural_theta_halfwidth <= 0.0 || aline_theta_halfwidth <= 0.0 ||
        bline_theta_halfwidth <= 0.0)
        throw std::invalid_argument("angle windows must be non-empty");
    if (aline_spacing_tolerance <= 0.0 || aline_spacing_tolerance >= 1.0)
        throw std::invalid_argument("aline_spacing_tolerance must be in (0,1)");
    if (bline_min_coverage <= 0.0 || bline_min_coverage > 1.0)
        throw std::invalid_argument("bline_min_coverage must be in (0,1]");
    if (max_alines < 0 || max_blines < 0)
        throw std::invalid_argument("max counts must be >= 0");
    if (rect_width < 2 || rect_height < 2)
        throw std::invalid_argument("rect frame must be at least 2x2");
}

namespace {

double image_max(const Image& img) {
    double m = 0.0;
    for (double v : img.data()) m = std::max(m, v);
    return m;
}

// Brightness-dependent thresholds optionally track the image maximum so that
// a global contrast factor does not change any argmax decision.
double threshold_scale(const Image& img, const PipelineConfig& cfg) {
    if (!cfg.auto_scale_thresholds) return 1.0;
    double m = image_max(img);
    return m > 0.0 ? m : 1.0;
}

double mean_row(const Segment& s) { return (s.a.y + s.b.y) * 0.5; }

LineDetection translate_rows(LineDetection det, int row_offset, int width, int height) {
    // shift the line from a cropped frame back into its parent frame
    double th = det.theta_deg * 3.14159265358979323846 / 180.0;
    // endpoint shift is exact; recompute rho from a shifted point
    det.segment.a.y += row_offset;
    det.segment.b.y += row_offset;
    double cx = width / 2.0, cy = height / 2.0;
    det.rho_px = (det.segment.a.x - cx) * std::cos(th) + (det.segment.a.y - cy) * std::sin(th);
    return det;
}

}  // namespace

Image suppress_top(const Image& img, const PipelineConfig& cfg) {
    cfg.validate();
    int rows = std::max(1, static_cast<int>(std::lround(cfg.blur_fraction * img.height())));
    return gaussian_blur(img, cfg.blur_sigma, {0, rows});
}

std::optional<LineDetection> detect_pleural(const Image& img, const PipelineConfig& cfg) {
    cfg.validate();
    const double scale = threshold_scale(img, cfg);
    auto angles = angle_range(90.0 - cfg.pleural_theta_halfwidth,
                              90.0 + cfg.pleural_theta_halfwidth, cfg.angle_stride_deg);
    Sinogram sino = radon_transform(img, angles);
    auto peaks = find_local_maxima(sino, cfg.peak_neighborhood,
                                   cfg.pleural_min_normalized * scale);
    for (const auto& peak : peaks) {
        Segment seg;
        try {
            seg = peak_to_segment(peak, img.width(), img.height());
        } catch (const std::runtime_error&) {
            continue;
        }
        if (seg.length() < cfg.pleural_min_length_frac * img.width()) continue;
        double support = line_support(img, seg, cfg.support_brightness * scale);
        if (support < cfg.pleural_min_support) continue;
        LineDetection det;
        det.pattern = PatternClass::Pleural;
        det.theta_deg = peak.theta_deg;
        det.rho_px = peak.rho_px;
        det.segment = seg;
        det.score = peak.normalized_value;
        det.support = support;
        return det;
    }
    return std::nullopt;
}

std::pair<Image, int> split_lung_area(const Image& img, const LineDetection& pleural,
                                      int margin) {
    int top = static_cast<int>(
        std::ceil(std::max(pleural.segment.a.y, pleural.segment.b.y))) + margin;
    if (top < 0) top = 0;
    if (top >= img.height() - 1)
        throw std::runtime_error("pleural line at the bottom edge: empty lung area");
    return crop_rows(img, top, img.height());
}

std::vector<LineDetection> detect_a_lines(const Image& lung, const LineDetection& pleural,
                                          double skin_to_pleural, const PipelineConfig& cfg) {
    cfg.validate();
    if (skin_to_pleural <= 0.0)
        throw std::invalid_argument("skin_to_pleural must be > 0");

    const double scale = threshold_scale(lung, cfg);
    auto angles = angle_range(pleural.theta_deg - cfg.aline_theta_halfwidth,
                              pleural.theta_deg + cfg.aline_theta_halfwidth,
                              cfg.angle_stride_deg);

    std::vector<LineDetection> candidates;
    Image current = lung;
    int offset = 0;  // rows of `current` relative to the lung frame
    while (static_cast<int>(candidates.size()) < cfg.max_alines) {
        if (current.height() < 4) break;
        Sinogram sino = radon_transform(current, angles);
        auto peaks = find_local_maxima(sino, cfg.peak_neighborhood,
                                       cfg.aline_min_normalized * scale);
        const LineDetection* found = nullptr;
        LineDetection det;
        for (const auto& peak : peaks) {
            Segment seg;
            try {
                seg = peak_to_segment(peak, current.width(), current.height());
            } catch (const std::runtime_error&) {
                continue;
            }
            if (seg.length() < cfg.aline_min_length_frac * current.width()) continue;
            double support = line_support(current, seg, cfg.support_brightness * scale);
            if (support < cfg.aline_min_support) continue;
            det.pattern = PatternClass::ALine;
            det.theta_deg = peak.theta_deg;
            det.rho_px = peak.rho_px;
            det.segment = seg;
            det.score = peak.normalized_value;
            det.support = support;
            found = &det;
            break;
        }
        if (!found) break;
        LineDetection in_lung = translate_rows(det, offset, lung.width(), lung.height());
        candidates.push_back(in_lung);
        int next_top = static_cast<int>(
            std::ceil(std::max(det.segment.a.y, det.segment.b.y))) + cfg.aline_crop_px;
        if (next_top >= current.height() - 1) break;
        auto [cropped, crop_off] = crop_rows(current, next_top, current.height());
        current = std::move(cropped);
        offset += crop_off;
    }

    // Reverberation spacing filter: keep lines whose gap to the previous kept
    // line matches the skin-to-pleura distance.
    std::sort(candidates.begin(), candidates.end(),
              [](const LineDetection& a, const LineDetection& b) {
                  return mean_row(a.segment) < mean_row(b.segment);
              });
    std::vector<LineDetection> kept;
    double prev_row = mean_row(pleural.segment);  // lung-frame callers pass a
                                                  // pleural translated into this frame
    for (const auto& det : candidates) {
        double gap = mean_row(det.segment) - prev_row;
        if (std::abs(gap - skin_to_pleural) <= cfg.aline_spacing_tolerance * skin_to_pleural) {
            kept.push_back(det);
            prev_row = mean_row(det.segment);
        }
    }
    return kept;
}

std::vector<LineDetection> detect_b_lines(const Image& lung, const PipelineConfig& cfg) {
    cfg.validate();
    const double scale = threshold_scale(lung, cfg);
    auto angles = angle_range(-cfg.bline_theta_halfwidth, cfg.bline_theta_halfwidth,
                              cfg.angle_stride_deg);
    Sinogram sino = radon_transform(lung, angles);
    auto peaks = find_local_maxima(sino, cfg.peak_neighborhood,
                                   cfg.bline_min_normalized * scale);

    std::vector<LineDetection> found;
    for (const auto& peak : peaks) {
        Segment seg;
        try {
            seg = peak_to_segment(peak, lung.width(), lung.height());
        } catch (const std::runtime_error&) {
            continue;
        }
        // must reach from the top of the lung area to (nearly) the bottom
        double coverage = line_support(lung, seg, cfg.support_brightness * scale);
        if (coverage < cfg.bline_min_coverage) continue;
        if (seg.length() < cfg.bline_min_coverage * lung.height()) continue;
        bool duplicate = false;
        for (const auto& prior : found)
            if (std::abs(prior.rho_px - peak.rho_px) < cfg.bline_merge_px) duplicate = true;
        if (duplicate) continue;
        LineDetection det;
        det.pattern = PatternClass::BLine;
        det.theta_deg = peak.theta_deg;
        det.rho_px = peak.rho_px;
        det.segment = seg;
        det.score = peak.normalized_value;
        det.support = coverage;
        found.push_back(det);
        if (static_cast<int>(found.size()) >= cfg.max_blines) break;
    }
    return found;
}

DetectionResult run_pipeline_rect(const Image& rect, const DenoiseSpec& denoise_spec,
                                  const PipelineConfig& cfg, const std::string& input_id) {
    cfg.validate();
    DetectionResult result;
    result.rect_width = rect.width();
    result.rect_height = rect.height();
    result.input_id = input_id;

    Image den = denoise(rect, denoise_spec);
    Image sup = suppress_top(den, cfg);
    result.pleural = detect_pleural(sup, cfg);
    if (!result.pleural) return result;  // A/B definitions need the pleural line

    const LineDetection& pleural = *result.pleural;
    auto [lung, offset] = split_lung_area(den, pleural, cfg.split_margin_px);
    double skin_to_pleural = mean_row(pleural.segment);

    LineDetection pleural_in_lung = pleural;
    pleural_in_lung.segment.a.y -= offset;
    pleural_in_lung.segment.b.y -= offset;
    for (auto det : detect_a_lines(lung, pleural_in_lung, skin_to_pleural, cfg))
        result.alines.push_back(translate_rows(det, offset, rect.width(), rect.height()));

    for (auto det : detect_b_lines(lung, cfg)) {
        LineDetection in_rect = translate_rows(det, offset, rect.width(), rect.height());
        // extend upward so the segment touches the pleural line at its column
        double th = pleural.theta_deg * 3.14159265358979323846 / 180.0;
        double cx = rect.width() / 2.0, cy = rect.height() / 2.0;
        double col = (in_rect.segment.a.x + in_rect.segment.b.x) * 0.5;
        double sin_th = std::sin(th);
        double pleural_row_at_col =
            std::abs(sin_th) > 1e-9
                ? cy + (pleural.rho_px - (col - cx) * std::cos(th)) / sin_th
                : skin_to_pleural;
        if (in_rect.segment.a.y > in_rect.segment.b.y) std::swap(in_rect.segment.a, in_rect.segment.b);
        if (in_rect.segment.a.y > pleural_row_at_col) in_rect.segment.a.y = pleural_row_at_col;
        result.blines.push_back(in_rect);
    }
    return result;
}

DetectionResult run_pipeline(const Image& img, const TrapezoidROI& roi,
                             const DenoiseSpec& denoise_spec, const PipelineConfig& cfg,
                             const std::string& input_id) {
    cfg.validate();
    WarpMap map = fit_warp(roi, cfg.rect_width, cfg.rect_height);
    Image rect = warp_to_rect(img, map);
    return run_pipeline_rect(rect, denoise_spec, cfg, input_id);
}

}  // namespace lus
