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

#ifndef LUSLINE_DETECT_HPP
#define LUSLINE_DETECT_HPP

#include <optional>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "image.hpp"
#include "radon.hpp"
#include "wavelet.hpp"

namespace lus {

struct PipelineConfig {
    int rect_width = 512;
    int rect_height = 512;

    double blur_sigma = 3.0;
    double blur_fraction = 0.10;  // fraction of top rows to suppress

    double angle_stride_deg = 0.5;
    int peak_neighborhood = 5;

    double pleural_theta_halfwidth = 20.0;  // search window 90 +- this
    double pleural_min_normalized = 0.35;
    double pleural_min_support = 0.6;
    double pleural_min_length_frac = 0.5;   // of image width

    double aline_theta_halfwidth = 5.0;     // window theta_PL +- this
    double aline_min_normalized = 0.25;
    double aline_min_support = 0.5;
    double aline_min_length_frac = 0.3;
    double aline_spacing_tolerance = 0.2;   // fraction of skin-to-pleural distance
    int aline_crop_px = 8;                  // discarded below each found line
    int max_alines = 3;

    double bline_theta_halfwidth = 5.0;     // window 0 +- this (vertical)
    double bline_min_normalized = 0.30;
    double bline_min_coverage = 0.8;        // of the pleural-to-bottom extent
    double bline_merge_px = 6.0;            // candidates closer than this are one line
    int bline_contact_margin_px = 10;
    int max_blines = 5;

    double support_brightness = 0.18;       // sample counts as bright at/above this
    int split_margin_px = 5;

    // Scale brightness-dependent thresholds by the image maximum, making the
    // argmax decisions invariant to a global contrast factor.
    bool auto_scale_thresholds = false;

    void validate() const;
};

struct DetectionResult {
    std::optional<LineDetection> pleural;
    std::vector<LineDetection> alines;
    std::vector<LineDetection> blines;
    int rect_width = 0;
    int rect_height = 0;
    std::string input_id;
};

// Blurs the top blur_fraction of rows; the rest of the image passes through.
Image suppress_top(const Image& img, const PipelineConfig& cfg);

// Strongest qualifying horizontal peak in the 90 +- window, or nothing.
std::optional<LineDetection> detect_pleural(const Image& img, const PipelineConfig& cfg);

// Crops everything above the pleural segment (+ margin); returns the offset
// that maps lung-frame rows back to the input frame.
std::pair<Image, int> split_lung_area(const Image& img, const LineDetection& pleural,
                                      int margin);

// Iterative peak extraction below the pleural line followed by the
// reverberation-spacing filter. Detections are in the lung frame.
std::vector<LineDetection> detect_a_lines(const Image& lung, const LineDetection& pleural,
                                          double skin_to_pleural, const PipelineConfig& cfg);

// Single vertical-window pass with full-extent coverage filtering.
// Detections are in the lung frame.
std::vector<LineDetection> detect_b_lines(const Image& lung, const PipelineConfig& cfg);

// warp -> denoise -> suppress -> pleural -> split -> A/B extraction, with all
// detections reported in the rectified frame.
DetectionResult run_pipeline(const Image& img, const TrapezoidROI& roi,
                             const DenoiseSpec& denoise_spec, const PipelineConfig& cfg,
                             const std::string& input_id = "");

// Same pipeline on an already-rectified image (no warp step).
DetectionResult run_pipeline_rect(const Image& rect, const DenoiseSpec& denoise_spec,
                                  const PipelineConfig& cfg,
                                  const std::string& input_id = "");

}  // namespace lus

#endif
