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

#ifndef LUSLINE_WAVELET_HPP
#define LUSLINE_WAVELET_HPP

#include <string>
#include <vector>

#include "image.hpp"

namespace lus {

// Analysis/synthesis filter pairs for one mother wavelet.
//
// Conventions (periodic extension throughout):
//   analysis   y[k]   = sum_n f[n] x[(2k+n) mod N]
//   synthesis  x^[m] += sum_k y[k] g[(m-2k) mod N]
// Odd-length signals are extended by one wrapped sample before analysis,
// giving ceil-halving band sizes.
struct QuadFilterBank {
    std::string name;
    std::vector<double> analysis_low;
    std::vector<double> analysis_high;
    std::vector<double> synthesis_low;
    std::vector<double> synthesis_high;

    bool orthogonal() const;  // haar/db/sym/coif
};

// The 61 supported mother wavelets, in catalog order.
const std::vector<std::string>& wavelet_catalog();

// Looks up a family by name; throws with the catalog listing on unknown names.
QuadFilterBank filter_bank(const std::string& family);

// One band of 2-D coefficients.
struct Band {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    double& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
};

struct DetailBands {
    Band horizontal;  // lowpass-x, highpass-y
    Band vertical;    // highpass-x, lowpass-y
    Band diagonal;    // highpass both
    int parent_width = 0;   // dimensions of the image this level decomposed
    int parent_height = 0;
};

// Multi-level 2-D decomposition: details per level (index 0 = finest) plus
// the coarsest approximation band.
struct CoefficientPyramid {
    Band approx;
    std::vector<DetailBands> details;
    int original_width = 0;
    int original_height = 0;

    int levels() const { return static_cast<int>(details.size()); }
};

enum class ThresholdMode { Soft, Hard };

struct DenoiseSpec {
    std::string family = "sym17";
    int level = 5;
    int threshold = 50;  // 8-bit intensity counts, 0..101
    ThresholdMode mode = ThresholdMode::Soft;
};

CoefficientPyramid dwt2(const Image& img, const QuadFilterBank& bank, int levels);
Image idwt2(const CoefficientPyramid& pyr, const QuadFilterBank& bank, bool clamp = true);

// Zeroes detail coefficients with |c| <= t; soft mode shrinks survivors by t.
// The approximation band is never touched.
CoefficientPyramid threshold_details(const CoefficientPyramid& pyr, double threshold,
                                     ThresholdMode mode);

Image denoise(const Image& img, const DenoiseSpec& spec);

// 10*log10(sum ref^2 / sum (ref-test)^2); +infinity when test == reference.
double snr_db(const Image& reference, const Image& test);

void validate_spec(const DenoiseSpec& spec);

}  // namespace lus

#endif
