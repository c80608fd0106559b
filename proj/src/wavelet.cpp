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

#include "wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lus {

namespace {

struct FilterTableEntry {
    const char* name;
    int length;
    const double* analysis_low;
    const double* analysis_high;
    const double* synthesis_low;
    const double* synthesis_high;
};

#include "wavelet_tables.inc"

const FilterTableEntry* find_entry(const std::string& family) {
    for (const auto& e : kFilterTable)
        if (family == e.name) return &e;
    return nullptr;
}

// 1-D periodized analysis of one row/column laid out in `x` (length n).
// Writes ceil(n/2) lowpass then ceil(n/2) highpass coefficients into `out`.
void analyze_1d(const double* x, int n, const QuadFilterBank& bank, double* out,
                std::vector<double>& scratch) {
    int ne = n;
    const double* src = x;
    if (n % 2 != 0) {
        // extend by one wrapped sample so the period is even
        scratch.assign(x, x + n);
        scratch.push_back(x[0]);
        src = scratch.data();
        ne = n + 1;
    }
    const int half = ne / 2;
    const int fl = static_cast<int>(bank.analysis_low.size());
    for (int k = 0; k < half; ++k) {
        double lo = 0.0, hi = 0.0;
        int base = 2 * k;
        for (int i = 0; i < fl; ++i) {
            int j = base + i;
            if (j >= ne) j -= ne * ((j) / ne);
            double v = src[j];
            lo += bank.analysis_low[i] * v;
            hi += bank.analysis_high[i] * v;
        }
        out[k] = lo;
        out[half + k] = hi;
    }
}

// Inverse of analyze_1d: consumes half lowpass + half highpass, writes n samples.
void synthesize_1d(const double* coeffs, int n, const QuadFilterBank& bank, double* out,
                   std::vector<double>& scratch) {
    int ne = (n % 2 == 0) ? n : n + 1;
    const int half = ne / 2;
    scratch.assign(ne, 0.0);
    const int fl = static_cast<int>(bank.synthesis_low.size());
    for (int k = 0; k < half; ++k) {
        double lo = coeffs[k];
        double hi = coeffs[half + k];
        int base = 2 * k;
        for (int i = 0; i < fl; ++i) {
            int j = base + i;
            if (j >= ne) j -= ne * (j / ne);
            scratch[j] += lo * bank.synthesis_low[i] + hi * bank.synthesis_high[i];
        }
    }
    std::copy(scratch.begin(), scratch.begin() + n, out);
}

int ceil_half(int n) { return (n + 1) / 2; }

// Single-level 2-D step: rows first, then columns of each half.
void dwt2_level(const Band& in, const QuadFilterBank& bank, Band& approx, DetailBands& det) {
    const int w = in.width, h = in.height;
    const int hw = ceil_half(w), hh = ceil_half(h);

    Band rowpass{2 * hw, h, std::vector<double>(static_cast<size_t>(2 * hw) * h)};
    std::vector<double> out_line(2 * std::max(hw, hh)), scratch;
    for (int y = 0; y < h; ++y) {
        analyze_1d(&in.data[static_cast<size_t>(y) * w], w, bank, out_line.data(), scratch);
        for (int x = 0; x < 2 * hw; ++x) rowpass.at(x, y) = out_line[x];
    }

    approx = Band{hw, hh, std::vector<double>(static_cast<size_t>(hw) * hh)};
    det.horizontal = approx;
    det.vertical = approx;
    det.diagonal = approx;
    det.parent_width = w;
    det.parent_height = h;

    std::vector<double> col(h), col_out(2 * hh);
    for (int x = 0; x < 2 * hw; ++x) {
        for (int y = 0; y < h; ++y) col[y] = rowpass.at(x, y);
        analyze_1d(col.data(), h, bank, col_out.data(), scratch);
        bool high_x = x >= hw;
        int xx = high_x ? x - hw : x;
        for (int y = 0; y < hh; ++y) {
            if (high_x) {
                det.vertical.at(xx, y) = col_out[y];
                det.diagonal.at(xx, y) = col_out[hh + y];
            } else {
                approx.at(xx, y) = col_out[y];
                det.horizontal.at(xx, y) = col_out[hh + y];
            }
        }
    }
}

void idwt2_level(const Band& approx, const DetailBands& det, const QuadFilterBank& bank,
                 Band& out) {
    const int w = det.parent_width, h = det.parent_height;
    const int hw = ceil_half(w), hh = ceil_half(h);

    Band rowpass{2 * hw, h, std::vector<double>(static_cast<size_t>(2 * hw) * h)};
    std::vector<double> col_coeffs(2 * hh), col(h), scratch;
    for (int x = 0; x < 2 * hw; ++x) {
        bool high_x = x >= hw;
        int xx = high_x ? x - hw : x;
        for (int y = 0; y < hh; ++y) {
            col_coeffs[y] = high_x ? det.vertical.at(xx, y) : approx.at(xx, y);
            col_coeffs[hh + y] = high_x ? det.diagonal.at(xx, y) : det.horizontal.at(xx, y);
        }
        synthesize_1d(col_coeffs.data(), h, bank, col.data(), scratch);
        for (int y = 0; y < h; ++y) rowpass.at(x, y) = col[y];
    }

    out = Band{w, h, std::vector<double>(static_cast<size_t>(w) * h)};
    std::vector<double> row(w);
    for (int y = 0; y < h; ++y) {
        synthesize_1d(&rowpass.data[static_cast<size_t>(y) * 2 * hw], w, bank, row.data(),
                      scratch);
        for (int x = 0; x < w; ++x) out.at(x, y) = row[x];
    }
}

}  // namespace

bool QuadFilterBank::orthogonal() const {
    return name.rfind("bior", 0) != 0;
}

const std::vector<std::string>& wavelet_catalog() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& e : kFilterTable) v.emplace_back(e.name);
        return v;
    }();
    return names;
}

QuadFilterBank filter_bank(const std::string& family) {
    const FilterTableEntry* e = find_entry(family);
    if (!e) {
        std::ostringstream msg;
        msg << "unknown wavelet family '" << family << "'; expected one of:";
        for (const auto& name : wavelet_catalog()) msg << ' ' << name;
        throw std::invalid_argument(msg.str());
    }
    QuadFilterBank bank;
    bank.name = e->name;
    bank.analysis_low.assign(e->analysis_low, e->analysis_low + e->length);
    bank.analysis_high.assign(e->analysis_high, e->analysis_high + e->length);
    bank.synthesis_low.assign(e->synthesis_low, e->synthesis_low + e->length);
    bank.synthesis_high.assign(e->synthesis_high, e->synthesis_high + e->length);
    return bank;
}

CoefficientPyramid dwt2(const Image& img, const QuadFilterBank& bank, int levels) {
    if (levels < 1) throw std::invalid_argument("levels must be >= 1");

    CoefficientPyramid pyr;
    pyr.original_width = img.width();
    pyr.original_height = img.height();

    // Filters longer than a band wrap around the period; the circular
    // transform stays perfectly invertible, so only degenerate bands are
    // rejected.
    Band current{img.width(), img.height(), img.data()};
    for (int lvl = 1; lvl <= levels; ++lvl) {
        if (current.width < 2 || current.height < 2) {
            std::ostringstream msg;
            msg << "image too small for level " << lvl << ": band is " << current.width
                << "x" << current.height;
            throw std::invalid_argument(msg.str());
        }
        Band approx;
        DetailBands det;
        dwt2_level(current, bank, approx, det);
        pyr.details.push_back(std::move(det));
        current = std::move(approx);
    }
    pyr.approx = std::move(current);
    return pyr;
}

Image idwt2(const CoefficientPyramid& pyr, const QuadFilterBank& bank, bool clamp) {
    if (pyr.details.empty()) throw std::invalid_argument("empty pyramid");
    Band current = pyr.approx;
    for (int lvl = pyr.levels() - 1; lvl >= 0; --lvl) {
        const DetailBands& det = pyr.details[lvl];
        int hw = ceil_half(det.parent_width), hh = ceil_half(det.parent_height);
        if (current.width != hw || current.height != hh ||
            det.horizontal.width != hw || det.horizontal.height != hh)
            throw std::invalid_argument("pyramid band dimensions are inconsistent");
        Band next;
        idwt2_level(current, det, bank, next);
        current = std::move(next);
    }
    if (current.width != pyr.original_width || current.height != pyr.original_height)
        throw std::invalid_argument("pyramid metadata does not match reconstruction");
    Image out(current.width, current.height, std::move(current.data));
    if (clamp) out.clamp_to_unit();
    return out;
}

CoefficientPyramid threshold_details(const CoefficientPyramid& pyr, double threshold,
                                     ThresholdMode mode) {
    if (threshold < 0.0) throw std::invalid_argument("threshold must be >= 0");
    CoefficientPyramid out = pyr;
    auto apply = [&](Band& band) {
        for (double& c : band.data) {
            if (std::abs(c) <= threshold) {
                c = 0.0;
            } else if (mode == ThresholdMode::Soft) {
                c = c > 0.0 ? c - threshold : c + threshold;
            }
        }
    };
    for (auto& det : out.details) {
        apply(det.horizontal);
        apply(det.vertical);
        apply(det.diagonal);
    }
    return out;
}

void validate_spec(const DenoiseSpec& spec) {
    if (spec.level < 2 || spec.level > 5)
        throw std::invalid_argument("denoise level must be in [2,5]");
    if (spec.threshold < 0 || spec.threshold > 101)
        throw std::invalid_argument("denoise threshold must be in [0,101]");
    filter_bank(spec.family);  // throws on unknown family
}

Image denoise(const Image& img, const DenoiseSpec& spec) {
    validate_spec(spec);
    QuadFilterBank bank = filter_bank(spec.family);
    CoefficientPyramid pyr = dwt2(img, bank, spec.level);
    // Thresholds are expressed in 8-bit intensity counts; coefficients live on
    // the [0,1] intensity scale, so t = value/255.
    double t = spec.threshold / 255.0;
    CoefficientPyramid shrunk = threshold_details(pyr, t, spec.mode);
    return idwt2(shrunk, bank, true);
}

double snr_db(const Image& reference, const Image& test) {
    if (reference.width() != test.width() || reference.height() != test.height())
        throw std::invalid_argument("snr: dimension mismatch");
    double ref_energy = 0.0, err_energy = 0.0;
    for (size_t i = 0; i < reference.size(); ++i) {
        double r = reference.data()[i];
        double d = r - test.data()[i];
        ref_energy += r * r;
        err_energy += d * d;
    }
    if (ref_energy == 0.0) throw std::invalid_argument("snr: reference is identically zero");
    if (err_energy == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(ref_energy / err_energy);
}

}  // namespace lus
