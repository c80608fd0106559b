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

#include "phantom.hpp"

#include <algorithm>
#include <cmath>

#include "rng.hpp"

namespace lus {

void PhantomSpec::validate() const {
    if (width < 16 || height < 16) throw std::invalid_argument("phantom too small");
    if (n_alines < 0 || n_alines > 3)
        throw std::invalid_argument("n_alines must be in [0,3]");
    if (n_blines < 0 || n_blines > 5)
        throw std::invalid_argument("n_blines must be in [0,5]");
    if (static_cast<int>(bline_columns.size()) != n_blines)
        throw std::invalid_argument("bline_columns length must equal n_blines");
    if (pleural_tilt_deg < -15.0 || pleural_tilt_deg > 15.0)
        throw std::invalid_argument("pleural_tilt must be in [-15,15] degrees");
    if (pleural_depth <= 0.0 || pleural_depth >= 1.0)
        throw std::invalid_argument("pleural_depth must be a fraction of height");
    if (line_thickness < 1.0) throw std::invalid_argument("line_thickness must be >= 1");
    if (noise.gaussian_sigma < 0 || noise.salt_pepper_density < 0 ||
        noise.poisson_scale < 0 || noise.speckle_sigma < 0)
        throw std::invalid_argument("noise parameters must be >= 0");
}

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

// Smooth low-frequency texture from a coarse random grid, bilinearly upsampled.
Image background_texture(const PhantomSpec& spec, Rng& rng) {
    const int gw = 17, gh = 17;
    std::vector<double> grid(static_cast<size_t>(gw) * gh);
    for (double& v : grid) v = rng.uniform();
    Image bg(spec.width, spec.height);
    for (int y = 0; y < spec.height; ++y) {
        double gy = static_cast<double>(y) / (spec.height - 1) * (gh - 1);
        int y0 = std::min(static_cast<int>(gy), gh - 2);
        double fy = gy - y0;
        for (int x = 0; x < spec.width; ++x) {
            double gx = static_cast<double>(x) / (spec.width - 1) * (gw - 1);
            int x0 = std::min(static_cast<int>(gx), gw - 2);
            double fx = gx - x0;
            double v00 = grid[y0 * gw + x0], v10 = grid[y0 * gw + x0 + 1];
            double v01 = grid[(y0 + 1) * gw + x0], v11 = grid[(y0 + 1) * gw + x0 + 1];
            double t = (v00 * (1 - fx) + v10 * fx) * (1 - fy) +
                       (v01 * (1 - fx) + v11 * fx) * fy;
            bg(x, y) = spec.background_level * (0.7 + 0.6 * t);
        }
    }
    return bg;
}

struct HorizontalBand {
    double center_row;      // at the image's central column
    double tan_tilt;
    double intensity;
};

double band_distance(const HorizontalBand& b, double x, double y, double cx) {
    double row = b.center_row + b.tan_tilt * (x - cx);
    return (y - row) / std::sqrt(1.0 + b.tan_tilt * b.tan_tilt);
}

}  // namespace

Image apply_noise(const Image& img, const NoiseSpec& noise, uint64_t seed) {
    Rng rng(seed);
    Image out = img;
    if (noise.speckle_sigma > 0.0)
        for (double& v : out.data()) v *= 1.0 + noise.speckle_sigma * rng.normal();
    if (noise.poisson_scale > 0.0)
        for (double& v : out.data())
            v = static_cast<double>(rng.poisson(std::max(0.0, v) * noise.poisson_scale)) /
                noise.poisson_scale;
    if (noise.gaussian_sigma > 0.0)
        for (double& v : out.data()) v += noise.gaussian_sigma * rng.normal();
    if (noise.salt_pepper_density > 0.0) {
        for (double& v : out.data()) {
            double u = rng.uniform();
            if (u < noise.salt_pepper_density)
                v = (u < noise.salt_pepper_density * 0.5) ? 0.0 : 1.0;
        }
    }
    out.clamp_to_unit();
    return out;
}

Phantom generate_phantom(const PhantomSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);

    const int w = spec.width, h = spec.height;
    const double cx = w / 2.0, cy = h / 2.0;
    const double tilt = spec.pleural_tilt_deg * kDegToRad;
    const double tan_tilt = std::tan(tilt);
    const double half_thick = spec.line_thickness / 2.0;
    const double profile_sigma = spec.line_thickness / 2.3548;  // FWHM = thickness

    Phantom ph;
    ph.clean = background_texture(spec, rng);
    ph.pleural_mask = Mask(w, h);
    ph.aline_mask = Mask(w, h);
    ph.bline_mask = Mask(w, h);

    const double pleural_row = spec.pleural_depth * h;
    std::vector<HorizontalBand> pleurals{{pleural_row, tan_tilt, spec.pleural_intensity}};

    std::vector<HorizontalBand> alines;
    for (int k = 1; k <= spec.n_alines; ++k) {
        double row = (k + 1) * spec.pleural_depth * h;
        if (row + half_thick >= h) continue;  // echo falls below the frame
        alines.push_back({row, tan_tilt,
                          spec.pleural_intensity * std::pow(spec.aline_decay, k)});
    }

    auto pleural_row_at = [&](double x) { return pleural_row + tan_tilt * (x - cx); };

    // paint structures (max-composited over the background)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double v = ph.clean(x, y);
            for (const auto& band : pleurals) {
                double d = band_distance(band, x, y, cx);
                v = std::max(v, band.intensity * std::exp(-0.5 * d * d /
                                                          (profile_sigma * profile_sigma)));
                if (std::abs(d) <= half_thick) ph.pleural_mask.set(x, y, true);
            }
            for (const auto& band : alines) {
                double d = band_distance(band, x, y, cx);
                v = std::max(v, band.intensity * std::exp(-0.5 * d * d /
                                                          (profile_sigma * profile_sigma)));
                if (std::abs(d) <= half_thick) ph.aline_mask.set(x, y, true);
            }
            for (double cfrac : spec.bline_columns) {
                double col = cfrac * w;
                double d = x - col;
                if (y >= pleural_row_at(col)) {
                    v = std::max(v, spec.bline_intensity *
                                        std::exp(-0.5 * d * d /
                                                 (profile_sigma * profile_sigma)));
                    if (std::abs(d) <= half_thick) ph.bline_mask.set(x, y, true);
                }
            }
            ph.clean(x, y) = std::min(v, 1.0);
        }
    }

    // ground-truth line geometry in the detector's (theta, rho) convention
    auto truth_line = [&](PatternClass cls, double theta_deg, double rho, Segment seg,
                          double intensity) {
        LineDetection det;
        det.pattern = cls;
        det.theta_deg = theta_deg;
        det.rho_px = rho;
        det.segment = seg;
        det.score = intensity;
        det.support = 1.0;
        return det;
    };
    const double theta_h = 90.0 + spec.pleural_tilt_deg;
    for (const auto& band : pleurals) {
        double rho = (band.center_row - cy) * std::cos(tilt);
        ph.truth.push_back(truth_line(PatternClass::Pleural, theta_h, rho,
                                      line_to_segment(theta_h, rho, w, h), band.intensity));
    }
    for (const auto& band : alines) {
        double rho = (band.center_row - cy) * std::cos(tilt);
        ph.truth.push_back(truth_line(PatternClass::ALine, theta_h, rho,
                                      line_to_segment(theta_h, rho, w, h), band.intensity));
    }
    for (double cfrac : spec.bline_columns) {
        double col = cfrac * w;
        Segment seg{{col, pleural_row_at(col)}, {col, static_cast<double>(h - 1)}};
        ph.truth.push_back(truth_line(PatternClass::BLine, 0.0, col - cx, seg,
                                      spec.bline_intensity));
    }

    ph.noisy = apply_noise(ph.clean, spec.noise, spec.seed ^ 0x9e3779b97f4a7c15ull);
    return ph;
}

PhantomSpec sample_spec(int width, int height, const NoiseSpec& noise, uint64_t seed) {
    Rng rng(seed ^ 0xda3e39cb94b95bdbull);
    PhantomSpec spec;
    spec.width = width;
    spec.height = height;
    spec.noise = noise;
    spec.seed = seed;
    spec.pleural_depth = rng.uniform(0.20, 0.34);
    spec.pleural_tilt_deg = rng.uniform(-10.0, 10.0);

    int a_max = std::min(3, static_cast<int>(std::floor(0.95 / spec.pleural_depth)) - 1);
    spec.n_alines = rng.uniform_int(0, std::max(0, a_max));
    spec.n_blines = rng.uniform_int(0, 5);

    // distinct columns with a minimum separation so nearby B-lines stay
    // individually resolvable
    const double min_sep = 0.06;
    int guard = 0;
    while (static_cast<int>(spec.bline_columns.size()) < spec.n_blines) {
        double c = rng.uniform(0.10, 0.90);
        bool ok = true;
        for (double prev : spec.bline_columns)
            if (std::abs(prev - c) < min_sep) ok = false;
        if (ok) spec.bline_columns.push_back(c);
        if (++guard > 1000) {  // cannot happen for <= 5 columns; stay safe
            spec.n_blines = static_cast<int>(spec.bline_columns.size());
            break;
        }
    }
    std::sort(spec.bline_columns.begin(), spec.bline_columns.end());
    return spec;
}

}  // namespace lus
