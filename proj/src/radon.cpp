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

#include "radon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace lus {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Clips p(s) = origin + s*dir against [0, w-1] x [0, h-1]; returns the s-interval.
std::optional<std::pair<double, double>> clip_line(Point origin, Point dir, int width,
                                                   int height) {
    double s0 = -1e30, s1 = 1e30;
    const double bounds[2][3] = {{dir.x, origin.x, static_cast<double>(width - 1)},
                                 {dir.y, origin.y, static_cast<double>(height - 1)}};
    for (const auto& [d, o, hi] : bounds) {
        if (std::abs(d) < 1e-12) {
            if (o < 0.0 || o > hi) return std::nullopt;
        } else {
            double a = (0.0 - o) / d;
            double b = (hi - o) / d;
            if (a > b) std::swap(a, b);
            s0 = std::max(s0, a);
            s1 = std::min(s1, b);
        }
    }
    if (s0 > s1) return std::nullopt;
    return std::make_pair(s0, s1);
}

}  // namespace

double Segment::length() const { return std::hypot(b.x - a.x, b.y - a.y); }

std::vector<double> angle_range(double begin_deg, double end_deg, double stride_deg) {
    if (stride_deg <= 0.0) throw std::invalid_argument("angle stride must be > 0");
    std::vector<double> angles;
    int n = static_cast<int>(std::round((end_deg - begin_deg) / stride_deg));
    for (int i = 0; i <= n; ++i) angles.push_back(begin_deg + i * stride_deg);
    return angles;
}

Sinogram radon_transform(const Image& img, const std::vector<double>& angles_deg) {
    if (angles_deg.empty()) throw std::invalid_argument("empty angle list");
    if (img.size() == 0) throw std::invalid_argument("empty image");

    const int w = img.width(), h = img.height();
    const double cx = w / 2.0, cy = h / 2.0;
    const int max_offset = static_cast<int>(std::ceil(std::hypot(w, h) / 2.0));

    Sinogram sino;
    sino.angles_deg = angles_deg;
    sino.image_width = w;
    sino.image_height = h;
    for (int r = -max_offset; r <= max_offset; ++r)
        sino.offsets_px.push_back(static_cast<double>(r));
    sino.values.assign(angles_deg.size() * sino.offsets_px.size(), 0.0);

    for (size_t ai = 0; ai < angles_deg.size(); ++ai) {
        const double th = angles_deg[ai] * kDegToRad;
        const double nx = std::cos(th), ny = std::sin(th);
        const double tx = -ny, ty = nx;
        for (size_t oi = 0; oi < sino.offsets_px.size(); ++oi) {
            const double rho = sino.offsets_px[oi];
            const Point origin{cx + rho * nx, cy + rho * ny};
            auto span = clip_line(origin, {tx, ty}, w, h);
            if (!span) continue;
            // unit steps on the absolute s-grid so results do not depend on
            // where the chord happens to start
            int s_begin = static_cast<int>(std::ceil(span->first - 1.0));
            int s_end = static_cast<int>(std::floor(span->second + 1.0));
            double acc = 0.0;
            for (int s = s_begin; s <= s_end; ++s) {
                acc += img.sample_bilinear(origin.x + s * tx, origin.y + s * ty);
            }
            sino.value(static_cast<int>(ai), static_cast<int>(oi)) = acc;
        }
    }
    return sino;
}

double chord_length(double theta_deg, double rho_px, int width, int height) {
    const double th = theta_deg * kDegToRad;
    const double nx = std::cos(th), ny = std::sin(th);
    const Point origin{width / 2.0 + rho_px * nx, height / 2.0 + rho_px * ny};
    auto span = clip_line(origin, {-ny, nx}, width, height);
    if (!span) return 0.0;
    return span->second - span->first;
}

std::vector<RadonPeak> find_local_maxima(const Sinogram& sino, int neighborhood,
                                         double min_normalized) {
    if (neighborhood < 1) throw std::invalid_argument("neighborhood must be >= 1");
    const int na = static_cast<int>(sino.angles_deg.size());
    const int no = static_cast<int>(sino.offsets_px.size());
    std::vector<RadonPeak> peaks;
    for (int ai = 0; ai < na; ++ai) {
        for (int oi = 0; oi < no; ++oi) {
            const double v = sino.value(ai, oi);
            if (v <= 0.0) continue;
            bool is_max = true;
            for (int da = -neighborhood; is_max && da <= neighborhood; ++da) {
                for (int dk = -neighborhood; is_max && dk <= neighborhood; ++dk) {
                    if (da == 0 && dk == 0) continue;
                    int a2 = ai + da, o2 = oi + dk;
                    if (a2 < 0 || a2 >= na || o2 < 0 || o2 >= no) continue;
                    if (sino.value(a2, o2) >= v) is_max = false;
                }
            }
            if (!is_max) continue;
            double chord = chord_length(sino.angles_deg[ai], sino.offsets_px[oi],
                                        sino.image_width, sino.image_height);
            if (chord < 1.0) continue;
            double norm = v / chord;
            if (norm < min_normalized) continue;
            peaks.push_back({sino.angles_deg[ai], sino.offsets_px[oi], v, norm});
        }
    }
    std::sort(peaks.begin(), peaks.end(), [](const RadonPeak& a, const RadonPeak& b) {
        return a.normalized_value > b.normalized_value;
    });
    return peaks;
}

Segment line_to_segment(double theta_deg, double rho_px, int width, int height) {
    const double th = theta_deg * kDegToRad;
    const double nx = std::cos(th), ny = std::sin(th);
    const Point origin{width / 2.0 + rho_px * nx, height / 2.0 + rho_px * ny};
    const Point dir{-ny, nx};
    auto span = clip_line(origin, dir, width, height);
    if (!span) throw std::runtime_error("peak maps outside image");
    return {{origin.x + span->first * dir.x, origin.y + span->first * dir.y},
            {origin.x + span->second * dir.x, origin.y + span->second * dir.y}};
}

Segment peak_to_segment(const RadonPeak& peak, int width, int height) {
    return line_to_segment(peak.theta_deg, peak.rho_px, width, height);
}

double line_support(const Image& img, const Segment& seg, double brightness_threshold) {
    double len = seg.length();
    if (len <= 0.0) throw std::invalid_argument("zero-length segment");
    int n = static_cast<int>(std::ceil(len)) + 1;
    int bright = 0;
    for (int i = 0; i < n; ++i) {
        double t = static_cast<double>(i) / (n - 1);
        double v = img.sample_bilinear(seg.a.x + t * (seg.b.x - seg.a.x),
                                       seg.a.y + t * (seg.b.y - seg.a.y));
        if (v >= brightness_threshold) ++bright;
    }
    return static_cast<double>(bright) / n;
}

}  // namespace lus
