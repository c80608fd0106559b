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

#include "geometry.hpp"

#include <algorithm>
#include <cmath>

namespace lus {

namespace {

double cross(Point o, Point a, Point b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool segments_intersect(Point a, Point b, Point c, Point d) {
    double d1 = cross(c, d, a), d2 = cross(c, d, b);
    double d3 = cross(a, b, c), d4 = cross(a, b, d);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace

TrapezoidROI TrapezoidROI::rectangle(double x0, double y0, double x1, double y1) {
    return TrapezoidROI{{Point{x0, y0}, Point{x1, y0}, Point{x1, y1}, Point{x0, y1}}};
}

double TrapezoidROI::area() const {
    double a = 0.0;
    for (int i = 0; i < 4; ++i) {
        const Point& p = corners[i];
        const Point& q = corners[(i + 1) % 4];
        a += p.x * q.y - q.x * p.y;
    }
    return std::abs(a) * 0.5;
}

void TrapezoidROI::validate() const {
    if (area() < 1.0) throw std::invalid_argument("degenerate ROI: area below 1 px^2");
    // opposite edges of a simple quadrilateral never cross
    if (segments_intersect(corners[0], corners[1], corners[2], corners[3]) ||
        segments_intersect(corners[1], corners[2], corners[3], corners[0]))
        throw std::invalid_argument("ROI quadrilateral is self-intersecting");
    double top = std::max(corners[0].y, corners[1].y);
    double bottom = std::min(corners[2].y, corners[3].y);
    if (top >= bottom) throw std::invalid_argument("ROI top edge must be above bottom edge");
}

WarpMap::WarpMap(const TrapezoidROI& roi, int out_width, int out_height)
    : roi_(roi), out_width_(out_width), out_height_(out_height) {
    if (out_width < 2 || out_height < 2)
        throw std::invalid_argument("warp output dimensions must be >= 2");
    roi.validate();
}

Point WarpMap::forward(Point rect) const {
    double u = rect.x / (out_width_ - 1);
    double v = rect.y / (out_height_ - 1);
    const auto& c = roi_.corners;
    double x = (1 - u) * (1 - v) * c[0].x + u * (1 - v) * c[1].x + u * v * c[2].x +
               (1 - u) * v * c[3].x;
    double y = (1 - u) * (1 - v) * c[0].y + u * (1 - v) * c[1].y + u * v * c[2].y +
               (1 - u) * v * c[3].y;
    return {x, y};
}

Point WarpMap::inverse(Point src) const {
    const auto& c = roi_.corners;
    double u = 0.5, v = 0.5;
    for (int it = 0; it < 50; ++it) {
        double fx = (1 - u) * (1 - v) * c[0].x + u * (1 - v) * c[1].x + u * v * c[2].x +
                    (1 - u) * v * c[3].x - src.x;
        double fy = (1 - u) * (1 - v) * c[0].y + u * (1 - v) * c[1].y + u * v * c[2].y +
                    (1 - u) * v * c[3].y - src.y;
        double jxu = -(1 - v) * c[0].x + (1 - v) * c[1].x + v * c[2].x - v * c[3].x;
        double jxv = -(1 - u) * c[0].x - u * c[1].x + u * c[2].x + (1 - u) * c[3].x;
        double jyu = -(1 - v) * c[0].y + (1 - v) * c[1].y + v * c[2].y - v * c[3].y;
        double jyv = -(1 - u) * c[0].y - u * c[1].y + u * c[2].y + (1 - u) * c[3].y;
        double det = jxu * jyv - jxv * jyu;
        if (std::abs(det) < 1e-12) break;
        double du = (fx * jyv - fy * jxv) / det;
        double dv = (fy * jxu - fx * jyu) / det;
        u -= du;
        v -= dv;
        if (std::abs(du) < 1e-12 && std::abs(dv) < 1e-12) break;
    }
    return {u * (out_width_ - 1), v * (out_height_ - 1)};
}

WarpMap fit_warp(const TrapezoidROI& roi, int out_width, int out_height) {
    return WarpMap(roi, out_width, out_height);
}

Image warp_to_rect(const Image& img, const WarpMap& map) {
    Image out(map.out_width(), map.out_height());
    for (int y = 0; y < out.height(); ++y) {
        for (int x = 0; x < out.width(); ++x) {
            Point s = map.forward({static_cast<double>(x), static_cast<double>(y)});
            out(x, y) = img.sample_bilinear(s.x, s.y);
        }
    }
    return out;
}

std::vector<Point> map_segment_back(Point a, Point b, const WarpMap& map) {
    double len = std::hypot(b.x - a.x, b.y - a.y);
    int samples = std::max(1, static_cast<int>(std::ceil(len / 4.0)));
    std::vector<Point> poly;
    poly.reserve(samples + 1);
    for (int i = 0; i <= samples; ++i) {
        double t = static_cast<double>(i) / samples;
        poly.push_back(map.forward({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}));
    }
    return poly;
}

}  // namespace lus
