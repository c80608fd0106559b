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

#include "image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lus {

double Image::at_clamped(int x, int y) const {
    x = std::clamp(x, 0, width_ - 1);
    y = std::clamp(y, 0, height_ - 1);
    return (*this)(x, y);
}

double Image::sample_bilinear(double x, double y) const {
    if (x < 0.0 || y < 0.0 || x > width_ - 1.0 || y > height_ - 1.0) return 0.0;
    int x0 = static_cast<int>(std::floor(x));
    int y0 = static_cast<int>(std::floor(y));
    int x1 = std::min(x0 + 1, width_ - 1);
    int y1 = std::min(y0 + 1, height_ - 1);
    double fx = x - x0;
    double fy = y - y0;
    double top = (*this)(x0, y0) * (1.0 - fx) + (*this)(x1, y0) * fx;
    double bot = (*this)(x0, y1) * (1.0 - fx) + (*this)(x1, y1) * fx;
    return top * (1.0 - fy) + bot * fy;
}

void Image::clamp_to_unit() {
    for (double& v : data_) v = std::clamp(v, 0.0, 1.0);
}

size_t Mask::count() const {
    return static_cast<size_t>(std::count(data_.begin(), data_.end(), 1));
}

namespace {

std::vector<double> gaussian_kernel(double sigma) {
    int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> k(2 * radius + 1);
    for (int i = -radius; i <= radius; ++i)
        k[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    double s = std::accumulate(k.begin(), k.end(), 0.0);
    for (double& v : k) v /= s;
    return k;
}

}  // namespace

Image gaussian_blur(const Image& img, double sigma, RowRange region) {
    if (sigma <= 0.0) throw std::invalid_argument("sigma must be > 0");
    if (region.begin < 0 || region.end > img.height())
        throw std::invalid_argument("blur region out of range");
    if (region.begin >= region.end) throw std::invalid_argument("empty blur region");

    const std::vector<double> k = gaussian_kernel(sigma);
    const int radius = static_cast<int>(k.size()) / 2;

    // Separable passes over a working copy; only rows in the region are
    // replaced in the output. The vertical pass reads clamped source rows so
    // the band blends with its surroundings rather than an artificial edge.
    Image horiz(img.width(), img.height());
    int read_begin = std::max(0, region.begin - radius);
    int read_end = std::min(img.height(), region.end + radius);
    for (int y = read_begin; y < read_end; ++y) {
        for (int x = 0; x < img.width(); ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) acc += k[i + radius] * img.at_clamped(x + i, y);
            horiz(x, y) = acc;
        }
    }

    Image out = img;
    for (int y = region.begin; y < region.end; ++y) {
        for (int x = 0; x < img.width(); ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) {
                int yy = std::clamp(y + i, read_begin, read_end - 1);
                acc += k[i + radius] * horiz(x, yy);
            }
            out(x, y) = std::clamp(acc, 0.0, 1.0);
        }
    }
    return out;
}

std::pair<Image, int> crop_rows(const Image& img, int top_row, int bottom_row) {
    if (top_row < 0 || bottom_row > img.height() || top_row >= bottom_row)
        throw std::invalid_argument("invalid crop bounds");
    Image out(img.width(), bottom_row - top_row);
    for (int y = top_row; y < bottom_row; ++y)
        for (int x = 0; x < img.width(); ++x) out(x, y - top_row) = img(x, y);
    return {std::move(out), top_row};
}

Mask dilate(const Mask& mask, int radius) {
    if (radius < 0) throw std::invalid_argument("radius must be >= 0");
    if (radius == 0) return mask;
    Mask out(mask.width(), mask.height());
    // Separable Chebyshev dilation: horizontal max then vertical max.
    Mask horiz(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            bool v = false;
            for (int i = std::max(0, x - radius); !v && i <= std::min(mask.width() - 1, x + radius); ++i)
                v = mask(i, y);
            horiz.set(x, y, v);
        }
    }
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            bool v = false;
            for (int j = std::max(0, y - radius); !v && j <= std::min(mask.height() - 1, y + radius); ++j)
                v = horiz(x, j);
            out.set(x, y, v);
        }
    }
    return out;
}

}  // namespace lus
