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

#ifndef LUSLINE_IMAGE_HPP
#define LUSLINE_IMAGE_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lus {

// Dense row-major grayscale raster with intensities in [0,1].
class Image {
public:
    Image() = default;
    Image(int width, int height, double fill = 0.0)
        : width_(width), height_(height),
          data_(static_cast<size_t>(check_dims(width, height)) , fill) {}
    Image(int width, int height, std::vector<double> data)
        : width_(width), height_(height), data_(std::move(data)) {
        if (data_.size() != static_cast<size_t>(check_dims(width, height)))
            throw std::invalid_argument("image data size does not match dimensions");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    size_t size() const { return data_.size(); }

    double operator()(int x, int y) const { return data_[idx(x, y)]; }
    double& operator()(int x, int y) { return data_[idx(x, y)]; }
    double at_clamped(int x, int y) const;
    double sample_bilinear(double x, double y) const;  // 0 outside bounds

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    void clamp_to_unit();

private:
    static long long check_dims(int w, int h) {
        if (w < 1 || h < 1) throw std::invalid_argument("image dimensions must be >= 1");
        return static_cast<long long>(w) * h;
    }
    size_t idx(int x, int y) const { return static_cast<size_t>(y) * width_ + x; }

    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

// Row-major boolean mask with the same dimensions as the image it annotates.
class Mask {
public:
    Mask() = default;
    Mask(int width, int height, bool fill = false)
        : width_(width), height_(height),
          data_(static_cast<size_t>(width) * height, fill ? 1 : 0) {
        if (width < 1 || height < 1)
            throw std::invalid_argument("mask dimensions must be >= 1");
    }

    int width() const { return width_; }
    int height() const { return height_; }

    bool operator()(int x, int y) const { return data_[idx(x, y)] != 0; }
    void set(int x, int y, bool v) { data_[idx(x, y)] = v ? 1 : 0; }

    size_t count() const;
    const std::vector<unsigned char>& data() const { return data_; }

private:
    size_t idx(int x, int y) const { return static_cast<size_t>(y) * width_ + x; }

    int width_ = 0;
    int height_ = 0;
    std::vector<unsigned char> data_;
};

enum class PatternClass { Pleural, ALine, BLine };

struct RowRange {
    int begin = 0;  // inclusive
    int end = 0;    // exclusive
};

// Gaussian blur restricted to a band of rows; rows outside are copied through.
// Kernel radius = ceil(3*sigma), clamp-to-edge borders, output clamped to [0,1].
Image gaussian_blur(const Image& img, double sigma, RowRange region);

// Returns the cropped rows [top_row, bottom_row) and the row offset needed to
// map detections back into the parent frame.
std::pair<Image, int> crop_rows(const Image& img, int top_row, int bottom_row);

// Chebyshev dilation by `radius` pixels.
Mask dilate(const Mask& mask, int radius);

}  // namespace lus

#endif
