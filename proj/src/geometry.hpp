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

#ifndef LUSLINE_GEOMETRY_HPP
#define LUSLINE_GEOMETRY_HPP

#include <array>
#include <vector>

#include "image.hpp"

namespace lus {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Scan-area quadrilateral in source pixels, ordered top-left, top-right,
// bottom-right, bottom-left.
struct TrapezoidROI {
    std::array<Point, 4> corners;

    static TrapezoidROI rectangle(double x0, double y0, double x1, double y1);
    double area() const;
    void validate() const;  // simple quadrilateral, positive area, top above bottom
};

// Bilinear quadrilateral parameterization between the unit square and the ROI.
// Reduces to an affine map when the ROI is a parallelogram.
class WarpMap {
public:
    WarpMap(const TrapezoidROI& roi, int out_width, int out_height);

    int out_width() const { return out_width_; }
    int out_height() const { return out_height_; }

    // Rectangle pixel coordinates -> source pixel coordinates. Exact at corners:
    // (0,0) -> TL, (out_w-1,0) -> TR, etc.
    Point forward(Point rect) const;
    // Source -> rectangle, by Newton iteration on the bilinear form.
    Point inverse(Point src) const;

private:
    TrapezoidROI roi_;
    int out_width_;
    int out_height_;
};

WarpMap fit_warp(const TrapezoidROI& roi, int out_width, int out_height);

// Inverse-maps every rectangle pixel and samples the source bilinearly;
// pixels mapping outside the source raster become 0.
Image warp_to_rect(const Image& img, const WarpMap& map);

// Maps a rectangle-frame segment into source coordinates, sampling every 4 px
// so the curvature of the warp is preserved, clipped to the source ROI box.
std::vector<Point> map_segment_back(Point a, Point b, const WarpMap& map);

}  // namespace lus

#endif
