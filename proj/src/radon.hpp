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

#ifndef LUSLINE_RADON_HPP
#define LUSLINE_RADON_HPP

#include <vector>

#include "geometry.hpp"
#include "image.hpp"

namespace lus {

// Radon-domain array. Convention: lines satisfy x*cos(theta) + y*sin(theta)
// = rho with the origin at the image center (w/2, h/2) and y pointing down.
// theta = 90 deg integrates along horizontal rows, theta = 0 along columns.
struct Sinogram {
    std::vector<double> angles_deg;   // ascending
    std::vector<double> offsets_px;   // unit stride, centered on 0
    std::vector<double> values;       // [angle][offset], line integrals
    int image_width = 0;
    int image_height = 0;

    double value(int ai, int oi) const {
        return values[static_cast<size_t>(ai) * offsets_px.size() + oi];
    }
    double& value(int ai, int oi) {
        return values[static_cast<size_t>(ai) * offsets_px.size() + oi];
    }
};

struct RadonPeak {
    double theta_deg = 0.0;
    double rho_px = 0.0;
    double value = 0.0;             // raw line integral
    double normalized_value = 0.0;  // value / chord length through the image
};

struct Segment {
    Point a;
    Point b;

    double length() const;
};

struct LineDetection {
    PatternClass pattern = PatternClass::Pleural;
    double theta_deg = 0.0;
    double rho_px = 0.0;
    Segment segment;      // clipped to image bounds
    double score = 0.0;   // chord-normalized Radon value
    double support = 0.0; // bright-sample fraction in [0,1]
};

// Builds an evenly strided angle list [begin, end] inclusive of both ends.
std::vector<double> angle_range(double begin_deg, double end_deg, double stride_deg);

// Line-integral transform: per (theta, rho), sum of bilinear samples taken at
// unit steps along the line.
Sinogram radon_transform(const Image& img, const std::vector<double>& angles_deg);

// Cells strictly greater than every neighbor in a (2n+1)^2 window, with
// normalized value >= min_normalized, sorted by normalized value descending.
std::vector<RadonPeak> find_local_maxima(const Sinogram& sino, int neighborhood,
                                         double min_normalized);

// Length of the intersection of a (theta, rho) line with the image rectangle.
double chord_length(double theta_deg, double rho_px, int width, int height);

// Clips the peak's line to the image rectangle; throws if the line misses it.
Segment peak_to_segment(const RadonPeak& peak, int width, int height);
Segment line_to_segment(double theta_deg, double rho_px, int width, int height);

// Fraction of unit-step samples along the segment at or above the threshold.
double line_support(const Image& img, const Segment& seg, double brightness_threshold);

}  // namespace lus

#endif
