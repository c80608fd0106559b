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

#ifndef LUSLINE_IO_HPP
#define LUSLINE_IO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "detect.hpp"
#include "geometry.hpp"
#include "image.hpp"

namespace lus {

// 8-bit grayscale codecs; intensities map linearly 0..255 <-> 0.0..1.0.
// Dispatch is by file extension (.pgm or .png). Unsupported bit depths and
// color layouts raise errors naming the constraint.
Image load_image(const std::string& path);
void save_image(const Image& img, const std::string& path);

Mask load_mask(const std::string& path);   // nonzero pixels are true
void save_mask(const Mask& mask, const std::string& path);

// Interleaved 8-bit RGB raster used only for overlay output (PNG only).
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<unsigned char> pixels;  // 3 bytes per pixel, row-major
};
void save_rgb_png(const RgbImage& img, const std::string& path);

// FNV-1a over a canonical rendering of both config structs; hex string.
std::string config_hash(const DenoiseSpec& dn, const PipelineConfig& cfg);

// {image, frame:{width,height}, pleural:{...}|null, alines, blines, config_hash}
std::string detection_to_json(const DetectionResult& result, const std::string& hash);
DetectionResult detection_from_json(const std::string& json_text);

// One record per line: `image_stem = x0,y0 x1,y1 x2,y2 x3,y3`.
// Blank lines and lines starting with '#' are skipped.
std::map<std::string, TrapezoidROI> parse_roi_config(const std::string& text);
std::map<std::string, TrapezoidROI> load_roi_config(const std::string& path);

// Detections drawn on the source frame: pleural green, A-lines blue, B-lines
// red. With a warp the segments are mapped back through it as polylines.
RgbImage render_overlay(const Image& source, const DetectionResult& result,
                        const WarpMap* map);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace lus

#endif
