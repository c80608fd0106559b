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

#include "io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lus {

namespace {

using ordered_json = nlohmann::ordered_json;

bool has_suffix(const std::string& s, const std::string& suffix) {
    if (s.size() < suffix.size()) return false;
    std::string tail = s.substr(s.size() - suffix.size());
    std::transform(tail.begin(), tail.end(), tail.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return tail == suffix;
}

unsigned char to_byte(double v) {
    double scaled = v * 255.0;
    if (scaled <= 0.0) return 0;
    if (scaled >= 255.0) return 255;
    return static_cast<unsigned char>(std::lround(scaled));
}

std::vector<unsigned char> quantize(const Image& img) {
    std::vector<unsigned char> bytes(img.size());
    for (size_t i = 0; i < img.size(); ++i) bytes[i] = to_byte(img.data()[i]);
    return bytes;
}

// --- PGM (binary P5) ---

int read_pnm_token(std::istream& in) {
    // skips whitespace and '#' comments between header fields
    for (;;) {
        int c = in.peek();
        if (c == EOF) throw std::runtime_error("pgm: truncated header");
        if (std::isspace(c)) {
            in.get();
        } else if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else {
            break;
        }
    }
    int value = 0;
    if (!(in >> value)) throw std::runtime_error("pgm: malformed header field");
    return value;
}

Image load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || magic[1] != '5')
        throw std::runtime_error(path + ": not a binary (P5) PGM file");
    int w = read_pnm_token(in);
    int h = read_pnm_token(in);
    int maxval = read_pnm_token(in);
    if (maxval != 255)
        throw std::runtime_error(path + ": unsupported PGM depth (maxval " +
                                 std::to_string(maxval) + "); only 8-bit supported");
    in.get();  // single whitespace byte after maxval
    if (w < 1 || h < 1) throw std::runtime_error(path + ": invalid PGM dimensions");
    std::vector<unsigned char> bytes(static_cast<size_t>(w) * h);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (static_cast<size_t>(in.gcount()) != bytes.size())
        throw std::runtime_error(path + ": truncated PGM pixel data");
    std::vector<double> data(bytes.size());
    for (size_t i = 0; i < bytes.size(); ++i) data[i] = bytes[i] / 255.0;
    return Image(w, h, std::move(data));
}

void save_pgm(const Image& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
    auto bytes = quantize(img);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

// --- PNG via libpng ---

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    FILE* fp = nullptr;
    ~PngReader() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp) std::fclose(fp);
    }
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    FILE* fp = nullptr;
    ~PngWriter() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        if (fp) std::fclose(fp);
    }
};

Image load_png(const std::string& path) {
    PngReader r;
    r.fp = std::fopen(path.c_str(), "rb");
    if (!r.fp) throw std::runtime_error("cannot open " + path);
    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    r.info = png_create_info_struct(r.png);
    if (!r.png || !r.info) throw std::runtime_error("png: allocation failure");
    if (setjmp(png_jmpbuf(r.png))) throw std::runtime_error(path + ": png decode error");
    png_init_io(r.png, r.fp);
    png_read_info(r.png, r.info);

    int depth = png_get_bit_depth(r.png, r.info);
    int color = png_get_color_type(r.png, r.info);
    if (depth == 16)
        throw std::runtime_error(path + ": unsupported PNG depth (16-bit); only 8-bit "
                                        "grayscale supported");
    if (color != PNG_COLOR_TYPE_GRAY && color != PNG_COLOR_TYPE_GRAY_ALPHA)
        throw std::runtime_error(path + ": unsupported PNG color type; only 8-bit "
                                        "grayscale supported");
    if (depth < 8) png_set_expand_gray_1_2_4_to_8(r.png);
    if (color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_strip_alpha(r.png);
    png_read_update_info(r.png, r.info);

    int w = static_cast<int>(png_get_image_width(r.png, r.info));
    int h = static_cast<int>(png_get_image_height(r.png, r.info));
    std::vector<unsigned char> bytes(static_cast<size_t>(w) * h);
    std::vector<png_bytep> rows(h);
    for (int y = 0; y < h; ++y) rows[y] = bytes.data() + static_cast<size_t>(y) * w;
    png_read_image(r.png, rows.data());
    png_read_end(r.png, nullptr);

    std::vector<double> data(bytes.size());
    for (size_t i = 0; i < bytes.size(); ++i) data[i] = bytes[i] / 255.0;
    return Image(w, h, std::move(data));
}

void save_png_gray(const Image& img, const std::string& path) {
    PngWriter w;
    w.fp = std::fopen(path.c_str(), "wb");
    if (!w.fp) throw std::runtime_error("cannot write " + path);
    w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    w.info = png_create_info_struct(w.png);
    if (!w.png || !w.info) throw std::runtime_error("png: allocation failure");
    if (setjmp(png_jmpbuf(w.png))) throw std::runtime_error(path + ": png encode error");
    png_init_io(w.png, w.fp);
    png_set_IHDR(w.png, w.info, img.width(), img.height(), 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(w.png, w.info);
    auto bytes = quantize(img);
    for (int y = 0; y < img.height(); ++y)
        png_write_row(w.png, bytes.data() + static_cast<size_t>(y) * img.width());
    png_write_end(w.png, nullptr);
}

ordered_json line_to_json(const LineDetection& det) {
    ordered_json j;
    j["theta_deg"] = det.theta_deg;
    j["rho_px"] = det.rho_px;
    j["segment"] = {{det.segment.a.x, det.segment.a.y}, {det.segment.b.x, det.segment.b.y}};
    j["score"] = det.score;
    return j;
}

LineDetection line_from_json(const ordered_json& j, PatternClass pattern) {
    LineDetection det;
    det.pattern = pattern;
    det.theta_deg = j.at("theta_deg").get<double>();
    det.rho_px = j.at("rho_px").get<double>();
    const auto& seg = j.at("segment");
    det.segment.a = {seg.at(0).at(0).get<double>(), seg.at(0).at(1).get<double>()};
    det.segment.b = {seg.at(1).at(0).get<double>(), seg.at(1).at(1).get<double>()};
    det.score = j.at("score").get<double>();
    return det;
}

void hash_mix(uint64_t& h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
}

void draw_polyline(RgbImage& img, const std::vector<Point>& pts, unsigned char r,
                   unsigned char g, unsigned char b) {
    auto put = [&](int x, int y) {
        if (x < 0 || y < 0 || x >= img.width || y >= img.height) return;
        size_t i = (static_cast<size_t>(y) * img.width + x) * 3;
        img.pixels[i] = r;
        img.pixels[i + 1] = g;
        img.pixels[i + 2] = b;
    };
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double dx = pts[i + 1].x - pts[i].x, dy = pts[i + 1].y - pts[i].y;
        int steps = std::max(1, static_cast<int>(std::ceil(std::hypot(dx, dy))));
        for (int s = 0; s <= steps; ++s) {
            double t = static_cast<double>(s) / steps;
            int x = static_cast<int>(std::lround(pts[i].x + t * dx));
            int y = static_cast<int>(std::lround(pts[i].y + t * dy));
            // 2 px stroke so the overlay stays visible after downscaling
            put(x, y);
            put(x + 1, y);
            put(x, y + 1);
            put(x + 1, y + 1);
        }
    }
}

}  // namespace

Image load_image(const std::string& path) {
    if (has_suffix(path, ".pgm")) return load_pgm(path);
    if (has_suffix(path, ".png")) return load_png(path);
    throw std::runtime_error(path + ": unsupported image format (expected .pgm or .png)");
}

void save_image(const Image& img, const std::string& path) {
    if (has_suffix(path, ".pgm")) {
        save_pgm(img, path);
    } else if (has_suffix(path, ".png")) {
        save_png_gray(img, path);
    } else {
        throw std::runtime_error(path +
                                 ": unsupported image format (expected .pgm or .png)");
    }
}

Mask load_mask(const std::string& path) {
    Image img = load_image(path);
    Mask mask(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            if (img(x, y) > 0.5) mask.set(x, y, true);
    return mask;
}

void save_mask(const Mask& mask, const std::string& path) {
    Image img(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (mask(x, y)) img(x, y) = 1.0;
    save_image(img, path);
}

void save_rgb_png(const RgbImage& img, const std::string& path) {
    if (!has_suffix(path, ".png"))
        throw std::runtime_error(path + ": overlays are written as .png");
    PngWriter w;
    w.fp = std::fopen(path.c_str(), "wb");
    if (!w.fp) throw std::runtime_error("cannot write " + path);
    w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    w.info = png_create_info_struct(w.png);
    if (!w.png || !w.info) throw std::runtime_error("png: allocation failure");
    if (setjmp(png_jmpbuf(w.png))) throw std::runtime_error(path + ": png encode error");
    png_init_io(w.png, w.fp);
    png_set_IHDR(w.png, w.info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(w.png, w.info);
    for (int y = 0; y < img.height; ++y)
        png_write_row(w.png, const_cast<png_bytep>(
                                 img.pixels.data() + static_cast<size_t>(y) * img.width * 3));
    png_write_end(w.png, nullptr);
}

std::string config_hash(const DenoiseSpec& dn, const PipelineConfig& cfg) {
    std::ostringstream canon;
    canon.precision(17);
    canon << dn.family << '|' << dn.level << '|' << dn.threshold << '|'
          << (dn.mode == ThresholdMode::Soft ? "soft" : "hard") << '|' << cfg.rect_width
          << '|' << cfg.rect_height << '|' << cfg.blur_sigma << '|' << cfg.blur_fraction
          << '|' << cfg.angle_stride_deg << '|' << cfg.peak_neighborhood << '|'
          << cfg.pleural_theta_halfwidth << '|' << cfg.pleural_min_normalized << '|'
          << cfg.pleural_min_support << '|' << cfg.pleural_min_length_frac << '|'
          << cfg.aline_theta_halfwidth << '|' << cfg.aline_min_normalized << '|'
          << cfg.aline_min_support << '|' << cfg.aline_min_length_frac << '|'
          << cfg.aline_spacing_tolerance << '|' << cfg.aline_crop_px << '|'
          << cfg.max_alines << '|' << cfg.bline_theta_halfwidth << '|'
          << cfg.bline_min_normalized << '|' << cfg.bline_min_coverage << '|'
          << cfg.bline_merge_px << '|' << cfg.bline_contact_margin_px << '|'
          << cfg.max_blines << '|' << cfg.support_brightness << '|' << cfg.split_margin_px
          << '|' << cfg.auto_scale_thresholds;
    uint64_t h = 0xcbf29ce484222325ull;
    hash_mix(h, canon.str());
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string detection_to_json(const DetectionResult& result, const std::string& hash) {
    ordered_json j;
    j["image"] = result.input_id;
    j["frame"] = {{"width", result.rect_width}, {"height", result.rect_height}};
    j["pleural"] = result.pleural ? line_to_json(*result.pleural) : ordered_json(nullptr);
    j["alines"] = ordered_json::array();
    for (const auto& det : result.alines) j["alines"].push_back(line_to_json(det));
    j["blines"] = ordered_json::array();
    for (const auto& det : result.blines) j["blines"].push_back(line_to_json(det));
    j["config_hash"] = hash;
    return j.dump(2) + "\n";
}

DetectionResult detection_from_json(const std::string& json_text) {
    ordered_json j = ordered_json::parse(json_text);
    DetectionResult result;
    result.input_id = j.at("image").get<std::string>();
    result.rect_width = j.at("frame").at("width").get<int>();
    result.rect_height = j.at("frame").at("height").get<int>();
    if (!j.at("pleural").is_null())
        result.pleural = line_from_json(j.at("pleural"), PatternClass::Pleural);
    for (const auto& item : j.at("alines"))
        result.alines.push_back(line_from_json(item, PatternClass::ALine));
    for (const auto& item : j.at("blines"))
        result.blines.push_back(line_from_json(item, PatternClass::BLine));
    return result;
}

std::map<std::string, TrapezoidROI> parse_roi_config(const std::string& text) {
    std::map<std::string, TrapezoidROI> rois;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("roi config line " + std::to_string(lineno) +
                                     ": missing '='");
        std::string stem = line.substr(0, eq);
        stem.erase(0, stem.find_first_not_of(" \t"));
        stem.erase(stem.find_last_not_of(" \t") + 1);
        if (stem.empty())
            throw std::runtime_error("roi config line " + std::to_string(lineno) +
                                     ": empty image stem");
        std::string rhs = line.substr(eq + 1);
        std::replace(rhs.begin(), rhs.end(), ',', ' ');
        std::istringstream vals(rhs);
        TrapezoidROI roi;
        double coords[8];
        for (int i = 0; i < 8; ++i)
            if (!(vals >> coords[i]))
                throw std::runtime_error("roi config line " + std::to_string(lineno) +
                                         ": expected 8 coordinates");
        for (int i = 0; i < 4; ++i) roi.corners[i] = {coords[2 * i], coords[2 * i + 1]};
        roi.validate();
        if (!rois.emplace(stem, roi).second)
            throw std::runtime_error("roi config line " + std::to_string(lineno) +
                                     ": duplicate image stem '" + stem + "'");
    }
    return rois;
}

std::map<std::string, TrapezoidROI> load_roi_config(const std::string& path) {
    return parse_roi_config(read_text_file(path));
}

RgbImage render_overlay(const Image& source, const DetectionResult& result,
                        const WarpMap* map) {
    RgbImage out;
    out.width = source.width();
    out.height = source.height();
    out.pixels.resize(static_cast<size_t>(out.width) * out.height * 3);
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x) {
            unsigned char v = to_byte(source(x, y));
            size_t i = (static_cast<size_t>(y) * out.width + x) * 3;
            out.pixels[i] = out.pixels[i + 1] = out.pixels[i + 2] = v;
        }

    auto polyline = [&](const Segment& seg) -> std::vector<Point> {
        if (map) return map_segment_back(seg.a, seg.b, *map);
        return {seg.a, seg.b};
    };
    if (result.pleural)
        draw_polyline(out, polyline(result.pleural->segment), 0, 255, 0);
    for (const auto& det : result.alines)
        draw_polyline(out, polyline(det.segment), 0, 0, 255);
    for (const auto& det : result.blines)
        draw_polyline(out, polyline(det.segment), 255, 0, 0);
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace lus
