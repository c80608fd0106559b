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

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lusline.h"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

struct CliError {
    std::string code;  // stable prefix, e.g. E_IO
    std::string message;
};

[[noreturn]] void die(const std::string& code, const std::string& message) {
    throw CliError{code, message};
}

void check(lus_status status, const std::string& context) {
    if (status == LUS_OK) return;
    const char* code = status == LUS_ERR_INVALID_ARGUMENT ? "E_ARG"
                       : status == LUS_ERR_IO             ? "E_IO"
                                                          : "E_RUNTIME";
    die(code, context + ": " + lus_last_error());
}

std::string take_string(char* s) {
    std::string out = s ? s : "";
    lus_string_free(s);
    return out;
}

struct ImageHandle {
    lus_image* ptr = nullptr;
    ~ImageHandle() { lus_image_free(ptr); }
    lus_image** out() { return &ptr; }
};

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) die("E_IO", "cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) die("E_IO", "write failed: " + path.string());
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) die("E_IO", "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// One manifest per run, next to the outputs. Wall-clock duration is the only
// non-deterministic field; data outputs never depend on it.
void write_manifest(const fs::path& dir, const std::string& command,
                    const ordered_json& config, const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs, double duration_ms) {
    ordered_json j;
    j["command"] = command;
    j["version"] = lus_version();
    j["config"] = config;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["duration_ms"] = duration_ms;
    write_file(dir / "manifest.json", j.dump(2) + "\n");
}

class Stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            die("E_ARG", std::string("bad ") + what + " entry: " + item);
        }
    }
    if (out.empty()) die("E_ARG", std::string(what) + " list is empty");
    return out;
}

std::vector<std::string> parse_name_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string stem_of(const fs::path& p) { return p.stem().string(); }

// ROI config: `image_stem = x0,y0 x1,y1 x2,y2 x3,y3`, '#' comments.
std::map<std::string, std::array<double, 8>> load_roi_file(const fs::path& path) {
    std::map<std::string, std::array<double, 8>> rois;
    std::istringstream in(read_file(path));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            die("E_CONFIG",
                path.string() + ":" + std::to_string(lineno) + ": missing '='");
        std::string stem = line.substr(0, eq);
        stem.erase(0, stem.find_first_not_of(" \t"));
        stem.erase(stem.find_last_not_of(" \t") + 1);
        std::string rhs = line.substr(eq + 1);
        std::replace(rhs.begin(), rhs.end(), ',', ' ');
        std::istringstream vals(rhs);
        std::array<double, 8> coords{};
        for (double& c : coords)
            if (!(vals >> c))
                die("E_CONFIG", path.string() + ":" + std::to_string(lineno) +
                                    ": expected 8 coordinates");
        rois[stem] = coords;
    }
    return rois;
}

struct DenoiseOptions {
    std::string family = "sym17";
    int level = 5;
    int threshold = 50;
    bool hard = false;

    lus_denoise_spec to_spec() const {
        lus_denoise_spec spec;
        spec.family = family.c_str();
        spec.level = level;
        spec.threshold = threshold;
        spec.hard = hard ? 1 : 0;
        return spec;
    }
    ordered_json to_json() const {
        return {{"family", family},
                {"level", level},
                {"threshold", threshold},
                {"mode", hard ? "hard" : "soft"}};
    }
};

void add_denoise_options(CLI::App* cmd, DenoiseOptions& dn) {
    cmd->add_option("--family", dn.family, "Wavelet family")->capture_default_str();
    cmd->add_option("--level", dn.level, "Decomposition level (2-5)")
        ->capture_default_str();
    cmd->add_option("--threshold", dn.threshold, "Shrinkage threshold (0-101)")
        ->capture_default_str();
    cmd->add_flag("--hard", dn.hard, "Hard thresholding instead of soft");
}

std::string format_seed(uint64_t seed, int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "p%04d", index);
    (void)seed;
    return buf;
}

/* ---- phantom ---- */

int cmd_phantom(int count, const std::string& out_dir, uint64_t seed, int width,
                int height, const lus_noise_spec& noise) {
    Stopwatch timer;
    if (count < 1) die("E_ARG", "--count must be >= 1");
    fs::create_directories(out_dir);

    ordered_json records = ordered_json::array();
    std::vector<std::string> outputs;
    for (int i = 0; i < count; ++i) {
        uint64_t phantom_seed = seed + static_cast<uint64_t>(i);
        lus_phantom* ph = nullptr;
        check(lus_phantom_generate_sampled(width, height, &noise, phantom_seed, &ph),
              "phantom " + std::to_string(i));
        std::string stem = format_seed(phantom_seed, i);
        fs::path base = fs::path(out_dir) / stem;

        auto save = [&](lus_status (*get)(const lus_phantom*, lus_image**),
                        const std::string& suffix) {
            ImageHandle img;
            check(get(ph, img.out()), stem + suffix);
            std::string path = base.string() + suffix;
            check(lus_image_save(img.ptr, path.c_str()), path);
            outputs.push_back(path);
        };
        save(lus_phantom_clean, "_clean.pgm");
        save(lus_phantom_noisy, "_noisy.pgm");
        for (int p = 0; p < 3; ++p) {
            ImageHandle img;
            check(lus_phantom_mask(ph, p, img.out()), stem + " mask");
            static const char* suffix[3] = {"_mask_pleural.pgm", "_mask_alines.pgm",
                                            "_mask_blines.pgm"};
            std::string path = base.string() + suffix[p];
            check(lus_image_save(img.ptr, path.c_str()), path);
            outputs.push_back(path);
        }
        char* truth = nullptr;
        check(lus_phantom_truth_json(ph, &truth), stem + " truth");
        write_file(base.string() + "_truth.json", take_string(truth));
        outputs.push_back(base.string() + "_truth.json");

        char* spec_json = nullptr;
        check(lus_phantom_spec_json(ph, &spec_json), stem + " spec");
        ordered_json record;
        record["stem"] = stem;
        record["seed"] = phantom_seed;
        record["spec"] = ordered_json::parse(take_string(spec_json));
        records.push_back(std::move(record));
        lus_phantom_free(ph);
    }
    write_file(fs::path(out_dir) / "corpus.json", records.dump(2) + "\n");

    ordered_json config;
    config["count"] = count;
    config["seed"] = seed;
    config["width"] = width;
    config["height"] = height;
    config["noise"] = {{"gaussian_sigma", noise.gaussian_sigma},
                       {"salt_pepper_density", noise.salt_pepper_density},
                       {"poisson_scale", noise.poisson_scale},
                       {"speckle_sigma", noise.speckle_sigma}};
    write_manifest(out_dir, "phantom", config, {}, outputs, timer.ms());
    std::cout << "wrote " << count << " phantoms to " << out_dir << "\n";
    return 0;
}

/* ---- sweep ---- */

int cmd_sweep(const std::string& corpus_dir, const std::string& families_arg,
              const std::string& levels_arg, int threshold_stride,
              const std::string& out_csv, int jobs) {
    Stopwatch timer;
    std::vector<std::string> families = parse_name_list(families_arg);
    if (families.empty()) {
        char* catalog = nullptr;
        check(lus_wavelet_catalog(&catalog), "catalog");
        std::istringstream in(take_string(catalog));
        std::string name;
        while (std::getline(in, name))
            if (!name.empty()) families.push_back(name);
    }
    std::vector<int> levels = parse_int_list(levels_arg, "level");
    if (threshold_stride < 1) die("E_ARG", "--stride must be >= 1");
    std::vector<int> thresholds;
    for (int t = 0; t <= 101; t += threshold_stride) thresholds.push_back(t);

    // clean/noisy pairs matched by stem prefix
    std::vector<std::string> stems;
    for (const auto& entry : fs::directory_iterator(corpus_dir)) {
        std::string name = entry.path().filename().string();
        const std::string suffix = "_clean.pgm";
        if (name.size() > suffix.size() &&
            name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
            stems.push_back(name.substr(0, name.size() - suffix.size()));
    }
    std::sort(stems.begin(), stems.end());
    if (stems.empty()) die("E_ARG", "no *_clean.pgm images in " + corpus_dir);

    lus_sweep* sweep = nullptr;
    check(lus_sweep_create(&sweep), "sweep");
    std::vector<std::string> inputs;
    for (const auto& stem : stems) {
        fs::path clean = fs::path(corpus_dir) / (stem + "_clean.pgm");
        fs::path noisy = fs::path(corpus_dir) / (stem + "_noisy.pgm");
        if (!fs::exists(noisy))
            die("E_IO", "missing noisy pair for " + clean.string());
        ImageHandle ci, ni;
        check(lus_image_load(clean.string().c_str(), ci.out()), clean.string());
        check(lus_image_load(noisy.string().c_str(), ni.out()), noisy.string());
        check(lus_sweep_add_pair(sweep, ci.ptr, ni.ptr), stem);
        inputs.push_back(clean.string());
        inputs.push_back(noisy.string());
    }

    std::vector<const char*> family_ptrs;
    for (const auto& f : families) family_ptrs.push_back(f.c_str());
    check(lus_sweep_run(sweep, family_ptrs.data(), static_cast<int>(families.size()),
                        levels.data(), static_cast<int>(levels.size()),
                        thresholds.data(), static_cast<int>(thresholds.size()), jobs),
          "sweep run");

    char* csv = nullptr;
    check(lus_sweep_csv(sweep, &csv), "sweep csv");
    write_file(out_csv, take_string(csv));

    char* selected = nullptr;
    check(lus_sweep_select_json(sweep, &selected), "sweep select");
    std::string selected_json = take_string(selected);
    lus_sweep_free(sweep);

    fs::path out_dir = fs::path(out_csv).parent_path();
    if (out_dir.empty()) out_dir = ".";
    write_file(out_dir / "selected_spec.json", selected_json);

    ordered_json config;
    config["families"] = families;
    config["levels"] = levels;
    config["threshold_stride"] = threshold_stride;
    config["jobs"] = jobs;
    config["selected"] = ordered_json::parse(selected_json);
    write_manifest(out_dir, "sweep", config, inputs,
                   {out_csv, (out_dir / "selected_spec.json").string()}, timer.ms());
    std::cout << "selected spec: " << selected_json;
    return 0;
}

/* ---- detect ---- */

int cmd_detect(const std::string& image_path, const std::string& roi_config,
               const DenoiseOptions& dn, const std::string& out_json,
               const std::string& overlay_path, int rect_size) {
    Stopwatch timer;
    ImageHandle img;
    check(lus_image_load(image_path.c_str(), img.out()), image_path);

    std::array<double, 8> roi{};
    bool has_roi = false;
    if (!roi_config.empty()) {
        auto rois = load_roi_file(roi_config);
        std::string stem = stem_of(image_path);
        auto it = rois.find(stem);
        if (it == rois.end())
            die("E_CONFIG", "no ROI entry for '" + stem + "' in " + roi_config);
        roi = it->second;
        has_roi = true;
    }

    lus_pipeline_config cfg;
    lus_pipeline_config_default(&cfg);
    if (rect_size > 0) {
        cfg.rect_width = rect_size;
        cfg.rect_height = rect_size;
    }
    lus_denoise_spec spec = dn.to_spec();
    char* json = nullptr;
    check(lus_detect(img.ptr, has_roi ? roi.data() : nullptr, &spec, &cfg,
                     stem_of(image_path).c_str(), &json),
          image_path);
    std::string json_text = take_string(json);
    write_file(out_json, json_text);

    std::vector<std::string> outputs = {out_json};
    if (!overlay_path.empty()) {
        check(lus_render_overlay(img.ptr, json_text.c_str(),
                                 has_roi ? roi.data() : nullptr, overlay_path.c_str()),
              overlay_path);
        outputs.push_back(overlay_path);
    }

    fs::path out_dir = fs::path(out_json).parent_path();
    if (out_dir.empty()) out_dir = ".";
    ordered_json config;
    config["denoise"] = dn.to_json();
    config["roi_config"] = roi_config;
    config["rect_size"] = rect_size;
    write_manifest(out_dir, "detect", config, {image_path}, outputs, timer.ms());
    std::cout << json_text;
    return 0;
}

/* ---- eval ---- */

int cmd_eval(const std::string& detections_dir, const std::string& truth_dir,
             int tolerance, int stroke_width, const std::string& out_path) {
    Stopwatch timer;
    std::vector<std::string> stems;
    for (const auto& entry : fs::directory_iterator(detections_dir))
        if (entry.path().extension() == ".json" &&
            entry.path().filename() != "manifest.json")
            stems.push_back(stem_of(entry.path()));
    std::sort(stems.begin(), stems.end());
    if (stems.empty()) die("E_ARG", "no detection .json files in " + detections_dir);

    std::vector<std::string> missing;
    for (const auto& stem : stems)
        for (const char* suffix :
             {"_mask_pleural.pgm", "_mask_alines.pgm", "_mask_blines.pgm"})
            if (!fs::exists(fs::path(truth_dir) / (stem + suffix)))
                missing.push_back(stem + suffix);
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += " " + m;
        die("E_ARG", "unmatched truth masks:" + list);
    }

    lus_eval* ev = nullptr;
    check(lus_eval_create(tolerance, stroke_width, &ev), "eval");
    std::vector<std::string> inputs;
    for (const auto& stem : stems) {
        fs::path det_path = fs::path(detections_dir) / (stem + ".json");
        std::string det_json = read_file(det_path);
        ImageHandle pleural, alines, blines;
        fs::path p = fs::path(truth_dir) / (stem + "_mask_pleural.pgm");
        fs::path a = fs::path(truth_dir) / (stem + "_mask_alines.pgm");
        fs::path b = fs::path(truth_dir) / (stem + "_mask_blines.pgm");
        check(lus_image_load(p.string().c_str(), pleural.out()), p.string());
        check(lus_image_load(a.string().c_str(), alines.out()), a.string());
        check(lus_image_load(b.string().c_str(), blines.out()), b.string());
        check(lus_eval_add(ev, stem.c_str(), det_json.c_str(), pleural.ptr, alines.ptr,
                           blines.ptr),
              stem);
        inputs.push_back(det_path.string());
    }
    char* report = nullptr;
    check(lus_eval_report_json(ev, &report), "eval report");
    std::string report_json = take_string(report);
    lus_eval_free(ev);
    write_file(out_path, report_json);

    fs::path out_dir = fs::path(out_path).parent_path();
    if (out_dir.empty()) out_dir = ".";
    ordered_json config;
    config["tolerance"] = tolerance;
    config["stroke_width"] = stroke_width;
    write_manifest(out_dir, "eval", config, inputs, {out_path}, timer.ms());
    std::cout << report_json;
    return 0;
}

/* ---- overlay ---- */

int cmd_overlay(const std::string& image_path, const std::string& detection_path,
                const std::string& roi_config, const std::string& out_path) {
    Stopwatch timer;
    ImageHandle img;
    check(lus_image_load(image_path.c_str(), img.out()), image_path);
    std::string det_json = read_file(detection_path);

    std::array<double, 8> roi{};
    bool has_roi = false;
    if (!roi_config.empty()) {
        auto rois = load_roi_file(roi_config);
        std::string stem = stem_of(image_path);
        auto it = rois.find(stem);
        if (it == rois.end())
            die("E_CONFIG", "no ROI entry for '" + stem + "' in " + roi_config);
        roi = it->second;
        has_roi = true;
    }
    check(lus_render_overlay(img.ptr, det_json.c_str(),
                             has_roi ? roi.data() : nullptr, out_path.c_str()),
          out_path);

    fs::path out_dir = fs::path(out_path).parent_path();
    if (out_dir.empty()) out_dir = ".";
    ordered_json config;
    config["roi_config"] = roi_config;
    write_manifest(out_dir, "overlay", config, {image_path, detection_path}, {out_path},
                   timer.ms());
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

/* ---- filters ---- */

int cmd_filters(const std::string& family) {
    if (family.empty()) {
        char* catalog = nullptr;
        check(lus_wavelet_catalog(&catalog), "catalog");
        std::cout << take_string(catalog);
        return 0;
    }
    char* taps = nullptr;
    check(lus_filter_taps(family.c_str(), &taps), family);
    std::cout << take_string(taps);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lusline: lung-ultrasound line extraction"};
    app.require_subcommand(1);

    // phantom
    auto* phantom = app.add_subcommand("phantom", "Generate a synthetic phantom corpus");
    int ph_count = 1, ph_width = 512, ph_height = 512;
    uint64_t ph_seed = 0;
    std::string ph_out;
    lus_noise_spec ph_noise{0.05, 0.0, 0.0, 0.3};
    phantom->add_option("--count", ph_count, "Number of phantoms")->capture_default_str();
    phantom->add_option("--out", ph_out, "Output directory")->required();
    phantom->add_option("--seed", ph_seed, "Master seed (required)")->required();
    phantom->add_option("--width", ph_width)->capture_default_str();
    phantom->add_option("--height", ph_height)->capture_default_str();
    phantom->add_option("--noise-gaussian", ph_noise.gaussian_sigma)
        ->capture_default_str();
    phantom->add_option("--noise-salt-pepper", ph_noise.salt_pepper_density)
        ->capture_default_str();
    phantom->add_option("--noise-poisson", ph_noise.poisson_scale)
        ->capture_default_str();
    phantom->add_option("--noise-speckle", ph_noise.speckle_sigma)
        ->capture_default_str();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Wavelet parameter grid search");
    std::string sw_corpus, sw_families, sw_levels = "2,3,4,5", sw_out;
    int sw_stride = 5, sw_jobs = 1;
    sweep->add_option("--corpus", sw_corpus, "Corpus directory (phantom output)")
        ->required();
    sweep->add_option("--families", sw_families,
                      "Comma-separated families (default: all 61)");
    sweep->add_option("--levels", sw_levels)->capture_default_str();
    sweep->add_option("--stride", sw_stride, "Threshold stride over 0..101")
        ->capture_default_str();
    sweep->add_option("--out", sw_out, "Output CSV path")->required();
    sweep->add_option("--jobs", sw_jobs)->capture_default_str();

    // detect
    auto* detect = app.add_subcommand("detect", "Run the extraction pipeline");
    std::string dt_image, dt_roi, dt_out, dt_overlay;
    int dt_rect = 0;
    DenoiseOptions dt_dn;
    detect->add_option("--image", dt_image)->required();
    detect->add_option("--roi-config", dt_roi,
                       "ROI file; omit when the image is already rectified");
    detect->add_option("--out", dt_out, "Detection JSON path")->required();
    detect->add_option("--overlay", dt_overlay, "Optional overlay PNG path");
    detect->add_option("--rect-size", dt_rect, "Rectified frame size (default 512)");
    add_denoise_options(detect, dt_dn);

    // eval
    auto* eval = app.add_subcommand("eval", "Score detections against truth masks");
    std::string ev_dets, ev_truth, ev_out;
    int ev_tolerance = 3, ev_stroke = 5;
    eval->add_option("--detections", ev_dets)->required();
    eval->add_option("--truth", ev_truth)->required();
    eval->add_option("--tolerance", ev_tolerance)->capture_default_str();
    eval->add_option("--stroke-width", ev_stroke)->capture_default_str();
    eval->add_option("--out", ev_out, "Report JSON path")->required();

    // overlay
    auto* overlay = app.add_subcommand("overlay", "Draw a saved detection on an image");
    std::string ov_image, ov_det, ov_roi, ov_out;
    overlay->add_option("--image", ov_image)->required();
    overlay->add_option("--detection", ov_det, "Detection JSON path")->required();
    overlay->add_option("--roi-config", ov_roi);
    overlay->add_option("--out", ov_out, "Overlay PNG path")->required();

    // filters
    auto* filters = app.add_subcommand("filters", "List wavelet families or dump taps");
    std::string fl_family;
    filters->add_option("--family", fl_family, "Dump the taps of one family as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (phantom->parsed())
            return cmd_phantom(ph_count, ph_out, ph_seed, ph_width, ph_height, ph_noise);
        if (sweep->parsed())
            return cmd_sweep(sw_corpus, sw_families, sw_levels, sw_stride, sw_out,
                             sw_jobs);
        if (detect->parsed())
            return cmd_detect(dt_image, dt_roi, dt_dn, dt_out, dt_overlay, dt_rect);
        if (eval->parsed())
            return cmd_eval(ev_dets, ev_truth, ev_tolerance, ev_stroke, ev_out);
        if (overlay->parsed()) return cmd_overlay(ov_image, ov_det, ov_roi, ov_out);
        if (filters->parsed()) return cmd_filters(fl_family);
    } catch (const CliError& e) {
        std::cerr << e.code << ": " << e.message << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "E_RUNTIME: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
