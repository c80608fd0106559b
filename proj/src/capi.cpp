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

#include "lusline.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "json.hpp"

#include "detect.hpp"
#include "eval.hpp"
#include "geometry.hpp"
#include "image.hpp"
#include "io.hpp"
#include "phantom.hpp"
#include "sweep.hpp"
#include "wavelet.hpp"

using ordered_json = nlohmann::ordered_json;

struct lus_image {
    lus::Image img;
};

struct lus_phantom {
    lus::Phantom phantom;
    lus::PhantomSpec spec;
};

struct lus_eval {
    std::vector<lus::EvalItem> items;
    int tolerance = 3;
    int stroke_width = 5;
};

struct lus_sweep {
    std::vector<lus::ImagePair> corpus;
    lus::SweepGrid grid;
    bool has_grid = false;
};

namespace {

thread_local std::string g_last_error = "no error";

lus_status fail(lus_status code, const char* msg) {
    g_last_error = msg;
    return code;
}

template <typename Fn>
lus_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        return fail(LUS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(LUS_ERR_RUNTIME, "out of memory");
    } catch (const std::exception& e) {
        return fail(LUS_ERR_RUNTIME, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

lus_status require(bool ok, const char* what) {
    if (!ok) return fail(LUS_ERR_INVALID_ARGUMENT, what);
    return LUS_OK;
}

lus::DenoiseSpec to_denoise(const lus_denoise_spec* spec) {
    lus::DenoiseSpec out;
    if (!spec) return out;
    if (spec->family) out.family = spec->family;
    out.level = spec->level;
    out.threshold = spec->threshold;
    out.mode = spec->hard ? lus::ThresholdMode::Hard : lus::ThresholdMode::Soft;
    return out;
}

lus::PipelineConfig to_pipeline(const lus_pipeline_config* cfg) {
    lus::PipelineConfig out;
    if (!cfg) return out;
    out.rect_width = cfg->rect_width;
    out.rect_height = cfg->rect_height;
    out.blur_sigma = cfg->blur_sigma;
    out.blur_fraction = cfg->blur_fraction;
    out.angle_stride_deg = cfg->angle_stride_deg;
    out.peak_neighborhood = cfg->peak_neighborhood;
    out.pleural_theta_halfwidth = cfg->pleural_theta_halfwidth;
    out.pleural_min_normalized = cfg->pleural_min_normalized;
    out.pleural_min_support = cfg->pleural_min_support;
    out.pleural_min_length_frac = cfg->pleural_min_length_frac;
    out.aline_theta_halfwidth = cfg->aline_theta_halfwidth;
    out.aline_min_normalized = cfg->aline_min_normalized;
    out.aline_min_support = cfg->aline_min_support;
    out.aline_min_length_frac = cfg->aline_min_length_frac;
    out.aline_spacing_tolerance = cfg->aline_spacing_tolerance;
    out.aline_crop_px = cfg->aline_crop_px;
    out.max_alines = cfg->max_alines;
    out.bline_theta_halfwidth = cfg->bline_theta_halfwidth;
    out.bline_min_normalized = cfg->bline_min_normalized;
    out.bline_min_coverage = cfg->bline_min_coverage;
    out.bline_merge_px = cfg->bline_merge_px;
    out.bline_contact_margin_px = cfg->bline_contact_margin_px;
    out.max_blines = cfg->max_blines;
    out.support_brightness = cfg->support_brightness;
    out.split_margin_px = cfg->split_margin_px;
    out.auto_scale_thresholds = cfg->auto_scale_thresholds != 0;
    return out;
}

lus::TrapezoidROI to_roi(const double* roi) {
    lus::TrapezoidROI out;
    for (int i = 0; i < 4; ++i) out.corners[i] = {roi[2 * i], roi[2 * i + 1]};
    out.validate();
    return out;
}

lus::Mask image_to_mask(const lus::Image& img) {
    lus::Mask mask(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            if (img(x, y) > 0.5) mask.set(x, y, true);
    return mask;
}

ordered_json score_to_json(const lus::ClassScore& s) {
    ordered_json j;
    j["precision"] = s.precision ? ordered_json(*s.precision) : ordered_json(nullptr);
    j["recall"] = s.recall ? ordered_json(*s.recall) : ordered_json(nullptr);
    j["f05"] = s.f05;
    j["f1"] = s.f1;
    j["f2"] = s.f2;
    j["tp_precision"] = s.counts.tp_precision;
    j["fp"] = s.counts.fp;
    j["tp_recall"] = s.counts.tp_recall;
    j["fn"] = s.counts.fn;
    return j;
}

ordered_json lines_to_json(const std::vector<lus::LineDetection>& dets) {
    ordered_json arr = ordered_json::array();
    for (const auto& det : dets) {
        ordered_json j;
        j["theta_deg"] = det.theta_deg;
        j["rho_px"] = det.rho_px;
        j["segment"] = {{det.segment.a.x, det.segment.a.y},
                        {det.segment.b.x, det.segment.b.y}};
        j["score"] = det.score;
        arr.push_back(std::move(j));
    }
    return arr;
}

}  // namespace

extern "C" {

const char* lus_last_error(void) { return g_last_error.c_str(); }

const char* lus_version(void) { return "1.0.0"; }

void lus_string_free(char* s) { delete[] s; }

/* ---- images ---- */

lus_status lus_image_create(int width, int height, lus_image** out) {
    if (lus_status s = require(out != nullptr, "out is NULL")) return s;
    return guarded([&] {
        *out = new lus_image{lus::Image(width, height)};
        return LUS_OK;
    });
}

lus_status lus_image_load(const char* path, lus_image** out) {
    if (lus_status s = require(path && out, "path/out is NULL")) return s;
    auto rc = guarded([&] {
        *out = new lus_image{lus::load_image(path)};
        return LUS_OK;
    });
    return rc == LUS_ERR_RUNTIME ? LUS_ERR_IO : rc;
}

lus_status lus_image_save(const lus_image* img, const char* path) {
    if (lus_status s = require(img && path, "img/path is NULL")) return s;
    auto rc = guarded([&] {
        lus::save_image(img->img, path);
        return LUS_OK;
    });
    return rc == LUS_ERR_RUNTIME ? LUS_ERR_IO : rc;
}

int lus_image_width(const lus_image* img) { return img ? img->img.width() : 0; }

int lus_image_height(const lus_image* img) { return img ? img->img.height() : 0; }

lus_status lus_image_get_pixels(const lus_image* img, double* buf, size_t len) {
    if (lus_status s = require(img && buf, "img/buf is NULL")) return s;
    if (len != img->img.size())
        return fail(LUS_ERR_INVALID_ARGUMENT, "buffer length != width*height");
    std::memcpy(buf, img->img.data().data(), len * sizeof(double));
    return LUS_OK;
}

lus_status lus_image_set_pixels(lus_image* img, const double* buf, size_t len) {
    if (lus_status s = require(img && buf, "img/buf is NULL")) return s;
    if (len != img->img.size())
        return fail(LUS_ERR_INVALID_ARGUMENT, "buffer length != width*height");
    std::memcpy(img->img.data().data(), buf, len * sizeof(double));
    return LUS_OK;
}

void lus_image_free(lus_image* img) { delete img; }

/* ---- wavelet denoising ---- */

void lus_denoise_spec_default(lus_denoise_spec* spec) {
    if (!spec) return;
    lus::DenoiseSpec d;
    static thread_local std::string family;
    family = d.family;
    spec->family = family.c_str();
    spec->level = d.level;
    spec->threshold = d.threshold;
    spec->hard = d.mode == lus::ThresholdMode::Hard ? 1 : 0;
}

lus_status lus_denoise(const lus_image* img, const lus_denoise_spec* spec,
                       lus_image** out) {
    if (lus_status s = require(img && spec && out, "img/spec/out is NULL")) return s;
    return guarded([&] {
        *out = new lus_image{lus::denoise(img->img, to_denoise(spec))};
        return LUS_OK;
    });
}

lus_status lus_snr_db(const lus_image* reference, const lus_image* test, double* out_db) {
    if (lus_status s = require(reference && test && out_db, "argument is NULL")) return s;
    return guarded([&] {
        *out_db = lus::snr_db(reference->img, test->img);
        return LUS_OK;
    });
}

lus_status lus_wavelet_catalog(char** out) {
    if (lus_status s = require(out != nullptr, "out is NULL")) return s;
    return guarded([&] {
        std::string text;
        for (const auto& name : lus::wavelet_catalog()) {
            text += name;
            text += '\n';
        }
        *out = dup_string(text);
        return LUS_OK;
    });
}

lus_status lus_filter_taps(const char* family, char** out_json) {
    if (lus_status s = require(family && out_json, "family/out is NULL")) return s;
    return guarded([&] {
        lus::QuadFilterBank bank = lus::filter_bank(family);
        ordered_json j;
        j["family"] = bank.name;
        j["length"] = bank.analysis_low.size();
        j["orthogonal"] = bank.orthogonal();
        j["analysis_low"] = bank.analysis_low;
        j["analysis_high"] = bank.analysis_high;
        j["synthesis_low"] = bank.synthesis_low;
        j["synthesis_high"] = bank.synthesis_high;
        *out_json = dup_string(j.dump(2) + "\n");
        return LUS_OK;
    });
}

/* ---- geometry ---- */

lus_status lus_warp_to_rect(const lus_image* img, const double* roi, int out_width,
                            int out_height, lus_image** out) {
    if (lus_status s = require(img && roi && out, "img/roi/out is NULL")) return s;
    return guarded([&] {
        lus::WarpMap map = lus::fit_warp(to_roi(roi), out_width, out_height);
        *out = new lus_image{lus::warp_to_rect(img->img, map)};
        return LUS_OK;
    });
}

/* ---- detection ---- */

void lus_pipeline_config_default(lus_pipeline_config* cfg) {
    if (!cfg) return;
    lus::PipelineConfig d;
    cfg->rect_width = d.rect_width;
    cfg->rect_height = d.rect_height;
    cfg->blur_sigma = d.blur_sigma;
    cfg->blur_fraction = d.blur_fraction;
    cfg->angle_stride_deg = d.angle_stride_deg;
    cfg->peak_neighborhood = d.peak_neighborhood;
    cfg->pleural_theta_halfwidth = d.pleural_theta_halfwidth;
    cfg->pleural_min_normalized = d.pleural_min_normalized;
    cfg->pleural_min_support = d.pleural_min_support;
    cfg->pleural_min_length_frac = d.pleural_min_length_frac;
    cfg->aline_theta_halfwidth = d.aline_theta_halfwidth;
    cfg->aline_min_normalized = d.aline_min_normalized;
    cfg->aline_min_support = d.aline_min_support;
    cfg->aline_min_length_frac = d.aline_min_length_frac;
    cfg->aline_spacing_tolerance = d.aline_spacing_tolerance;
    cfg->aline_crop_px = d.aline_crop_px;
    cfg->max_alines = d.max_alines;
    cfg->bline_theta_halfwidth = d.bline_theta_halfwidth;
    cfg->bline_min_normalized = d.bline_min_normalized;
    cfg->bline_min_coverage = d.bline_min_coverage;
    cfg->bline_merge_px = d.bline_merge_px;
    cfg->bline_contact_margin_px = d.bline_contact_margin_px;
    cfg->max_blines = d.max_blines;
    cfg->support_brightness = d.support_brightness;
    cfg->split_margin_px = d.split_margin_px;
    cfg->auto_scale_thresholds = d.auto_scale_thresholds ? 1 : 0;
}

lus_status lus_detect(const lus_image* img, const double* roi,
                      const lus_denoise_spec* denoise, const lus_pipeline_config* cfg,
                      const char* image_id, char** out_json) {
    if (lus_status s = require(img && out_json, "img/out is NULL")) return s;
    return guarded([&] {
        lus::DenoiseSpec dn = to_denoise(denoise);
        lus::PipelineConfig pc = to_pipeline(cfg);
        std::string id = image_id ? image_id : "";
        lus::DetectionResult result =
            roi ? lus::run_pipeline(img->img, to_roi(roi), dn, pc, id)
                : lus::run_pipeline_rect(img->img, dn, pc, id);
        *out_json = dup_string(lus::detection_to_json(result, lus::config_hash(dn, pc)));
        return LUS_OK;
    });
}

lus_status lus_render_overlay(const lus_image* source, const char* detection_json,
                              const double* roi, const char* out_png_path) {
    if (lus_status s =
            require(source && detection_json && out_png_path, "argument is NULL"))
        return s;
    return guarded([&] {
        lus::DetectionResult result = lus::detection_from_json(detection_json);
        if (roi) {
            lus::WarpMap map =
                lus::fit_warp(to_roi(roi), result.rect_width, result.rect_height);
            lus::save_rgb_png(lus::render_overlay(source->img, result, &map),
                              out_png_path);
        } else {
            lus::save_rgb_png(lus::render_overlay(source->img, result, nullptr),
                              out_png_path);
        }
        return LUS_OK;
    });
}

/* ---- phantoms ---- */

void lus_phantom_spec_default(lus_phantom_spec* spec) {
    if (!spec) return;
    lus::PhantomSpec d;
    spec->width = d.width;
    spec->height = d.height;
    spec->pleural_depth = d.pleural_depth;
    spec->pleural_tilt_deg = d.pleural_tilt_deg;
    spec->n_alines = d.n_alines;
    spec->n_blines = d.n_blines;
    for (double& c : spec->bline_columns) c = 0.0;
    spec->line_thickness = d.line_thickness;
    spec->aline_decay = d.aline_decay;
    spec->pleural_intensity = d.pleural_intensity;
    spec->bline_intensity = d.bline_intensity;
    spec->background_level = d.background_level;
    spec->noise.gaussian_sigma = d.noise.gaussian_sigma;
    spec->noise.salt_pepper_density = d.noise.salt_pepper_density;
    spec->noise.poisson_scale = d.noise.poisson_scale;
    spec->noise.speckle_sigma = d.noise.speckle_sigma;
    spec->seed = d.seed;
}

lus_status lus_phantom_generate(const lus_phantom_spec* spec, lus_phantom** out) {
    if (lus_status s = require(spec && out, "spec/out is NULL")) return s;
    return guarded([&] {
        lus::PhantomSpec p;
        p.width = spec->width;
        p.height = spec->height;
        p.pleural_depth = spec->pleural_depth;
        p.pleural_tilt_deg = spec->pleural_tilt_deg;
        p.n_alines = spec->n_alines;
        p.n_blines = spec->n_blines;
        if (spec->n_blines < 0 || spec->n_blines > 5)
            throw std::invalid_argument("n_blines must be in [0,5]");
        p.bline_columns.assign(spec->bline_columns,
                               spec->bline_columns + spec->n_blines);
        p.line_thickness = spec->line_thickness;
        p.aline_decay = spec->aline_decay;
        p.pleural_intensity = spec->pleural_intensity;
        p.bline_intensity = spec->bline_intensity;
        p.background_level = spec->background_level;
        p.noise.gaussian_sigma = spec->noise.gaussian_sigma;
        p.noise.salt_pepper_density = spec->noise.salt_pepper_density;
        p.noise.poisson_scale = spec->noise.poisson_scale;
        p.noise.speckle_sigma = spec->noise.speckle_sigma;
        p.seed = spec->seed;
        *out = new lus_phantom{lus::generate_phantom(p), p};
        return LUS_OK;
    });
}

lus_status lus_phantom_generate_sampled(int width, int height,
                                        const lus_noise_spec* noise, uint64_t seed,
                                        lus_phantom** out) {
    if (lus_status s = require(out != nullptr, "out is NULL")) return s;
    return guarded([&] {
        lus::NoiseSpec n;
        if (noise) {
            n.gaussian_sigma = noise->gaussian_sigma;
            n.salt_pepper_density = noise->salt_pepper_density;
            n.poisson_scale = noise->poisson_scale;
            n.speckle_sigma = noise->speckle_sigma;
        }
        lus::PhantomSpec p = lus::sample_spec(width, height, n, seed);
        *out = new lus_phantom{lus::generate_phantom(p), p};
        return LUS_OK;
    });
}

lus_status lus_phantom_clean(const lus_phantom* ph, lus_image** out) {
    if (lus_status s = require(ph && out, "phantom/out is NULL")) return s;
    *out = new lus_image{ph->phantom.clean};
    return LUS_OK;
}

lus_status lus_phantom_noisy(const lus_phantom* ph, lus_image** out) {
    if (lus_status s = require(ph && out, "phantom/out is NULL")) return s;
    *out = new lus_image{ph->phantom.noisy};
    return LUS_OK;
}

lus_status lus_phantom_mask(const lus_phantom* ph, int pattern, lus_image** out) {
    if (lus_status s = require(ph && out, "phantom/out is NULL")) return s;
    const lus::Mask* mask = nullptr;
    switch (pattern) {
        case 0: mask = &ph->phantom.pleural_mask; break;
        case 1: mask = &ph->phantom.aline_mask; break;
        case 2: mask = &ph->phantom.bline_mask; break;
        default: return fail(LUS_ERR_INVALID_ARGUMENT, "pattern must be 0, 1, or 2");
    }
    lus::Image img(mask->width(), mask->height());
    for (int y = 0; y < mask->height(); ++y)
        for (int x = 0; x < mask->width(); ++x)
            if ((*mask)(x, y)) img(x, y) = 1.0;
    *out = new lus_image{std::move(img)};
    return LUS_OK;
}

lus_status lus_phantom_truth_json(const lus_phantom* ph, char** out) {
    if (lus_status s = require(ph && out, "phantom/out is NULL")) return s;
    return guarded([&] {
        ordered_json j;
        std::vector<lus::LineDetection> per_class[3];
        for (const auto& det : ph->phantom.truth)
            per_class[static_cast<int>(det.pattern)].push_back(det);
        j["pleural"] = lines_to_json(per_class[0]);
        j["alines"] = lines_to_json(per_class[1]);
        j["blines"] = lines_to_json(per_class[2]);
        *out = dup_string(j.dump(2) + "\n");
        return LUS_OK;
    });
}

lus_status lus_phantom_spec_json(const lus_phantom* ph, char** out) {
    if (lus_status s = require(ph && out, "phantom/out is NULL")) return s;
    return guarded([&] {
        const lus::PhantomSpec& p = ph->spec;
        ordered_json j;
        j["width"] = p.width;
        j["height"] = p.height;
        j["pleural_depth"] = p.pleural_depth;
        j["pleural_tilt_deg"] = p.pleural_tilt_deg;
        j["n_alines"] = p.n_alines;
        j["n_blines"] = p.n_blines;
        j["bline_columns"] = p.bline_columns;
        j["line_thickness"] = p.line_thickness;
        j["aline_decay"] = p.aline_decay;
        j["pleural_intensity"] = p.pleural_intensity;
        j["bline_intensity"] = p.bline_intensity;
        j["background_level"] = p.background_level;
        j["noise"] = {{"gaussian_sigma", p.noise.gaussian_sigma},
                      {"salt_pepper_density", p.noise.salt_pepper_density},
                      {"poisson_scale", p.noise.poisson_scale},
                      {"speckle_sigma", p.noise.speckle_sigma}};
        j["seed"] = p.seed;
        *out = dup_string(j.dump(2) + "\n");
        return LUS_OK;
    });
}

void lus_phantom_free(lus_phantom* ph) { delete ph; }

/* ---- evaluation ---- */

lus_status lus_f_beta(double precision, double recall, double beta, double* out) {
    if (lus_status s = require(out != nullptr, "out is NULL")) return s;
    return guarded([&] {
        *out = lus::f_beta(precision, recall, beta);
        return LUS_OK;
    });
}

lus_status lus_eval_create(int tolerance_px, int stroke_width, lus_eval** out) {
    if (lus_status s = require(out != nullptr, "out is NULL")) return s;
    if (tolerance_px < 0) return fail(LUS_ERR_INVALID_ARGUMENT, "tolerance must be >= 0");
    if (stroke_width < 1) return fail(LUS_ERR_INVALID_ARGUMENT, "stroke_width must be >= 1");
    *out = new lus_eval{{}, tolerance_px, stroke_width};
    return LUS_OK;
}

lus_status lus_eval_add(lus_eval* ev, const char* image_id, const char* detection_json,
                        const lus_image* truth_pleural, const lus_image* truth_alines,
                        const lus_image* truth_blines) {
    if (lus_status s = require(ev && image_id && detection_json && truth_pleural &&
                                   truth_alines && truth_blines,
                               "argument is NULL"))
        return s;
    return guarded([&] {
        lus::EvalItem item;
        item.id = image_id;
        item.result = lus::detection_from_json(detection_json);
        item.truth_pleural = image_to_mask(truth_pleural->img);
        item.truth_aline = image_to_mask(truth_alines->img);
        item.truth_bline = image_to_mask(truth_blines->img);
        ev->items.push_back(std::move(item));
        return LUS_OK;
    });
}

lus_status lus_eval_report_json(const lus_eval* ev, char** out) {
    if (lus_status s = require(ev && out, "eval/out is NULL")) return s;
    return guarded([&] {
        lus::ScoreReport report =
            lus::evaluate_corpus(ev->items, ev->tolerance, ev->stroke_width);
        ordered_json j;
        j["averaging"] = "micro";
        j["tolerance_px"] = ev->tolerance;
        j["stroke_width"] = ev->stroke_width;
        j["n_images"] = report.per_image.size();
        const char* class_names[3] = {"pleural", "alines", "blines"};
        for (int c = 0; c < 3; ++c)
            j["classes"][class_names[c]] = score_to_json(report.per_class[c]);
        j["per_image"] = ordered_json::array();
        for (const auto& row : report.per_image) {
            ordered_json r;
            r["image"] = row.id;
            for (int c = 0; c < 3; ++c)
                r[class_names[c]] = score_to_json(row.per_class[c]);
            j["per_image"].push_back(std::move(r));
        }
        *out = dup_string(j.dump(2) + "\n");
        return LUS_OK;
    });
}

void lus_eval_free(lus_eval* ev) { delete ev; }

/* ---- sweep ---- */

lus_status lus_sweep_create(lus_sweep** out) {
    if (lus_status s = require(out != nullptr, "out is NULL")) return s;
    *out = new lus_sweep{};
    return LUS_OK;
}

lus_status lus_sweep_add_pair(lus_sweep* sw, const lus_image* clean,
                              const lus_image* noisy) {
    if (lus_status s = require(sw && clean && noisy, "argument is NULL")) return s;
    return guarded([&] {
        if (clean->img.width() != noisy->img.width() ||
            clean->img.height() != noisy->img.height())
            throw std::invalid_argument("clean/noisy dimensions differ");
        sw->corpus.push_back({clean->img, noisy->img});
        return LUS_OK;
    });
}

lus_status lus_sweep_run(lus_sweep* sw, const char* const* families, int n_families,
                         const int* levels, int n_levels, const int* thresholds,
                         int n_thresholds, int jobs) {
    if (lus_status s = require(sw && families && levels && thresholds, "argument is NULL"))
        return s;
    return guarded([&] {
        std::vector<std::string> fam(families, families + std::max(0, n_families));
        std::vector<int> lv(levels, levels + std::max(0, n_levels));
        std::vector<int> th(thresholds, thresholds + std::max(0, n_thresholds));
        sw->grid = lus::run_sweep(sw->corpus, fam, lv, th, jobs);
        sw->has_grid = true;
        return LUS_OK;
    });
}

lus_status lus_sweep_csv(const lus_sweep* sw, char** out) {
    if (lus_status s = require(sw && out, "sweep/out is NULL")) return s;
    if (!sw->has_grid) return fail(LUS_ERR_INVALID_ARGUMENT, "sweep has not been run");
    return guarded([&] {
        *out = dup_string(lus::grid_to_csv(sw->grid));
        return LUS_OK;
    });
}

lus_status lus_sweep_select_json(const lus_sweep* sw, char** out) {
    if (lus_status s = require(sw && out, "sweep/out is NULL")) return s;
    if (!sw->has_grid) return fail(LUS_ERR_INVALID_ARGUMENT, "sweep has not been run");
    return guarded([&] {
        lus::DenoiseSpec spec = lus::select_spec(sw->grid);
        ordered_json j;
        j["family"] = spec.family;
        j["level"] = spec.level;
        j["threshold"] = spec.threshold;
        *out = dup_string(j.dump(2) + "\n");
        return LUS_OK;
    });
}

void lus_sweep_free(lus_sweep* sw) { delete sw; }

}  // extern "C"
