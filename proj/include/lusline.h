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

/*
 * C interface to the lusline lung-ultrasound line-extraction library.
 *
 * Conventions:
 *  - Every fallible call returns lus_status; on failure, lus_last_error()
 *    holds a message describing the problem (thread-local).
 *  - Objects returned through lus_*​** out-parameters are owned by the caller
 *    and released with the matching *_free function.
 *  - char** out-parameters receive NUL-terminated strings released with
 *    lus_string_free.
 *  - Images carry grayscale intensities in [0,1], row-major.
 */

#ifndef LUSLINE_H
#define LUSLINE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lus_status {
    LUS_OK = 0,
    LUS_ERR_INVALID_ARGUMENT = 1,
    LUS_ERR_IO = 2,
    LUS_ERR_RUNTIME = 3
} lus_status;

/* Message for the most recent failure on this thread; never NULL. */
const char* lus_last_error(void);
const char* lus_version(void);
void lus_string_free(char* s);

/* ---- images ---- */

typedef struct lus_image lus_image;

lus_status lus_image_create(int width, int height, lus_image** out);
/* 8-bit grayscale .pgm (binary P5) or .png, chosen by file extension. */
lus_status lus_image_load(const char* path, lus_image** out);
lus_status lus_image_save(const lus_image* img, const char* path);
int lus_image_width(const lus_image* img);
int lus_image_height(const lus_image* img);
/* buf must hold width*height doubles. */
lus_status lus_image_get_pixels(const lus_image* img, double* buf, size_t len);
lus_status lus_image_set_pixels(lus_image* img, const double* buf, size_t len);
void lus_image_free(lus_image* img);

/* ---- wavelet denoising ---- */

typedef struct lus_denoise_spec {
    const char* family; /* e.g. "sym17"; see lus_wavelet_catalog */
    int level;          /* 2..5 */
    int threshold;      /* 0..101, in 8-bit intensity counts */
    int hard;           /* 0 = soft thresholding, 1 = hard */
} lus_denoise_spec;

void lus_denoise_spec_default(lus_denoise_spec* spec);
lus_status lus_denoise(const lus_image* img, const lus_denoise_spec* spec,
                       lus_image** out);
/* +inf when test equals reference exactly. */
lus_status lus_snr_db(const lus_image* reference, const lus_image* test, double* out_db);
/* Newline-separated family names (61 entries). */
lus_status lus_wavelet_catalog(char** out);
/* JSON object with the four filter tap arrays of one family. */
lus_status lus_filter_taps(const char* family, char** out_json);

/* ---- geometry ---- */

/* roi: 8 doubles, corner order TLx,TLy, TRx,TRy, BRx,BRy, BLx,BLy. */
lus_status lus_warp_to_rect(const lus_image* img, const double* roi, int out_width,
                            int out_height, lus_image** out);

/* ---- detection pipeline ---- */

typedef struct lus_pipeline_config {
    int rect_width, rect_height;
    double blur_sigma, blur_fraction;
    double angle_stride_deg;
    int peak_neighborhood;
    double pleural_theta_halfwidth, pleural_min_normalized, pleural_min_support,
        pleural_min_length_frac;
    double aline_theta_halfwidth, aline_min_normalized, aline_min_support,
        aline_min_length_frac, aline_spacing_tolerance;
    int aline_crop_px, max_alines;
    double bline_theta_halfwidth, bline_min_normalized, bline_min_coverage,
        bline_merge_px;
    int bline_contact_margin_px, max_blines;
    double support_brightness;
    int split_margin_px;
    int auto_scale_thresholds;
} lus_pipeline_config;

void lus_pipeline_config_default(lus_pipeline_config* cfg);

/*
 * Runs warp (when roi is non-NULL) -> denoise -> pleural/A/B extraction and
 * returns the detection result as JSON:
 *   {image, frame:{width,height}, pleural:{theta_deg,rho_px,segment,score}|null,
 *    alines:[...], blines:[...], config_hash}
 */
lus_status lus_detect(const lus_image* img, const double* roi,
                      const lus_denoise_spec* denoise, const lus_pipeline_config* cfg,
                      const char* image_id, char** out_json);

/* Detections drawn on the source frame (pleural green, A blue, B red) and
 * written as an RGB PNG. roi may be NULL when the source is already rectified. */
lus_status lus_render_overlay(const lus_image* source, const char* detection_json,
                              const double* roi, const char* out_png_path);

/* ---- phantoms ---- */

typedef struct lus_noise_spec {
    double gaussian_sigma;
    double salt_pepper_density;
    double poisson_scale;
    double speckle_sigma;
} lus_noise_spec;

typedef struct lus_phantom_spec {
    int width, height;
    double pleural_depth;    /* fraction of height */
    double pleural_tilt_deg; /* [-15, 15] */
    int n_alines;            /* 0..3 */
    int n_blines;            /* 0..5 */
    double bline_columns[5]; /* fractions of width, first n_blines used */
    double line_thickness;
    double aline_decay;
    double pleural_intensity, bline_intensity, background_level;
    lus_noise_spec noise;
    uint64_t seed;
} lus_phantom_spec;

void lus_phantom_spec_default(lus_phantom_spec* spec);

typedef struct lus_phantom lus_phantom;

lus_status lus_phantom_generate(const lus_phantom_spec* spec, lus_phantom** out);
/* Samples depth/tilt/counts/columns from the seed, then generates. */
lus_status lus_phantom_generate_sampled(int width, int height,
                                        const lus_noise_spec* noise, uint64_t seed,
                                        lus_phantom** out);
lus_status lus_phantom_clean(const lus_phantom* ph, lus_image** out);
lus_status lus_phantom_noisy(const lus_phantom* ph, lus_image** out);
/* pattern: 0 pleural, 1 A-lines, 2 B-lines; mask as a 0/1 image. */
lus_status lus_phantom_mask(const lus_phantom* ph, int pattern, lus_image** out);
/* Ground-truth lines as JSON (same line schema as detection output). */
lus_status lus_phantom_truth_json(const lus_phantom* ph, char** out);
/* The (possibly sampled) spec as JSON, for manifests. */
lus_status lus_phantom_spec_json(const lus_phantom* ph, char** out);
void lus_phantom_free(lus_phantom* ph);

/* ---- evaluation ---- */

lus_status lus_f_beta(double precision, double recall, double beta, double* out);

typedef struct lus_eval lus_eval;

lus_status lus_eval_create(int tolerance_px, int stroke_width, lus_eval** out);
/* Truth masks are 0/1 images sized like the detection frame. */
lus_status lus_eval_add(lus_eval* ev, const char* image_id, const char* detection_json,
                        const lus_image* truth_pleural, const lus_image* truth_alines,
                        const lus_image* truth_blines);
/* Micro-averaged report with per-class P/R/F0.5/F1/F2 and per-image rows. */
lus_status lus_eval_report_json(const lus_eval* ev, char** out);
void lus_eval_free(lus_eval* ev);

/* ---- parameter sweep ---- */

typedef struct lus_sweep lus_sweep;

lus_status lus_sweep_create(lus_sweep** out);
lus_status lus_sweep_add_pair(lus_sweep* sw, const lus_image* clean,
                              const lus_image* noisy);
lus_status lus_sweep_run(lus_sweep* sw, const char* const* families, int n_families,
                         const int* levels, int n_levels, const int* thresholds,
                         int n_thresholds, int jobs);
/* CSV: family,level,threshold,mean_snr_db,std_snr_db,exceed_count,n_images */
lus_status lus_sweep_csv(const lus_sweep* sw, char** out);
/* {"family": ..., "level": ..., "threshold": ...} */
lus_status lus_sweep_select_json(const lus_sweep* sw, char** out);
void lus_sweep_free(lus_sweep* sw);

#ifdef __cplusplus
}
#endif

#endif /* LUSLINE_H */
