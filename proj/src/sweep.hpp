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

#ifndef LUSLINE_SWEEP_HPP
#define LUSLINE_SWEEP_HPP

#include <string>
#include <vector>

#include "image.hpp"
#include "wavelet.hpp"

namespace lus {

struct SweepCell {
    double mean_snr_db = 0.0;
    double std_snr_db = 0.0;
    int exceed_count = 0;
    int n_images = 0;      // finite SNR samples in this cell
    bool saturated = false;  // at least one +inf SNR (noisy == clean)
    std::vector<double> image_snr_db;  // per image, may contain +inf
};

struct SweepGrid {
    std::vector<std::string> families;
    std::vector<int> levels;
    std::vector<int> thresholds;
    std::vector<SweepCell> cells;  // family-major, then level, then threshold
    int corpus_size = 0;

    SweepCell& cell(int fi, int li, int ti);
    const SweepCell& cell(int fi, int li, int ti) const;
};

struct ImagePair {
    Image clean;
    Image noisy;
};

// Denoises every noisy image at every (family, level, threshold) cell and
// records SNR against the paired clean image. Exceedance counts are filled in
// by exceedance_counts afterwards.
SweepGrid run_sweep(const std::vector<ImagePair>& corpus,
                    const std::vector<std::string>& families,
                    const std::vector<int>& levels, const std::vector<int>& thresholds,
                    int jobs = 1);

// Per level, M = max mean_snr over that level's cells; each cell counts the
// images whose SNR strictly exceeds M.
void exceedance_counts(SweepGrid& grid);

// Level with the flattest mean_snr across thresholds 40..60 (averaged over
// families), then the threshold with the largest total exceed_count, then the
// family most images pick as their per-image SNR argmax. Ties fall to the
// shorter filter, then the lexicographically smaller name.
DenoiseSpec select_spec(const SweepGrid& grid);

// Header `family,level,threshold,mean_snr_db,std_snr_db,exceed_count,n_images`,
// one row per cell, LF line endings.
std::string grid_to_csv(const SweepGrid& grid);

}  // namespace lus

#endif
