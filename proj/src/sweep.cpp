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

#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace lus {

namespace {

size_t cell_index(const SweepGrid& g, int fi, int li, int ti) {
    return (static_cast<size_t>(fi) * g.levels.size() + li) * g.thresholds.size() + ti;
}

void finalize_cell(SweepCell& cell) {
    double sum = 0.0;
    int n = 0;
    for (double v : cell.image_snr_db) {
        if (std::isinf(v)) {
            cell.saturated = true;
        } else {
            sum += v;
            ++n;
        }
    }
    cell.n_images = n;
    if (n == 0) {
        cell.mean_snr_db = std::numeric_limits<double>::infinity();
        cell.std_snr_db = 0.0;
        return;
    }
    double mean = sum / n;
    double var = 0.0;
    for (double v : cell.image_snr_db)
        if (!std::isinf(v)) var += (v - mean) * (v - mean);
    cell.mean_snr_db = mean;
    cell.std_snr_db = std::sqrt(var / n);
}

}  // namespace

SweepCell& SweepGrid::cell(int fi, int li, int ti) {
    return cells[cell_index(*this, fi, li, ti)];
}

const SweepCell& SweepGrid::cell(int fi, int li, int ti) const {
    return cells[cell_index(*this, fi, li, ti)];
}

SweepGrid run_sweep(const std::vector<ImagePair>& corpus,
                    const std::vector<std::string>& families,
                    const std::vector<int>& levels, const std::vector<int>& thresholds,
                    int jobs) {
    if (corpus.empty()) throw std::invalid_argument("sweep corpus is empty");
    if (families.empty() || levels.empty() || thresholds.empty())
        throw std::invalid_argument("sweep axes must be non-empty");
    for (size_t i = 0; i < corpus.size(); ++i)
        if (corpus[i].clean.width() != corpus[i].noisy.width() ||
            corpus[i].clean.height() != corpus[i].noisy.height())
            throw std::invalid_argument("sweep pair " + std::to_string(i) +
                                        ": clean/noisy dimensions differ");

    SweepGrid grid;
    grid.families = families;
    grid.levels = levels;
    grid.thresholds = thresholds;
    grid.corpus_size = static_cast<int>(corpus.size());
    grid.cells.assign(families.size() * levels.size() * thresholds.size(), SweepCell{});
    for (auto& c : grid.cells) c.image_snr_db.assign(corpus.size(), 0.0);

    // One work item per (family, level, image): the DWT pyramid is shared
    // across all thresholds of the cell row.
    struct Item {
        int fi, li;
        size_t img;
    };
    std::vector<Item> items;
    for (int fi = 0; fi < static_cast<int>(families.size()); ++fi)
        for (int li = 0; li < static_cast<int>(levels.size()); ++li)
            for (size_t img = 0; img < corpus.size(); ++img)
                items.push_back({fi, li, img});

    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_msg;
    std::mutex error_mu;

    auto worker = [&] {
        for (;;) {
            size_t idx = next.fetch_add(1);
            if (idx >= items.size() || failed.load()) return;
            const Item& it = items[idx];
            try {
                QuadFilterBank bank = filter_bank(grid.families[it.fi]);
                CoefficientPyramid pyr =
                    dwt2(corpus[it.img].noisy, bank, grid.levels[it.li]);
                for (int ti = 0; ti < static_cast<int>(grid.thresholds.size()); ++ti) {
                    double t = grid.thresholds[ti] / 255.0;
                    CoefficientPyramid shrunk =
                        threshold_details(pyr, t, ThresholdMode::Soft);
                    Image den = idwt2(shrunk, bank, true);
                    grid.cell(it.fi, it.li, ti).image_snr_db[it.img] =
                        snr_db(corpus[it.img].clean, den);
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!failed.exchange(true)) {
                    std::ostringstream msg;
                    msg << "sweep cell (" << grid.families[it.fi] << ", level "
                        << grid.levels[it.li] << "), image " << it.img << ": " << e.what();
                    error_msg = msg.str();
                }
                return;
            }
        }
    };

    int n_workers = std::max(1, jobs);
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw std::runtime_error(error_msg);

    for (auto& cell : grid.cells) finalize_cell(cell);
    exceedance_counts(grid);
    return grid;
}

void exceedance_counts(SweepGrid& grid) {
    for (int li = 0; li < static_cast<int>(grid.levels.size()); ++li) {
        double level_max = -std::numeric_limits<double>::infinity();
        for (int fi = 0; fi < static_cast<int>(grid.families.size()); ++fi)
            for (int ti = 0; ti < static_cast<int>(grid.thresholds.size()); ++ti) {
                const SweepCell& c = grid.cell(fi, li, ti);
                if (c.n_images > 0) level_max = std::max(level_max, c.mean_snr_db);
            }
        for (int fi = 0; fi < static_cast<int>(grid.families.size()); ++fi)
            for (int ti = 0; ti < static_cast<int>(grid.thresholds.size()); ++ti) {
                SweepCell& c = grid.cell(fi, li, ti);
                c.exceed_count = 0;
                for (double v : c.image_snr_db)
                    if (v > level_max) ++c.exceed_count;
            }
    }
}

DenoiseSpec select_spec(const SweepGrid& grid) {
    if (grid.cells.empty()) throw std::invalid_argument("select_spec: empty grid");

    // Level: flattest mean_snr response over the 40..60 threshold band.
    std::vector<int> band;
    for (int ti = 0; ti < static_cast<int>(grid.thresholds.size()); ++ti)
        if (grid.thresholds[ti] >= 40 && grid.thresholds[ti] <= 60) band.push_back(ti);
    if (band.empty())
        for (int ti = 0; ti < static_cast<int>(grid.thresholds.size()); ++ti)
            band.push_back(ti);

    int best_li = 0;
    double best_sens = std::numeric_limits<double>::infinity();
    for (int li = 0; li < static_cast<int>(grid.levels.size()); ++li) {
        double total = 0.0;
        for (int fi = 0; fi < static_cast<int>(grid.families.size()); ++fi) {
            double sum = 0.0, sq = 0.0;
            for (int ti : band) {
                double m = grid.cell(fi, li, ti).mean_snr_db;
                sum += m;
                sq += m * m;
            }
            double n = static_cast<double>(band.size());
            double var = sq / n - (sum / n) * (sum / n);
            total += std::sqrt(std::max(0.0, var));
        }
        double sens = total / grid.families.size();
        if (sens < best_sens) {
            best_sens = sens;
            best_li = li;
        }
    }

    // Threshold: largest total exceed count at the chosen level.
    int best_ti = 0;
    long best_total = -1;
    for (int ti = 0; ti < static_cast<int>(grid.thresholds.size()); ++ti) {
        long total = 0;
        for (int fi = 0; fi < static_cast<int>(grid.families.size()); ++fi)
            total += grid.cell(fi, best_li, ti).exceed_count;
        if (total > best_total) {
            best_total = total;
            best_ti = ti;
        }
    }

    // Family: per-image argmax tally at the chosen (level, threshold).
    std::vector<int> tally(grid.families.size(), 0);
    for (int img = 0; img < grid.corpus_size; ++img) {
        int best_fi = -1;
        double best_snr = -std::numeric_limits<double>::infinity();
        for (int fi = 0; fi < static_cast<int>(grid.families.size()); ++fi) {
            double v = grid.cell(fi, best_li, best_ti).image_snr_db[img];
            if (v > best_snr) {
                best_snr = v;
                best_fi = fi;
            }
        }
        if (best_fi >= 0) ++tally[best_fi];
    }
    auto filter_len = [](const std::string& family) {
        return static_cast<int>(filter_bank(family).analysis_low.size());
    };
    int best_fi = 0;
    for (int fi = 1; fi < static_cast<int>(grid.families.size()); ++fi) {
        if (tally[fi] > tally[best_fi]) {
            best_fi = fi;
        } else if (tally[fi] == tally[best_fi]) {
            int a = filter_len(grid.families[fi]), b = filter_len(grid.families[best_fi]);
            if (a < b || (a == b && grid.families[fi] < grid.families[best_fi]))
                best_fi = fi;
        }
    }

    DenoiseSpec spec;
    spec.family = grid.families[best_fi];
    spec.level = grid.levels[best_li];
    spec.threshold = grid.thresholds[best_ti];
    spec.mode = ThresholdMode::Soft;
    return spec;
}

std::string grid_to_csv(const SweepGrid& grid) {
    std::ostringstream out;
    out << "family,level,threshold,mean_snr_db,std_snr_db,exceed_count,n_images\n";
    char buf[64];
    for (int fi = 0; fi < static_cast<int>(grid.families.size()); ++fi)
        for (int li = 0; li < static_cast<int>(grid.levels.size()); ++li)
            for (int ti = 0; ti < static_cast<int>(grid.thresholds.size()); ++ti) {
                const SweepCell& c = grid.cell(fi, li, ti);
                out << grid.families[fi] << ',' << grid.levels[li] << ','
                    << grid.thresholds[ti] << ',';
                if (std::isinf(c.mean_snr_db)) {
                    out << "inf,";
                } else {
                    std::snprintf(buf, sizeof(buf), "%.6f", c.mean_snr_db);
                    out << buf << ',';
                }
                std::snprintf(buf, sizeof(buf), "%.6f", c.std_snr_db);
                out << buf << ',' << c.exceed_count << ',' << c.n_images << '\n';
            }
    return out.str();
}

}  // namespace lus
