// Copyright 2026 The lard-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lard_forge/annotation.hpp"

namespace lard_forge {

/// Fixed-bin histogram. Values outside [lo, hi] are clamped into the edge
/// bins so counts always sum to the number of added values.
struct Histogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<std::int64_t> counts;

    Histogram() = default;
    Histogram(double lo_, double hi_, int bins) : lo(lo_), hi(hi_), counts(bins, 0) {}

    void add(double value);
    void merge(const Histogram& other);
    std::int64_t total() const;
    double bin_lo(int i) const;
    double bin_hi(int i) const;
};

/// Claim windows from the dataset-quality analysis: aspect ratios mostly in
/// [0.5, 1.5], fill ratios mostly in [0.2, 0.8], bounding boxes almost all
/// over 25 x 25 px.
inline constexpr double kAspectClaimLo = 0.5;
inline constexpr double kAspectClaimHi = 1.5;
inline constexpr double kFillClaimLo = 0.2;
inline constexpr double kFillClaimHi = 0.8;
inline constexpr double kAreaClaimMinPx2 = 625.0;

struct ClaimThresholds {
    double aspect_min_fraction = 0.70;
    double fill_min_fraction = 0.70;
    double area_min_fraction = 0.95;
};

struct ClaimCheck {
    std::string name;
    double fraction = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

/// Aggregated dataset statistics over the FullyVisible labels of a set.
struct QaReport {
    std::size_t label_count = 0;
    std::size_t fully_visible = 0;
    std::size_t clipped = 0;
    std::size_t behind_camera = 0;
    bool empty_dataset = false;

    std::vector<std::array<double, 2>> center_points;  // normalized (u, v) bbox centers
    Histogram aspect_hist{0.0, 3.0, 30};
    Histogram fill_hist{0.0, 1.0, 20};
    Histogram area_hist_log{1.0, 7.0, 30};  // log10 of bbox area in px^2
    Histogram slant_hist{0.0, 6000.0, 30};
    std::vector<std::array<double, 3>> cone_points;  // (along, cross, height) m

    double aspect_in_range_fraction = 0.0;
    double fill_in_range_fraction = 0.0;
    double area_over_min_fraction = 0.0;

    std::vector<ClaimCheck> claim_checks;
};

/// Pure fold over the labels (permutation of the input leaves every count
/// and histogram unchanged). Labels that are not FullyVisible only feed the
/// visibility counters. Requires image dimensions on visible labels for the
/// center normalization.
QaReport compute_stats(const std::vector<FrameLabel>& labels);

/// Evaluates the three distributional claims against the report; each
/// verdict carries the measured fraction.
std::vector<ClaimCheck> check_claims(const QaReport& report,
                                     const ClaimThresholds& thresholds = {});

/// Writes qa_report.json plus centers.csv, aspect_hist.csv, fill_hist.csv,
/// area_hist.csv, slant_hist.csv and cone_points.csv into the directory.
void write_qa_report(const QaReport& report, const std::filesystem::path& dir);

}  // namespace lard_forge
