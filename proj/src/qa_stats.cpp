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

#include "lard_forge/qa_stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"

#include "lard_forge/errors.hpp"
#include "lard_forge/scenario_io.hpp"

namespace lard_forge {

namespace {

std::string fmt(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

double quantize(double v, double scale) { return std::round(v * scale) / scale; }

std::string histogram_csv(const Histogram& h) {
    std::string out = "bin_lo,bin_hi,count\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        out += fmt(h.bin_lo(static_cast<int>(i)), 6);
        out += ',';
        out += fmt(h.bin_hi(static_cast<int>(i)), 6);
        out += ',';
        out += std::to_string(h.counts[i]);
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json histogram_json(const Histogram& h) {
    nlohmann::ordered_json j;
    j["lo"] = h.lo;
    j["hi"] = h.hi;
    j["bins"] = h.counts.size();
    j["counts"] = h.counts;
    return j;
}

}  // namespace

void Histogram::add(double value) {
    const int bins = static_cast<int>(counts.size());
    const double w = (hi - lo) / bins;
    int idx = static_cast<int>(std::floor((value - lo) / w));
    idx = std::clamp(idx, 0, bins - 1);
    ++counts[idx];
}

void Histogram::merge(const Histogram& other) {
    if (other.counts.size() != counts.size() || other.lo != lo || other.hi != hi) {
        throw ValidationError("Histogram::merge: incompatible binning");
    }
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
}

std::int64_t Histogram::total() const {
    std::int64_t t = 0;
    for (auto c : counts) t += c;
    return t;
}

double Histogram::bin_lo(int i) const {
    return lo + (hi - lo) * i / static_cast<double>(counts.size());
}

double Histogram::bin_hi(int i) const {
    return lo + (hi - lo) * (i + 1) / static_cast<double>(counts.size());
}

QaReport compute_stats(const std::vector<FrameLabel>& labels) {
    QaReport r;
    r.label_count = labels.size();

    std::size_t aspect_in = 0;
    std::size_t fill_in = 0;
    std::size_t area_over = 0;

    for (const auto& l : labels) {
        switch (l.visibility) {
            case Visibility::Clipped:
                ++r.clipped;
                continue;
            case Visibility::BehindCamera:
                ++r.behind_camera;
                continue;
            case Visibility::FullyVisible:
                break;
        }
        ++r.fully_visible;

        if (l.image_width < 1 || l.image_height < 1) {
            throw ValidationError("compute_stats: label '" + l.image_id +
                                  "' lacks image dimensions for center normalization");
        }
        r.center_points.push_back({0.5 * (l.bbox.x_min + l.bbox.x_max) / l.image_width,
                                   0.5 * (l.bbox.y_min + l.bbox.y_max) / l.image_height});

        const double area = l.bbox.area();
        r.aspect_hist.add(l.aspect_ratio);
        r.fill_hist.add(l.fill_ratio);
        r.area_hist_log.add(std::log10(std::max(area, 1e-12)));
        r.slant_hist.add(l.slant_distance_m);

        const double along = l.pose.along_track_m;
        r.cone_points.push_back(
            {along, along * std::tan(deg_to_rad(l.pose.lateral_path_deg)),
             along * std::tan(deg_to_rad(std::abs(l.pose.vertical_path_deg)))});

        if (l.aspect_ratio >= kAspectClaimLo && l.aspect_ratio <= kAspectClaimHi) ++aspect_in;
        if (l.fill_ratio >= kFillClaimLo && l.fill_ratio <= kFillClaimHi) ++fill_in;
        if (area > kAreaClaimMinPx2) ++area_over;
    }

    r.empty_dataset = r.fully_visible == 0;
    if (r.fully_visible > 0) {
        const double n = static_cast<double>(r.fully_visible);
        r.aspect_in_range_fraction = aspect_in / n;
        r.fill_in_range_fraction = fill_in / n;
        r.area_over_min_fraction = area_over / n;
    }
    return r;
}

std::vector<ClaimCheck> check_claims(const QaReport& report, const ClaimThresholds& t) {
    std::vector<ClaimCheck> checks;
    checks.push_back({"aspect_ratio_in_0.5_1.5", report.aspect_in_range_fraction,
                      t.aspect_min_fraction,
                      report.aspect_in_range_fraction >= t.aspect_min_fraction});
    checks.push_back({"fill_ratio_in_0.2_0.8", report.fill_in_range_fraction,
                      t.fill_min_fraction,
                      report.fill_in_range_fraction >= t.fill_min_fraction});
    checks.push_back({"bbox_area_over_625px2", report.area_over_min_fraction,
                      t.area_min_fraction,
                      report.area_over_min_fraction >= t.area_min_fraction});
    return checks;
}

void write_qa_report(const QaReport& report, const std::filesystem::path& dir) {
    nlohmann::ordered_json j;
    j["label_count"] = report.label_count;
    j["fully_visible"] = report.fully_visible;
    j["clipped"] = report.clipped;
    j["behind_camera"] = report.behind_camera;
    j["empty_dataset"] = report.empty_dataset;
    j["aspect_in_range_fraction"] = quantize(report.aspect_in_range_fraction, 1e6);
    j["fill_in_range_fraction"] = quantize(report.fill_in_range_fraction, 1e6);
    j["area_over_min_fraction"] = quantize(report.area_over_min_fraction, 1e6);
    j["claim_checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.claim_checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["fraction"] = quantize(c.fraction, 1e6);
        cj["threshold"] = c.threshold;
        cj["pass"] = c.pass;
        j["claim_checks"].push_back(std::move(cj));
    }
    j["aspect_hist"] = histogram_json(report.aspect_hist);
    j["fill_hist"] = histogram_json(report.fill_hist);
    j["area_hist_log10"] = histogram_json(report.area_hist_log);
    j["slant_hist"] = histogram_json(report.slant_hist);

    write_text_file(dir / "qa_report.json", j.dump(2) + "\n");

    std::string centers = "center_u,center_v\n";
    for (const auto& c : report.center_points) {
        centers += fmt(c[0], 6);
        centers += ',';
        centers += fmt(c[1], 6);
        centers += '\n';
    }
    write_text_file(dir / "centers.csv", centers);

    write_text_file(dir / "aspect_hist.csv", histogram_csv(report.aspect_hist));
    write_text_file(dir / "fill_hist.csv", histogram_csv(report.fill_hist));
    write_text_file(dir / "area_hist.csv", histogram_csv(report.area_hist_log));
    write_text_file(dir / "slant_hist.csv", histogram_csv(report.slant_hist));

    std::string cone = "along_m,cross_m,height_m\n";
    for (const auto& p : report.cone_points) {
        cone += fmt(p[0], 6);
        cone += ',';
        cone += fmt(p[1], 6);
        cone += ',';
        cone += fmt(p[2], 6);
        cone += '\n';
    }
    write_text_file(dir / "cone_points.csv", cone);
}

}  // namespace lard_forge
