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

#include "lard_forge/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>

#include "lard_forge/errors.hpp"
#include "lard_forge/scenario_io.hpp"

namespace lard_forge {

namespace {

// Per-slot stream stride; resample attempt a of global slot g draws from
// stream g * kAttemptStride + a.
constexpr std::uint64_t kAttemptStride = 1024;

std::string zero_padded(std::size_t n) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%06zu", n);
    return buf;
}

std::uint64_t parse_uint64(const nlohmann::json& v, const char* name) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    }
    throw ParseError(std::string("config: field '") + name +
                     "' must be a non-negative integer");
}

int parse_int(const nlohmann::json& v, const char* name) {
    if (!v.is_number_integer()) {
        throw ParseError(std::string("config: field '") + name + "' must be an integer");
    }
    return v.get<int>();
}

/// Removes every file it was told about unless release() is called.
class OutputTracker {
public:
    ~OutputTracker() {
        if (released_) return;
        for (const auto& p : paths_) {
            std::error_code ec;
            std::filesystem::remove(p, ec);
        }
    }
    void track(const std::filesystem::path& p) { paths_.push_back(p); }
    void release() { released_ = true; }

private:
    std::vector<std::filesystem::path> paths_;
    bool released_ = false;
};

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned count = std::min<std::size_t>(threads, n);
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<RunwayDefinition> select_runways(const RunConfig& config) {
    const auto all = load_runway_db(read_text_file(config.runway_db_path));
    if (config.runways.empty()) {
        if (all.empty()) {
            throw ValidationError("runway database contains no runways");
        }
        return all;
    }
    std::vector<RunwayDefinition> selected;
    for (const auto& sel : config.runways) {
        auto it = std::find_if(all.begin(), all.end(), [&](const RunwayDefinition& r) {
            return r.airport_icao + "/" + r.runway_id == sel;
        });
        if (it == all.end()) {
            throw ValidationError("selected runway '" + sel + "' not found in database");
        }
        selected.push_back(*it);
    }
    return selected;
}

nlohmann::ordered_json rejected_json(const GenerationOutput& gen) {
    nlohmann::ordered_json root;
    root["runways"] = nlohmann::ordered_json::array();
    for (const auto& s : gen.summaries) {
        nlohmann::ordered_json j;
        j["airport_icao"] = s.airport_icao;
        j["runway_id"] = s.runway_id;
        j["accepted"] = s.accepted;
        j["rejected_attempts"] = s.rejected_attempts;
        j["exhausted_slots"] = s.exhausted_slots;
        root["runways"].push_back(std::move(j));
    }
    return root;
}

void write_generation_labels(const RunConfig& config, const GenerationOutput& gen,
                             OutputTracker& tracker) {
    const auto csv = config.output_dir / "labels.csv";
    const auto jsonl = config.output_dir / "labels.jsonl";
    const auto rejected = config.output_dir / "rejected.json";
    tracker.track(csv);
    tracker.track(jsonl);
    tracker.track(rejected);
    write_labels(gen.labels, csv, jsonl);
    write_text_file(rejected, rejected_json(gen).dump(2) + "\n");
}

void write_generation_scenario(const RunConfig& config, const GenerationOutput& gen,
                               OutputTracker& tracker) {
    const auto path = config.output_dir / "scenario.json";
    tracker.track(path);
    write_text_file(path, emit_scenario(gen.poses, config.intrinsics(), gen.frame_ids));
}

void run_stats(const RunConfig& config, const std::vector<FrameLabel>& labels,
               OutputTracker& tracker, std::ostream& out) {
    QaReport report = compute_stats(labels);
    report.claim_checks = check_claims(report, config.thresholds);
    for (const char* name : {"qa_report.json", "centers.csv", "aspect_hist.csv",
                             "fill_hist.csv", "area_hist.csv", "slant_hist.csv",
                             "cone_points.csv"}) {
        tracker.track(config.output_dir / name);
    }
    write_qa_report(report, config.output_dir);
    for (const auto& c : report.claim_checks) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s %s: %.3f (threshold %.2f)\n",
                      c.pass ? "PASS" : "FAIL", c.name.c_str(), c.fraction, c.threshold);
        out << buf;
    }
}

}  // namespace

void RunConfig::validate() const {
    if (runway_db_path.empty()) {
        throw ValidationError("config: runway_db_path is required");
    }
    if (frames_per_runway < 1) {
        throw ValidationError("config: frames_per_runway must be >= 1");
    }
    if (image_width < 1 || image_height < 1) {
        throw ValidationError("config: image dimensions must be >= 1 px");
    }
    if (crop_top < 0 || crop_bottom < 0 || crop_top + crop_bottom >= image_height) {
        throw ValidationError("config: crop bands must be non-negative and leave image height");
    }
    if (max_resample_attempts < 1 ||
        max_resample_attempts > static_cast<int>(kAttemptStride)) {
        throw ValidationError("config: max_resample_attempts must be in [1, 1024]");
    }
    cone.validate();
}

RunConfig RunConfig::from_json(const nlohmann::json& j,
                               const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw ParseError("config: expected a JSON object");
    RunConfig c;
    auto resolve = [&](const std::filesystem::path& p) {
        return p.is_absolute() ? p : base_dir / p;
    };
    if (j.contains("runway_db_path")) {
        c.runway_db_path = resolve(j["runway_db_path"].get<std::string>());
    }
    if (j.contains("runways")) {
        if (!j["runways"].is_array()) {
            throw ParseError("config: field 'runways' must be an array of \"ICAO/ID\" strings");
        }
        for (const auto& r : j["runways"]) c.runways.push_back(r.get<std::string>());
    }
    if (j.contains("frames_per_runway")) {
        c.frames_per_runway = parse_int(j["frames_per_runway"], "frames_per_runway");
    }
    if (j.contains("seed")) c.seed = parse_uint64(j["seed"], "seed");
    if (j.contains("cone")) c.cone = ConeParams::from_json(j["cone"]);
    if (j.contains("image_width")) c.image_width = parse_int(j["image_width"], "image_width");
    if (j.contains("image_height")) {
        c.image_height = parse_int(j["image_height"], "image_height");
    }
    if (j.contains("fov_deg")) c.fov_deg = j["fov_deg"].get<double>();
    if (j.contains("fov_axis")) {
        const std::string axis = j["fov_axis"].get<std::string>();
        if (axis == "vertical") {
            c.fov_axis = FovAxis::Vertical;
        } else if (axis == "horizontal") {
            c.fov_axis = FovAxis::Horizontal;
        } else {
            throw ParseError("config: fov_axis must be 'vertical' or 'horizontal'");
        }
    }
    if (j.contains("crop_top")) c.crop_top = parse_int(j["crop_top"], "crop_top");
    if (j.contains("crop_bottom")) c.crop_bottom = parse_int(j["crop_bottom"], "crop_bottom");
    if (j.contains("output_dir")) c.output_dir = resolve(j["output_dir"].get<std::string>());
    if (j.contains("max_resample_attempts")) {
        c.max_resample_attempts =
            parse_int(j["max_resample_attempts"], "max_resample_attempts");
    }
    if (j.contains("claim_thresholds")) {
        const auto& t = j["claim_thresholds"];
        if (t.contains("aspect_min_fraction")) {
            c.thresholds.aspect_min_fraction = t["aspect_min_fraction"].get<double>();
        }
        if (t.contains("fill_min_fraction")) {
            c.thresholds.fill_min_fraction = t["fill_min_fraction"].get<double>();
        }
        if (t.contains("area_min_fraction")) {
            c.thresholds.area_min_fraction = t["area_min_fraction"].get<double>();
        }
    }
    c.validate();
    return c;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("config " + path.string() + ": invalid JSON: " + e.what());
    }
    return from_json(j, path.has_parent_path() ? path.parent_path()
                                               : std::filesystem::path("."));
}

Intrinsics RunConfig::intrinsics() const {
    return intrinsic_from_fov(image_width, image_height, fov_deg, fov_axis);
}

unsigned effective_threads() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("LARD_FORGE_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && cap < static_cast<long>(n)) n = static_cast<unsigned>(cap);
    }
    return n;
}

GenerationOutput generate_frames(const RunConfig& config) {
    config.validate();
    GenerationOutput gen;
    gen.selected = select_runways(config);
    const Intrinsics intr = config.intrinsics();

    struct RunwayContext {
        RunwayFrame frame;
    };
    std::vector<RunwayContext> contexts;
    contexts.reserve(gen.selected.size());
    for (const auto& r : gen.selected) contexts.push_back({runway_frame(r)});

    const std::size_t slots_per_runway = static_cast<std::size_t>(config.frames_per_runway);
    const std::size_t total = gen.selected.size() * slots_per_runway;

    struct SlotResult {
        bool filled = false;
        FrameLabel label;
        CameraPose pose;
        std::int64_t rejected_attempts = 0;
    };
    std::vector<SlotResult> slots(total);

    parallel_for(total, effective_threads(), [&](std::size_t g) {
        const std::size_t ri = g / slots_per_runway;
        const RunwayDefinition& runway = gen.selected[ri];
        const RunwayFrame& frame = contexts[ri].frame;
        SlotResult& slot = slots[g];
        for (int attempt = 0; attempt < config.max_resample_attempts; ++attempt) {
            const std::uint64_t stream = static_cast<std::uint64_t>(g) * kAttemptStride +
                                         static_cast<std::uint64_t>(attempt);
            const ApproachPose pose = sample_pose(config.cone, config.seed, stream);
            FrameLabel label = annotate_frame(pose, runway, frame, intr, config.crop_top,
                                              config.crop_bottom);
            if (label.visibility != Visibility::FullyVisible) {
                ++slot.rejected_attempts;
                continue;
            }
            slot.label = apply_watermark_crop(label, config.crop_top, config.crop_bottom);
            slot.pose = pose_to_camera(pose, frame);
            slot.filled = true;
            return;
        }
    });

    gen.labels.reserve(total);
    gen.poses.reserve(total);
    gen.frame_ids.reserve(total);
    for (std::size_t ri = 0; ri < gen.selected.size(); ++ri) {
        const RunwayDefinition& runway = gen.selected[ri];
        GenerationOutput::RunwaySummary summary;
        summary.airport_icao = runway.airport_icao;
        summary.runway_id = runway.runway_id;
        for (std::size_t s = 0; s < slots_per_runway; ++s) {
            SlotResult& slot = slots[ri * slots_per_runway + s];
            summary.rejected_attempts += slot.rejected_attempts;
            if (!slot.filled) {
                ++summary.exhausted_slots;
                continue;
            }
            ++summary.accepted;
            const std::string id =
                runway.airport_icao + "_" + runway.runway_id + "_" + zero_padded(s);
            slot.label.image_id = id;
            gen.labels.push_back(std::move(slot.label));
            gen.poses.push_back(slot.pose);
            gen.frame_ids.push_back(id);
        }
        gen.summaries.push_back(std::move(summary));
    }
    return gen;
}

int cmd_validate_db(const RunConfig& config, std::ostream& out) {
    const auto reports = validate_runway_db(read_text_file(config.runway_db_path));
    int failures = 0;
    for (const auto& r : reports) {
        if (r.ok) {
            out << "OK   " << r.airport_icao << "/" << r.runway_id << ": " << r.message
                << "\n";
        } else {
            ++failures;
            out << "FAIL row " << r.row << ": " << r.message << "\n";
        }
    }
    out << reports.size() << " runways, " << failures << " failed\n";
    return failures;
}

void cmd_gen_scenario(const RunConfig& config, std::ostream& out) {
    std::filesystem::create_directories(config.output_dir);
    OutputTracker tracker;
    const GenerationOutput gen = generate_frames(config);
    write_generation_scenario(config, gen, tracker);
    tracker.release();
    out << "scenario: " << gen.poses.size() << " frames -> "
        << (config.output_dir / "scenario.json").string() << "\n";
}

void cmd_annotate(const RunConfig& config,
                  const std::optional<std::filesystem::path>& metadata_path,
                  std::ostream& out) {
    std::filesystem::create_directories(config.output_dir);
    OutputTracker tracker;

    if (!metadata_path) {
        const GenerationOutput gen = generate_frames(config);
        write_generation_labels(config, gen, tracker);
        tracker.release();
        out << "labels: " << gen.labels.size() << " frames -> "
            << (config.output_dir / "labels.csv").string() << "\n";
        return;
    }

    // Renderer metadata path: frame ids carry "<ICAO>_<RUNWAY>_<index>".
    const auto all = load_runway_db(read_text_file(config.runway_db_path));
    const ScenarioDocument doc = parse_scenario_json(read_text_file(*metadata_path));
    const Intrinsics intr = config.intrinsics();

    struct PerRunway {
        const RunwayDefinition* runway;
        RunwayFrame frame;
    };
    std::vector<std::pair<std::string, PerRunway>> cache;
    std::vector<FrameLabel> labels;
    labels.reserve(doc.frames.size());
    for (const auto& f : doc.frames) {
        const auto first = f.frame_id.find('_');
        const auto last = f.frame_id.rfind('_');
        if (first == std::string::npos || last == first) {
            throw ValidationError("metadata frame id '" + f.frame_id +
                                  "' does not follow <ICAO>_<RUNWAY>_<index>");
        }
        const std::string key = f.frame_id.substr(0, last);
        const std::string icao = f.frame_id.substr(0, first);
        const std::string rw_id = f.frame_id.substr(first + 1, last - first - 1);

        PerRunway* ctx = nullptr;
        for (auto& [k, v] : cache) {
            if (k == key) ctx = &v;
        }
        if (!ctx) {
            auto it = std::find_if(all.begin(), all.end(), [&](const RunwayDefinition& r) {
                return r.airport_icao == icao && r.runway_id == rw_id;
            });
            if (it == all.end()) {
                throw ValidationError("metadata frame '" + f.frame_id +
                                      "' references unknown runway " + icao + "/" + rw_id);
            }
            cache.emplace_back(key, PerRunway{&*it, runway_frame(*it)});
            ctx = &cache.back().second;
        }

        const CameraPose cp = camera_pose_from_geodetic(
            {f.latitude_deg, f.longitude_deg, f.altitude_m}, f.horizontal_angle_deg,
            f.vertical_angle_deg, f.roll_deg, ctx->frame);
        FrameLabel label =
            annotate_camera_frame(cp, approach_from_camera(cp, ctx->frame), *ctx->runway,
                                  ctx->frame, intr, config.crop_top, config.crop_bottom);
        label = apply_watermark_crop(label, config.crop_top, config.crop_bottom);
        label.image_id = f.frame_id;
        labels.push_back(std::move(label));
    }

    const auto csv = config.output_dir / "labels.csv";
    const auto jsonl = config.output_dir / "labels.jsonl";
    tracker.track(csv);
    tracker.track(jsonl);
    write_labels(labels, csv, jsonl);
    tracker.release();
    out << "labels: " << labels.size() << " frames -> " << csv.string() << "\n";
}

void cmd_stats(const RunConfig& config,
               const std::optional<std::filesystem::path>& labels_csv, std::ostream& out) {
    std::filesystem::create_directories(config.output_dir);
    OutputTracker tracker;
    const auto path = labels_csv.value_or(config.output_dir / "labels.csv");
    const int cropped_height = config.image_height - config.crop_top - config.crop_bottom;
    const auto labels = read_labels(path, config.image_width, cropped_height);
    run_stats(config, labels, tracker, out);
    tracker.release();
}

void cmd_pipeline(const RunConfig& config, std::ostream& out) {
    std::filesystem::create_directories(config.output_dir);
    OutputTracker tracker;
    const GenerationOutput gen = generate_frames(config);
    write_generation_scenario(config, gen, tracker);
    write_generation_labels(config, gen, tracker);
    run_stats(config, gen.labels, tracker, out);
    tracker.release();
    out << "pipeline: " << gen.labels.size() << " frames -> " << config.output_dir.string()
        << "\n";
}

}  // namespace lard_forge
