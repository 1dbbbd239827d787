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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "lard_forge/annotation.hpp"
#include "lard_forge/approach_cone.hpp"
#include "lard_forge/camera.hpp"
#include "lard_forge/qa_stats.hpp"
#include "lard_forge/runway_db.hpp"

namespace lard_forge {

/// Full configuration of one generator run. (config, seed) determines every
/// output byte.
struct RunConfig {
    std::filesystem::path runway_db_path;
    std::vector<std::string> runways;  // "ICAO/ID" selectors; empty selects all
    int frames_per_runway = 450;
    std::uint64_t seed = 0;
    ConeParams cone;
    int image_width = 2448;
    int image_height = 2648;
    double fov_deg = 60.0;
    FovAxis fov_axis = FovAxis::Vertical;
    int crop_top = 300;
    int crop_bottom = 300;
    std::filesystem::path output_dir = "out";
    int max_resample_attempts = 100;
    ClaimThresholds thresholds;

    /// Throws ValidationError on out-of-range settings.
    void validate() const;

    /// Reads a config object; omitted fields keep their defaults. Relative
    /// paths are resolved against base_dir.
    static RunConfig from_json(const nlohmann::json& j,
                               const std::filesystem::path& base_dir);
    static RunConfig from_file(const std::filesystem::path& path);

    Intrinsics intrinsics() const;
};

/// Worker count: hardware concurrency, capped by the LARD_FORGE_THREADS
/// environment variable when set.
unsigned effective_threads();

/// Everything produced by the generation stage, in deterministic
/// (runway-major, slot-minor) order. Labels are already rebased onto the
/// cropped image.
struct GenerationOutput {
    std::vector<RunwayDefinition> selected;
    std::vector<FrameLabel> labels;
    std::vector<CameraPose> poses;
    std::vector<std::string> frame_ids;

    struct RunwaySummary {
        std::string airport_icao;
        std::string runway_id;
        std::int64_t accepted = 0;
        std::int64_t rejected_attempts = 0;
        std::int64_t exhausted_slots = 0;
    };
    std::vector<RunwaySummary> summaries;
};

/// Loads the runway database and fills every requested frame slot, resampling
/// poses whose runway is not fully visible (up to max_resample_attempts per
/// slot; exhausted slots are recorded, not filled). Parallel across slots,
/// deterministic regardless of thread count.
GenerationOutput generate_frames(const RunConfig& config);

/// Subcommands. Artifact-writing commands remove partial outputs on failure
/// and throw; validate-db returns the number of failed runways after
/// printing one line per runway.
int cmd_validate_db(const RunConfig& config, std::ostream& out);
void cmd_gen_scenario(const RunConfig& config, std::ostream& out);
void cmd_annotate(const RunConfig& config,
                  const std::optional<std::filesystem::path>& metadata_path,
                  std::ostream& out);
void cmd_stats(const RunConfig& config,
               const std::optional<std::filesystem::path>& labels_csv,
               std::ostream& out);
void cmd_pipeline(const RunConfig& config, std::ostream& out);

}  // namespace lard_forge
