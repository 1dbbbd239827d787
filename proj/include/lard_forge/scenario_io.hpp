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

#include <filesystem>
#include <string>
#include <vector>

#include "lard_forge/annotation.hpp"
#include "lard_forge/approach_cone.hpp"
#include "lard_forge/camera.hpp"

namespace lard_forge {

/// One renderer frame: camera position (WGS84), rotation (absolute heading /
/// pitch / roll, mapped to the renderer's horizontal angle, vertical angle
/// and roll), field of view and output dimensions.
struct ScenarioFrame {
    std::string frame_id;
    double longitude_deg = 0.0;
    double latitude_deg = 0.0;
    double altitude_m = 0.0;
    double horizontal_angle_deg = 0.0;
    double vertical_angle_deg = 0.0;
    double roll_deg = 0.0;
    double fov_deg = 0.0;
    int width = 0;
    int height = 0;
};

struct ScenarioDocument {
    std::vector<ScenarioFrame> frames;
};

/// One frame per pose. horizontal_angle carries the absolute camera heading
/// and vertical_angle the pitch; this renderer-convention mapping is kept in
/// this one place so it can be recalibrated. frame_ids, when non-empty, must
/// match poses in length; otherwise ids are generated as frame_000000...
ScenarioDocument build_scenario(const std::vector<CameraPose>& poses,
                                const Intrinsics& intr,
                                std::vector<std::string> frame_ids = {});

/// Deterministic JSON serialization. Values are quantized before dumping:
/// position degrees to 12 decimal places, meters to 7, angles to 9, which
/// keeps the emit/parse round trip under 1e-6 m and 1e-9 degrees.
std::string serialize_scenario(const ScenarioDocument& doc);

/// build + serialize.
std::string emit_scenario(const std::vector<CameraPose>& poses, const Intrinsics& intr,
                          std::vector<std::string> frame_ids = {});

/// Schema-checked parse of a scenario/metadata document. Unknown fields are
/// ignored; a missing required field raises SchemaError naming the field and
/// frame index; non-finite or out-of-bounds values raise RangeError.
ScenarioDocument parse_scenario_json(const std::string& text);

/// Inverse of emit_scenario relative to a runway frame: camera poses rebuilt
/// from the per-frame position and rotation.
std::vector<CameraPose> parse_metadata(const std::string& text, const RunwayFrame& frame);

/// Label serialization: CSV (25 fixed columns) and a JSON-lines mirror with
/// identical field names. Pixel coordinates carry 3 decimal places, meters 6,
/// degrees 9; output is byte-deterministic.
std::string labels_to_csv(const std::vector<FrameLabel>& labels);
std::string labels_to_jsonl(const std::vector<FrameLabel>& labels);

/// Parses a labels CSV. The label schema does not carry image dimensions, so
/// the caller supplies the dimensions the pixel coordinates refer to.
std::vector<FrameLabel> labels_from_csv(const std::string& text, int image_width,
                                        int image_height);

void write_labels(const std::vector<FrameLabel>& labels,
                  const std::filesystem::path& csv_path,
                  const std::filesystem::path& jsonl_path);
std::vector<FrameLabel> read_labels(const std::filesystem::path& csv_path,
                                    int image_width, int image_height);

/// Whole-file helpers; failures raise IoError naming the path.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace lard_forge
