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

#include "lard_forge/scenario_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "lard_forge/errors.hpp"

namespace lard_forge {

namespace {

constexpr const char* kLabelsCsvHeader =
    "image_id,airport_icao,runway_id,"
    "xA,yA,xB,yB,xC,yC,xD,yD,"
    "bbox_xmin,bbox_ymin,bbox_xmax,bbox_ymax,"
    "fill_ratio,aspect_ratio,visibility,"
    "slant_distance_m,along_track_m,"
    "lateral_path_deg,vertical_path_deg,yaw_deg,pitch_deg,roll_deg";

double quantize(double v, double scale) { return std::round(v * scale) / scale; }

std::string fmt(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

double to_double(const std::string& field, const std::string& where) {
    double value = 0.0;
    const char* b = field.data();
    const char* e = b + field.size();
    auto [ptr, ec] = std::from_chars(b, e, value);
    if (ec != std::errc{} || ptr != e || field.empty()) {
        throw ParseError(where + ": not a number: '" + field + "'");
    }
    return value;
}

double require_number(const nlohmann::json& frame, const char* field, std::size_t index) {
    auto it = frame.find(field);
    if (it == frame.end()) {
        throw SchemaError("scenario frame " + std::to_string(index) + ": missing field '" +
                          field + "'");
    }
    if (!it->is_number()) {
        throw SchemaError("scenario frame " + std::to_string(index) + ": field '" + field +
                          "' is not a number");
    }
    const double v = it->get<double>();
    if (!std::isfinite(v)) {
        throw RangeError("scenario frame " + std::to_string(index) + ": field '" + field +
                         "' is not finite");
    }
    return v;
}

void check_frame_bounds(const ScenarioFrame& f, std::size_t index) {
    const std::string where = "scenario frame " + std::to_string(index);
    if (f.latitude_deg < -90.0 || f.latitude_deg > 90.0) {
        throw RangeError(where + ": latitude outside [-90, 90]");
    }
    if (f.altitude_m >= 20000.0 || f.altitude_m <= -5000.0) {
        throw RangeError(where + ": altitude outside (-5 km, 20 km)");
    }
    if (std::abs(f.vertical_angle_deg) > 90.0) {
        throw RangeError(where + ": vertical angle outside [-90, 90]");
    }
    if (std::abs(f.roll_deg) > 180.0) {
        throw RangeError(where + ": roll outside [-180, 180]");
    }
    if (f.width < 1 || f.height < 1) {
        throw RangeError(where + ": output dimensions must be >= 1 px");
    }
    if (!(f.fov_deg > 0.0) || !(f.fov_deg < 180.0)) {
        throw RangeError(where + ": field of view outside (0, 180)");
    }
}

}  // namespace

ScenarioDocument build_scenario(const std::vector<CameraPose>& poses, const Intrinsics& intr,
                                std::vector<std::string> frame_ids) {
    if (!frame_ids.empty() && frame_ids.size() != poses.size()) {
        throw ValidationError("build_scenario: frame_ids length does not match poses");
    }
    ScenarioDocument doc;
    doc.frames.reserve(poses.size());
    for (std::size_t i = 0; i < poses.size(); ++i) {
        const CameraPose& cp = poses[i];
        ScenarioFrame f;
        if (frame_ids.empty()) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "frame_%06zu", i);
            f.frame_id = buf;
        } else {
            f.frame_id = std::move(frame_ids[i]);
        }
        f.longitude_deg = cp.position.longitude_deg;
        f.latitude_deg = cp.position.latitude_deg;
        f.altitude_m = cp.position.altitude_m;
        // Renderer-convention mapping: horizontal angle = absolute heading,
        // vertical angle = pitch.
        f.horizontal_angle_deg = cp.heading_deg;
        f.vertical_angle_deg = cp.pitch_deg;
        f.roll_deg = cp.roll_deg;
        f.fov_deg = intr.fov_deg;
        f.width = intr.width;
        f.height = intr.height;
        doc.frames.push_back(std::move(f));
    }
    return doc;
}

std::string serialize_scenario(const ScenarioDocument& doc) {
    nlohmann::ordered_json root;
    root["frames"] = nlohmann::ordered_json::array();
    for (const auto& f : doc.frames) {
        nlohmann::ordered_json j;
        j["frame_id"] = f.frame_id;
        j["longitude"] = quantize(f.longitude_deg, 1e12);
        j["latitude"] = quantize(f.latitude_deg, 1e12);
        j["altitude"] = quantize(f.altitude_m, 1e7);
        j["horizontal_angle"] = quantize(f.horizontal_angle_deg, 1e9);
        j["vertical_angle"] = quantize(f.vertical_angle_deg, 1e9);
        j["roll"] = quantize(f.roll_deg, 1e9);
        j["fov_deg"] = quantize(f.fov_deg, 1e9);
        j["width"] = f.width;
        j["height"] = f.height;
        root["frames"].push_back(std::move(j));
    }
    return root.dump(2) + "\n";
}

std::string emit_scenario(const std::vector<CameraPose>& poses, const Intrinsics& intr,
                          std::vector<std::string> frame_ids) {
    return serialize_scenario(build_scenario(poses, intr, std::move(frame_ids)));
}

ScenarioDocument parse_scenario_json(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scenario: invalid JSON: ") + e.what());
    }
    if (!root.is_object() || !root.contains("frames") || !root["frames"].is_array()) {
        throw SchemaError("scenario: document must be an object with a 'frames' array");
    }

    ScenarioDocument doc;
    std::size_t index = 0;
    for (const auto& jf : root["frames"]) {
        if (!jf.is_object()) {
            throw SchemaError("scenario frame " + std::to_string(index) + ": not an object");
        }
        ScenarioFrame f;
        auto id_it = jf.find("frame_id");
        if (id_it == jf.end() || !id_it->is_string()) {
            throw SchemaError("scenario frame " + std::to_string(index) +
                              ": missing field 'frame_id'");
        }
        f.frame_id = id_it->get<std::string>();
        f.longitude_deg = require_number(jf, "longitude", index);
        f.latitude_deg = require_number(jf, "latitude", index);
        f.altitude_m = require_number(jf, "altitude", index);
        f.horizontal_angle_deg = wrap_degrees_360(require_number(jf, "horizontal_angle", index));
        f.vertical_angle_deg = require_number(jf, "vertical_angle", index);
        f.roll_deg = require_number(jf, "roll", index);
        f.fov_deg = require_number(jf, "fov_deg", index);
        f.width = static_cast<int>(require_number(jf, "width", index));
        f.height = static_cast<int>(require_number(jf, "height", index));

        // Tolerant longitude wrap for externally produced metadata.
        while (f.longitude_deg > 180.0) f.longitude_deg -= 360.0;
        while (f.longitude_deg <= -180.0) f.longitude_deg += 360.0;
        check_frame_bounds(f, index);
        doc.frames.push_back(std::move(f));
        ++index;
    }
    return doc;
}

std::vector<CameraPose> parse_metadata(const std::string& text, const RunwayFrame& frame) {
    const ScenarioDocument doc = parse_scenario_json(text);
    std::vector<CameraPose> poses;
    poses.reserve(doc.frames.size());
    for (const auto& f : doc.frames) {
        poses.push_back(camera_pose_from_geodetic(
            {f.latitude_deg, f.longitude_deg, f.altitude_m}, f.horizontal_angle_deg,
            f.vertical_angle_deg, f.roll_deg, frame));
    }
    return poses;
}

std::string labels_to_csv(const std::vector<FrameLabel>& labels) {
    std::string out = kLabelsCsvHeader;
    out += '\n';
    for (const auto& l : labels) {
        out += l.image_id;
        out += ',';
        out += l.airport_icao;
        out += ',';
        out += l.runway_id;
        for (const auto& c : l.corners) {
            out += ',';
            out += fmt(c.u, 3);
            out += ',';
            out += fmt(c.v, 3);
        }
        out += ',';
        out += fmt(l.bbox.x_min, 3);
        out += ',';
        out += fmt(l.bbox.y_min, 3);
        out += ',';
        out += fmt(l.bbox.x_max, 3);
        out += ',';
        out += fmt(l.bbox.y_max, 3);
        out += ',';
        out += fmt(l.fill_ratio, 6);
        out += ',';
        out += fmt(l.aspect_ratio, 6);
        out += ',';
        out += to_string(l.visibility);
        out += ',';
        out += fmt(l.slant_distance_m, 6);
        out += ',';
        out += fmt(l.pose.along_track_m, 6);
        out += ',';
        out += fmt(l.pose.lateral_path_deg, 9);
        out += ',';
        out += fmt(l.pose.vertical_path_deg, 9);
        out += ',';
        out += fmt(l.pose.yaw_deg, 9);
        out += ',';
        out += fmt(l.pose.pitch_deg, 9);
        out += ',';
        out += fmt(l.pose.roll_deg, 9);
        out += '\n';
    }
    return out;
}

std::string labels_to_jsonl(const std::vector<FrameLabel>& labels) {
    std::string out;
    const char* corner_names = "ABCD";
    for (const auto& l : labels) {
        nlohmann::ordered_json j;
        j["image_id"] = l.image_id;
        j["airport_icao"] = l.airport_icao;
        j["runway_id"] = l.runway_id;
        for (int c = 0; c < 4; ++c) {
            j[std::string("x") + corner_names[c]] = quantize(l.corners[c].u, 1e3);
            j[std::string("y") + corner_names[c]] = quantize(l.corners[c].v, 1e3);
        }
        j["bbox_xmin"] = quantize(l.bbox.x_min, 1e3);
        j["bbox_ymin"] = quantize(l.bbox.y_min, 1e3);
        j["bbox_xmax"] = quantize(l.bbox.x_max, 1e3);
        j["bbox_ymax"] = quantize(l.bbox.y_max, 1e3);
        j["fill_ratio"] = quantize(l.fill_ratio, 1e6);
        j["aspect_ratio"] = quantize(l.aspect_ratio, 1e6);
        j["visibility"] = to_string(l.visibility);
        j["slant_distance_m"] = quantize(l.slant_distance_m, 1e6);
        j["along_track_m"] = quantize(l.pose.along_track_m, 1e6);
        j["lateral_path_deg"] = quantize(l.pose.lateral_path_deg, 1e9);
        j["vertical_path_deg"] = quantize(l.pose.vertical_path_deg, 1e9);
        j["yaw_deg"] = quantize(l.pose.yaw_deg, 1e9);
        j["pitch_deg"] = quantize(l.pose.pitch_deg, 1e9);
        j["roll_deg"] = quantize(l.pose.roll_deg, 1e9);
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<FrameLabel> labels_from_csv(const std::string& text, int image_width,
                                        int image_height) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("labels: empty document (header row required)");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kLabelsCsvHeader) {
        throw ParseError("labels: CSV header does not match the expected schema");
    }

    std::vector<FrameLabel> labels;
    int row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row;
        const std::string where = "labels row " + std::to_string(row);

        std::vector<std::string> fields;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(cur);
        if (fields.size() != 25) {
            throw ParseError(where + ": expected 25 fields, got " +
                             std::to_string(fields.size()));
        }

        FrameLabel l;
        l.image_id = fields[0];
        l.airport_icao = fields[1];
        l.runway_id = fields[2];
        for (int c = 0; c < 4; ++c) {
            l.corners[c].u = to_double(fields[3 + 2 * c], where);
            l.corners[c].v = to_double(fields[4 + 2 * c], where);
        }
        l.bbox.x_min = to_double(fields[11], where);
        l.bbox.y_min = to_double(fields[12], where);
        l.bbox.x_max = to_double(fields[13], where);
        l.bbox.y_max = to_double(fields[14], where);
        l.fill_ratio = to_double(fields[15], where);
        l.aspect_ratio = to_double(fields[16], where);
        l.visibility = visibility_from_string(fields[17]);
        l.slant_distance_m = to_double(fields[18], where);
        l.pose.along_track_m = to_double(fields[19], where);
        l.pose.lateral_path_deg = to_double(fields[20], where);
        l.pose.vertical_path_deg = to_double(fields[21], where);
        l.pose.yaw_deg = to_double(fields[22], where);
        l.pose.pitch_deg = to_double(fields[23], where);
        l.pose.roll_deg = to_double(fields[24], where);
        l.image_width = image_width;
        l.image_height = image_height;
        labels.push_back(std::move(l));
    }
    return labels;
}

void write_labels(const std::vector<FrameLabel>& labels,
                  const std::filesystem::path& csv_path,
                  const std::filesystem::path& jsonl_path) {
    write_text_file(csv_path, labels_to_csv(labels));
    write_text_file(jsonl_path, labels_to_jsonl(labels));
}

std::vector<FrameLabel> read_labels(const std::filesystem::path& csv_path, int image_width,
                                    int image_height) {
    return labels_from_csv(read_text_file(csv_path), image_width, image_height);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failure: " + path.string());
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failure: " + path.string());
}

}  // namespace lard_forge
