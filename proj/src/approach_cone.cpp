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

#include "lard_forge/approach_cone.hpp"

#include <cmath>
#include <random>

#include "lard_forge/errors.hpp"

namespace lard_forge {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent, reproducible stream per (seed, frame_index).
std::mt19937_64 frame_rng(std::uint64_t seed, std::uint64_t frame_index) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(~frame_index)));
}

/// Box-Muller from raw engine output; avoids std::normal_distribution, whose
/// draw sequence differs between standard libraries.
double standard_normal(std::mt19937_64& rng) {
    const double u1 = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;        // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double truncated_gaussian(std::mt19937_64& rng, const ParamRange& range, double sigma) {
    const double mean = range.midpoint();
    if (sigma <= 0.0) return mean;
    constexpr int kMaxDraws = 1 << 20;
    for (int i = 0; i < kMaxDraws; ++i) {
        const double x = mean + sigma * standard_normal(rng);
        if (range.contains(x)) return x;
    }
    return mean;
}

void check_range(const ParamRange& r, const char* name) {
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
        throw ValidationError(std::string("cone params: range '") + name + "' is empty or non-finite");
    }
}

ParamRange range_from_json(const nlohmann::json& j, const char* name, ParamRange fallback) {
    auto it = j.find(name);
    if (it == j.end()) return fallback;
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number()) {
        throw ParseError(std::string("cone params: field '") + name + "' must be a [lo, hi] array");
    }
    return ParamRange{(*it)[0].get<double>(), (*it)[1].get<double>()};
}

}  // namespace

void ConeParams::validate() const {
    check_range(along_track_nm, "along_track_distance");
    if (along_track_nm.lo < 0.0) {
        throw ValidationError("cone params: along_track_distance must be non-negative");
    }
    check_range(vertical_path_deg, "vertical_path_angle");
    check_range(lateral_path_deg, "lateral_path_angle");
    check_range(yaw_deg, "yaw");
    check_range(pitch_deg, "pitch");
    check_range(roll_deg, "roll");
}

ConeParams ConeParams::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("cone params: expected a JSON object");
    ConeParams p;
    p.along_track_nm = range_from_json(j, "along_track_distance", p.along_track_nm);
    p.vertical_path_deg = range_from_json(j, "vertical_path_angle", p.vertical_path_deg);
    p.lateral_path_deg = range_from_json(j, "lateral_path_angle", p.lateral_path_deg);
    p.yaw_deg = range_from_json(j, "yaw", p.yaw_deg);
    p.pitch_deg = range_from_json(j, "pitch", p.pitch_deg);
    p.roll_deg = range_from_json(j, "roll", p.roll_deg);
    p.validate();
    return p;
}

nlohmann::ordered_json ConeParams::to_json() const {
    nlohmann::ordered_json j;
    j["along_track_distance"] = {along_track_nm.lo, along_track_nm.hi};
    j["vertical_path_angle"] = {vertical_path_deg.lo, vertical_path_deg.hi};
    j["lateral_path_angle"] = {lateral_path_deg.lo, lateral_path_deg.hi};
    j["yaw"] = {yaw_deg.lo, yaw_deg.hi};
    j["pitch"] = {pitch_deg.lo, pitch_deg.hi};
    j["roll"] = {roll_deg.lo, roll_deg.hi};
    return j;
}

ApproachPose sample_pose(const ConeParams& params, std::uint64_t seed,
                         std::uint64_t frame_index, double sigma_scale) {
    params.validate();
    auto rng = frame_rng(seed, frame_index);
    auto draw = [&](const ParamRange& r) {
        return truncated_gaussian(rng, r, 0.25 * r.width() * sigma_scale);
    };
    ApproachPose pose;
    pose.along_track_m = draw(params.along_track_nm) * kMetersPerNauticalMile;
    pose.vertical_path_deg = draw(params.vertical_path_deg);
    pose.lateral_path_deg = draw(params.lateral_path_deg);
    pose.yaw_deg = draw(params.yaw_deg);
    pose.pitch_deg = draw(params.pitch_deg);
    pose.roll_deg = draw(params.roll_deg);
    return pose;
}

ConeMembership validate_pose(const ApproachPose& pose, const ConeParams& params) {
    ConeMembership verdict;
    const ParamRange along_m{params.along_track_nm.lo * kMetersPerNauticalMile,
                             params.along_track_nm.hi * kMetersPerNauticalMile};
    auto check = [&](const ParamRange& r, double v, const char* name) {
        if (!r.contains(v)) verdict.violations.emplace_back(name);
    };
    check(along_m, pose.along_track_m, "along_track_distance");
    check(params.vertical_path_deg, pose.vertical_path_deg, "vertical_path_angle");
    check(params.lateral_path_deg, pose.lateral_path_deg, "lateral_path_angle");
    check(params.yaw_deg, pose.yaw_deg, "yaw");
    check(params.pitch_deg, pose.pitch_deg, "pitch");
    check(params.roll_deg, pose.roll_deg, "roll");
    verdict.inside = verdict.violations.empty();
    return verdict;
}

Eigen::Matrix3d attitude_world_to_camera(double heading_deg, double pitch_deg,
                                         double roll_deg) {
    const Eigen::Vector3d up(0.0, 0.0, 1.0);
    // Heading is clockwise from North viewed from above, i.e. a negative
    // rotation about Up.
    const Eigen::Matrix3d yaw =
        Eigen::AngleAxisd(-deg_to_rad(heading_deg), up).toRotationMatrix();
    Eigen::Vector3d forward = yaw * Eigen::Vector3d(0.0, 1.0, 0.0);
    Eigen::Vector3d right = yaw * Eigen::Vector3d(1.0, 0.0, 0.0);
    forward = Eigen::AngleAxisd(deg_to_rad(pitch_deg), right).toRotationMatrix() * forward;
    right = Eigen::AngleAxisd(deg_to_rad(roll_deg), forward).toRotationMatrix() * right;
    const Eigen::Vector3d down = forward.cross(right);

    Eigen::Matrix3d world_to_camera;
    world_to_camera.row(0) = right;
    world_to_camera.row(1) = down;
    world_to_camera.row(2) = forward;
    return world_to_camera;
}

CameraPose pose_to_camera(const ApproachPose& pose, const RunwayFrame& frame) {
    CameraPose cp;
    cp.along_m = pose.along_track_m;
    cp.cross_m = cp.along_m * std::tan(deg_to_rad(pose.lateral_path_deg));
    cp.height_m = cp.along_m * std::tan(deg_to_rad(std::abs(pose.vertical_path_deg)));
    cp.enu_position = -cp.along_m * frame.centerline_dir + cp.cross_m * frame.lateral_dir +
                      cp.height_m * frame.up_dir;
    cp.position = frame.enu.enu_to_geodetic(cp.enu_position);
    cp.heading_deg = wrap_degrees_360(frame.heading_deg + pose.yaw_deg);
    cp.pitch_deg = pose.pitch_deg;
    cp.roll_deg = pose.roll_deg;
    cp.world_to_camera = attitude_world_to_camera(cp.heading_deg, cp.pitch_deg, cp.roll_deg);
    cp.slant_distance_m = std::sqrt(cp.along_m * cp.along_m + cp.cross_m * cp.cross_m +
                                    cp.height_m * cp.height_m);
    return cp;
}

CameraPose camera_pose_from_geodetic(const GeodeticPoint& position, double heading_deg,
                                     double pitch_deg, double roll_deg,
                                     const RunwayFrame& frame) {
    CameraPose cp;
    cp.position = position;
    cp.enu_position = frame.enu.geodetic_to_enu(position);
    cp.along_m = -cp.enu_position.dot(frame.centerline_dir);
    cp.cross_m = cp.enu_position.dot(frame.lateral_dir);
    cp.height_m = cp.enu_position.dot(frame.up_dir);
    cp.heading_deg = wrap_degrees_360(heading_deg);
    cp.pitch_deg = pitch_deg;
    cp.roll_deg = roll_deg;
    cp.world_to_camera = attitude_world_to_camera(cp.heading_deg, cp.pitch_deg, cp.roll_deg);
    cp.slant_distance_m = std::sqrt(cp.along_m * cp.along_m + cp.cross_m * cp.cross_m +
                                    cp.height_m * cp.height_m);
    return cp;
}

ApproachPose approach_from_camera(const CameraPose& pose, const RunwayFrame& frame) {
    ApproachPose ap;
    ap.along_track_m = pose.along_m;
    ap.lateral_path_deg = rad_to_deg(std::atan2(pose.cross_m, pose.along_m));
    ap.vertical_path_deg = -rad_to_deg(std::atan2(pose.height_m, pose.along_m));
    double yaw = pose.heading_deg - frame.heading_deg;
    while (yaw > 180.0) yaw -= 360.0;
    while (yaw <= -180.0) yaw += 360.0;
    ap.yaw_deg = yaw;
    ap.pitch_deg = pose.pitch_deg;
    ap.roll_deg = pose.roll_deg;
    return ap;
}

}  // namespace lard_forge
