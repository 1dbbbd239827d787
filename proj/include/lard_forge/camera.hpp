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
#include <optional>

#include <Eigen/Dense>

#include "lard_forge/approach_cone.hpp"
#include "lard_forge/runway_db.hpp"

namespace lard_forge {

/// Pinhole intrinsics. Square pixels (fx == fy) and a centered principal
/// point, both derived from one field of view.
struct Intrinsics {
    double fx = 0.0;
    double fy = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    int width = 0;
    int height = 0;
    double fov_deg = 0.0;  // the generating field of view
};

enum class FovAxis { Vertical, Horizontal };

/// Focal length from image dimensions and field of view:
/// fy = (height / 2) / tan(fov / 2) for the default vertical interpretation
/// (fx from the width when FovAxis::Horizontal). Throws InvalidFov outside
/// (0, 180).
Intrinsics intrinsic_from_fov(int width, int height, double fov_deg,
                              FovAxis axis = FovAxis::Vertical);

/// Inverse of intrinsic_from_fov for the vertical axis:
/// 2 atan((height / 2) / fy).
double vertical_fov_deg(const Intrinsics& intr);

/// Continuous (sub-pixel) image position; origin top-left, u rightward,
/// v downward.
struct PixelPoint {
    double u = 0.0;
    double v = 0.0;
};

/// Frame in which an extrinsic camera center (and rotation) is expressed.
enum class WorldFrameTag { RunwayEnu, Ecef };

/// World-to-camera map: p_cam = rotation * (p_world - camera_center).
struct Extrinsics {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d camera_center = Eigen::Vector3d::Zero();
    WorldFrameTag frame = WorldFrameTag::RunwayEnu;
};

/// Extrinsics of a camera pose in its runway ENU world.
Extrinsics extrinsic_from_pose(const CameraPose& cp);

/// Same camera expressed in ECEF (rotation rows become camera axes in ECEF).
Extrinsics extrinsic_in_ecef(const CameraPose& cp, const RunwayFrame& frame);

/// Points at camera depth z <= this are treated as behind the camera.
inline constexpr double kBehindCameraDepthM = 1e-9;

/// Pinhole projection: u = cx + fx x/z, v = cy + fy y/z for camera-frame
/// (x, y, z). Returns nullopt when the point is behind the camera; the
/// caller decides whether that rejects the frame.
std::optional<PixelPoint> project_point(const Intrinsics& intr, const Extrinsics& extr,
                                        const Eigen::Vector3d& world_point);

/// Projected runway corners in canonical order; entries are nullopt for
/// corners behind the camera, so corner identity survives rejection.
struct RunwayProjection {
    std::array<std::optional<PixelPoint>, 4> corners;

    bool all_in_front() const {
        for (const auto& c : corners) {
            if (!c) return false;
        }
        return true;
    }
    std::array<PixelPoint, 4> points() const {
        return {*corners[0], *corners[1], *corners[2], *corners[3]};
    }
};

/// Projects the four runway corners WGS84 -> world frame (per the extrinsic
/// tag) -> camera -> pixels.
RunwayProjection project_runway(const Intrinsics& intr, const Extrinsics& extr,
                                const RunwayDefinition& r, const RunwayFrame& frame);

}  // namespace lard_forge
