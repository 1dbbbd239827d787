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

#include "lard_forge/camera.hpp"

#include <cmath>

#include "lard_forge/errors.hpp"

namespace lard_forge {

Intrinsics intrinsic_from_fov(int width, int height, double fov_deg, FovAxis axis) {
    if (width < 1 || height < 1) {
        throw ValidationError("intrinsic_from_fov: image dimensions must be >= 1 px");
    }
    if (!(fov_deg > 0.0) || !(fov_deg < 180.0)) {
        throw InvalidFov("intrinsic_from_fov: field of view must lie in (0, 180) degrees");
    }
    const double half_tan = std::tan(0.5 * deg_to_rad(fov_deg));
    const double extent = axis == FovAxis::Vertical ? height : width;
    const double focal = (0.5 * extent) / half_tan;

    Intrinsics intr;
    intr.fx = focal;
    intr.fy = focal;
    intr.cx = 0.5 * width;
    intr.cy = 0.5 * height;
    intr.width = width;
    intr.height = height;
    intr.fov_deg = fov_deg;
    return intr;
}

double vertical_fov_deg(const Intrinsics& intr) {
    return rad_to_deg(2.0 * std::atan((0.5 * intr.height) / intr.fy));
}

Extrinsics extrinsic_from_pose(const CameraPose& cp) {
    return {cp.world_to_camera, cp.enu_position, WorldFrameTag::RunwayEnu};
}

Extrinsics extrinsic_in_ecef(const CameraPose& cp, const RunwayFrame& frame) {
    // Camera axes in ENU coordinates, re-expressed in ECEF through the frame
    // basis (rows of the basis are East/North/Up in ECEF).
    Extrinsics extr;
    extr.rotation = cp.world_to_camera * frame.enu.basis();
    extr.camera_center = frame.enu.enu_to_ecef(cp.enu_position).vec();
    extr.frame = WorldFrameTag::Ecef;
    return extr;
}

std::optional<PixelPoint> project_point(const Intrinsics& intr, const Extrinsics& extr,
                                        const Eigen::Vector3d& world_point) {
    const Eigen::Vector3d cam = extr.rotation * (world_point - extr.camera_center);
    if (cam.z() <= kBehindCameraDepthM) return std::nullopt;
    return PixelPoint{intr.cx + intr.fx * cam.x() / cam.z(),
                      intr.cy + intr.fy * cam.y() / cam.z()};
}

RunwayProjection project_runway(const Intrinsics& intr, const Extrinsics& extr,
                                const RunwayDefinition& r, const RunwayFrame& frame) {
    RunwayProjection proj;
    for (int i = 0; i < 4; ++i) {
        Eigen::Vector3d world;
        switch (extr.frame) {
            case WorldFrameTag::RunwayEnu:
                world = frame.enu.geodetic_to_enu(r.corners[i]);
                break;
            case WorldFrameTag::Ecef:
                world = geodetic_to_ecef(r.corners[i]).vec();
                break;
        }
        proj.corners[i] = project_point(intr, extr, world);
    }
    return proj;
}

}  // namespace lard_forge
