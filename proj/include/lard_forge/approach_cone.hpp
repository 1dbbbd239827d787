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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "lard_forge/geodesy.hpp"
#include "lard_forge/runway_db.hpp"

namespace lard_forge {

/// Closed interval for one cone parameter.
struct ParamRange {
    double lo = 0.0;
    double hi = 0.0;

    double midpoint() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
    bool contains(double v) const { return v >= lo && v <= hi; }
};

/// The six parameter ranges that define the generic landing approach cone.
/// Defaults are the standard civil approach envelope; a configuration
/// document may override individual ranges.
struct ConeParams {
    ParamRange along_track_nm{0.08, 3.0};
    ParamRange vertical_path_deg{-3.8, -2.2};
    ParamRange lateral_path_deg{-4.0, 4.0};
    ParamRange yaw_deg{-10.0, 10.0};
    ParamRange pitch_deg{-8.0, 0.0};
    ParamRange roll_deg{-10.0, 10.0};

    /// Throws ValidationError if any range is empty or non-finite.
    void validate() const;

    /// Reads overrides from a JSON object; omitted fields keep their
    /// defaults. Each field is a two-element [lo, hi] array:
    /// along_track_distance (NM), vertical_path_angle, lateral_path_angle,
    /// yaw, pitch, roll (degrees).
    static ConeParams from_json(const nlohmann::json& j);
    nlohmann::ordered_json to_json() const;
};

/// One sampled position + attitude inside the cone. Yaw is relative to the
/// runway heading; pitch and roll are relative to the horizontal plane.
/// The along-track distance is stored in meters.
struct ApproachPose {
    double along_track_m = 0.0;
    double vertical_path_deg = 0.0;
    double lateral_path_deg = 0.0;
    double yaw_deg = 0.0;
    double pitch_deg = 0.0;
    double roll_deg = 0.0;
};

/// Draws each of the six parameters from a Gaussian centered on its range
/// midpoint with sigma = range width / 4 (scaled by sigma_scale), resampling
/// until the draw falls inside the closed range. Deterministic function of
/// (seed, frame_index); distinct frame indices give independent streams, so
/// frames may be generated in any order or in parallel.
///
/// sigma_scale = 0 is a test hook that returns the exact range midpoints.
ApproachPose sample_pose(const ConeParams& params, std::uint64_t seed,
                         std::uint64_t frame_index, double sigma_scale = 1.0);

/// Cone-membership verdict; `violations` names each parameter outside its
/// closed range.
struct ConeMembership {
    bool inside = false;
    std::vector<std::string> violations;
};

ConeMembership validate_pose(const ApproachPose& pose, const ConeParams& params);

/// Camera placement for one frame, in the runway frame's ENU world.
/// world_to_camera maps ENU vectors into the camera basis (x right, y down,
/// z forward); rows are the camera axes in ENU coordinates.
struct CameraPose {
    GeodeticPoint position;
    Eigen::Vector3d enu_position = Eigen::Vector3d::Zero();
    double along_m = 0.0;   // behind the aiming point, along the centerline
    double cross_m = 0.0;   // toward lateral_dir (right of centerline)
    double height_m = 0.0;  // above the runway plane
    double heading_deg = 0.0;  // absolute true heading, [0, 360)
    double pitch_deg = 0.0;
    double roll_deg = 0.0;
    Eigen::Matrix3d world_to_camera = Eigen::Matrix3d::Identity();
    double slant_distance_m = 0.0;  // straight-line distance to the aiming point
};

/// World-to-camera rotation for an absolute attitude in an ENU world:
/// intrinsic yaw (about up, heading clockwise from North), then pitch (about
/// the current right axis, positive nose-up), then roll (about the current
/// forward axis, positive right-wing-down), mapped to the imaging convention
/// x right, y down, z forward.
Eigen::Matrix3d attitude_world_to_camera(double heading_deg, double pitch_deg,
                                         double roll_deg);

/// Places the camera in the runway ENU frame: along meters behind the aiming
/// point, cross = along * tan(lateral path), height = along * tan(|vertical
/// path|); the boresight equals the aircraft attitude (no extra offset).
CameraPose pose_to_camera(const ApproachPose& pose, const RunwayFrame& frame);

/// Rebuilds a CameraPose from an absolute geodetic position and attitude
/// (the inverse ingredient used when reading renderer metadata).
CameraPose camera_pose_from_geodetic(const GeodeticPoint& position, double heading_deg,
                                     double pitch_deg, double roll_deg,
                                     const RunwayFrame& frame);

/// Recovers the cone parameterization of a camera placement relative to its
/// runway frame.
ApproachPose approach_from_camera(const CameraPose& pose, const RunwayFrame& frame);

}  // namespace lard_forge
