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

#include <cmath>

#include "doctest.h"

#include "lard_forge/approach_cone.hpp"
#include "lard_forge/errors.hpp"
#include "support/test_helpers.hpp"

using namespace lard_forge;
using test_helpers::make_runway;

TEST_CASE("defaults cover the standard approach envelope") {
    const ConeParams p;
    CHECK(p.along_track_nm.lo == 0.08);
    CHECK(p.along_track_nm.hi == 3.0);
    CHECK(p.vertical_path_deg.lo == -3.8);
    CHECK(p.vertical_path_deg.hi == -2.2);
    CHECK(p.lateral_path_deg.lo == -4.0);
    CHECK(p.lateral_path_deg.hi == 4.0);
    CHECK(p.yaw_deg.lo == -10.0);
    CHECK(p.yaw_deg.hi == 10.0);
    CHECK(p.pitch_deg.lo == -8.0);
    CHECK(p.pitch_deg.hi == 0.0);
    CHECK(p.roll_deg.lo == -10.0);
    CHECK(p.roll_deg.hi == 10.0);
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("sigma 0 collapses the sampler onto the range midpoints") {
    const ApproachPose pose = sample_pose(ConeParams{}, 42, 0, 0.0);
    CHECK(pose.along_track_m == doctest::Approx(1.54 * 1852.0).epsilon(1e-14));
    CHECK(pose.vertical_path_deg == doctest::Approx(-3.0).epsilon(1e-14));
    CHECK(pose.lateral_path_deg == 0.0);
    CHECK(pose.yaw_deg == 0.0);
    CHECK(pose.pitch_deg == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(pose.roll_deg == 0.0);
}

TEST_CASE("sampling is a deterministic function of seed and frame index") {
    const ApproachPose a = sample_pose(ConeParams{}, 42, 7);
    const ApproachPose b = sample_pose(ConeParams{}, 42, 7);
    CHECK(a.along_track_m == b.along_track_m);
    CHECK(a.vertical_path_deg == b.vertical_path_deg);
    CHECK(a.lateral_path_deg == b.lateral_path_deg);
    CHECK(a.yaw_deg == b.yaw_deg);
    CHECK(a.pitch_deg == b.pitch_deg);
    CHECK(a.roll_deg == b.roll_deg);

    const ApproachPose c = sample_pose(ConeParams{}, 42, 8);
    CHECK(a.along_track_m != c.along_track_m);
    const ApproachPose d = sample_pose(ConeParams{}, 43, 7);
    CHECK(a.along_track_m != d.along_track_m);
}

TEST_CASE("every sample lands inside the cone and the marginals are centered") {
    const ConeParams params;
    double lateral_sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const ApproachPose pose = sample_pose(params, 1, static_cast<std::uint64_t>(i));
        const ConeMembership verdict = validate_pose(pose, params);
        REQUIRE(verdict.inside);
        lateral_sum += pose.lateral_path_deg;
    }
    CHECK(std::abs(lateral_sum / n) < 0.05);
}

TEST_CASE("validate_pose names the violated parameter") {
    const ConeParams params;
    ApproachPose pose = sample_pose(params, 0, 0, 0.0);
    CHECK(validate_pose(pose, params).inside);

    pose.yaw_deg = 10.01;
    const ConeMembership verdict = validate_pose(pose, params);
    CHECK_FALSE(verdict.inside);
    REQUIRE(verdict.violations.size() == 1);
    CHECK(verdict.violations[0] == "yaw");

    // Closed bounds: the exact lower endpoint is inside.
    pose = sample_pose(params, 0, 0, 0.0);
    pose.along_track_m = nm_to_m(0.08);
    CHECK(validate_pose(pose, params).inside);
}

TEST_CASE("pose_to_camera places the camera by the path-angle tangents") {
    const RunwayFrame frame = runway_frame(make_runway(43.0, 0.0, 100.0, 0.0, 45.0, 3000.0));

    ApproachPose pose{};
    pose.along_track_m = nm_to_m(3.0);
    pose.vertical_path_deg = -3.0;
    const CameraPose far = pose_to_camera(pose, frame);
    const double expected_height = 5556.0 * std::tan(deg_to_rad(3.0));
    CHECK(far.height_m == doctest::Approx(expected_height).epsilon(1e-12));
    CHECK(far.height_m == doctest::Approx(291.177621696577).epsilon(1e-12));
    CHECK(far.cross_m == 0.0);
    CHECK(far.slant_distance_m ==
          doctest::Approx(std::hypot(5556.0, expected_height)).epsilon(1e-12));
    CHECK(far.slant_distance_m == doctest::Approx(5563.624754364449).epsilon(1e-12));

    ApproachPose lateral{};
    lateral.along_track_m = nm_to_m(1.0);
    lateral.lateral_path_deg = 4.0;
    lateral.vertical_path_deg = -3.0;
    const CameraPose offset = pose_to_camera(lateral, frame);
    CHECK(offset.cross_m == doctest::Approx(1852.0 * std::tan(deg_to_rad(4.0))).epsilon(1e-12));
    CHECK(offset.cross_m == doctest::Approx(129.5044557193813).epsilon(1e-12));
}

TEST_CASE("zero attitude keeps the boresight in the centerline vertical plane") {
    const RunwayFrame frame = runway_frame(make_runway(43.0, 0.0, 100.0, 57.0, 45.0, 3000.0));
    ApproachPose pose{};
    pose.along_track_m = nm_to_m(1.54);
    pose.vertical_path_deg = -3.0;
    const CameraPose cp = pose_to_camera(pose, frame);
    const Eigen::Vector3d boresight = cp.world_to_camera.row(2);
    CHECK(std::abs(boresight.dot(frame.lateral_dir)) < 1e-12);
    CHECK(std::abs(cp.enu_position.dot(frame.lateral_dir)) < 1e-9);
}

TEST_CASE("slant distance grows strictly with along-track at fixed angles") {
    const RunwayFrame frame = runway_frame(make_runway(43.0, 0.0, 100.0, 0.0, 45.0, 3000.0));
    double previous = 0.0;
    for (double along_m = 200.0; along_m <= 5556.0; along_m += 250.0) {
        ApproachPose pose{};
        pose.along_track_m = along_m;
        pose.vertical_path_deg = -3.0;
        pose.lateral_path_deg = 2.0;
        const CameraPose cp = pose_to_camera(pose, frame);
        CHECK(cp.slant_distance_m > previous);
        previous = cp.slant_distance_m;
    }
}

TEST_CASE("sampled orientations are orthonormal with determinant +1") {
    const RunwayFrame frame = runway_frame(make_runway(43.6, 1.36, 150.0, 143.5, 45.0, 3000.0));
    for (int i = 0; i < 300; ++i) {
        const ApproachPose pose = sample_pose(ConeParams{}, 5, static_cast<std::uint64_t>(i));
        const CameraPose cp = pose_to_camera(pose, frame);
        const Eigen::Matrix3d& r = cp.world_to_camera;
        CHECK((r * r.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(cp.slant_distance_m ==
              doctest::Approx(std::sqrt(cp.along_m * cp.along_m + cp.cross_m * cp.cross_m +
                                        cp.height_m * cp.height_m))
                  .epsilon(1e-12));
    }
}

TEST_CASE("camera placement round-trips through the cone parameterization") {
    const RunwayFrame frame = runway_frame(make_runway(43.6, 1.36, 150.0, 143.5, 45.0, 3000.0));
    for (int i = 0; i < 200; ++i) {
        const ApproachPose pose = sample_pose(ConeParams{}, 9, static_cast<std::uint64_t>(i));
        const CameraPose cp = pose_to_camera(pose, frame);
        const ApproachPose back = approach_from_camera(cp, frame);
        CHECK(back.along_track_m == doctest::Approx(pose.along_track_m).epsilon(1e-9));
        CHECK(back.vertical_path_deg == doctest::Approx(pose.vertical_path_deg).epsilon(1e-9));
        CHECK(back.lateral_path_deg == doctest::Approx(pose.lateral_path_deg).epsilon(1e-9));
        CHECK(back.yaw_deg == doctest::Approx(pose.yaw_deg).epsilon(1e-9));

        // Rebuilding from the geodetic position reproduces the placement.
        const CameraPose rebuilt = camera_pose_from_geodetic(
            cp.position, cp.heading_deg, cp.pitch_deg, cp.roll_deg, frame);
        CHECK((rebuilt.enu_position - cp.enu_position).norm() < 1e-6);
        CHECK(rebuilt.along_m == doctest::Approx(cp.along_m).epsilon(1e-9));
        CHECK(rebuilt.cross_m == doctest::Approx(cp.cross_m).scale(1000.0).epsilon(1e-9));
        CHECK(rebuilt.height_m == doctest::Approx(cp.height_m).scale(1000.0).epsilon(1e-9));
    }
}

TEST_CASE("cone params read from JSON with defaults for omitted fields") {
    const auto j = nlohmann::json::parse(R"({"yaw": [-5, 5]})");
    const ConeParams p = ConeParams::from_json(j);
    CHECK(p.yaw_deg.lo == -5.0);
    CHECK(p.yaw_deg.hi == 5.0);
    CHECK(p.along_track_nm.lo == 0.08);
    CHECK(p.pitch_deg.lo == -8.0);

    CHECK_THROWS_AS(ConeParams::from_json(nlohmann::json::parse(R"({"yaw": [1]})")),
                    ParseError);
    CHECK_THROWS_AS(ConeParams::from_json(nlohmann::json::parse(R"({"yaw": [5, -5]})")),
                    ValidationError);
    CHECK_THROWS_AS(ConeParams::from_json(nlohmann::json::parse(R"([1, 2])")), ParseError);
}
