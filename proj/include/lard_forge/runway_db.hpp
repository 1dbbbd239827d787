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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lard_forge/geodesy.hpp"

namespace lard_forge {

/// One runway, identified by airport ICAO code and runway identifier, with
/// its four corners in canonical order as seen by the approaching aircraft:
/// A threshold-left, B threshold-right, C far-right, D far-left.
struct RunwayDefinition {
    std::string airport_icao;
    std::string runway_id;
    std::array<GeodeticPoint, 4> corners;
};

/// Plausibility bounds used to catch coordinate typos. Defaults follow civil
/// aviation norms; the coplanarity tolerance absorbs real runway slope.
struct RunwayValidationLimits {
    double min_width_m = 10.0;
    double max_width_m = 120.0;
    double min_length_m = 300.0;
    double max_length_m = 6000.0;
    double coplanarity_tol_m = 5.0;
};

/// Edge lengths and heading measured in the runway local tangent plane.
struct RunwayGeometry {
    double width_m = 0.0;    // mean of the two threshold-parallel edges
    double length_m = 0.0;   // mean of the two side edges
    double heading_deg = 0.0;
};

RunwayGeometry measure_runway(const RunwayDefinition& r);

/// Checks identifiers, corner coordinates, convexity, coplanarity and the
/// width/length bounds. Throws ValidationError naming the failed invariant.
void validate_runway(const RunwayDefinition& r,
                     const RunwayValidationLimits& limits = {});

/// Parse a runway database document (CSV with the canonical header, or its
/// JSON mirror with identical field names) and validate every definition.
/// Throws ParseError for structural problems (with the row number) and
/// ValidationError for geometry problems (with runway identity and reason).
std::vector<RunwayDefinition> load_runway_db(
    const std::string& document, const RunwayValidationLimits& limits = {});

/// Per-row report used to surface every problem instead of stopping at the
/// first one.
struct RunwayRowReport {
    int row = 0;  // 1-based data row number (header is row 0)
    std::string airport_icao;
    std::string runway_id;
    bool ok = false;
    std::string message;
};

std::vector<RunwayRowReport> validate_runway_db(
    const std::string& document, const RunwayValidationLimits& limits = {});

/// Serialize definitions back to the canonical CSV (degrees with 15 decimal
/// places, altitudes with 9; load -> serialize -> load is the identity).
std::string serialize_runway_db(const std::vector<RunwayDefinition>& runways);

/// Local frame of one runway, anchored at the aiming point.
/// centerline_dir points in the landing direction, lateral_dir to the right
/// of the centerline, up_dir along the local vertical; all three are unit
/// vectors in the ENU coordinates of `enu`. (lateral, centerline, up) is a
/// right-handed triad.
struct RunwayFrame {
    GeodeticPoint aiming_point;
    EnuFrame enu;  // origin at the aiming point
    Eigen::Vector3d centerline_dir;
    Eigen::Vector3d lateral_dir;
    Eigen::Vector3d up_dir;
    double heading_deg = 0.0;  // true heading of the centerline, [0, 360)
};

/// The point on the centerline 300 m past the threshold midpoint, at
/// threshold altitude. Throws DegenerateRunway if the runway is shorter than
/// 300 m.
GeodeticPoint compute_aiming_point(const RunwayDefinition& r);

/// Builds the runway frame at the aiming point. The centerline direction is
/// the normalized mean of the two threshold-to-far edge directions projected
/// into the local tangent plane; throws DegenerateRunway if those directions
/// differ by more than 5 degrees.
RunwayFrame runway_frame(const RunwayDefinition& r);

}  // namespace lard_forge
