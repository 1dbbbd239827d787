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

#include "lard_forge/geodesy.hpp"

#include <cmath>

#include "lard_forge/errors.hpp"

namespace lard_forge {

namespace {
constexpr double kPoleRadiusEps = 1e-9;   // m of equatorial distance treated as "at the pole"
constexpr double kCenterExclusionM = 1000.0;
constexpr double kLatConvergenceRad = 1e-12;
constexpr int kMaxLatIterations = 30;
}  // namespace

EcefPoint geodetic_to_ecef(const GeodeticPoint& p) {
    const double lat = deg_to_rad(p.latitude_deg);
    const double lon = deg_to_rad(p.longitude_deg);
    const double sin_lat = std::sin(lat);
    const double cos_lat = std::cos(lat);
    const double sin_lon = std::sin(lon);
    const double cos_lon = std::cos(lon);

    // Prime-vertical radius of curvature.
    const double n = wgs84::kSemiMajorAxisM /
                     std::sqrt(1.0 - wgs84::kEccentricitySq * sin_lat * sin_lat);

    return {(n + p.altitude_m) * cos_lat * cos_lon,
            (n + p.altitude_m) * cos_lat * sin_lon,
            (n * (1.0 - wgs84::kEccentricitySq) + p.altitude_m) * sin_lat};
}

GeodeticPoint ecef_to_geodetic(const EcefPoint& p) {
    const double radius = p.vec().norm();
    if (radius < kCenterExclusionM) {
        throw NearSingular("ecef_to_geodetic: point within 1 km of the Earth center");
    }

    const double rho = std::hypot(p.x, p.y);  // distance from the Earth axis

    if (rho < kPoleRadiusEps) {
        // Polar degeneracy: longitude reported as 0 by convention.
        return {p.z >= 0.0 ? 90.0 : -90.0, 0.0,
                std::abs(p.z) - wgs84::kSemiMinorAxisM};
    }

    double lon_deg = rad_to_deg(std::atan2(p.y, p.x));
    if (lon_deg <= -180.0) lon_deg += 360.0;

    // Fixed-point latitude refinement: tan(lat) = (z + e2 N sin(lat)) / rho.
    const double a = wgs84::kSemiMajorAxisM;
    const double e2 = wgs84::kEccentricitySq;
    double lat = std::atan2(p.z, rho * (1.0 - e2));
    for (int i = 0; i < kMaxLatIterations; ++i) {
        const double sin_lat = std::sin(lat);
        const double n = a / std::sqrt(1.0 - e2 * sin_lat * sin_lat);
        const double next = std::atan2(p.z + e2 * n * sin_lat, rho);
        const double step = std::abs(next - lat);
        lat = next;
        if (step < kLatConvergenceRad) break;
    }

    const double sin_lat = std::sin(lat);
    const double cos_lat = std::cos(lat);
    // Robust at all latitudes, unlike rho / cos(lat) - N.
    const double alt = rho * cos_lat + p.z * sin_lat -
                       a * std::sqrt(1.0 - e2 * sin_lat * sin_lat);

    return {rad_to_deg(lat), lon_deg, alt};
}

double nm_to_m(double nautical_miles) {
    if (!(nautical_miles >= 0.0)) {
        throw ValidationError("nm_to_m: distance must be non-negative");
    }
    return nautical_miles * kMetersPerNauticalMile;
}

EnuFrame::EnuFrame(const GeodeticPoint& origin)
    : origin_(origin), origin_ecef_(geodetic_to_ecef(origin)) {
    const double lat = deg_to_rad(origin.latitude_deg);
    const double lon = deg_to_rad(origin.longitude_deg);
    const double sin_lat = std::sin(lat);
    const double cos_lat = std::cos(lat);
    const double sin_lon = std::sin(lon);
    const double cos_lon = std::cos(lon);

    basis_.row(0) = Eigen::Vector3d(-sin_lon, cos_lon, 0.0);                          // East
    basis_.row(1) = Eigen::Vector3d(-sin_lat * cos_lon, -sin_lat * sin_lon, cos_lat); // North
    basis_.row(2) = Eigen::Vector3d(cos_lat * cos_lon, cos_lat * sin_lon, sin_lat);   // Up
}

}  // namespace lard_forge
