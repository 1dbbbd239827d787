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

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace lard_forge {

namespace wgs84 {
/// Semi-major axis [m].
inline constexpr double kSemiMajorAxisM = 6378137.0;
/// Flattening.
inline constexpr double kFlattening = 1.0 / 298.257223563;
/// First eccentricity squared, e2 = f (2 - f).
inline constexpr double kEccentricitySq = kFlattening * (2.0 - kFlattening);
/// Semi-minor axis, b = a (1 - f) [m].
inline constexpr double kSemiMinorAxisM = kSemiMajorAxisM * (1.0 - kFlattening);
}  // namespace wgs84

inline constexpr double kMetersPerNauticalMile = 1852.0;

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Wrap an angle in degrees into [0, 360).
inline double wrap_degrees_360(double deg) {
    double w = std::fmod(deg, 360.0);
    if (w < 0.0) w += 360.0;
    return w == 360.0 ? 0.0 : w;
}

/// Geodetic position on the WGS84 ellipsoid.
/// Latitude in [-90, 90], longitude in (-180, 180], altitude is ellipsoidal
/// height in meters (no geoid/MSL correction anywhere in this library).
struct GeodeticPoint {
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double altitude_m = 0.0;

    bool is_valid() const {
        return std::isfinite(latitude_deg) && std::isfinite(longitude_deg) &&
               std::isfinite(altitude_m) && latitude_deg >= -90.0 &&
               latitude_deg <= 90.0 && longitude_deg > -180.0 &&
               longitude_deg <= 180.0;
    }
};

/// Earth-centered Earth-fixed Cartesian position [m]. The x axis pierces
/// (lat 0, lon 0), z the north pole.
struct EcefPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Eigen::Vector3d vec() const { return {x, y, z}; }
    static EcefPoint from(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }
};

/// Closed-form geodetic -> ECEF conversion.
/// x = (N + h) cos(lat) cos(lon), y = (N + h) cos(lat) sin(lon),
/// z = (N (1 - e2) + h) sin(lat) with N = a / sqrt(1 - e2 sin^2(lat)).
EcefPoint geodetic_to_ecef(const GeodeticPoint& p);

/// Inverse of geodetic_to_ecef by iterative latitude refinement (convergence
/// threshold 1e-12 rad). Longitude at the poles is reported as 0 by
/// convention. Throws NearSingular for points within 1 km of the Earth
/// center.
GeodeticPoint ecef_to_geodetic(const EcefPoint& p);

/// Exact definitional conversion, 1 NM = 1852 m. Throws ValidationError on
/// negative input.
double nm_to_m(double nautical_miles);

/// Local East-North-Up tangent frame at a geodetic origin. The basis rows are
/// the East, North and Up unit vectors expressed in ECEF; Up is the ellipsoid
/// surface normal at the origin.
class EnuFrame {
public:
    explicit EnuFrame(const GeodeticPoint& origin);

    Eigen::Vector3d ecef_to_enu(const EcefPoint& p) const {
        return basis_ * (p.vec() - origin_ecef_.vec());
    }
    EcefPoint enu_to_ecef(const Eigen::Vector3d& enu) const {
        return EcefPoint::from(origin_ecef_.vec() + basis_.transpose() * enu);
    }
    Eigen::Vector3d geodetic_to_enu(const GeodeticPoint& p) const {
        return ecef_to_enu(geodetic_to_ecef(p));
    }
    GeodeticPoint enu_to_geodetic(const Eigen::Vector3d& enu) const {
        return ecef_to_geodetic(enu_to_ecef(enu));
    }

    const GeodeticPoint& origin() const { return origin_; }
    const EcefPoint& origin_ecef() const { return origin_ecef_; }
    const Eigen::Matrix3d& basis() const { return basis_; }

private:
    GeodeticPoint origin_;
    EcefPoint origin_ecef_;
    Eigen::Matrix3d basis_;  // rows: East, North, Up in ECEF
};

inline EnuFrame enu_frame_at(const GeodeticPoint& origin) { return EnuFrame(origin); }

}  // namespace lard_forge
