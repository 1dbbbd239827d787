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
#include <random>

#include "doctest.h"

#include "lard_forge/errors.hpp"
#include "lard_forge/geodesy.hpp"

using namespace lard_forge;

namespace {

double ecef_distance(const EcefPoint& a, const EcefPoint& b) {
    return (a.vec() - b.vec()).norm();
}

}  // namespace

TEST_CASE("geodetic_to_ecef reference points") {
    const EcefPoint equator = geodetic_to_ecef({0.0, 0.0, 0.0});
    CHECK(equator.x == doctest::Approx(6378137.0).epsilon(1e-12));
    CHECK(equator.y == doctest::Approx(0.0).scale(1.0));
    CHECK(equator.z == doctest::Approx(0.0).scale(1.0));

    const EcefPoint pole = geodetic_to_ecef({90.0, 0.0, 0.0});
    CHECK(std::abs(pole.x) < 1e-6);
    CHECK(std::abs(pole.y) < 1e-6);
    CHECK(pole.z == doctest::Approx(6356752.3142).epsilon(1e-10));

    // N = a / sqrt(1 - e^2 sin^2(45 deg)) evaluated in high precision.
    const EcefPoint mid = geodetic_to_ecef({45.0, 0.0, 0.0});
    CHECK(mid.x == doctest::Approx(4517590.878849).epsilon(1e-11));
    CHECK(std::abs(mid.y) < 1e-9);
    CHECK(mid.z == doctest::Approx(4487348.408866).epsilon(1e-11));
}

TEST_CASE("ecef_to_geodetic inverts the forward map") {
    const GeodeticPoint eq = ecef_to_geodetic({6378137.0, 0.0, 0.0});
    CHECK(eq.latitude_deg == doctest::Approx(0.0).scale(1.0));
    CHECK(eq.longitude_deg == doctest::Approx(0.0).scale(1.0));
    CHECK(std::abs(eq.altitude_m) < 1e-7);

    const GeodeticPoint mid{45.0, 0.0, 0.0};
    const GeodeticPoint round = ecef_to_geodetic(geodetic_to_ecef(mid));
    CHECK(ecef_distance(geodetic_to_ecef(round), geodetic_to_ecef(mid)) < 1e-6);

    // Polar degeneracy: longitude reported as 0 by convention.
    const GeodeticPoint pole = ecef_to_geodetic({0.0, 0.0, 6356752.3142});
    CHECK(pole.latitude_deg == doctest::Approx(90.0));
    CHECK(pole.longitude_deg == 0.0);
    CHECK(std::abs(pole.altitude_m) < 1e-4);
}

TEST_CASE("ecef_to_geodetic rejects points near the Earth center") {
    CHECK_THROWS_AS(ecef_to_geodetic({500.0, 0.0, 0.0}), NearSingular);
    CHECK_THROWS_AS(ecef_to_geodetic({0.0, 0.0, 0.0}), NearSingular);
}

TEST_CASE("geodetic round trip stays below 1e-6 m for aviation altitudes") {
    std::mt19937_64 rng(20260808);
    std::uniform_real_distribution<double> lat(-90.0, 90.0);
    std::uniform_real_distribution<double> lon(-179.999, 180.0);
    std::uniform_real_distribution<double> alt(-20000.0, 20000.0);
    for (int i = 0; i < 2000; ++i) {
        const GeodeticPoint p{lat(rng), lon(rng), alt(rng)};
        const EcefPoint e = geodetic_to_ecef(p);
        const GeodeticPoint q = ecef_to_geodetic(e);
        CHECK(ecef_distance(geodetic_to_ecef(q), e) < 1e-6);
    }
}

TEST_CASE("surface ECEF norm lies between the semi-minor and semi-major axes") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lat(-90.0, 90.0);
    for (int i = 0; i < 2000; ++i) {
        const double norm = geodetic_to_ecef({lat(rng), 12.345, 0.0}).vec().norm();
        CHECK(norm >= wgs84::kSemiMinorAxisM - 1e-6);
        CHECK(norm <= wgs84::kSemiMajorAxisM + 1e-6);
    }
}

TEST_CASE("enu frame at the equator prime meridian aligns with ECEF axes") {
    const EnuFrame frame(GeodeticPoint{0.0, 0.0, 0.0});
    CHECK((frame.basis().row(0) - Eigen::RowVector3d(0, 1, 0)).norm() < 1e-15);
    CHECK((frame.basis().row(1) - Eigen::RowVector3d(0, 0, 1)).norm() < 1e-15);
    CHECK((frame.basis().row(2) - Eigen::RowVector3d(1, 0, 0)).norm() < 1e-15);
}

TEST_CASE("enu basis is orthonormal with determinant +1 for random origins") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> lat(-90.0, 90.0);
    std::uniform_real_distribution<double> lon(-179.999, 180.0);
    for (int i = 0; i < 500; ++i) {
        const EnuFrame frame(GeodeticPoint{lat(rng), lon(rng), 0.0});
        const Eigen::Matrix3d gram = frame.basis() * frame.basis().transpose();
        CHECK((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(frame.basis().determinant() == doctest::Approx(1.0).epsilon(1e-12));

        // Up row equals the ellipsoid surface normal at the origin.
        const Eigen::Vector3d up = frame.basis().row(2);
        const EcefPoint lifted = geodetic_to_ecef(
            {frame.origin().latitude_deg, frame.origin().longitude_deg, 100.0});
        CHECK((lifted.vec() - frame.origin_ecef().vec() - 100.0 * up).norm() < 1e-6);
    }
}

TEST_CASE("enu round trips are below 1e-9 m within 100 km of the origin") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> lat(-89.0, 89.0);
    std::uniform_real_distribution<double> lon(-179.0, 180.0);
    std::uniform_real_distribution<double> offset(-100000.0, 100000.0);
    for (int i = 0; i < 500; ++i) {
        const EnuFrame frame(GeodeticPoint{lat(rng), lon(rng), 500.0});
        const Eigen::Vector3d enu(offset(rng), offset(rng), offset(rng) / 10.0);
        const Eigen::Vector3d back = frame.ecef_to_enu(frame.enu_to_ecef(enu));
        CHECK((back - enu).norm() < 1e-9);
    }
}

TEST_CASE("nm_to_m is the exact definitional constant") {
    CHECK(nm_to_m(1.0) == 1852.0);
    CHECK(nm_to_m(3.0) == 5556.0);
    CHECK(nm_to_m(0.08) == doctest::Approx(148.16).epsilon(1e-14));
    CHECK(nm_to_m(0.0) == 0.0);
    CHECK_THROWS_AS(nm_to_m(-0.1), ValidationError);
}

TEST_CASE("wrap_degrees_360") {
    CHECK(wrap_degrees_360(0.0) == 0.0);
    CHECK(wrap_degrees_360(360.0) == 0.0);
    CHECK(wrap_degrees_360(-90.0) == 270.0);
    CHECK(wrap_degrees_360(725.0) == doctest::Approx(5.0));
}
