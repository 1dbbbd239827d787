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

#include <string>

#include "doctest.h"

#include "lard_forge/errors.hpp"
#include "lard_forge/runway_db.hpp"
#include "support/test_helpers.hpp"

using namespace lard_forge;
using test_helpers::make_runway;

namespace {

const char* kHeader =
    "airport_icao,runway_id,cornerA_lat,cornerA_lon,cornerA_alt,cornerB_lat,cornerB_lon,"
    "cornerB_alt,cornerC_lat,cornerC_lon,cornerC_alt,cornerD_lat,cornerD_lon,cornerD_alt";

std::string csv_of(const RunwayDefinition& r) { return serialize_runway_db({r}); }

}  // namespace

TEST_CASE("header-only document loads to an empty list") {
    const auto runways = load_runway_db(std::string(kHeader) + "\n");
    CHECK(runways.empty());
}

TEST_CASE("well-formed synthetic runway loads with the right geometry") {
    const auto runways = load_runway_db(csv_of(make_runway(43.0, 0.0, 100.0, 0.0, 45.0, 3000.0)));
    REQUIRE(runways.size() == 1);
    const RunwayGeometry g = measure_runway(runways[0]);
    CHECK(g.width_m == doctest::Approx(45.0).epsilon(1e-6));
    CHECK(g.length_m == doctest::Approx(3000.0).epsilon(1e-6));
    CHECK(g.heading_deg == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
}

TEST_CASE("row with missing corners raises ParseError naming the row") {
    const std::string doc = std::string(kHeader) +
                            "\nTEST,09,43.0,0.0,100.0,43.0,0.001,100.0,43.01,0.001,100.0\n";
    CHECK_THROWS_WITH_AS(load_runway_db(doc), doctest::Contains("row 1"), ParseError);
}

TEST_CASE("non-numeric field raises ParseError") {
    auto r = make_runway(43.0, 0.0, 100.0, 0.0, 45.0, 3000.0);
    std::string doc = csv_of(r);
    const auto pos = doc.find("43.");
    doc.replace(pos, 3, "oops");
    CHECK_THROWS_AS(load_runway_db(doc), ParseError);
}

TEST_CASE("wrong header raises ParseError") {
    CHECK_THROWS_AS(load_runway_db("icao,runway\n"), ParseError);
}

TEST_CASE("JSON mirror loads identically to the CSV") {
    const auto r = make_runway(47.5, 8.5, 400.0, 70.0, 50.0, 3500.0, "SYNJ", "07");
    const auto from_csv = load_runway_db(csv_of(r));

    std::string json = "[{\"airport_icao\":\"SYNJ\",\"runway_id\":\"07\"";
    const char* names[4][3] = {{"cornerA_lat", "cornerA_lon", "cornerA_alt"},
                               {"cornerB_lat", "cornerB_lon", "cornerB_alt"},
                               {"cornerC_lat", "cornerC_lon", "cornerC_alt"},
                               {"cornerD_lat", "cornerD_lon", "cornerD_alt"}};
    char buf[64];
    for (int c = 0; c < 4; ++c) {
        std::snprintf(buf, sizeof(buf), ",\"%s\":%.15f", names[c][0], r.corners[c].latitude_deg);
        json += buf;
        std::snprintf(buf, sizeof(buf), ",\"%s\":%.15f", names[c][1], r.corners[c].longitude_deg);
        json += buf;
        std::snprintf(buf, sizeof(buf), ",\"%s\":%.9f", names[c][2], r.corners[c].altitude_m);
        json += buf;
    }
    json += "}]";

    const auto from_json = load_runway_db(json);
    REQUIRE(from_json.size() == 1);
    REQUIRE(from_csv.size() == 1);
    for (int c = 0; c < 4; ++c) {
        CHECK(from_json[0].corners[c].latitude_deg ==
              doctest::Approx(from_csv[0].corners[c].latitude_deg).epsilon(1e-15));
        CHECK(from_json[0].corners[c].longitude_deg ==
              doctest::Approx(from_csv[0].corners[c].longitude_deg).epsilon(1e-15));
    }
}

TEST_CASE("geometry validation rejects implausible runways") {
    // 5 m wide: below the width floor.
    CHECK_THROWS_WITH_AS(load_runway_db(csv_of(make_runway(43.0, 0.0, 0.0, 0.0, 5.0, 3000.0))),
                         doctest::Contains("width"), ValidationError);
    // 250 m long: below the length floor.
    CHECK_THROWS_WITH_AS(load_runway_db(csv_of(make_runway(43.0, 0.0, 0.0, 0.0, 45.0, 250.0))),
                         doctest::Contains("length"), ValidationError);

    // Far corners swapped: the quad self-intersects.
    auto bowtie = make_runway(43.0, 0.0, 0.0, 0.0, 45.0, 3000.0);
    std::swap(bowtie.corners[2], bowtie.corners[3]);
    CHECK_THROWS_AS(load_runway_db(csv_of(bowtie)), ValidationError);

    // One corner lifted far out of plane (a single-corner lift of h puts the
    // symmetric fitted plane h/4 from every corner).
    auto bent = make_runway(43.0, 0.0, 0.0, 0.0, 45.0, 3000.0);
    bent.corners[2].altitude_m += 25.0;
    CHECK_THROWS_WITH_AS(load_runway_db(csv_of(bent)), doctest::Contains("plane"),
                         ValidationError);

    auto bad_icao = make_runway(43.0, 0.0, 0.0, 0.0, 45.0, 3000.0, "TOOLONG");
    CHECK_THROWS_AS(load_runway_db(csv_of(bad_icao)), ValidationError);
}

TEST_CASE("validate_runway_db reports every row instead of stopping") {
    auto good = make_runway(43.0, 0.0, 0.0, 0.0, 45.0, 3000.0, "SYNA", "36");
    auto bad = make_runway(44.0, 1.0, 0.0, 90.0, 5.0, 3000.0, "SYNB", "09");
    const auto reports = validate_runway_db(serialize_runway_db({good, bad}));
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].ok);
    CHECK(reports[0].row == 1);
    CHECK_FALSE(reports[1].ok);
    CHECK(reports[1].row == 2);
    CHECK(reports[1].message.find("width") != std::string::npos);
}

TEST_CASE("load -> serialize -> load is the identity") {
    const std::vector<RunwayDefinition> runways = {
        make_runway(43.0, 0.001234567891, 123.456, 17.25, 45.0, 3000.0, "SYNA", "36"),
        make_runway(-22.9, -43.2, 5.0, 270.0, 60.0, 3200.0, "SYNB", "27"),
    };
    const std::string csv1 = serialize_runway_db(runways);
    const auto loaded1 = load_runway_db(csv1);
    const std::string csv2 = serialize_runway_db(loaded1);
    CHECK(csv1 == csv2);
    const auto loaded2 = load_runway_db(csv2);
    for (std::size_t i = 0; i < loaded1.size(); ++i) {
        for (int c = 0; c < 4; ++c) {
            CHECK(loaded1[i].corners[c].latitude_deg == loaded2[i].corners[c].latitude_deg);
            CHECK(loaded1[i].corners[c].longitude_deg == loaded2[i].corners[c].longitude_deg);
            CHECK(loaded1[i].corners[c].altitude_m == loaded2[i].corners[c].altitude_m);
        }
    }
}

TEST_CASE("aiming point sits 300 m past the threshold midpoint") {
    const auto r = make_runway(43.0, 0.0, 150.0, 0.0, 45.0, 3000.0);
    const GeodeticPoint aim = compute_aiming_point(r);

    // In the ENU frame at the threshold midpoint the aiming point must be
    // (0, 300, 0) for a due-north runway.
    EnuFrame mid_frame(GeodeticPoint{43.0, 0.0, 150.0});
    const Eigen::Vector3d enu = mid_frame.geodetic_to_enu(aim);
    CHECK(std::abs(enu.norm() - 300.0) < 1e-6);
    CHECK(std::abs(enu.x()) < 1e-6);
    CHECK(enu.y() == doctest::Approx(300.0).epsilon(1e-8));
    // Holding threshold altitude lifts the point ~7 mm against the tangent
    // plane (curvature drop over 300 m).
    CHECK(std::abs(enu.z()) < 0.01);
    CHECK(aim.altitude_m == doctest::Approx(150.0).epsilon(1e-9));
}

TEST_CASE("aiming point rotates with the runway") {
    const auto east = make_runway(43.0, 0.0, 150.0, 90.0, 45.0, 3000.0);
    const GeodeticPoint aim = compute_aiming_point(east);
    EnuFrame mid_frame(GeodeticPoint{43.0, 0.0, 150.0});
    const Eigen::Vector3d enu = mid_frame.geodetic_to_enu(aim);
    CHECK(enu.x() == doctest::Approx(300.0).epsilon(1e-8));
    CHECK(std::abs(enu.y()) < 1e-6);
}

TEST_CASE("sub-300 m runway cannot host an aiming point") {
    // Bypass load validation: build the degenerate quad directly.
    const auto r = make_runway(43.0, 0.0, 0.0, 0.0, 45.0, 299.0);
    CHECK_THROWS_AS(compute_aiming_point(r), DegenerateRunway);
}

TEST_CASE("runway_frame headings for axis-aligned runways") {
    const RunwayFrame north = runway_frame(make_runway(43.0, 0.0, 0.0, 0.0, 45.0, 3000.0));
    CHECK(north.heading_deg == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK((north.centerline_dir - Eigen::Vector3d(0, 1, 0)).norm() < 1e-9);

    // Meridian convergence over the 300 m to the aiming point shifts an
    // east-west heading by a few millidegrees at this latitude.
    const RunwayFrame east = runway_frame(make_runway(43.0, 0.0, 0.0, 90.0, 45.0, 3000.0));
    CHECK(east.heading_deg == doctest::Approx(90.0).epsilon(1e-4));
    CHECK((east.centerline_dir - Eigen::Vector3d(1, 0, 0)).norm() < 1e-4);
}

TEST_CASE("runway frame triad is right-handed and consistent with heading") {
    for (double heading : {0.0, 37.5, 90.0, 143.2, 221.0, 359.0}) {
        const RunwayFrame f = runway_frame(make_runway(43.6, 1.36, 150.0, heading, 45.0, 3000.0));
        Eigen::Matrix3d triad;
        triad.col(0) = f.lateral_dir;
        triad.col(1) = f.centerline_dir;
        triad.col(2) = f.up_dir;
        CHECK((triad * triad.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <
              1e-9);
        CHECK(triad.determinant() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(f.heading_deg >= 0.0);
        CHECK(f.heading_deg < 360.0);
        const double from_dir = wrap_degrees_360(
            rad_to_deg(std::atan2(f.centerline_dir.x(), f.centerline_dir.y())));
        CHECK(std::abs(from_dir - f.heading_deg) < 1e-6);
        const double circular = std::abs(f.heading_deg - heading);
        CHECK(std::min(circular, 360.0 - circular) < 0.01);  // meridian convergence
    }
}

TEST_CASE("corner noise of a meter barely moves a 3 km heading") {
    const auto clean = make_runway(43.0, 0.0, 0.0, 0.0, 45.0, 3000.0);
    // Same construction with corner east-offsets jittered by up to a meter.
    EnuFrame frame(GeodeticPoint{43.0, 0.0, 0.0});
    auto noisy = clean;
    const double jitter[4] = {0.7, -0.3, 1.0, -0.9};
    for (int i = 0; i < 4; ++i) {
        Eigen::Vector3d enu = frame.geodetic_to_enu(clean.corners[i]);
        enu.x() += jitter[i];
        noisy.corners[i] = frame.enu_to_geodetic(enu);
    }
    const RunwayFrame f = runway_frame(noisy);
    const double deviation = std::min(f.heading_deg, 360.0 - f.heading_deg);
    CHECK(deviation < 0.05);
}

TEST_CASE("skewed side edges are rejected") {
    // Threshold 45 m, far edge 400 m wide over 3000 m: edges diverge ~6.8 deg.
    EnuFrame frame(GeodeticPoint{43.0, 0.0, 0.0});
    RunwayDefinition r;
    r.airport_icao = "SKEW";
    r.runway_id = "00";
    r.corners[0] = frame.enu_to_geodetic({-22.5, 0.0, 0.0});
    r.corners[1] = frame.enu_to_geodetic({22.5, 0.0, 0.0});
    r.corners[2] = frame.enu_to_geodetic({200.0, 3000.0, 0.0});
    r.corners[3] = frame.enu_to_geodetic({-200.0, 3000.0, 0.0});
    CHECK_THROWS_AS(runway_frame(r), DegenerateRunway);
}
