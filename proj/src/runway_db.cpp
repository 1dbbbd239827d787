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

#include "lard_forge/runway_db.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "lard_forge/errors.hpp"

namespace lard_forge {

namespace {

constexpr const char* kCsvHeader =
    "airport_icao,runway_id,"
    "cornerA_lat,cornerA_lon,cornerA_alt,"
    "cornerB_lat,cornerB_lon,cornerB_alt,"
    "cornerC_lat,cornerC_lon,cornerC_alt,"
    "cornerD_lat,cornerD_lon,cornerD_alt";

constexpr double kMaxEdgeDirectionSkewDeg = 5.0;
constexpr double kAimingPointDistanceM = 300.0;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& field, int row, const std::string& name) {
    const std::string t = trim(field);
    double value = 0.0;
    const char* b = t.data();
    const char* e = b + t.size();
    auto [ptr, ec] = std::from_chars(b, e, value);
    if (ec != std::errc{} || ptr != e || t.empty()) {
        throw ParseError("runway db row " + std::to_string(row) + ": field '" +
                         name + "' is not a number: '" + t + "'");
    }
    return value;
}

std::string fmt_double(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

const char* kCornerFieldNames[4][3] = {
    {"cornerA_lat", "cornerA_lon", "cornerA_alt"},
    {"cornerB_lat", "cornerB_lon", "cornerB_alt"},
    {"cornerC_lat", "cornerC_lon", "cornerC_alt"},
    {"cornerD_lat", "cornerD_lon", "cornerD_alt"}};

RunwayDefinition parse_csv_row(const std::string& line, int row) {
    const auto fields = split_csv(line);
    if (fields.size() != 14) {
        throw ParseError("runway db row " + std::to_string(row) + ": expected 14 fields, got " +
                         std::to_string(fields.size()));
    }
    RunwayDefinition r;
    r.airport_icao = trim(fields[0]);
    r.runway_id = trim(fields[1]);
    for (int c = 0; c < 4; ++c) {
        r.corners[c].latitude_deg = parse_double(fields[2 + 3 * c], row, kCornerFieldNames[c][0]);
        r.corners[c].longitude_deg = parse_double(fields[3 + 3 * c], row, kCornerFieldNames[c][1]);
        r.corners[c].altitude_m = parse_double(fields[4 + 3 * c], row, kCornerFieldNames[c][2]);
    }
    return r;
}

RunwayDefinition parse_json_row(const nlohmann::json& obj, int row) {
    if (!obj.is_object()) {
        throw ParseError("runway db row " + std::to_string(row) + ": expected an object");
    }
    auto require = [&](const char* name) -> const nlohmann::json& {
        auto it = obj.find(name);
        if (it == obj.end()) {
            throw ParseError("runway db row " + std::to_string(row) + ": missing field '" +
                             name + "'");
        }
        return *it;
    };
    auto number = [&](const char* name) {
        const auto& v = require(name);
        if (!v.is_number()) {
            throw ParseError("runway db row " + std::to_string(row) + ": field '" + name +
                             "' is not a number");
        }
        return v.get<double>();
    };
    RunwayDefinition r;
    r.airport_icao = require("airport_icao").get<std::string>();
    r.runway_id = require("runway_id").get<std::string>();
    for (int c = 0; c < 4; ++c) {
        r.corners[c].latitude_deg = number(kCornerFieldNames[c][0]);
        r.corners[c].longitude_deg = number(kCornerFieldNames[c][1]);
        r.corners[c].altitude_m = number(kCornerFieldNames[c][2]);
    }
    return r;
}

/// Raw rows in document order, before geometric validation.
std::vector<RunwayDefinition> parse_rows(const std::string& document) {
    const std::string doc = trim(document);
    std::vector<RunwayDefinition> rows;

    if (!doc.empty() && (doc.front() == '[' || doc.front() == '{')) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(doc);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("runway db: invalid JSON: ") + e.what());
        }
        const nlohmann::json* arr = &j;
        if (j.is_object()) {
            auto it = j.find("runways");
            if (it == j.end()) {
                throw ParseError("runway db: JSON object lacks a 'runways' array");
            }
            arr = &*it;
        }
        if (!arr->is_array()) {
            throw ParseError("runway db: JSON document is not an array of runways");
        }
        int row = 0;
        for (const auto& obj : *arr) {
            rows.push_back(parse_json_row(obj, ++row));
        }
        return rows;
    }

    std::istringstream in(document);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("runway db: empty document (header row required)");
    }
    if (trim(line) != kCsvHeader) {
        throw ParseError("runway db: CSV header does not match the expected schema");
    }
    int row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        rows.push_back(parse_csv_row(line, ++row));
    }
    return rows;
}

struct EnuCorners {
    EnuFrame frame;
    std::array<Eigen::Vector3d, 4> enu;
};

/// Corners expressed in an ENU frame at the ECEF centroid of the quad.
EnuCorners corners_in_local_frame(const RunwayDefinition& r) {
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto& c : r.corners) centroid += geodetic_to_ecef(c).vec();
    centroid /= 4.0;
    EnuFrame frame(ecef_to_geodetic(EcefPoint::from(centroid)));
    EnuCorners out{frame, {}};
    for (int i = 0; i < 4; ++i) out.enu[i] = frame.geodetic_to_enu(r.corners[i]);
    return out;
}

struct CenterlineFit {
    Eigen::Vector3d dir;       // horizontal unit vector, landing direction
    double edge_skew_deg = 0;  // angle between the two side-edge directions
};

CenterlineFit fit_centerline(const std::array<Eigen::Vector3d, 4>& enu) {
    Eigen::Vector3d da = enu[3] - enu[0];  // A -> D (left side)
    Eigen::Vector3d db = enu[2] - enu[1];  // B -> C (right side)
    da.z() = 0.0;
    db.z() = 0.0;
    const double na = da.norm();
    const double nb = db.norm();
    if (na < 1.0 || nb < 1.0) {
        throw DegenerateRunway("runway side edges shorter than 1 m in the tangent plane");
    }
    da /= na;
    db /= nb;
    const double cosang = std::clamp(da.dot(db), -1.0, 1.0);
    CenterlineFit fit;
    fit.edge_skew_deg = rad_to_deg(std::acos(cosang));
    fit.dir = (da + db).normalized();
    return fit;
}

double heading_of(const Eigen::Vector3d& horizontal_dir) {
    return wrap_degrees_360(rad_to_deg(std::atan2(horizontal_dir.x(), horizontal_dir.y())));
}

std::string runway_tag(const RunwayDefinition& r) {
    return r.airport_icao + "/" + r.runway_id;
}

}  // namespace

RunwayGeometry measure_runway(const RunwayDefinition& r) {
    const auto local = corners_in_local_frame(r);
    const auto& e = local.enu;
    RunwayGeometry g;
    g.width_m = 0.5 * ((e[1] - e[0]).norm() + (e[2] - e[3]).norm());
    g.length_m = 0.5 * ((e[3] - e[0]).norm() + (e[2] - e[1]).norm());
    g.heading_deg = heading_of(fit_centerline(e).dir);
    return g;
}

void validate_runway(const RunwayDefinition& r, const RunwayValidationLimits& limits) {
    const std::string tag = runway_tag(r);
    if (r.airport_icao.size() != 4) {
        throw ValidationError(tag + ": airport_icao must be a 4-character code");
    }
    if (r.runway_id.empty()) {
        throw ValidationError(tag + ": runway_id must be non-empty");
    }
    for (int i = 0; i < 4; ++i) {
        if (!r.corners[i].is_valid()) {
            throw ValidationError(tag + ": corner " + std::string(1, char('A' + i)) +
                                  " has out-of-range coordinates");
        }
    }

    const auto local = corners_in_local_frame(r);
    const auto& e = local.enu;

    // Convexity (and non-collinearity) in the tangent plane: consecutive edge
    // cross products must share a strict sign.
    double sign = 0.0;
    for (int i = 0; i < 4; ++i) {
        const Eigen::Vector3d& p0 = e[i];
        const Eigen::Vector3d& p1 = e[(i + 1) % 4];
        const Eigen::Vector3d& p2 = e[(i + 2) % 4];
        const double cross = (p1.x() - p0.x()) * (p2.y() - p1.y()) -
                             (p1.y() - p0.y()) * (p2.x() - p1.x());
        if (std::abs(cross) < 1e-6) {
            throw ValidationError(tag + ": corners are collinear or nearly so");
        }
        if (sign == 0.0) {
            sign = cross > 0 ? 1.0 : -1.0;
        } else if (cross * sign < 0.0) {
            throw ValidationError(tag + ": corner quadrilateral is not convex");
        }
    }

    // Coplanarity: the diagonals' cross product is normal to the quad plane.
    const Eigen::Vector3d normal = (e[2] - e[0]).cross(e[3] - e[1]).normalized();
    const Eigen::Vector3d centroid = (e[0] + e[1] + e[2] + e[3]) / 4.0;
    for (int i = 0; i < 4; ++i) {
        const double d = std::abs((e[i] - centroid).dot(normal));
        if (d > limits.coplanarity_tol_m) {
            throw ValidationError(tag + ": corners deviate " + fmt_double(d, 2) +
                                  " m from a common plane (tolerance " +
                                  fmt_double(limits.coplanarity_tol_m, 2) + " m)");
        }
    }

    const RunwayGeometry g = measure_runway(r);
    if (g.width_m < limits.min_width_m || g.width_m > limits.max_width_m) {
        throw ValidationError(tag + ": implied width " + fmt_double(g.width_m, 2) +
                              " m outside [" + fmt_double(limits.min_width_m, 0) + ", " +
                              fmt_double(limits.max_width_m, 0) + "] m");
    }
    if (g.length_m < limits.min_length_m || g.length_m > limits.max_length_m) {
        throw ValidationError(tag + ": implied length " + fmt_double(g.length_m, 2) +
                              " m outside [" + fmt_double(limits.min_length_m, 0) + ", " +
                              fmt_double(limits.max_length_m, 0) + "] m");
    }
}

std::vector<RunwayDefinition> load_runway_db(const std::string& document,
                                             const RunwayValidationLimits& limits) {
    auto rows = parse_rows(document);
    int row = 0;
    for (const auto& r : rows) {
        ++row;
        try {
            validate_runway(r, limits);
        } catch (const ValidationError& e) {
            throw ValidationError("runway db row " + std::to_string(row) + ": " + e.what());
        }
    }
    return rows;
}

std::vector<RunwayRowReport> validate_runway_db(const std::string& document,
                                                const RunwayValidationLimits& limits) {
    auto rows = parse_rows(document);  // structural problems still throw
    std::vector<RunwayRowReport> reports;
    reports.reserve(rows.size());
    int row = 0;
    for (const auto& r : rows) {
        RunwayRowReport rep;
        rep.row = ++row;
        rep.airport_icao = r.airport_icao;
        rep.runway_id = r.runway_id;
        try {
            validate_runway(r, limits);
            rep.ok = true;
            const RunwayGeometry g = measure_runway(r);
            rep.message = "width " + fmt_double(g.width_m, 1) + " m, length " +
                          fmt_double(g.length_m, 1) + " m, heading " +
                          fmt_double(g.heading_deg, 1) + " deg";
        } catch (const Error& e) {
            rep.ok = false;
            rep.message = e.what();
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

std::string serialize_runway_db(const std::vector<RunwayDefinition>& runways) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& r : runways) {
        out += r.airport_icao;
        out += ',';
        out += r.runway_id;
        for (const auto& c : r.corners) {
            out += ',';
            out += fmt_double(c.latitude_deg, 15);
            out += ',';
            out += fmt_double(c.longitude_deg, 15);
            out += ',';
            out += fmt_double(c.altitude_m, 9);
        }
        out += '\n';
    }
    return out;
}

GeodeticPoint compute_aiming_point(const RunwayDefinition& r) {
    // Threshold midpoint, via an ENU frame anchored at corner A.
    EnuFrame at_a(r.corners[0]);
    const Eigen::Vector3d mid_enu = 0.5 * (at_a.geodetic_to_enu(r.corners[0]) +
                                           at_a.geodetic_to_enu(r.corners[1]));
    const GeodeticPoint threshold_mid = at_a.enu_to_geodetic(mid_enu);

    EnuFrame at_mid(threshold_mid);
    std::array<Eigen::Vector3d, 4> enu;
    for (int i = 0; i < 4; ++i) enu[i] = at_mid.geodetic_to_enu(r.corners[i]);

    const double length = 0.5 * ((enu[3] - enu[0]).norm() + (enu[2] - enu[1]).norm());
    if (length < kAimingPointDistanceM) {
        throw DegenerateRunway(runway_tag(r) + ": runway length " + fmt_double(length, 1) +
                               " m is shorter than the 300 m aiming-point offset");
    }

    const CenterlineFit fit = fit_centerline(enu);
    GeodeticPoint aim = at_mid.enu_to_geodetic(kAimingPointDistanceM * fit.dir);
    aim.altitude_m = threshold_mid.altitude_m;
    return aim;
}

RunwayFrame runway_frame(const RunwayDefinition& r) {
    const GeodeticPoint aim = compute_aiming_point(r);
    EnuFrame enu(aim);
    std::array<Eigen::Vector3d, 4> corners;
    for (int i = 0; i < 4; ++i) corners[i] = enu.geodetic_to_enu(r.corners[i]);

    const CenterlineFit fit = fit_centerline(corners);
    if (fit.edge_skew_deg > kMaxEdgeDirectionSkewDeg) {
        throw DegenerateRunway(runway_tag(r) + ": side-edge directions differ by " +
                               fmt_double(fit.edge_skew_deg, 2) + " deg (limit " +
                               fmt_double(kMaxEdgeDirectionSkewDeg, 0) + " deg)");
    }

    RunwayFrame frame{aim, enu, fit.dir, Eigen::Vector3d::Zero(),
                      Eigen::Vector3d(0.0, 0.0, 1.0), 0.0};
    frame.lateral_dir = frame.centerline_dir.cross(frame.up_dir).normalized();
    frame.heading_deg = heading_of(frame.centerline_dir);
    return frame;
}

}  // namespace lard_forge
