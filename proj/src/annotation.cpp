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

#include "lard_forge/annotation.hpp"

#include <algorithm>
#include <cmath>

#include "lard_forge/errors.hpp"

namespace lard_forge {

namespace {

constexpr double kMinQuadAreaPx2 = 1e-9;

/// Proper segment intersection (shared endpoints excluded) in 2D.
bool segments_cross(const PixelPoint& a, const PixelPoint& b, const PixelPoint& c,
                    const PixelPoint& d) {
    auto orient = [](const PixelPoint& p, const PixelPoint& q, const PixelPoint& r) {
        return (q.u - p.u) * (r.v - p.v) - (q.v - p.v) * (r.u - p.u);
    };
    const double o1 = orient(a, b, c);
    const double o2 = orient(a, b, d);
    const double o3 = orient(c, d, a);
    const double o4 = orient(c, d, b);
    return o1 * o2 < 0.0 && o3 * o4 < 0.0;
}

bool strictly_inside(const PixelPoint& p, double width, double v_lo, double v_hi) {
    return p.u > 0.0 && p.u < width && p.v > v_lo && p.v < v_hi;
}

Visibility evaluate_visibility(const std::array<PixelPoint, 4>& corners, int width,
                               int height, int crop_top, int crop_bottom) {
    for (const auto& c : corners) {
        if (!strictly_inside(c, width, crop_top, height - crop_bottom)) {
            return Visibility::Clipped;
        }
    }
    return Visibility::FullyVisible;
}

}  // namespace

std::string to_string(Visibility v) {
    switch (v) {
        case Visibility::FullyVisible: return "FullyVisible";
        case Visibility::Clipped: return "Clipped";
        case Visibility::BehindCamera: return "BehindCamera";
    }
    return "BehindCamera";
}

Visibility visibility_from_string(const std::string& s) {
    if (s == "FullyVisible") return Visibility::FullyVisible;
    if (s == "Clipped") return Visibility::Clipped;
    if (s == "BehindCamera") return Visibility::BehindCamera;
    throw ParseError("unknown visibility value: '" + s + "'");
}

BoxMetrics box_metrics(const std::array<PixelPoint, 4>& corners) {
    if (segments_cross(corners[0], corners[1], corners[2], corners[3]) ||
        segments_cross(corners[1], corners[2], corners[3], corners[0])) {
        throw DegenerateQuad("box_metrics: corner order is self-intersecting");
    }

    double twice_area = 0.0;
    for (int i = 0; i < 4; ++i) {
        const PixelPoint& p = corners[i];
        const PixelPoint& q = corners[(i + 1) % 4];
        twice_area += p.u * q.v - q.u * p.v;
    }
    const double quad_area = 0.5 * std::abs(twice_area);
    if (quad_area < kMinQuadAreaPx2) {
        throw DegenerateQuad("box_metrics: corner quadrilateral has near-zero area");
    }

    BoxMetrics m;
    m.bbox = {corners[0].u, corners[0].v, corners[0].u, corners[0].v};
    for (const auto& c : corners) {
        m.bbox.x_min = std::min(m.bbox.x_min, c.u);
        m.bbox.y_min = std::min(m.bbox.y_min, c.v);
        m.bbox.x_max = std::max(m.bbox.x_max, c.u);
        m.bbox.y_max = std::max(m.bbox.y_max, c.v);
    }
    m.quad_area_px2 = quad_area;
    m.fill_ratio = quad_area / m.bbox.area();
    m.aspect_ratio = m.bbox.height() / m.bbox.width();
    return m;
}

FrameLabel annotate_camera_frame(const CameraPose& cp, const ApproachPose& pose,
                                 const RunwayDefinition& r, const RunwayFrame& frame,
                                 const Intrinsics& intr, int crop_top, int crop_bottom) {
    FrameLabel label;
    label.airport_icao = r.airport_icao;
    label.runway_id = r.runway_id;
    label.pose = pose;
    label.slant_distance_m = cp.slant_distance_m;
    label.image_width = intr.width;
    label.image_height = intr.height;

    const RunwayProjection proj = project_runway(intr, extrinsic_from_pose(cp), r, frame);
    if (!proj.all_in_front()) {
        label.visibility = Visibility::BehindCamera;
        return label;
    }

    label.corners = proj.points();
    const BoxMetrics m = box_metrics(label.corners);
    label.bbox = m.bbox;
    label.fill_ratio = m.fill_ratio;
    label.aspect_ratio = m.aspect_ratio;
    label.visibility =
        evaluate_visibility(label.corners, intr.width, intr.height, crop_top, crop_bottom);
    return label;
}

FrameLabel annotate_frame(const ApproachPose& pose, const RunwayDefinition& r,
                          const RunwayFrame& frame, const Intrinsics& intr, int crop_top,
                          int crop_bottom) {
    return annotate_camera_frame(pose_to_camera(pose, frame), pose, r, frame, intr,
                                 crop_top, crop_bottom);
}

FrameLabel apply_watermark_crop(const FrameLabel& label, int crop_top, int crop_bottom) {
    if (crop_top < 0 || crop_bottom < 0) {
        throw InvalidCrop("apply_watermark_crop: crop bands must be non-negative");
    }
    if (crop_top + crop_bottom >= label.image_height) {
        throw InvalidCrop("apply_watermark_crop: crop bands exhaust the image height");
    }
    if (crop_top == 0 && crop_bottom == 0) return label;

    FrameLabel out = label;
    out.image_height = label.image_height - crop_top - crop_bottom;
    if (label.visibility == Visibility::BehindCamera) return out;

    for (auto& c : out.corners) c.v -= crop_top;
    const BoxMetrics m = box_metrics(out.corners);
    out.bbox = m.bbox;
    out.fill_ratio = m.fill_ratio;
    out.aspect_ratio = m.aspect_ratio;
    out.visibility =
        evaluate_visibility(out.corners, out.image_width, out.image_height, 0, 0);
    return out;
}

}  // namespace lard_forge
