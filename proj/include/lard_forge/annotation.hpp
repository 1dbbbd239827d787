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

#include "lard_forge/approach_cone.hpp"
#include "lard_forge/camera.hpp"
#include "lard_forge/runway_db.hpp"

namespace lard_forge {

enum class Visibility { FullyVisible, Clipped, BehindCamera };

std::string to_string(Visibility v);
Visibility visibility_from_string(const std::string& s);

/// Axis-aligned bounding box in pixels.
struct BBox {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
};

/// Derived box statistics of a corner quadrilateral.
struct BoxMetrics {
    BBox bbox;
    double quad_area_px2 = 0.0;  // shoelace area of the corner polygon
    double fill_ratio = 0.0;     // quad area / bbox area, in (0, 1]
    double aspect_ratio = 0.0;   // bbox height / width
};

/// Shoelace area on the canonical corner order plus the axis-aligned hull.
/// Throws DegenerateQuad for self-intersecting corner order or near-zero
/// area.
BoxMetrics box_metrics(const std::array<PixelPoint, 4>& corners);

/// Per-image annotation. Pixel coordinates refer to the image the label was
/// last evaluated against (full frame from annotate_frame, cropped frame
/// after apply_watermark_crop). Corner/bbox/metric fields are meaningful
/// only when visibility != BehindCamera.
struct FrameLabel {
    std::string image_id;
    std::string airport_icao;
    std::string runway_id;
    std::array<PixelPoint, 4> corners{};  // canonical order
    BBox bbox;
    double fill_ratio = 0.0;
    double aspect_ratio = 0.0;
    Visibility visibility = Visibility::BehindCamera;
    ApproachPose pose;
    double slant_distance_m = 0.0;
    // Image dimensions the pixel coordinates refer to. Carried for
    // statistics; not part of the serialized label schema.
    int image_width = 0;
    int image_height = 0;
};

/// Projects the runway for one pose and derives the label. FullyVisible
/// requires every corner strictly inside the image minus the watermark
/// margins (corners exactly on a border count as Clipped); any corner behind
/// the camera yields visibility BehindCamera with empty metrics.
FrameLabel annotate_frame(const ApproachPose& pose, const RunwayDefinition& r,
                          const RunwayFrame& frame, const Intrinsics& intr,
                          int crop_top = 0, int crop_bottom = 0);

/// Same, for an already-placed camera (used when labelling renderer
/// metadata); `pose` is carried as label metadata.
FrameLabel annotate_camera_frame(const CameraPose& cp, const ApproachPose& pose,
                                 const RunwayDefinition& r, const RunwayFrame& frame,
                                 const Intrinsics& intr, int crop_top = 0,
                                 int crop_bottom = 0);

/// Rebases a label onto the cropped image: corner v coordinates shift by
/// -crop_top, metrics are recomputed and visibility re-evaluated against the
/// reduced height. Throws InvalidCrop when the bands exhaust the image.
FrameLabel apply_watermark_crop(const FrameLabel& label, int crop_top, int crop_bottom);

}  // namespace lard_forge
