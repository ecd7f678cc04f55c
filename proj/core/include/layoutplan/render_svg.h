// Copyright 2026 The layoutplan Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef LAYOUTPLAN_RENDER_SVG_H_
#define LAYOUTPLAN_RENDER_SVG_H_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>

#include "layoutplan/model.h"

namespace layoutplan {

enum class RenderMode { k2d, kTopdown3d, kKeypoint };

std::string_view to_string(RenderMode m);
RenderMode render_mode_from_string(std::string_view s);  // "2d", "topdown3d", "keypoint"
RenderMode render_mode_for(Dialect d);

/// "#rrggbb", fixed per category name.
std::string category_color(std::string_view category);

// COCO skeleton, pairs of indices into kKeypointNames.
inline constexpr std::array<std::pair<std::size_t, std::size_t>, 19> kSkeletonEdges = {{
    {15, 13}, {13, 11}, {16, 14}, {14, 12}, {11, 12}, {5, 11}, {6, 12},
    {5, 6},   {5, 7},   {6, 8},   {7, 9},   {8, 10},  {1, 2},  {0, 1},
    {0, 2},   {1, 3},   {2, 4},   {3, 5},   {4, 6},
}};

/// Standalone SVG document in canvas pixels.
///
/// 2d: one rect.element and one text.label per box on the canvas frame.
/// topdown3d: the view is centered on the room; the floor is a rect.floor
/// (from the room condition, else the canvas), each element a
/// polygon.footprint with its four rotated corners plus a line.orientation.
/// keypoint: line.bone for skeleton edges between visible nodes and
/// circle.joint per visible node.
///
/// Throws std::invalid_argument when the layout dialect does not fit `mode`.
std::string render_svg(const Layout& layout, RenderMode mode);

}  // namespace layoutplan

#endif  // LAYOUTPLAN_RENDER_SVG_H_
