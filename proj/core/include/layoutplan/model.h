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

#ifndef LAYOUTPLAN_MODEL_H_
#define LAYOUTPLAN_MODEL_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace layoutplan {

// Coordinates are image pixels with the origin at the top-left corner and y
// growing downward. 3D positions are footprint centers measured from the room
// center; `depth` is the height of the object's bottom above the floor.

enum class Dialect { kImage2d, kScene3d, kKeypoint };

// Evaluation task family; selects defaults such as exemplar count and token
// budget.
enum class Task { kNumerical, kSpatial, kBedroom, kLivingRoom, kKeypoint };

std::string_view to_string(Task t);
Task task_from_string(std::string_view s);  // throws std::invalid_argument

std::string_view to_string(Dialect d);
Dialect dialect_from_string(std::string_view s);  // throws std::invalid_argument

struct CanvasSpec {
  int width_px = 64;
  int height_px = 64;
  // Physical extent (meters) mapped onto the larger canvas side. 3D only.
  double meters_per_canvas = 0.0;

  int max_extent_px() const { return width_px > height_px ? width_px : height_px; }
  void validate() const;  // throws std::invalid_argument

  static CanvasSpec image_default() { return {64, 64, 0.0}; }
  static CanvasSpec scene_default(double meters = 6.4) { return {256, 256, meters}; }

  bool operator==(const CanvasSpec&) const = default;
};

struct Element2D {
  std::string category;
  double left = 0;
  double top = 0;
  double width = 0;
  double height = 0;

  double center_x() const { return left + width / 2; }
  double center_y() const { return top + height / 2; }
  bool operator==(const Element2D&) const = default;
};

struct Element3D {
  std::string category;
  double length = 0;  // footprint extent along the left axis at orientation 0
  double width = 0;   // footprint extent along the top axis at orientation 0
  double height = 0;
  double left = 0;
  double top = 0;
  double depth = 0;
  double orientation_deg = 0;  // [0, 360)

  bool operator==(const Element3D&) const = default;
};

struct KeypointPos {
  double left = 0;
  double top = 0;
  bool visible() const { return !(left == 0 && top == 0); }
  bool operator==(const KeypointPos&) const = default;
};

inline constexpr std::size_t kKeypointCount = 17;

// COCO person keypoint order.
inline constexpr std::array<std::string_view, kKeypointCount> kKeypointNames = {
    "nose",           "left_eye",       "right_eye",  "left_ear",
    "right_ear",      "left_shoulder",  "right_shoulder", "left_elbow",
    "right_elbow",    "left_wrist",     "right_wrist", "left_hip",
    "right_hip",      "left_knee",      "right_knee", "left_ankle",
    "right_ankle"};

// Index into kKeypointNames, or nullopt for an unknown node name.
std::optional<std::size_t> keypoint_index(std::string_view name);

struct KeypointSet {
  int person_index = 1;
  // (0, 0) marks an invisible node.
  std::array<KeypointPos, kKeypointCount> nodes{};

  bool operator==(const KeypointSet&) const = default;
};

using Element = std::variant<Element2D, Element3D, KeypointSet>;

Dialect dialect_of(const Element& e);
const std::string& category_of(const Element& e);  // keypoint sets report "person"

enum class ConditionKind { kCaption, kRoomSpec };

struct ConditionText {
  ConditionKind kind = ConditionKind::kCaption;
  // Caption text, or the room type ("Bedroom") for room specs.
  std::string text;
  std::optional<double> room_length_m;
  std::optional<double> room_width_m;

  static ConditionText caption(std::string text);
  static ConditionText room(std::string room_type, double length_m, double width_m);

  void validate() const;  // throws std::invalid_argument
  bool operator==(const ConditionText&) const = default;
};

struct Layout {
  Dialect dialect = Dialect::kImage2d;
  std::vector<Element> elements;
  CanvasSpec canvas;
  ConditionText condition;

  // Every element matches `dialect`; throws std::invalid_argument otherwise.
  void validate() const;
  bool operator==(const Layout&) const = default;
};

/// Lowercases and trims a category label. Internal underscores and spaces
/// are preserved; runs of whitespace collapse to a single space.
std::string normalize_category(std::string_view raw);

// ---- normalization -------------------------------------------------------

/// Maps a physical length onto the canvas: value_m / room_max_m * canvas_max_px.
/// Throws std::invalid_argument when room_max_m <= 0.
double normalize(double value_m, double room_max_m, int canvas_max_px);
double denormalize(double value_px, double room_max_m, int canvas_max_px);

/// Converts a 3D layout between meters and canvas pixels using
/// `canvas.meters_per_canvas`. Orientation is untouched.
Layout normalize_scene(const Layout& meters_layout);
Layout denormalize_scene(const Layout& px_layout);

// ---- quantization --------------------------------------------------------

enum class QuantizeMode { kIntegerPx, kFloatFraction };

/// Rewrites element geometry in the units a dialect writes it in. Integer
/// mode rounds every field to the nearest integer. Fraction mode divides by
/// the canvas extent and rounds to two decimals; orientation stays in whole
/// degrees in both modes.
Element2D quantize_element(const Element2D& e, QuantizeMode mode, const CanvasSpec& c);
Element3D quantize_element(const Element3D& e, QuantizeMode mode, const CanvasSpec& c);
KeypointSet quantize_element(const KeypointSet& e, QuantizeMode mode, const CanvasSpec& c);

/// Folds any angle into [0, 360).
double normalize_orientation(double deg);

// ---- geometry ------------------------------------------------------------

struct ClampResult {
  Element2D element;
  bool clamped = false;
};

/// Intersects the box with [0, width_px] x [0, height_px].
ClampResult clamp_to_canvas(const Element2D& e, const CanvasSpec& c);

struct Point2 {
  double x = 0;
  double y = 0;
};

/// Corners of a 3D element's floor footprint, rotated by its orientation about
/// (left, top). Order: (+l,+w), (-l,+w), (-l,-w), (+l,-w) before rotation.
std::array<Point2, 4> footprint_corners(const Element3D& e);

}  // namespace layoutplan

#endif  // LAYOUTPLAN_MODEL_H_
