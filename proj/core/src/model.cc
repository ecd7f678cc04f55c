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

#include "layoutplan/model.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace layoutplan {

std::string_view to_string(Dialect d) {
  switch (d) {
    case Dialect::kImage2d:
      return "image2d";
    case Dialect::kScene3d:
      return "scene3d";
    case Dialect::kKeypoint:
      return "keypoint";
  }
  return "image2d";
}

Dialect dialect_from_string(std::string_view s) {
  if (s == "image2d") return Dialect::kImage2d;
  if (s == "scene3d") return Dialect::kScene3d;
  if (s == "keypoint") return Dialect::kKeypoint;
  throw std::invalid_argument(fmt::format("unknown dialect '{}'", s));
}

std::string_view to_string(Task t) {
  switch (t) {
    case Task::kNumerical:
      return "numerical";
    case Task::kSpatial:
      return "spatial";
    case Task::kBedroom:
      return "bedroom";
    case Task::kLivingRoom:
      return "living_room";
    case Task::kKeypoint:
      return "keypoint";
  }
  return "numerical";
}

Task task_from_string(std::string_view s) {
  for (Task t : {Task::kNumerical, Task::kSpatial, Task::kBedroom, Task::kLivingRoom,
                 Task::kKeypoint}) {
    if (to_string(t) == s) return t;
  }
  throw std::invalid_argument(fmt::format("unknown task '{}'", s));
}

void CanvasSpec::validate() const {
  if (width_px <= 0 || height_px <= 0) {
    throw std::invalid_argument(
        fmt::format("canvas must be positive, got {}x{}", width_px, height_px));
  }
  if (meters_per_canvas < 0) {
    throw std::invalid_argument("meters_per_canvas must not be negative");
  }
}

std::optional<std::size_t> keypoint_index(std::string_view name) {
  for (std::size_t i = 0; i < kKeypointNames.size(); ++i) {
    if (kKeypointNames[i] == name) return i;
  }
  return std::nullopt;
}

Dialect dialect_of(const Element& e) {
  switch (e.index()) {
    case 0:
      return Dialect::kImage2d;
    case 1:
      return Dialect::kScene3d;
    default:
      return Dialect::kKeypoint;
  }
}

const std::string& category_of(const Element& e) {
  static const std::string kPerson = "person";
  if (const auto* e2 = std::get_if<Element2D>(&e)) return e2->category;
  if (const auto* e3 = std::get_if<Element3D>(&e)) return e3->category;
  return kPerson;
}

ConditionText ConditionText::caption(std::string text) {
  ConditionText c;
  c.kind = ConditionKind::kCaption;
  c.text = std::move(text);
  return c;
}

ConditionText ConditionText::room(std::string room_type, double length_m, double width_m) {
  ConditionText c;
  c.kind = ConditionKind::kRoomSpec;
  c.text = std::move(room_type);
  c.room_length_m = length_m;
  c.room_width_m = width_m;
  return c;
}

void ConditionText::validate() const {
  if (text.empty()) throw std::invalid_argument("condition text is empty");
  if (kind == ConditionKind::kRoomSpec) {
    if (!room_length_m || !room_width_m) {
      throw std::invalid_argument("room condition requires both room dimensions");
    }
    if (*room_length_m <= 0 || *room_width_m <= 0) {
      throw std::invalid_argument("room dimensions must be positive");
    }
  }
}

void Layout::validate() const {
  canvas.validate();
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (dialect_of(elements[i]) != dialect) {
      throw std::invalid_argument(fmt::format(
          "element {} has dialect {}, layout is {}", i,
          to_string(dialect_of(elements[i])), to_string(dialect)));
    }
  }
}

std::string normalize_category(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char ch : raw) {
    const auto uc = static_cast<unsigned char>(ch);
    if (std::isspace(uc)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(uc)));
  }
  return out;
}

double normalize(double value_m, double room_max_m, int canvas_max_px) {
  if (!(room_max_m > 0)) {
    throw std::invalid_argument(
        fmt::format("normalization scalar must be positive, got {}", room_max_m));
  }
  return value_m / room_max_m * canvas_max_px;
}

double denormalize(double value_px, double room_max_m, int canvas_max_px) {
  if (!(room_max_m > 0)) {
    throw std::invalid_argument(
        fmt::format("normalization scalar must be positive, got {}", room_max_m));
  }
  if (canvas_max_px <= 0) throw std::invalid_argument("canvas extent must be positive");
  return value_px / canvas_max_px * room_max_m;
}

namespace {

template <typename F>
Layout map_scene(const Layout& in, F&& f) {
  if (in.dialect != Dialect::kScene3d) {
    throw std::invalid_argument("scene conversion requires a scene3d layout");
  }
  Layout out = in;
  for (auto& el : out.elements) {
    auto& e = std::get<Element3D>(el);
    for (double* v : {&e.length, &e.width, &e.height, &e.left, &e.top, &e.depth}) {
      *v = f(*v);
    }
  }
  return out;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

Layout normalize_scene(const Layout& meters_layout) {
  const double scale = meters_layout.canvas.meters_per_canvas;
  const int extent = meters_layout.canvas.max_extent_px();
  return map_scene(meters_layout, [&](double v) { return normalize(v, scale, extent); });
}

Layout denormalize_scene(const Layout& px_layout) {
  const double scale = px_layout.canvas.meters_per_canvas;
  const int extent = px_layout.canvas.max_extent_px();
  return map_scene(px_layout, [&](double v) { return denormalize(v, scale, extent); });
}

double normalize_orientation(double deg) {
  if (!std::isfinite(deg)) return 0.0;
  double r = std::fmod(deg, 360.0);
  if (r < 0) r += 360.0;
  if (r >= 360.0) r = 0.0;
  return r;
}

Element2D quantize_element(const Element2D& e, QuantizeMode mode, const CanvasSpec& c) {
  Element2D q = e;
  if (mode == QuantizeMode::kIntegerPx) {
    for (double* v : {&q.left, &q.top, &q.width, &q.height}) *v = std::round(*v);
  } else {
    q.left = round2(e.left / c.width_px);
    q.width = round2(e.width / c.width_px);
    q.top = round2(e.top / c.height_px);
    q.height = round2(e.height / c.height_px);
  }
  return q;
}

Element3D quantize_element(const Element3D& e, QuantizeMode mode, const CanvasSpec& c) {
  Element3D q = e;
  const double extent = c.max_extent_px();
  for (double* v : {&q.length, &q.width, &q.height, &q.left, &q.top, &q.depth}) {
    *v = mode == QuantizeMode::kIntegerPx ? std::round(*v) : round2(*v / extent);
  }
  q.orientation_deg = normalize_orientation(std::round(e.orientation_deg));
  return q;
}

KeypointSet quantize_element(const KeypointSet& e, QuantizeMode mode, const CanvasSpec& c) {
  KeypointSet q = e;
  for (auto& n : q.nodes) {
    if (mode == QuantizeMode::kIntegerPx) {
      n.left = std::round(n.left);
      n.top = std::round(n.top);
    } else {
      n.left = round2(n.left / c.width_px);
      n.top = round2(n.top / c.height_px);
    }
  }
  return q;
}

namespace {

// Intersection of [lo, lo + len] with [0, limit], returned as (start, length).
std::pair<double, double> clip_interval(double lo, double len, double limit) {
  double hi = lo + len;
  double a = std::clamp(lo, 0.0, limit);
  double b = std::clamp(hi, 0.0, limit);
  if (b < a) b = a;
  return {a, b - a};
}

}  // namespace

ClampResult clamp_to_canvas(const Element2D& e, const CanvasSpec& c) {
  ClampResult r{e, false};
  const double w = std::max(0.0, e.width);
  const double h = std::max(0.0, e.height);
  auto [left, width] = clip_interval(e.left, w, c.width_px);
  auto [top, height] = clip_interval(e.top, h, c.height_px);
  r.element.left = left;
  r.element.width = width;
  r.element.top = top;
  r.element.height = height;
  r.clamped = left != e.left || width != e.width || top != e.top || height != e.height;
  return r;
}

std::array<Point2, 4> footprint_corners(const Element3D& e) {
  const double deg = normalize_orientation(e.orientation_deg);
  double cs = 0;
  double sn = 0;
  // Quarter turns are exact so axis-aligned footprints keep exact corners.
  if (deg == 0) {
    cs = 1;
  } else if (deg == 90) {
    sn = 1;
  } else if (deg == 180) {
    cs = -1;
  } else if (deg == 270) {
    sn = -1;
  } else {
    const double theta = deg * std::numbers::pi / 180.0;
    cs = std::cos(theta);
    sn = std::sin(theta);
  }
  const double hl = e.length / 2;
  const double hw = e.width / 2;
  const std::array<Point2, 4> local = {{{hl, hw}, {-hl, hw}, {-hl, -hw}, {hl, -hw}}};
  std::array<Point2, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    out[i].x = e.left + local[i].x * cs - local[i].y * sn;
    out[i].y = e.top + local[i].x * sn + local[i].y * cs;
  }
  return out;
}

}  // namespace layoutplan
