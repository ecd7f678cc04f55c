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


#include "layoutplan/render_svg.h"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "layoutplan/hashing.h"

namespace layoutplan {

std::string_view to_string(RenderMode m) {
  switch (m) {
    case RenderMode::k2d:
      return "2d";
    case RenderMode::kTopdown3d:
      return "topdown3d";
    case RenderMode::kKeypoint:
      return "keypoint";
  }
  return "2d";
}

RenderMode render_mode_from_string(std::string_view s) {
  for (auto m : {RenderMode::k2d, RenderMode::kTopdown3d, RenderMode::kKeypoint}) {
    if (to_string(m) == s) return m;
  }
  throw std::invalid_argument(fmt::format("unknown render mode '{}'", s));
}

RenderMode render_mode_for(Dialect d) {
  switch (d) {
    case Dialect::kImage2d:
      return RenderMode::k2d;
    case Dialect::kScene3d:
      return RenderMode::kTopdown3d;
    case Dialect::kKeypoint:
      return RenderMode::kKeypoint;
  }
  return RenderMode::k2d;
}

std::string category_color(std::string_view category) {
  // Hue from the hash; saturation and lightness fixed so labels stay legible.
  const double h = static_cast<double>(fnv1a64(category) % 360) / 60.0;
  const double s = 0.65, l = 0.45;
  const double c = (1 - std::abs(2 * l - 1)) * s;
  const double x = c * (1 - std::abs(std::fmod(h, 2.0) - 1));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(h)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = l - c / 2;
  auto byte = [&](double v) { return static_cast<int>(std::lround((v + m) * 255)); };
  return fmt::format("#{:02x}{:02x}{:02x}", byte(r), byte(g), byte(b));
}

namespace {

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Shortest text that reads back as the same double.
std::string num(double v) { return fmt::format("{}", v == 0 ? 0.0 : v); }

std::string header(double x, double y, double w, double h) {
  const double scale = 512.0 / std::max(w, h);
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"{}\" "
      "height=\"{}\">\n",
      num(x), num(y), num(w), num(h), std::lround(w * scale), std::lround(h * scale));
}

void expect(const Layout& l, Dialect d, RenderMode m) {
  if (l.dialect != d) {
    throw std::invalid_argument(
        fmt::format("{} rendering needs a {} layout, got {}", to_string(m), to_string(d),
                    to_string(l.dialect)));
  }
}

std::string render_2d(const Layout& l) {
  const double w = l.canvas.width_px, h = l.canvas.height_px;
  const double font = std::max(w, h) / 24;
  std::string out = header(0, 0, w, h);
  out += fmt::format(
      "<rect class=\"canvas\" x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\" "
      "stroke=\"black\" stroke-width=\"{}\"/>\n",
      num(w), num(h), num(font / 8));
  for (const auto& el : l.elements) {
    const auto& e = std::get<Element2D>(el);
    const std::string color = category_color(e.category);
    out += fmt::format(
        "<rect class=\"element\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" "
        "fill-opacity=\"0.3\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
        num(e.left), num(e.top), num(e.width), num(e.height), color, color, num(font / 8));
    out += fmt::format(
        "<text class=\"label\" x=\"{}\" y=\"{}\" font-size=\"{}\" fill=\"{}\">{}</text>\n",
        num(e.left + font / 4), num(e.top + font), num(font), color, escape(e.category));
  }
  out += "</svg>\n";
  return out;
}

std::string render_topdown(const Layout& l) {
  double fl = l.canvas.width_px, fw = l.canvas.height_px;
  if (l.condition.kind == ConditionKind::kRoomSpec && l.condition.room_length_m &&
      l.condition.room_width_m && l.canvas.meters_per_canvas > 0) {
    const int extent = l.canvas.max_extent_px();
    fl = normalize(*l.condition.room_length_m, l.canvas.meters_per_canvas, extent);
    fw = normalize(*l.condition.room_width_m, l.canvas.meters_per_canvas, extent);
  }
  // View covers the canvas and the floor, centered on the room.
  const double vw = std::max<double>(l.canvas.width_px, fl);
  const double vh = std::max<double>(l.canvas.height_px, fw);
  const double font = std::max(vw, vh) / 32;
  std::string out = header(-vw / 2, -vh / 2, vw, vh);
  out += fmt::format(
      "<rect class=\"floor\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#f4f1ea\" "
      "stroke=\"black\" stroke-width=\"{}\"/>\n",
      num(-fl / 2), num(-fw / 2), num(fl), num(fw), num(font / 8));
  for (const auto& el : l.elements) {
    const auto& e = std::get<Element3D>(el);
    const std::string color = category_color(e.category);
    const auto corners = footprint_corners(e);
    std::string pts;
    for (const auto& p : corners) {
      if (!pts.empty()) pts += ' ';
      pts += num(p.x) + "," + num(p.y);
    }
    out += fmt::format(
        "<polygon class=\"footprint\" points=\"{}\" fill=\"{}\" fill-opacity=\"0.3\" "
        "stroke=\"{}\" stroke-width=\"{}\"/>\n",
        pts, color, color, num(font / 8));
    // Arrow toward the middle of the +width edge.
    const double fx = (corners[0].x + corners[1].x) / 2;
    const double fy = (corners[0].y + corners[1].y) / 2;
    out += fmt::format(
        "<line class=\"orientation\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" "
        "stroke-width=\"{}\"/>\n",
        num(e.left), num(e.top), num(fx), num(fy), color, num(font / 6));
    out += fmt::format(
        "<text class=\"label\" x=\"{}\" y=\"{}\" font-size=\"{}\" fill=\"{}\" "
        "text-anchor=\"middle\">{}</text>\n",
        num(e.left), num(e.top), num(font), color, escape(e.category));
  }
  out += "</svg>\n";
  return out;
}

std::string render_keypoints(const Layout& l) {
  const double w = l.canvas.width_px, h = l.canvas.height_px;
  const double stroke = std::max(w, h) / 200;
  std::string out = header(0, 0, w, h);
  out += fmt::format(
      "<rect class=\"canvas\" x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\" "
      "stroke=\"black\" stroke-width=\"{}\"/>\n",
      num(w), num(h), num(stroke));
  for (const auto& el : l.elements) {
    const auto& k = std::get<KeypointSet>(el);
    const std::string color = category_color(fmt::format("person#{}", k.person_index));
    for (const auto& [a, b] : kSkeletonEdges) {
      const auto& pa = k.nodes[a];
      const auto& pb = k.nodes[b];
      if (!pa.visible() || !pb.visible()) continue;
      out += fmt::format(
          "<line class=\"bone\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" "
          "stroke-width=\"{}\"/>\n",
          num(pa.left), num(pa.top), num(pb.left), num(pb.top), color, num(stroke * 2));
    }
    for (std::size_t i = 0; i < k.nodes.size(); ++i) {
      if (!k.nodes[i].visible()) continue;
      out += fmt::format(
          "<circle class=\"joint\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"><title>{}</title>"
          "</circle>\n",
          num(k.nodes[i].left), num(k.nodes[i].top), num(stroke * 3), color, kKeypointNames[i]);
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace

std::string render_svg(const Layout& layout, RenderMode mode) {
  layout.canvas.validate();
  switch (mode) {
    case RenderMode::k2d:
      expect(layout, Dialect::kImage2d, mode);
      return render_2d(layout);
    case RenderMode::kTopdown3d:
      expect(layout, Dialect::kScene3d, mode);
      return render_topdown(layout);
    case RenderMode::kKeypoint:
      expect(layout, Dialect::kKeypoint, mode);
      return render_keypoints(layout);
  }
  return {};
}

}  // namespace layoutplan
