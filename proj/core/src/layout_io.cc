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

#include "layoutplan/layout_io.h"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "json_codec.h"
#include "layoutplan/errors.h"

namespace layoutplan {
namespace detail {

namespace {

constexpr char kKind[] = "kind";
constexpr char kText[] = "text";
constexpr char kCategory[] = "category";

double num(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    throw DataError(fmt::format("missing numeric field '{}'", key));
  }
  return it->get<double>();
}

std::string str(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw DataError(fmt::format("missing string field '{}'", key));
  }
  return it->get<std::string>();
}

}  // namespace

ojson condition_to_json(const ConditionText& c) {
  ojson j;
  if (c.kind == ConditionKind::kCaption) {
    j[kKind] = "caption";
    j[kText] = c.text;
  } else {
    j[kKind] = "room_spec";
    j[kText] = c.text;
    j["room_length_m"] = c.room_length_m.value_or(0.0);
    j["room_width_m"] = c.room_width_m.value_or(0.0);
  }
  return j;
}

ConditionText condition_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("condition must be an object");
  const std::string kind = str(j, kKind);
  if (kind == "caption") return ConditionText::caption(str(j, kText));
  if (kind == "room_spec") {
    return ConditionText::room(str(j, kText), num(j, "room_length_m"), num(j, "room_width_m"));
  }
  throw DataError(fmt::format("unknown condition kind '{}'", kind));
}

ojson canvas_to_json(const CanvasSpec& c) {
  ojson j;
  j["width_px"] = c.width_px;
  j["height_px"] = c.height_px;
  j["meters_per_canvas"] = c.meters_per_canvas;
  return j;
}

CanvasSpec canvas_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("canvas must be an object");
  CanvasSpec c;
  c.width_px = static_cast<int>(num(j, "width_px"));
  c.height_px = static_cast<int>(num(j, "height_px"));
  if (j.contains("meters_per_canvas")) c.meters_per_canvas = num(j, "meters_per_canvas");
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  return c;
}

ojson element_to_json(const Element& e) {
  ojson j;
  if (const auto* e2 = std::get_if<Element2D>(&e)) {
    j[kCategory] = e2->category;
    j["width"] = e2->width;
    j["height"] = e2->height;
    j["left"] = e2->left;
    j["top"] = e2->top;
  } else if (const auto* e3 = std::get_if<Element3D>(&e)) {
    j[kCategory] = e3->category;
    j["length"] = e3->length;
    j["width"] = e3->width;
    j["height"] = e3->height;
    j["left"] = e3->left;
    j["top"] = e3->top;
    j["depth"] = e3->depth;
    j["orientation"] = e3->orientation_deg;
  } else {
    const auto& kp = std::get<KeypointSet>(e);
    j["person"] = kp.person_index;
    ojson nodes;
    for (std::size_t i = 0; i < kKeypointCount; ++i) {
      nodes[std::string(kKeypointNames[i])] = {kp.nodes[i].left, kp.nodes[i].top};
    }
    j["nodes"] = std::move(nodes);
  }
  return j;
}

Element element_from_json(const nlohmann::json& j, Dialect dialect) {
  if (!j.is_object()) throw DataError("element must be an object");
  switch (dialect) {
    case Dialect::kImage2d: {
      Element2D e;
      e.category = normalize_category(str(j, kCategory));
      e.width = num(j, "width");
      e.height = num(j, "height");
      e.left = num(j, "left");
      e.top = num(j, "top");
      return e;
    }
    case Dialect::kScene3d: {
      Element3D e;
      e.category = normalize_category(str(j, kCategory));
      e.length = num(j, "length");
      e.width = num(j, "width");
      e.height = num(j, "height");
      e.left = num(j, "left");
      e.top = num(j, "top");
      e.depth = num(j, "depth");
      e.orientation_deg = normalize_orientation(num(j, "orientation"));
      return e;
    }
    case Dialect::kKeypoint: {
      KeypointSet kp;
      kp.person_index = static_cast<int>(num(j, "person"));
      if (kp.person_index <= 0) throw DataError("person index must be positive");
      auto nodes = j.find("nodes");
      if (nodes == j.end() || !nodes->is_object()) throw DataError("missing keypoint nodes");
      if (nodes->size() != kKeypointCount) {
        throw DataError(fmt::format("expected {} keypoint nodes, got {}", kKeypointCount,
                                    nodes->size()));
      }
      for (const auto& [name, pos] : nodes->items()) {
        auto idx = keypoint_index(name);
        if (!idx) throw DataError(fmt::format("unknown keypoint node '{}'", name));
        if (!pos.is_array() || pos.size() != 2 || !pos[0].is_number() || !pos[1].is_number()) {
          throw DataError(fmt::format("keypoint '{}' must be [left, top]", name));
        }
        kp.nodes[*idx] = {pos[0].get<double>(), pos[1].get<double>()};
      }
      return kp;
    }
  }
  throw DataError("unreachable dialect");
}

ojson layout_to_json(const Layout& l) {
  ojson j;
  j["dialect"] = std::string(to_string(l.dialect));
  j["condition"] = condition_to_json(l.condition);
  j["canvas"] = canvas_to_json(l.canvas);
  ojson elements = ojson::array();
  for (const auto& e : l.elements) elements.push_back(element_to_json(e));
  j["elements"] = std::move(elements);
  return j;
}

Layout layout_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("layout must be an object");
  Layout l;
  try {
    l.dialect = dialect_from_string(str(j, "dialect"));
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  if (auto it = j.find("condition"); it != j.end()) l.condition = condition_from_json(*it);
  if (auto it = j.find("canvas"); it != j.end()) {
    l.canvas = canvas_from_json(*it);
  } else {
    l.canvas = l.dialect == Dialect::kScene3d ? CanvasSpec::scene_default()
                                               : CanvasSpec::image_default();
  }
  auto elements = j.find("elements");
  if (elements == j.end() || !elements->is_array()) throw DataError("missing elements array");
  for (const auto& e : *elements) l.elements.push_back(element_from_json(e, l.dialect));
  return l;
}

nlohmann::json parse_json(std::string_view text, std::string_view where) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(fmt::format("{}: malformed JSON at byte {}: {}", where, e.byte, e.what()));
  }
}

std::string dump_line(const ojson& j) {
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

}  // namespace detail

std::string to_json_line(const LayoutRecord& record) {
  detail::ojson j;
  j["id"] = record.id;
  const detail::ojson body = detail::layout_to_json(record.layout);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return detail::dump_line(j);
}

LayoutRecord layout_record_from_json(std::string_view line) {
  auto j = detail::parse_json(line, "layout record");
  LayoutRecord r;
  if (auto it = j.find("id"); it != j.end() && it->is_string()) r.id = it->get<std::string>();
  r.layout = detail::layout_from_json(j);
  return r;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

std::vector<LayoutRecord> read_layout_records(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  std::vector<LayoutRecord> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(layout_record_from_json(line));
    } catch (const DataError& e) {
      throw DataError(fmt::format("{}:{}: {}", path.string(), lineno, e.what()));
    }
  }
  return out;
}

void write_layout_records(const std::filesystem::path& path,
                          const std::vector<LayoutRecord>& records) {
  std::string text;
  for (const auto& r : records) {
    text += to_json_line(r);
    text += '\n';
  }
  write_text_file(path, text);
}

}  // namespace layoutplan
