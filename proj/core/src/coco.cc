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

// COCO instances/captions reader. Segmentation polygons are dropped while
// parsing; they dominate the file size and are never used.

#include <algorithm>
#include <fstream>
#include <map>

#include <fmt/format.h>
#include <json.hpp>

#include "layoutplan/bench_builder.h"
#include "layoutplan/errors.h"

namespace layoutplan {

namespace {

using nlohmann::json;

json load_json(const std::filesystem::path& path, bool drop_segmentation) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  json::parser_callback_t cb = [drop_segmentation](int, json::parse_event_t event, json& parsed) {
    return !(drop_segmentation && event == json::parse_event_t::key && parsed == "segmentation");
  };
  try {
    return json::parse(in, cb);
  } catch (const json::parse_error& e) {
    throw DataError(fmt::format("{}: malformed JSON at byte {}", path.string(), e.byte));
  }
}

const json& array_at(const json& j, const char* key, const std::filesystem::path& path) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array()) {
    throw DataError(fmt::format("{}: missing \"{}\" array", path.string(), key));
  }
  return *it;
}

}  // namespace

std::vector<AnnotationRecord> load_coco(const std::filesystem::path& instances,
                                        const std::optional<std::filesystem::path>& captions) {
  std::map<std::int64_t, AnnotationRecord> by_id;
  try {
    const json inst = load_json(instances, true);
    if (!inst.is_object()) throw DataError(fmt::format("{}: not a JSON object", instances.string()));
    std::map<std::int64_t, std::string> categories;
    for (const auto& c : array_at(inst, "categories", instances)) {
      categories[c.at("id").get<std::int64_t>()] = normalize_category(c.at("name").get<std::string>());
    }
    for (const auto& im : array_at(inst, "images", instances)) {
      AnnotationRecord r;
      r.image_id = im.at("id").get<std::int64_t>();
      r.image_width = im.at("width").get<int>();
      r.image_height = im.at("height").get<int>();
      by_id[r.image_id] = std::move(r);
    }
    for (const auto& a : array_at(inst, "annotations", instances)) {
      const auto image_id = a.at("image_id").get<std::int64_t>();
      auto rec = by_id.find(image_id);
      if (rec == by_id.end()) {
        throw DataError(fmt::format("{}: annotation {} refers to unknown image {}",
                                    instances.string(), a.value("id", std::int64_t{-1}), image_id));
      }
      auto cat = categories.find(a.at("category_id").get<std::int64_t>());
      if (cat == categories.end()) {
        throw DataError(fmt::format("{}: annotation for image {} has unknown category",
                                    instances.string(), image_id));
      }
      const auto& bbox = a.at("bbox");
      if (!bbox.is_array() || bbox.size() != 4) {
        throw DataError(fmt::format("{}: bad bbox for image {}", instances.string(), image_id));
      }
      AnnotationBox b;
      b.category = cat->second;
      b.left = bbox[0].get<double>();
      b.top = bbox[1].get<double>();
      b.width = bbox[2].get<double>();
      b.height = bbox[3].get<double>();
      b.crowd = a.value("iscrowd", 0) != 0;
      rec->second.boxes.push_back(std::move(b));
    }
    if (captions) {
      const json caps = load_json(*captions, false);
      if (!caps.is_object()) throw DataError(fmt::format("{}: not a JSON object", captions->string()));
      for (const auto& a : array_at(caps, "annotations", *captions)) {
        auto rec = by_id.find(a.at("image_id").get<std::int64_t>());
        if (rec != by_id.end()) rec->second.captions.push_back(a.at("caption").get<std::string>());
      }
    }
  } catch (const json::exception& e) {
    throw DataError(fmt::format("{}: unexpected COCO structure: {}", instances.string(), e.what()));
  }
  std::vector<AnnotationRecord> out;
  out.reserve(by_id.size());
  for (auto& [id, r] : by_id) out.push_back(std::move(r));
  return out;
}

}  // namespace layoutplan
