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

// JSON-lines layout records. One object per line:
//
//   {"id": "...", "dialect": "image2d",
//    "condition": {"kind": "caption", "text": "..."},
//    "canvas": {"width_px": 64, "height_px": 64, "meters_per_canvas": 0.0},
//    "elements": [{"category": "dog", "width": 10, "height": 8,
//                  "left": 3, "top": 4}, ...]}
//
// See docs/formats.md for the 3D and keypoint element shapes.

#ifndef LAYOUTPLAN_LAYOUT_IO_H_
#define LAYOUTPLAN_LAYOUT_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "layoutplan/model.h"

namespace layoutplan {

struct LayoutRecord {
  std::string id;
  Layout layout;

  bool operator==(const LayoutRecord&) const = default;
};

std::string to_json_line(const LayoutRecord& record);

// Throws DataError on malformed input.
LayoutRecord layout_record_from_json(std::string_view line);

// Blank lines are skipped. Errors name the file and 1-based line number.
std::vector<LayoutRecord> read_layout_records(const std::filesystem::path& path);
void write_layout_records(const std::filesystem::path& path,
                          const std::vector<LayoutRecord>& records);

// Reads a whole file; throws DataError naming the path if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace layoutplan

#endif  // LAYOUTPLAN_LAYOUT_IO_H_
