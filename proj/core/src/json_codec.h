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

// Internal JSON conversions shared by the record readers and writers.

#ifndef LAYOUTPLAN_SRC_JSON_CODEC_H_
#define LAYOUTPLAN_SRC_JSON_CODEC_H_

#include <string>
#include <string_view>

#include <json.hpp>

#include "layoutplan/model.h"

namespace layoutplan::detail {

using ojson = nlohmann::ordered_json;

ojson condition_to_json(const ConditionText& c);
ConditionText condition_from_json(const nlohmann::json& j);

ojson canvas_to_json(const CanvasSpec& c);
CanvasSpec canvas_from_json(const nlohmann::json& j);

ojson element_to_json(const Element& e);
Element element_from_json(const nlohmann::json& j, Dialect dialect);

ojson layout_to_json(const Layout& l);
Layout layout_from_json(const nlohmann::json& j);

// Parses one JSON document, rethrowing parse errors as DataError with
// `where` prefixed.
nlohmann::json parse_json(std::string_view text, std::string_view where);

std::string dump_line(const ojson& j);

}  // namespace layoutplan::detail

#endif  // LAYOUTPLAN_SRC_JSON_CODEC_H_
