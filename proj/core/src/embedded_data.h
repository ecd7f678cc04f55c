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

#ifndef LAYOUTPLAN_SRC_EMBEDDED_DATA_H_
#define LAYOUTPLAN_SRC_EMBEDDED_DATA_H_

#include <optional>
#include <string_view>

namespace layoutplan::detail {

// Contents of a file under core/data compiled into the library, by relative
// path ("instructions/image2d_css_px.txt").
std::optional<std::string_view> embedded_file(std::string_view name);

}  // namespace layoutplan::detail

#endif  // LAYOUTPLAN_SRC_EMBEDDED_DATA_H_
