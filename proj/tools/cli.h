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


#ifndef LAYOUTPLAN_TOOLS_CLI_H_
#define LAYOUTPLAN_TOOLS_CLI_H_

#include <iosfwd>

namespace layoutplan::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;  // bad flags or config
inline constexpr int kData = 2;   // unreadable or malformed input
inline constexpr int kBackend = 3;

/// Runs one command line. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace layoutplan::cli

#endif  // LAYOUTPLAN_TOOLS_CLI_H_
