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

#include "layoutplan/errors.h"

#include <fmt/format.h>

#include "layoutplan/hashing.h"

namespace layoutplan {

std::string_view to_string(BackendError::Kind k) {
  switch (k) {
    case BackendError::Kind::kAuth:
      return "auth";
    case BackendError::Kind::kRateLimited:
      return "rate_limited";
    case BackendError::Kind::kTransient:
      return "transient";
    case BackendError::Kind::kBadRequest:
      return "bad_request";
    case BackendError::Kind::kMalformedResponse:
      return "malformed_response";
    case BackendError::Kind::kConfig:
      return "config";
  }
  return "transient";
}

std::string hex64(std::uint64_t v) { return fmt::format("{:016x}", v); }

}  // namespace layoutplan
