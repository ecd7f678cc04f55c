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

#ifndef LAYOUTPLAN_ERRORS_H_
#define LAYOUTPLAN_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace layoutplan {

// Malformed or missing input data (files, records, JSON). Messages carry the
// path and line/byte position where known.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Completion or embedding service failures.
class BackendError : public std::runtime_error {
 public:
  enum class Kind {
    kAuth,              // bad or missing credential; fatal
    kRateLimited,       // 429; retryable
    kTransient,         // 5xx, connection reset, timeout; retryable
    kBadRequest,        // other 4xx; fatal
    kMalformedResponse, // body not in the expected shape; fatal
    kConfig,            // endpoint or credential not configured; fatal
  };

  BackendError(Kind kind, const std::string& what, int http_status = 0)
      : std::runtime_error(what), kind_(kind), http_status_(http_status) {}

  Kind kind() const { return kind_; }
  int http_status() const { return http_status_; }
  bool retryable() const { return kind_ == Kind::kRateLimited || kind_ == Kind::kTransient; }

 private:
  Kind kind_;
  int http_status_;
};

std::string_view to_string(BackendError::Kind k);

}  // namespace layoutplan

#endif  // LAYOUTPLAN_ERRORS_H_
