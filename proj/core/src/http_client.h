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

// Thin POST helper so only one translation unit pulls in httplib.

#ifndef LAYOUTPLAN_SRC_HTTP_CLIENT_H_
#define LAYOUTPLAN_SRC_HTTP_CLIENT_H_

#include <string>
#include <string_view>

#include "layoutplan/errors.h"

namespace layoutplan::detail {

struct HttpResponse {
  int status = 0;
  std::string body;
};

// Throws BackendError(kTransient) when no response arrives and
// BackendError(kConfig) for an unusable base URL.
HttpResponse post_json(const std::string& base_url, const std::string& path,
                       const std::string& bearer_token, const std::string& body, int timeout_s);

// Maps a non-2xx status onto the error taxonomy.
BackendError error_for_status(int status, std::string_view body);

}  // namespace layoutplan::detail

#endif  // LAYOUTPLAN_SRC_HTTP_CLIENT_H_
