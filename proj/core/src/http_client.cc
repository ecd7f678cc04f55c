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

#include "http_client.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>

#include "layoutplan/endpoint.h"

namespace layoutplan {

std::chrono::milliseconds RetryPolicy::backoff_for(int retry) const {
  double ms = static_cast<double>(initial_backoff.count()) *
              std::pow(multiplier, std::max(0, retry - 1));
  ms = std::min(ms, static_cast<double>(max_backoff.count()));
  return std::chrono::milliseconds(static_cast<long long>(ms));
}

Sleeper real_sleeper() {
  return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::string read_credential(std::string_view env_name) {
  if (env_name.empty()) return {};
  const std::string name(env_name);
  const char* v = std::getenv(name.c_str());
  if (v == nullptr || *v == '\0') {
    throw BackendError(BackendError::Kind::kConfig,
                       fmt::format("credential variable {} is not set", name));
  }
  return v;
}

namespace detail {

HttpResponse post_json(const std::string& base_url, const std::string& path,
                       const std::string& bearer_token, const std::string& body, int timeout_s) {
  std::unique_ptr<httplib::Client> client;
  try {
    client = std::make_unique<httplib::Client>(base_url);
  } catch (const std::exception& e) {
    throw BackendError(BackendError::Kind::kConfig,
                       fmt::format("bad endpoint '{}': {}", base_url, e.what()));
  }
  if (!client->is_valid()) {
    throw BackendError(BackendError::Kind::kConfig, fmt::format("bad endpoint '{}'", base_url));
  }
  client->set_connection_timeout(timeout_s, 0);
  client->set_read_timeout(timeout_s, 0);
  client->set_write_timeout(timeout_s, 0);
  httplib::Headers headers;
  if (!bearer_token.empty()) headers.emplace("Authorization", "Bearer " + bearer_token);
  auto res = client->Post(path, headers, body, "application/json");
  if (!res) {
    throw BackendError(BackendError::Kind::kTransient,
                       fmt::format("{}{}: {}", base_url, path, httplib::to_string(res.error())));
  }
  return {res->status, res->body};
}

BackendError error_for_status(int status, std::string_view body) {
  std::string snippet(body.substr(0, 200));
  std::string msg = fmt::format("HTTP {}: {}", status, snippet);
  if (status == 401 || status == 403) return {BackendError::Kind::kAuth, msg, status};
  if (status == 429) return {BackendError::Kind::kRateLimited, msg, status};
  if (status == 408 || status >= 500) return {BackendError::Kind::kTransient, msg, status};
  return {BackendError::Kind::kBadRequest, msg, status};
}

}  // namespace detail
}  // namespace layoutplan
