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

#ifndef LAYOUTPLAN_ENDPOINT_H_
#define LAYOUTPLAN_ENDPOINT_H_

#include <chrono>
#include <functional>
#include <string>
#include <string_view>

#include "layoutplan/errors.h"

namespace layoutplan {

struct RetryPolicy {
  int max_attempts = 4;  // total tries, first one included
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{8000};

  // Delay before retry number `retry` (1-based).
  std::chrono::milliseconds backoff_for(int retry) const;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

// std::this_thread::sleep_for.
Sleeper real_sleeper();

/// Runs `fn` until it returns, throws a non-retryable BackendError, or the
/// attempt budget is spent (the last error is rethrown). Other exceptions
/// pass through untouched.
template <typename F>
auto with_retries(const RetryPolicy& policy, const Sleeper& sleep, F&& fn) -> decltype(fn()) {
  const int attempts = policy.max_attempts < 1 ? 1 : policy.max_attempts;
  for (int attempt = 1;; ++attempt) {
    try {
      return fn();
    } catch (const BackendError& e) {
      if (!e.retryable() || attempt >= attempts) throw;
    }
    if (sleep) sleep(policy.backoff_for(attempt));
  }
}

/// Value of the environment variable `env_name`. An empty name means the
/// endpoint takes no credential and yields "". Throws BackendError (kConfig)
/// when the variable is named but unset or empty.
std::string read_credential(std::string_view env_name);

}  // namespace layoutplan

#endif  // LAYOUTPLAN_ENDPOINT_H_
