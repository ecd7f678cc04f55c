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

#ifndef LAYOUTPLAN_HASHING_H_
#define LAYOUTPLAN_HASHING_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace layoutplan {

// 64-bit FNV-1a. Stable across platforms, used for seeds, cache keys and
// completion fingerprints; not a cryptographic hash.
constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;

constexpr std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = kFnvOffset) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// 16 lowercase hex digits.
std::string hex64(std::uint64_t v);

// SplitMix64 finalizer; mixes seeds before they reach a generator.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace layoutplan

#endif  // LAYOUTPLAN_HASHING_H_
