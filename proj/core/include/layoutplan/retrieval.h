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

#ifndef LAYOUTPLAN_RETRIEVAL_H_
#define LAYOUTPLAN_RETRIEVAL_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "layoutplan/embedding.h"
#include "layoutplan/layout_io.h"
#include "layoutplan/model.h"

namespace layoutplan {

struct SupportRecord {
  std::string id;
  ConditionText condition;
  Layout layout;
  std::optional<Embedding> embedding;
};

// Demonstration pool. Immutable once built; all present embeddings share one
// dimension.
class SupportSet {
 public:
  SupportSet() = default;
  explicit SupportSet(std::vector<SupportRecord> records);  // throws std::invalid_argument

  static SupportSet from_layout_records(std::vector<LayoutRecord> records);

  /// Returns a copy with embeddings filled in for caption records that lack
  /// one. `cache` is consulted first and updated with new vectors.
  SupportSet with_embeddings(const EmbeddingProvider& embedder,
                             EmbeddingCache* cache = nullptr) const;

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const SupportRecord& operator[](std::size_t i) const { return records_[i]; }
  std::span<const SupportRecord> records() const { return records_; }

  // Stable fingerprint over ids and condition texts.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  std::vector<SupportRecord> records_;
  std::uint64_t fingerprint_ = 0;
};

enum class SelectionMode { kRetrieval, kFixedRandom };

std::string_view to_string(SelectionMode m);
SelectionMode selection_mode_from_string(std::string_view s);

struct SelectionPolicy {
  SelectionMode mode = SelectionMode::kRetrieval;
  int k = 8;
  std::uint64_t seed = 0;  // fixed_random only
};

/// Exemplar counts used when none is configured.
int default_k(Task task);

struct Exemplar {
  std::size_t support_index = 0;
  double distance = 0;  // 0 for fixed_random selections
  std::string id;
  ConditionText condition;
  Layout layout;
};

// Ordered demonstrations for one inference, most similar last.
struct ExemplarSet {
  std::vector<Exemplar> items;

  std::vector<std::size_t> indices() const;
  bool empty() const { return items.empty(); }
  std::size_t size() const { return items.size(); }
};

/// Squared room-dimension difference. Throws std::invalid_argument unless
/// both conditions are room specs.
double distance_room(const ConditionText& a, const ConditionText& b);

/// 1 - cosine similarity, in [0, 2]. Throws std::invalid_argument for zero
/// vectors or mismatched dimensions.
double distance_embedding(const Embedding& a, const Embedding& b);

/// Picks k demonstrations for `condition`.
///
/// Retrieval mode keeps the k least-distant records (lower support index wins
/// ties) and orders them most-distant first. Room specs use distance_room;
/// captions use distance_embedding, which needs `embedder` for the query and
/// for any support record without a stored embedding. Fixed-random mode draws
/// the same k records for every condition given the seed.
///
/// Throws std::invalid_argument for an empty support set, k outside
/// [1, |support|], or a condition kind the support set cannot be compared to.
ExemplarSet select(const ConditionText& condition, const SupportSet& support,
                   const SelectionPolicy& policy, const EmbeddingProvider* embedder = nullptr);

// Memoizes select() per (condition, support fingerprint, policy). Safe for
// concurrent use.
class RetrievalCache {
 public:
  ExemplarSet select(const ConditionText& condition, const SupportSet& support,
                     const SelectionPolicy& policy, const EmbeddingProvider* embedder = nullptr);
  std::size_t hits() const;
  std::size_t misses() const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::vector<std::pair<std::size_t, double>>> entries_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

}  // namespace layoutplan

#endif  // LAYOUTPLAN_RETRIEVAL_H_
