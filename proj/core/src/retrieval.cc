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

#include "layoutplan/retrieval.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "layoutplan/hashing.h"

namespace layoutplan {

namespace {

std::uint64_t condition_hash(const ConditionText& c, std::uint64_t h = kFnvOffset) {
  h = fnv1a64(c.kind == ConditionKind::kCaption ? "caption\x1f" : "room\x1f", h);
  h = fnv1a64(c.text, h);
  if (c.room_length_m && c.room_width_m) {
    h = fnv1a64(fmt::format("\x1f{}\x1f{}", *c.room_length_m, *c.room_width_m), h);
  }
  return h;
}

// Uniform integer in [0, n) by rejection, so draws do not depend on the
// standard library's distribution implementation.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    std::uint64_t r = rng();
    if (r < limit) return r % n;
  }
}

}  // namespace

SupportSet::SupportSet(std::vector<SupportRecord> records) : records_(std::move(records)) {
  std::size_t dim = 0;
  std::uint64_t h = kFnvOffset;
  std::set<std::string_view> ids;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    r.condition.validate();
    if (!ids.insert(r.id).second) {
      throw std::invalid_argument(fmt::format("support id '{}' appears twice", r.id));
    }
    if (r.embedding) {
      if (r.embedding->empty()) {
        throw std::invalid_argument(fmt::format("support record '{}' has an empty embedding", r.id));
      }
      if (dim == 0) dim = r.embedding->size();
      if (r.embedding->size() != dim) {
        throw std::invalid_argument(fmt::format(
            "support record '{}' embedding dim {} differs from {}", r.id, r.embedding->size(), dim));
      }
    }
    h = fnv1a64(r.id, h);
    h = fnv1a64("\x1e", h);
    h = condition_hash(r.condition, h);
  }
  fingerprint_ = h;
}

SupportSet SupportSet::from_layout_records(std::vector<LayoutRecord> records) {
  std::vector<SupportRecord> out;
  out.reserve(records.size());
  for (auto& r : records) {
    ConditionText cond = r.layout.condition;
    out.push_back({std::move(r.id), std::move(cond), std::move(r.layout), std::nullopt});
  }
  return SupportSet(std::move(out));
}

SupportSet SupportSet::with_embeddings(const EmbeddingProvider& embedder,
                                       EmbeddingCache* cache) const {
  std::vector<SupportRecord> out(records_.begin(), records_.end());
  for (auto& r : out) {
    if (r.embedding || r.condition.kind != ConditionKind::kCaption) continue;
    if (cache != nullptr) {
      if (const Embedding* hit = cache->find(r.id)) {
        r.embedding = *hit;
        continue;
      }
    }
    r.embedding = embedder.embed(r.condition.text);
    if (cache != nullptr) cache->put(r.id, *r.embedding);
  }
  return SupportSet(std::move(out));
}

std::string_view to_string(SelectionMode m) {
  return m == SelectionMode::kRetrieval ? "retrieval" : "fixed-random";
}

SelectionMode selection_mode_from_string(std::string_view s) {
  if (s == "retrieval") return SelectionMode::kRetrieval;
  if (s == "fixed-random" || s == "fixed_random") return SelectionMode::kFixedRandom;
  throw std::invalid_argument(fmt::format("unknown exemplar mode '{}'", s));
}

int default_k(Task task) {
  switch (task) {
    case Task::kNumerical:
      return 16;
    case Task::kSpatial:
    case Task::kBedroom:
    case Task::kKeypoint:
      return 8;
    case Task::kLivingRoom:
      return 4;
  }
  return 8;
}

std::vector<std::size_t> ExemplarSet::indices() const {
  std::vector<std::size_t> out;
  out.reserve(items.size());
  for (const auto& e : items) out.push_back(e.support_index);
  return out;
}

double distance_room(const ConditionText& a, const ConditionText& b) {
  if (a.kind != ConditionKind::kRoomSpec || b.kind != ConditionKind::kRoomSpec ||
      !a.room_length_m || !a.room_width_m || !b.room_length_m || !b.room_width_m) {
    throw std::invalid_argument("room distance needs two room conditions with dimensions");
  }
  const double dl = *a.room_length_m - *b.room_length_m;
  const double dw = *a.room_width_m - *b.room_width_m;
  return dl * dl + dw * dw;
}

double distance_embedding(const Embedding& a, const Embedding& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(
        fmt::format("embedding dims differ: {} vs {}", a.size(), b.size()));
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) throw std::invalid_argument("cosine distance of a zero vector");
  const double cos = std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
  return 1.0 - cos;
}

namespace {

using Ranked = std::vector<std::pair<std::size_t, double>>;

void check_policy(const SupportSet& support, const SelectionPolicy& policy) {
  if (support.empty()) throw std::invalid_argument("support set is empty");
  if (policy.k < 1 || static_cast<std::size_t>(policy.k) > support.size()) {
    throw std::invalid_argument(
        fmt::format("k={} outside [1, {}]", policy.k, support.size()));
  }
}

Ranked rank(const ConditionText& condition, const SupportSet& support,
            const SelectionPolicy& policy, const EmbeddingProvider* embedder) {
  check_policy(support, policy);
  const auto k = static_cast<std::size_t>(policy.k);
  Ranked picked;
  if (policy.mode == SelectionMode::kFixedRandom) {
    std::mt19937_64 rng(mix64(policy.seed));
    std::vector<std::size_t> idx(support.size());
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(idx[i], idx[i + bounded(rng, idx.size() - i)]);
      picked.emplace_back(idx[i], 0.0);
    }
    return picked;
  }

  Ranked all;
  all.reserve(support.size());
  if (condition.kind == ConditionKind::kRoomSpec) {
    for (std::size_t i = 0; i < support.size(); ++i) {
      all.emplace_back(i, distance_room(condition, support[i].condition));
    }
  } else {
    if (embedder == nullptr) {
      throw std::invalid_argument("caption retrieval needs an embedding provider");
    }
    const Embedding query = embedder->embed(condition.text);
    if (std::all_of(query.begin(), query.end(), [](double x) { return x == 0; })) {
      throw std::invalid_argument(
          fmt::format("condition '{}' embeds to the zero vector", condition.text));
    }
    for (std::size_t i = 0; i < support.size(); ++i) {
      const auto& r = support[i];
      if (r.condition.kind != ConditionKind::kCaption) {
        throw std::invalid_argument(
            fmt::format("support record '{}' is not a caption condition", r.id));
      }
      const Embedding v = r.embedding ? *r.embedding : embedder->embed(r.condition.text);
      const bool zero = std::all_of(v.begin(), v.end(), [](double x) { return x == 0; });
      // A record with no usable text is maximally far rather than an error.
      all.emplace_back(i, zero && v.size() == query.size() ? 2.0 : distance_embedding(query, v));
    }
  }
  auto closer = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), closer);
  picked.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
  // Exact reverse of the ranking, so the tie winner also ends up last.
  std::reverse(picked.begin(), picked.end());
  return picked;
}

ExemplarSet materialize(const Ranked& ranked, const SupportSet& support) {
  ExemplarSet out;
  out.items.reserve(ranked.size());
  for (const auto& [i, d] : ranked) {
    const auto& r = support[i];
    out.items.push_back({i, d, r.id, r.condition, r.layout});
  }
  return out;
}

}  // namespace

ExemplarSet select(const ConditionText& condition, const SupportSet& support,
                   const SelectionPolicy& policy, const EmbeddingProvider* embedder) {
  return materialize(rank(condition, support, policy, embedder), support);
}

ExemplarSet RetrievalCache::select(const ConditionText& condition, const SupportSet& support,
                                   const SelectionPolicy& policy,
                                   const EmbeddingProvider* embedder) {
  std::string key = fmt::format("{}|{}|{}|{}|{}|", hex64(support.fingerprint()),
                                to_string(policy.mode), policy.k, policy.seed,
                                embedder ? embedder->name() : "");
  // fixed_random ignores the condition, so every condition shares one entry.
  if (policy.mode == SelectionMode::kRetrieval) key += hex64(condition_hash(condition));
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(key);
    if (it != entries_.end()) {
      ++hits_;
      return materialize(it->second, support);
    }
  }
  Ranked ranked = rank(condition, support, policy, embedder);
  std::lock_guard<std::mutex> lock(mu_);
  ++misses_;
  entries_.emplace(key, ranked);
  return materialize(ranked, support);
}

std::size_t RetrievalCache::hits() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hits_;
}

std::size_t RetrievalCache::misses() const {
  std::lock_guard<std::mutex> lock(mu_);
  return misses_;
}

}  // namespace layoutplan
