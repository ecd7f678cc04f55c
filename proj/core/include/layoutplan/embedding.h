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

#ifndef LAYOUTPLAN_EMBEDDING_H_
#define LAYOUTPLAN_EMBEDDING_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace layoutplan {

using Embedding = std::vector<double>;

// Text -> vector. Implementations must be safe to call concurrently.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual Embedding embed(std::string_view text) const = 0;
  virtual std::string name() const = 0;
};

// Deterministic offline embedder: lowercased alphanumeric tokens, each hashed
// (FNV-1a) into one of `dim` buckets. Texts with no tokens embed to zero.
class HashedBagOfWordsEmbedder final : public EmbeddingProvider {
 public:
  explicit HashedBagOfWordsEmbedder(std::size_t dim = 512);
  Embedding embed(std::string_view text) const override;
  std::string name() const override;

 private:
  std::size_t dim_;
};

struct RemoteEmbeddingConfig {
  std::string base_url = "http://localhost:8000";  // scheme://host[:port]
  std::string path = "/v1/embeddings";
  std::string model = "text-embedding-3-small";
  std::string api_key_env = "OPENAI_API_KEY";
  int timeout_s = 60;
};

// OpenAI-compatible /v1/embeddings client. Throws BackendError on failure.
class RemoteEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit RemoteEmbeddingProvider(RemoteEmbeddingConfig config);
  Embedding embed(std::string_view text) const override;
  std::string name() const override;

 private:
  RemoteEmbeddingConfig config_;
};

// Sidecar cache of embeddings keyed by record id.
//
// Binary layout (little-endian): magic "LPEMB001", u32 dim, u64 count, then
// per entry u32 id length, id bytes, dim x f64.
class EmbeddingCache {
 public:
  EmbeddingCache() = default;

  bool contains(const std::string& id) const { return entries_.count(id) > 0; }
  const Embedding* find(const std::string& id) const;
  // Throws std::invalid_argument on a dimension mismatch.
  void put(const std::string& id, Embedding v);
  std::size_t size() const { return entries_.size(); }
  std::size_t dim() const { return dim_; }

  // Throws DataError on truncated or foreign files.
  static EmbeddingCache load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

 private:
  std::size_t dim_ = 0;
  std::map<std::string, Embedding> entries_;
};

}  // namespace layoutplan

#endif  // LAYOUTPLAN_EMBEDDING_H_
